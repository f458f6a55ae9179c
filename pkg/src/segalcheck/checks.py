"""Exact decision procedures for Segal-type gluing conditions.

Every checker returns a :class:`~segalcheck.report.CheckReport` whose
instances pinpoint each failing comparison map with a minimal witness:

* ``check_2segal`` — both triangulation families of comparison maps into
  strict pullbacks, for every decidable degree within the truncation;
* ``check_unital`` — the two degenerate-edge comparison squares;
* ``check_sadss`` — the double Segal, stability, and augmentation
  comparison maps of a pre-augmented bisimplicial set, as sub-reports;
* ``check_augmentation_retract`` — the retract factorization of the
  augmentation through the vertical edge pullback.

All pullbacks are computed strictly (levelwise finite sets, equality on
the nose), so every verdict is exact.  Degrees outside the truncation are
never guessed at: a condition with no decidable instances yields a
``partial`` verdict.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor

from .preaug import PreaugBisimplicialSet
from .report import CheckReport, Instance, merge_subreports, report_from_failures
from .sset import TruncatedSimplicialSet, vertex_subset_table

__all__ = [
    "check_2segal",
    "check_unital",
    "check_sadss",
    "check_augmentation_retract",
]


def _name(value: object) -> str:
    """Render an element or a tuple of elements as a witness string."""
    if isinstance(value, tuple):
        return "(" + ",".join(str(part) for part in value) + ")"
    return str(value)


def _bijection_instances(
    condition: str,
    index: tuple[int, ...],
    role: str,
    mapping: dict[object, object],
    codomain: Iterable[object],
) -> list[Instance]:
    """Failures of ``mapping`` (domain element -> codomain value) being a bijection.

    Reports at most one ``not-injective`` witness (the first colliding
    pair in domain order) and one ``not-surjective`` witness (the first
    unhit codomain value in codomain order).
    """
    failures: list[Instance] = []
    seen: dict[object, object] = {}
    collision: tuple[object, object] | None = None
    for x, value in mapping.items():
        if value in seen:
            if collision is None:
                collision = (seen[value], x)
        else:
            seen[value] = x
    if collision is not None:
        failures.append(
            Instance(
                condition=condition,
                index=index,
                role=role,
                kind="not-injective",
                witness=(_name(collision[0]), _name(collision[1])),
            )
        )
    missed = next((value for value in codomain if value not in seen), None)
    if missed is not None:
        failures.append(
            Instance(
                condition=condition,
                index=index,
                role=role,
                kind="not-surjective",
                witness=(_name(missed),),
            )
        )
    return failures


def _run_indexed(fn: Callable, indices: Sequence, jobs: int) -> list:
    """Evaluate ``fn`` over ``indices``, optionally with a thread pool.

    Results always come back in index order, so reports are deterministic
    regardless of ``jobs``.
    """
    items = list(indices)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# 2-Segal conditions
# ---------------------------------------------------------------------------


def _two_segal_instances(X: TruncatedSimplicialSet, n: int) -> list[Instance]:
    """Failures of both triangulation comparison maps at degree ``n + 1``.

    The first family glues the triangle on vertices ``{0, 1, 2}`` to the
    polygon on ``{0, 2, ..., n+1}`` along the edge ``{0, 2}``; the second
    glues the triangle on ``{n-1, n, n+1}`` to the polygon on
    ``{0, ..., n-1, n+1}`` along the edge ``{n-1, n+1}``.
    """
    failures: list[Instance] = []
    top = X.level(n + 1)

    # First family: triangle {0,1,2}, polygon {0,2,...,n+1}, edge {0,2}.
    tri1 = vertex_subset_table(X, n + 1, (0, 1, 2))
    poly1 = vertex_subset_table(X, n + 1, (0,) + tuple(range(2, n + 2)))
    tri1_leg = vertex_subset_table(X, 2, (0, 2))
    poly1_leg = vertex_subset_table(X, n, (0, 1))
    mapping1 = {x: (tri1[x], poly1[x]) for x in top}
    pullback1 = [
        (alpha, beta)
        for alpha in X.level(2)
        for beta in X.level(n)
        if tri1_leg[alpha] == poly1_leg[beta]
    ]
    failures.extend(
        _bijection_instances("2segal", (n,), "first-family", mapping1, pullback1)
    )

    # Second family: triangle {n-1,n,n+1}, polygon {0,...,n-1,n+1},
    # edge {n-1,n+1} (local {0,2} in the triangle, local {n-1,n} in the polygon).
    tri2 = vertex_subset_table(X, n + 1, (n - 1, n, n + 1))
    poly2 = vertex_subset_table(X, n + 1, tuple(range(n)) + (n + 1,))
    tri2_leg = vertex_subset_table(X, 2, (0, 2))
    poly2_leg = vertex_subset_table(X, n, (n - 1, n))
    mapping2 = {x: (tri2[x], poly2[x]) for x in top}
    pullback2 = [
        (alpha, beta)
        for alpha in X.level(2)
        for beta in X.level(n)
        if tri2_leg[alpha] == poly2_leg[beta]
    ]
    failures.extend(
        _bijection_instances("2segal", (n,), "second-family", mapping2, pullback2)
    )
    return failures


def check_2segal(X: TruncatedSimplicialSet, jobs: int = 1) -> CheckReport:
    """Check every decidable triangulation comparison map of ``X``.

    Degree-``n+1`` instances need levels up to ``n + 1``, so instances
    with ``2 <= n <= truncation - 1`` are decided.  A truncation below 3
    admits no instances and yields a ``partial`` verdict.
    """
    t = X.truncation
    if t < 3:
        return CheckReport(
            verdict="partial",
            scope=f"no triangulation instances decidable at truncation {t}",
        )
    degrees = range(2, t)
    chunks = _run_indexed(lambda n: _two_segal_instances(X, n), degrees, jobs)
    failures = [instance for chunk in chunks for instance in chunk]
    return report_from_failures(
        failures,
        scope=f"triangulation instances for 2 <= n <= {t - 1}",
        checked_count=2 * len(degrees),
    )


def check_unital(X: TruncatedSimplicialSet) -> CheckReport:
    """Check the two degenerate-edge comparison squares of ``X``.

    The first comparison sends ``x`` to ``(s_1 x, d_0 x)`` in the pullback
    of ``d_0: X_2 -> X_1`` against ``s_0: X_0 -> X_1``; the second sends
    ``x`` to ``(s_0 x, d_1 x)`` in the pullback of ``d_2`` against ``s_0``.
    Both must be bijections.  Requires truncation at least 2.
    """
    t = X.truncation
    if t < 2:
        return CheckReport(
            verdict="partial",
            scope=f"no unitality squares decidable at truncation {t}",
        )
    failures: list[Instance] = []
    x0, x1, x2 = X.level(0), X.level(1), X.level(2)
    s0_low = X.degeneracies[(0, 0)]
    s0, s1 = X.degeneracies[(1, 0)], X.degeneracies[(1, 1)]
    d0_edge, d1_edge = X.faces[(1, 0)], X.faces[(1, 1)]
    d0, d2 = X.faces[(2, 0)], X.faces[(2, 2)]

    mapping1 = {x: (s1[x], d0_edge[x]) for x in x1}
    pullback1 = [(sigma, y) for sigma in x2 for y in x0 if d0[sigma] == s0_low[y]]
    failures.extend(
        _bijection_instances("unital", (1,), "(s1,d0)", mapping1, pullback1)
    )

    mapping2 = {x: (s0[x], d1_edge[x]) for x in x1}
    pullback2 = [(sigma, y) for sigma in x2 for y in x0 if d2[sigma] == s0_low[y]]
    failures.extend(
        _bijection_instances("unital", (2,), "(s0,d1)", mapping2, pullback2)
    )
    return report_from_failures(
        failures, scope="both degenerate-edge squares", checked_count=2
    )


# ---------------------------------------------------------------------------
# Stable augmented double Segal conditions
# ---------------------------------------------------------------------------


def _double_segal_instances(
    D: PreaugBisimplicialSet, index: tuple[int, int, int]
) -> list[Instance]:
    """Failures of the vertical and horizontal double Segal maps at ``(k, l, m)``.

    Vertically the comparison sends ``x`` in ``D(k+l, m)`` to the pair of
    its back ``k``-block and front ``l``-block, glued over ``D(0, m)``;
    horizontally it sends ``x`` in ``D(m, k+l)`` to the pair of its front
    ``k``-block and back ``l``-block, glued over ``D(m, 0)``.
    """
    k, l, m = index
    failures: list[Instance] = []

    # Vertical: D(k+l, m) -> D(k, m) x_{D(0, m)} D(l, m).
    mapping_v = {
        x: (D.vertical_bottom(k + l, m, k, x), D.vertical_top(k + l, m, l, x))
        for x in D.level(k + l, m)
    }
    pullback_v = [
        (p, q)
        for p in D.level(k, m)
        for q in D.level(l, m)
        if D.vertical_top(k, m, 0, p) == D.vertical_bottom(l, m, 0, q)
    ]
    failures.extend(
        _bijection_instances("double-segal", index, "vertical", mapping_v, pullback_v)
    )

    # Horizontal: D(m, k+l) -> D(m, k) x_{D(m, 0)} D(m, l).
    mapping_h = {
        x: (D.horizontal_top(m, k + l, k, x), D.horizontal_bottom(m, k + l, l, x))
        for x in D.level(m, k + l)
    }
    pullback_h = [
        (p, q)
        for p in D.level(m, k)
        for q in D.level(m, l)
        if D.horizontal_bottom(m, k, 0, p) == D.horizontal_top(m, l, 0, q)
    ]
    failures.extend(
        _bijection_instances("double-segal", index, "horizontal", mapping_h, pullback_h)
    )
    return failures


def _double_segal_report(D: PreaugBisimplicialSet, jobs: int) -> CheckReport:
    T = D.total_truncation
    indices = [
        (k, l, m)
        for total in range(T)
        for k in range(total + 1)
        for l in range(total + 1 - k)
        for m in (total - k - l,)
    ]
    indices.sort()
    chunks = _run_indexed(lambda idx: _double_segal_instances(D, idx), indices, jobs)
    failures = [instance for chunk in chunks for instance in chunk]
    return report_from_failures(
        failures,
        scope=f"row and column gluing for k + l + m <= {T - 1}",
        checked_count=2 * len(indices),
    )


def _stability_report(D: PreaugBisimplicialSet) -> CheckReport:
    if D.total_truncation < 3:
        return CheckReport(
            verdict="partial",
            scope="no square level at this truncation; stability undecidable",
        )
    failures: list[Instance] = []
    squares = D.level(1, 1)
    rows = D.level(0, 1)
    columns = D.level(1, 0)

    # Corner span: a square is determined by its left column and top row.
    mapping_span = {
        x: (D.hface(1, 1, 1, x), D.vface(1, 1, 1, x)) for x in squares
    }
    pullback_span = [
        (p, q)
        for p in columns
        for q in rows
        if D.vface(1, 0, 1, p) == D.hface(0, 1, 1, q)
    ]
    failures.extend(
        _bijection_instances("stability", (1, 1), "span", mapping_span, pullback_span)
    )

    # Corner cospan: a square is determined by its bottom row and right column.
    mapping_cospan = {
        x: (D.vface(1, 1, 0, x), D.hface(1, 1, 0, x)) for x in squares
    }
    pullback_cospan = [
        (q, p)
        for q in rows
        for p in columns
        if D.hface(0, 1, 0, q) == D.vface(1, 0, 0, p)
    ]
    failures.extend(
        _bijection_instances(
            "stability", (1, 1), "cospan", mapping_cospan, pullback_cospan
        )
    )
    return report_from_failures(
        failures, scope="both corner comparison maps on squares", checked_count=2
    )


def _augmentation_report(D: PreaugBisimplicialSet) -> CheckReport:
    if D.total_truncation < 2:
        return CheckReport(
            verdict="partial",
            scope="no edge levels at this truncation; augmentation undecidable",
        )
    failures: list[Instance] = []

    # Vertical: pairs of a column and an augmentation element glued along
    # the bottom vertex must classify objects via the top vertex.
    pairs_v = [
        (p, z)
        for p in D.level(1, 0)
        for z in D.augmentation
        if D.vface(1, 0, 0, p) == D.eps[z]
    ]
    mapping_v = {pair: D.vface(1, 0, 1, pair[0]) for pair in pairs_v}
    failures.extend(
        _bijection_instances(
            "augmentation", (1, 0), "vertical", mapping_v, D.level(0, 0)
        )
    )

    # Horizontal: same with rows, glued along the right vertex,
    # classifying via the left vertex.
    pairs_h = [
        (q, z)
        for q in D.level(0, 1)
        for z in D.augmentation
        if D.hface(0, 1, 1, q) == D.eps[z]
    ]
    mapping_h = {pair: D.hface(0, 1, 0, pair[0]) for pair in pairs_h}
    failures.extend(
        _bijection_instances(
            "augmentation", (0, 1), "horizontal", mapping_h, D.level(0, 0)
        )
    )
    return report_from_failures(
        failures, scope="both augmentation comparison maps", checked_count=2
    )


def check_sadss(D: PreaugBisimplicialSet, jobs: int = 1) -> CheckReport:
    """Check the stable augmented double Segal conditions of ``D``.

    Produces three sub-reports: ``double-segal`` (row and column gluing
    for every decidable ``(k, l, m)``), ``stability`` (both corner
    comparison maps on squares), and ``augmentation`` (both edge-level
    comparison maps against the augmentation).  Sub-conditions whose
    levels lie outside the truncation come back ``partial``; the merged
    verdict fails if any instance fails.
    """
    named = {
        "double-segal": _double_segal_report(D, jobs),
        "stability": _stability_report(D),
        "augmentation": _augmentation_report(D),
    }
    return merge_subreports(named, scope=f"total degree <= {D.total_truncation}")


def check_augmentation_retract(D: PreaugBisimplicialSet) -> CheckReport:
    """Check that the augmentation is a retract of the vertical edge pullback.

    Writing ``P`` for the set of pairs ``(p, z)`` of a column ``p`` and an
    augmentation element ``z`` with ``bottom(p) = eps(z)``, the checks are:

    * (a) the section ``z -> (s^v_0(eps z), z)`` lands in ``P``;
    * (b) projecting the section back out returns ``z`` (retraction);
    * (c) the comparison ``(p, z) -> top(p)`` is a bijection onto objects;
    * (d) the comparison composed with the section equals ``eps``;
    * (e) ``eps`` is injective.

    Precondition: ``D`` passes :func:`check_sadss`.  A failing
    precondition is reported as a structural instance, not an exception.
    """
    scope = "retract factorization of the augmentation"
    sadss = check_sadss(D)
    if sadss.verdict == "fail":
        instance = Instance(
            condition="augmentation-retract",
            index=(),
            role="precondition",
            kind="structural",
            witness=("object fails the stable augmented double Segal conditions",),
        )
        return CheckReport(
            verdict="fail",
            scope=scope,
            instances=(instance,),
            subreports={"precondition": sadss},
        )
    if D.total_truncation < 2:
        return CheckReport(
            verdict="partial",
            scope="no edge levels at this truncation; retract undecidable",
        )

    failures: list[Instance] = []
    pairs = [
        (p, z)
        for p in D.level(1, 0)
        for z in D.augmentation
        if D.vface(1, 0, 0, p) == D.eps[z]
    ]
    pair_set = set(pairs)

    def section(z: str) -> tuple[str, str]:
        return (D.vdeg(0, 0, 0, D.eps[z]), z)

    # (a) the section lands in the pullback.
    for z in D.augmentation:
        if section(z) not in pair_set:
            failures.append(
                Instance(
                    condition="augmentation-retract",
                    index=(),
                    role="section",
                    kind="structural",
                    witness=(z, _name(section(z))),
                )
            )
            break

    # (b) retraction: projecting the section returns the argument.
    for z in D.augmentation:
        if section(z)[1] != z:
            failures.append(
                Instance(
                    condition="augmentation-retract",
                    index=(),
                    role="retraction",
                    kind="structural",
                    witness=(z,),
                )
            )
            break

    # (c) the comparison map is a bijection onto objects.
    comparison = {pair: D.vface(1, 0, 1, pair[0]) for pair in pairs}
    failures.extend(
        _bijection_instances(
            "augmentation-retract", (), "comparison", comparison, D.level(0, 0)
        )
    )

    # (d) comparison after section equals the augmentation unit.
    for z in D.augmentation:
        got = D.vface(1, 0, 1, section(z)[0])
        if got != D.eps[z]:
            failures.append(
                Instance(
                    condition="augmentation-retract",
                    index=(),
                    role="factorization",
                    kind="structural",
                    witness=(z, got, D.eps[z]),
                )
            )
            break

    # (e) the augmentation unit is injective.
    seen: dict[str, str] = {}
    for z in D.augmentation:
        value = D.eps[z]
        if value in seen:
            failures.append(
                Instance(
                    condition="augmentation-retract",
                    index=(),
                    role="unit-injectivity",
                    kind="not-injective",
                    witness=(seen[value], z),
                )
            )
            break
        seen[value] = z

    return report_from_failures(failures, scope=scope, checked_count=5)
