"""Finite truncated simplicial sets.

A truncated simplicial set stores levels ``0..t`` as finite sets of
string identifiers together with total face and degeneracy tables.
Degenerate elements are stored densely in the level tables rather than
being reconstructed on demand; validation checks every simplicial
identity whose indices fit inside the truncation.

The module also provides the standard simplices, nerves of finite
categories (including finite posets), enumeration of simplicial maps,
and levelwise strict pullbacks — the building blocks for the condition
checkers defined elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .report import CheckReport, Instance, report_from_failures
from .simplex import (
    MonotoneMap,
    codegeneracy,
    coface,
    compose_monotone,
    enumerate_monotone,
    identity_monotone,
    peel_generators,
    vertex_inclusion,
)

Table = dict[str, str]


@dataclass(frozen=True)
class TruncatedSimplicialSet:
    """Levels ``0..truncation`` with face and degeneracy tables.

    ``levels[n]`` lists the element identifiers of level ``n`` in a
    fixed order.  ``faces[(n, i)]`` maps level ``n`` to level ``n - 1``
    for ``1 <= n <= truncation`` and ``0 <= i <= n``;
    ``degeneracies[(n, i)]`` maps level ``n`` to level ``n + 1`` for
    ``0 <= n < truncation`` and ``0 <= i <= n``.

    Construction does not validate; see ``validate_simplicial``.
    Objects are treated as immutable after construction.
    """

    truncation: int
    levels: tuple[tuple[str, ...], ...]
    faces: dict[tuple[int, int], Table]
    degeneracies: dict[tuple[int, int], Table]

    def __post_init__(self) -> None:
        if self.truncation < 0:
            raise ValueError(f"truncation must be >= 0, got {self.truncation}")
        object.__setattr__(
            self, "levels", tuple(tuple(level) for level in self.levels)
        )
        if len(self.levels) != self.truncation + 1:
            raise ValueError(
                f"need {self.truncation + 1} levels for truncation "
                f"{self.truncation}, got {len(self.levels)}"
            )
        object.__setattr__(
            self,
            "faces",
            {key: dict(table) for key, table in self.faces.items()},
        )
        object.__setattr__(
            self,
            "degeneracies",
            {key: dict(table) for key, table in self.degeneracies.items()},
        )

    def level(self, n: int) -> tuple[str, ...]:
        return self.levels[n]

    def face(self, n: int, i: int, x: str) -> str:
        """The ``i``-th face of the level-``n`` element ``x``."""
        return self.faces[(n, i)][x]

    def degeneracy(self, n: int, i: int, x: str) -> str:
        """The ``i``-th degeneracy of the level-``n`` element ``x``."""
        return self.degeneracies[(n, i)][x]

    def apply(self, f: MonotoneMap, x: str) -> str:
        """Apply the contravariant action of a monotone map ``f: [m] -> [n]``.

        ``x`` must live in level ``n = f.codomain_size``; the result
        lives in level ``m = f.domain_size``.  The action peels ``f``
        into generators: faces first (largest omitted vertex first),
        then degeneracies.
        """
        level = f.codomain_size
        for tag, index in peel_generators(f):
            if tag == "coface":
                x = self.face(level, index, x)
                level -= 1
            else:
                x = self.degeneracy(level, index, x)
                level += 1
        return x

    def degenerate_elements(self, n: int) -> frozenset[str]:
        """The degenerate elements of level ``n`` (empty for ``n = 0``)."""
        if n == 0:
            return frozenset()
        out: set[str] = set()
        for i in range(n):
            out.update(self.degeneracies[(n - 1, i)].values())
        return frozenset(out)

    def nondegenerate_presentation(self, n: int, x: str) -> tuple[MonotoneMap, str]:
        """The unique pair ``(e, y)`` with ``y`` nondegenerate and ``x = X(e)(y)``.

        ``e`` is a monotone surjection ``[n] -> [m]`` and ``y`` lives in
        level ``m``; for nondegenerate ``x`` this is the identity pair.
        """
        epi = identity_monotone(n)
        level = n
        while True:
            found = None
            for i in range(level):
                table = self.degeneracies[(level - 1, i)]
                for y in self.levels[level - 1]:
                    if table[y] == x:
                        found = (i, y)
                        break
                if found:
                    break
            if found is None:
                return epi, x
            i, y = found
            epi = compose_monotone(codegeneracy(level - 1, i), epi)
            x = y
            level -= 1


def validate_simplicial(X: TruncatedSimplicialSet) -> CheckReport:
    """Check table shape and every in-range simplicial identity.

    Structural problems (duplicate identifiers, missing or ill-typed
    table entries) are reported with condition ``"table-structure"``;
    when the structure is sound, every violated identity is reported
    with condition ``"simplicial-identity"``, the identity named in the
    role field, and a witness element.
    """
    t = X.truncation
    scope = f"levels 0..{t}"
    failures = _structural_failures(X)
    if failures:
        return report_from_failures(failures, scope, checked_count=1)
    failures.extend(_identity_failures(X))
    return report_from_failures(failures, scope, checked_count=1)


def _structural_failures(X: TruncatedSimplicialSet) -> list[Instance]:
    t = X.truncation
    failures: list[Instance] = []
    for n, level in enumerate(X.levels):
        if len(set(level)) != len(level):
            seen: set[str] = set()
            dup = next(x for x in level if x in seen or seen.add(x))
            failures.append(
                Instance(
                    condition="table-structure",
                    index=(n,),
                    role="duplicate identifier",
                    kind="structural",
                    witness=(dup,),
                )
            )
    expected_faces = {(n, i) for n in range(1, t + 1) for i in range(n + 1)}
    expected_degens = {(n, i) for n in range(t) for i in range(n + 1)}
    for name, tables, expected in (
        ("face", X.faces, expected_faces),
        ("degeneracy", X.degeneracies, expected_degens),
    ):
        for key in sorted(expected - set(tables)):
            failures.append(
                Instance(
                    condition="table-structure",
                    index=key,
                    role=f"missing {name} table",
                    kind="structural",
                    witness=(),
                )
            )
        for key in sorted(set(tables) - expected):
            failures.append(
                Instance(
                    condition="table-structure",
                    index=key,
                    role=f"unexpected {name} table",
                    kind="structural",
                    witness=(),
                )
            )
        for key in sorted(expected & set(tables)):
            n, i = key
            target_level = n - 1 if name == "face" else n + 1
            table = tables[key]
            domain = set(X.levels[n])
            codomain = set(X.levels[target_level])
            for x in sorted(domain - set(table)):
                failures.append(
                    Instance(
                        condition="table-structure",
                        index=key,
                        role=f"missing {name} entry",
                        kind="structural",
                        witness=(x,),
                    )
                )
            for x in sorted(set(table) - domain):
                failures.append(
                    Instance(
                        condition="table-structure",
                        index=key,
                        role=f"{name} entry for unknown element",
                        kind="structural",
                        witness=(x,),
                    )
                )
            for x in sorted(domain & set(table)):
                if table[x] not in codomain:
                    failures.append(
                        Instance(
                            condition="table-structure",
                            index=key,
                            role=f"{name} value outside target level",
                            kind="structural",
                            witness=(x, table[x]),
                        )
                    )
    return failures


def _identity_failures(X: TruncatedSimplicialSet) -> list[Instance]:
    t = X.truncation
    failures: list[Instance] = []

    def fail(role: str, index: tuple, witness: tuple) -> None:
        failures.append(
            Instance(
                condition="simplicial-identity",
                index=index,
                role=role,
                kind="structural",
                witness=witness,
            )
        )

    for n in range(2, t + 1):
        for j in range(1, n + 1):
            for i in range(j):
                for x in X.levels[n]:
                    lhs = X.face(n - 1, i, X.face(n, j, x))
                    rhs = X.face(n - 1, j - 1, X.face(n, i, x))
                    if lhs != rhs:
                        fail("d_i d_j = d_{j-1} d_i", (n, i, j), (x, lhs, rhs))
    for n in range(t - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                for x in X.levels[n]:
                    lhs = X.degeneracy(n + 1, i, X.degeneracy(n, j, x))
                    rhs = X.degeneracy(n + 1, j + 1, X.degeneracy(n, i, x))
                    if lhs != rhs:
                        fail("s_i s_j = s_{j+1} s_i", (n, i, j), (x, lhs, rhs))
    for n in range(t):
        for j in range(n + 1):
            for i in range(n + 2):
                for x in X.levels[n]:
                    got = X.face(n + 1, i, X.degeneracy(n, j, x))
                    if i == j or i == j + 1:
                        if got != x:
                            fail("d_i s_j = id", (n, i, j), (x, got))
                    elif i < j:
                        want = X.degeneracy(n - 1, j - 1, X.face(n, i, x))
                        if got != want:
                            fail("d_i s_j = s_{j-1} d_i", (n, i, j), (x, got, want))
                    else:
                        want = X.degeneracy(n - 1, j, X.face(n, i - 1, x))
                        if got != want:
                            fail("d_i s_j = s_j d_{i-1}", (n, i, j), (x, got, want))
    return failures


# ---------------------------------------------------------------------------
# Constructions


def simplex_element_id(f: MonotoneMap) -> str:
    """Identifier for an element of a standard simplex: its value list.

    Digits are concatenated while the codomain is ``[9]`` or smaller;
    larger codomains separate values with dashes.
    """
    if f.codomain_size <= 9:
        return "".join(str(v) for v in f.values)
    return "-".join(str(v) for v in f.values)


def standard_simplex(n: int, t: int) -> TruncatedSimplicialSet:
    """The standard ``n``-simplex truncated at level ``t``.

    Level ``m`` is the set of monotone maps ``[m] -> [n]``; faces and
    degeneracies act by precomposition with cofaces and codegeneracies.
    """
    if n < 0 or t < 0:
        raise ValueError(f"need n, t >= 0, got ({n}, {t})")
    levels = tuple(
        tuple(simplex_element_id(f) for f in enumerate_monotone(m, n))
        for m in range(t + 1)
    )
    faces: dict[tuple[int, int], Table] = {}
    degeneracies: dict[tuple[int, int], Table] = {}
    for m in range(1, t + 1):
        for i in range(m + 1):
            delta = coface(m, i)
            faces[(m, i)] = {
                simplex_element_id(f): simplex_element_id(compose_monotone(delta, f))
                for f in enumerate_monotone(m, n)
            }
    for m in range(t):
        for i in range(m + 1):
            sigma = codegeneracy(m, i)
            degeneracies[(m, i)] = {
                simplex_element_id(f): simplex_element_id(compose_monotone(sigma, f))
                for f in enumerate_monotone(m, n)
            }
    return TruncatedSimplicialSet(t, levels, faces, degeneracies)


@dataclass(frozen=True)
class FiniteCategoryData:
    """A finite category given by explicit tables.

    ``composition[(f, g)]`` is defined exactly when ``target[f] ==
    source[g]`` and holds the composite "``f`` then ``g``".
    """

    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    source: dict[str, str]
    target: dict[str, str]
    identity: dict[str, str]
    composition: dict[tuple[str, str], str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", tuple(self.morphisms))
        object.__setattr__(self, "source", dict(self.source))
        object.__setattr__(self, "target", dict(self.target))
        object.__setattr__(self, "identity", dict(self.identity))
        object.__setattr__(self, "composition", dict(self.composition))

    def compose(self, f: str, g: str) -> str:
        """The composite "``f`` then ``g``"."""
        return self.composition[(f, g)]


def validate_category(C: FiniteCategoryData) -> CheckReport:
    """Check totality of the tables plus unit and associativity laws."""
    failures: list[Instance] = []

    def fail(role: str, index: tuple, witness: tuple) -> None:
        failures.append(
            Instance(
                condition="category-laws",
                index=index,
                role=role,
                kind="structural",
                witness=witness,
            )
        )

    objects = set(C.objects)
    morphisms = set(C.morphisms)
    for f in C.morphisms:
        if C.source.get(f) not in objects or C.target.get(f) not in objects:
            fail("source/target missing or unknown", (), (f,))
    for a in C.objects:
        e = C.identity.get(a)
        if e not in morphisms or C.source.get(e) != a or C.target.get(e) != a:
            fail("identity missing or not an endomorphism", (), (a,))
    if failures:
        return report_from_failures(failures, "category tables", checked_count=1)
    for f in C.morphisms:
        for g in C.morphisms:
            composable = C.target[f] == C.source[g]
            defined = (f, g) in C.composition
            if composable != defined:
                fail("composition defined iff composable", (), (f, g))
                continue
            if not defined:
                continue
            h = C.composition[(f, g)]
            if h not in morphisms or C.source[h] != C.source[f] or C.target[h] != C.target[g]:
                fail("composite has wrong endpoints", (), (f, g, h))
    if failures:
        return report_from_failures(failures, "category tables", checked_count=1)
    for f in C.morphisms:
        if C.compose(C.identity[C.source[f]], f) != f:
            fail("left unit law", (), (f,))
        if C.compose(f, C.identity[C.target[f]]) != f:
            fail("right unit law", (), (f,))
    for f in C.morphisms:
        for g in C.morphisms:
            if C.target[f] != C.source[g]:
                continue
            fg = C.compose(f, g)
            for h in C.morphisms:
                if C.target[g] != C.source[h]:
                    continue
                if C.compose(fg, h) != C.compose(f, C.compose(g, h)):
                    fail("associativity", (), (f, g, h))
    return report_from_failures(failures, "category laws", checked_count=1)


def chain_id(object_id: str, morphism_ids: tuple[str, ...]) -> str:
    """Identifier of a nerve chain: the object for length 0, else a join."""
    if not morphism_ids:
        return object_id
    return "|".join(morphism_ids)


def nerve_category(C: FiniteCategoryData, t: int) -> TruncatedSimplicialSet:
    """The nerve of a finite category, truncated at level ``t``.

    Level ``n`` holds the composable chains of ``n`` morphisms; inner
    faces compose adjacent morphisms, outer faces drop an end,
    degeneracies insert identities.
    """
    chains: list[list[tuple[str, tuple[str, ...]]]] = [
        [(a, ()) for a in C.objects]
    ]
    for n in range(1, t + 1):
        level: list[tuple[str, tuple[str, ...]]] = []
        for start, morphs in chains[n - 1]:
            tip = C.target[morphs[-1]] if morphs else start
            for g in C.morphisms:
                if C.source[g] == tip:
                    level.append((start, morphs + (g,)))
        chains.append(level)

    levels = tuple(
        tuple(chain_id(start, morphs) for start, morphs in level) for level in chains
    )

    def face_chain(start: str, morphs: tuple[str, ...], i: int) -> str:
        n = len(morphs)
        if n == 1:
            return C.target[morphs[0]] if i == 0 else C.source[morphs[0]]
        if i == 0:
            return chain_id(C.target[morphs[0]], morphs[1:])
        if i == n:
            return chain_id(start, morphs[:-1])
        merged = morphs[: i - 1] + (C.compose(morphs[i - 1], morphs[i]),) + morphs[i + 1 :]
        return chain_id(start, merged)

    def degeneracy_chain(start: str, morphs: tuple[str, ...], i: int) -> str:
        vertex = start
        for k in range(i):
            vertex = C.target[morphs[k]]
        inserted = morphs[:i] + (C.identity[vertex],) + morphs[i:]
        return chain_id(start, inserted)

    faces: dict[tuple[int, int], Table] = {}
    degeneracies: dict[tuple[int, int], Table] = {}
    for n in range(1, t + 1):
        for i in range(n + 1):
            faces[(n, i)] = {
                chain_id(start, morphs): face_chain(start, morphs, i)
                for start, morphs in chains[n]
            }
    for n in range(t):
        for i in range(n + 1):
            degeneracies[(n, i)] = {
                chain_id(start, morphs): degeneracy_chain(start, morphs, i)
                for start, morphs in chains[n]
            }
    return TruncatedSimplicialSet(t, levels, faces, degeneracies)


def poset_category(elements: Iterable[str], covers: Iterable[tuple[str, str]]) -> FiniteCategoryData:
    """The category of a finite poset given by elements and covering pairs.

    The order is the reflexive-transitive closure of ``covers``.  The
    morphism ``a <= b`` is named ``f"{a}{b}"`` when every element is a
    single character, ``f"{a}->{b}"`` otherwise.
    """
    elements = tuple(elements)
    below: dict[str, set[str]] = {a: {a} for a in elements}
    changed = True
    while changed:
        changed = False
        for a, b in covers:
            for c in elements:
                if a in below[c] and b not in below[c]:
                    below[c].add(b)
                    changed = True
    for a, b in covers:
        if a in below[b] and a != b:
            raise ValueError(f"covers are cyclic at {a!r}, {b!r}")

    compact = all(len(a) == 1 for a in elements)

    def morphism_id(a: str, b: str) -> str:
        return f"{a}{b}" if compact else f"{a}->{b}"

    pairs = [(a, b) for a in elements for b in elements if b in below[a]]
    morphisms = tuple(morphism_id(a, b) for a, b in pairs)
    source = {morphism_id(a, b): a for a, b in pairs}
    target = {morphism_id(a, b): b for a, b in pairs}
    identity = {a: morphism_id(a, a) for a in elements}
    composition = {
        (morphism_id(a, b), morphism_id(b2, c)): morphism_id(a, c)
        for a, b in pairs
        for b2, c in pairs
        if b == b2
    }
    return FiniteCategoryData(elements, morphisms, source, target, identity, composition)


# ---------------------------------------------------------------------------
# Maps, homs, pullbacks


@dataclass(frozen=True)
class SimplicialMap:
    """A level-indexed family of tables commuting with the structure maps."""

    source: TruncatedSimplicialSet
    target: TruncatedSimplicialSet
    components: tuple[Table, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "components", tuple(dict(c) for c in self.components)
        )

    def __call__(self, n: int, x: str) -> str:
        return self.components[n][x]

    def is_natural(self) -> bool:
        """Exact check that every structure square commutes."""
        X, Y = self.source, self.target
        if X.truncation != Y.truncation:
            return False
        if len(self.components) != X.truncation + 1:
            return False
        for n, level in enumerate(X.levels):
            comp = self.components[n]
            if set(comp) != set(level):
                return False
            targets = set(Y.levels[n])
            if not all(v in targets for v in comp.values()):
                return False
        for (n, i), table in X.faces.items():
            for x, y in table.items():
                if Y.face(n, i, self(n, x)) != self(n - 1, y):
                    return False
        for (n, i), table in X.degeneracies.items():
            for x, y in table.items():
                if Y.degeneracy(n, i, self(n, x)) != self(n + 1, y):
                    return False
        return True

    def is_levelwise_bijective(self) -> bool:
        return all(
            len(set(comp.values())) == len(comp) == len(self.target.levels[n])
            for n, comp in enumerate(self.components)
        )


def identity_map(X: TruncatedSimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, tuple({x: x for x in level} for level in X.levels))


def compose_simplicial_maps(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """The composite ``g after f``."""
    return SimplicialMap(
        f.source,
        g.target,
        tuple(
            {x: g(n, y) for x, y in comp.items()}
            for n, comp in enumerate(f.components)
        ),
    )


def hom_simplicial(
    X: TruncatedSimplicialSet, Y: TruncatedSimplicialSet
) -> tuple[SimplicialMap, ...]:
    """All simplicial maps ``X -> Y`` between equal truncations.

    Enumeration assigns images of nondegenerate elements level by level
    (candidates cut down by the already-assigned faces), forces the
    degenerate images through their unique nondegenerate presentation,
    and verifies full naturality before accepting a candidate.  The
    result is deterministically ordered.
    """
    if X.truncation != Y.truncation:
        raise ValueError(
            f"hom requires equal truncations, got {X.truncation} != {Y.truncation}"
        )
    t = X.truncation
    fibers: dict[tuple[int, int], dict[str, set[str]]] = {}
    for (n, i), table in Y.faces.items():
        fiber: dict[str, set[str]] = {}
        for x, y in table.items():
            fiber.setdefault(y, set()).add(x)
        fibers[(n, i)] = fiber

    nondegen = [
        [x for x in X.levels[n] if x not in X.degenerate_elements(n)]
        for n in range(t + 1)
    ]
    presentations = {
        n: {x: X.nondegenerate_presentation(n, x) for x in X.levels[n]}
        for n in range(t + 1)
    }

    results: list[SimplicialMap] = []
    assignment: list[Table] = [dict() for _ in range(t + 1)]

    def extend_level(n: int) -> bool:
        """Force degenerate images at level ``n``; fail on inconsistency."""
        for x in X.levels[n]:
            epi, core = presentations[n][x]
            if epi.is_identity:
                continue
            assignment[n][x] = Y.apply(epi, assignment[epi.codomain_size][core])
        return True

    def candidates(n: int, x: str) -> list[str]:
        if n == 0:
            return list(Y.levels[0])
        pools = []
        for i in range(n + 1):
            fy = assignment[n - 1][X.face(n, i, x)]
            pools.append(fibers[(n, i)].get(fy, set()))
        smallest = min(pools, key=len)
        ordered = [y for y in Y.levels[n] if y in smallest]
        return [y for y in ordered if all(y in pool for pool in pools)]

    def solve(n: int, k: int) -> None:
        if n > t:
            candidate = SimplicialMap(X, Y, tuple(dict(a) for a in assignment))
            if candidate.is_natural():
                results.append(candidate)
            return
        if k == 0:
            extend_level(n)
        if k == len(nondegen[n]):
            solve(n + 1, 0)
            return
        x = nondegen[n][k]
        for y in candidates(n, x):
            assignment[n][x] = y
            solve(n, k + 1)
            del assignment[n][x]

    solve(0, 0)
    order = [(n, x) for n in range(t + 1) for x in X.levels[n]]
    results.sort(key=lambda m: tuple(m(n, x) for n, x in order))
    return tuple(results)


def classifying_map(
    X: TruncatedSimplicialSet, n: int, x: str
) -> SimplicialMap:
    """The unique simplicial map ``standard_simplex(n, t) -> X`` sending
    the top cell to ``x`` (the representable element's evaluation map)."""
    t = X.truncation
    if not 0 <= n <= t:
        raise ValueError(f"level {n} outside truncation 0..{t}")
    simplex = standard_simplex(n, t)
    components = tuple(
        {
            simplex_element_id(g): X.apply(g, x)
            for g in enumerate_monotone(m, n)
        }
        for m in range(t + 1)
    )
    return SimplicialMap(simplex, X, components)


@dataclass(frozen=True)
class PullbackSet:
    """The strict pullback of two tables with a common codomain."""

    pairs: tuple[tuple[str, str], ...]

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return pair in set(self.pairs)


def level_pullback(f: Mapping[str, str], g: Mapping[str, str]) -> PullbackSet:
    """``{(a, b) | f(a) = g(b)}`` with projections implicit in the pairs.

    Iteration order follows the table orders of ``f`` then ``g``.
    """
    by_value: dict[str, list[str]] = {}
    for b, c in g.items():
        by_value.setdefault(c, []).append(b)
    pairs = [(a, b) for a, c in f.items() for b in by_value.get(c, [])]
    return PullbackSet(tuple(pairs))


def vertex_subset_table(
    X: TruncatedSimplicialSet, n: int, vertices: tuple[int, ...]
) -> Table:
    """The table ``X_n -> X_{len(vertices) - 1}`` restricting to a vertex set.

    Computed as a composite of faces dropping the omitted vertices,
    largest omitted vertex first.
    """
    inclusion = vertex_inclusion(vertices, n)
    return {x: X.apply(inclusion, x) for x in X.levels[n]}


def restrict_sset(X: TruncatedSimplicialSet, t_new: int) -> TruncatedSimplicialSet:
    """Forget the levels above ``t_new``."""
    if not 0 <= t_new <= X.truncation:
        raise ValueError(
            f"new truncation {t_new} outside 0..{X.truncation}"
        )
    return TruncatedSimplicialSet(
        t_new,
        X.levels[: t_new + 1],
        {key: table for key, table in X.faces.items() if key[0] <= t_new},
        {key: table for key, table in X.degeneracies.items() if key[0] < t_new},
    )
