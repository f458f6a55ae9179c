"""Finite preaugmented bisimplicial sets.

A preaugmented bisimplicial set stores finite levels ``D(a, b)`` for
every bidegree with total degree ``a + 1 + b`` at most the truncation
``T``, one extra augmentation level ``D(-1)``, and a single table
``eps: D(-1) -> D(0, 0)``.  The bidegree levels carry vertical and
horizontal face/degeneracy tables subject to the bisimplicial
identities; ``eps`` satisfies no equation.

The module provides validation, truncation, enumeration of maps of
preaugmented bisimplicial sets (both a propagating solver and a naive
oracle), and the interval-tensor used to confirm that mapping objects
into levelwise-discrete targets carry no higher simplicial directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .report import CheckReport, Instance, report_from_failures
from .simplex import MonotoneMap, peel_generators

Table = dict[str, str]
Bidegree = tuple[int, int]

#: Level key for the augmentation level in map components and file tables.
AUG = "-1"


def bidegrees_within(total_truncation: int) -> tuple[Bidegree, ...]:
    """All bidegrees ``(a, b)`` with ``a + 1 + b <= total_truncation``,
    ordered by total degree, then by ``a``."""
    out = [
        (a, b)
        for total in range(1, total_truncation + 1)
        for a in range(total)
        for b in [total - 1 - a]
    ]
    out.sort(key=lambda ab: (ab[0] + ab[1], ab[0]))
    return tuple(out)


@dataclass(frozen=True)
class PreaugBisimplicialSet:
    """Bidegree levels, an augmentation level, and their structure tables.

    Tables are keyed by source bidegree: ``vertical_faces[(a, b, i)]``
    maps ``D(a, b) -> D(a - 1, b)`` for ``a >= 1`` and ``0 <= i <= a``;
    ``vertical_degeneracies[(a, b, i)]`` maps ``D(a, b) -> D(a + 1, b)``
    whenever the target bidegree is inside the truncation; horizontal
    tables mirror this in the second coordinate.  ``eps`` maps the
    augmentation level into ``D(0, 0)`` and satisfies no equation.
    """

    total_truncation: int
    levels: dict[Bidegree, tuple[str, ...]]
    augmentation: tuple[str, ...]
    vertical_faces: dict[tuple[int, int, int], Table]
    vertical_degeneracies: dict[tuple[int, int, int], Table]
    horizontal_faces: dict[tuple[int, int, int], Table]
    horizontal_degeneracies: dict[tuple[int, int, int], Table]
    eps: Table

    def __post_init__(self) -> None:
        if self.total_truncation < 1:
            raise ValueError(
                f"total truncation must be >= 1, got {self.total_truncation}"
            )
        object.__setattr__(
            self,
            "levels",
            {key: tuple(level) for key, level in self.levels.items()},
        )
        object.__setattr__(self, "augmentation", tuple(self.augmentation))
        for name in (
            "vertical_faces",
            "vertical_degeneracies",
            "horizontal_faces",
            "horizontal_degeneracies",
        ):
            object.__setattr__(
                self, name, {k: dict(v) for k, v in getattr(self, name).items()}
            )
        object.__setattr__(self, "eps", dict(self.eps))

    def bidegrees(self) -> tuple[Bidegree, ...]:
        return bidegrees_within(self.total_truncation)

    def level(self, a: int, b: int) -> tuple[str, ...]:
        return self.levels[(a, b)]

    def vface(self, a: int, b: int, i: int, x: str) -> str:
        return self.vertical_faces[(a, b, i)][x]

    def vdeg(self, a: int, b: int, i: int, x: str) -> str:
        return self.vertical_degeneracies[(a, b, i)][x]

    def hface(self, a: int, b: int, i: int, x: str) -> str:
        return self.horizontal_faces[(a, b, i)][x]

    def hdeg(self, a: int, b: int, i: int, x: str) -> str:
        return self.horizontal_degeneracies[(a, b, i)][x]

    def vertical_top(self, a: int, b: int, k: int, x: str) -> str:
        """Iterated top vertical face ``D(a, b) -> D(k, b)``: drop the
        highest vertical vertices, highest index first."""
        for level in range(a, k, -1):
            x = self.vface(level, b, level, x)
        return x

    def vertical_bottom(self, a: int, b: int, k: int, x: str) -> str:
        """Iterated bottom vertical face ``D(a, b) -> D(k, b)``: apply
        the 0-th vertical face ``a - k`` times."""
        for level in range(a, k, -1):
            x = self.vface(level, b, 0, x)
        return x

    def horizontal_top(self, a: int, b: int, k: int, x: str) -> str:
        for level in range(b, k, -1):
            x = self.hface(a, level, level, x)
        return x

    def horizontal_bottom(self, a: int, b: int, k: int, x: str) -> str:
        for level in range(b, k, -1):
            x = self.hface(a, level, 0, x)
        return x

    def apply_bi(self, fv: MonotoneMap, fh: MonotoneMap, x: str) -> str:
        """Contravariant action of a pair of monotone maps.

        ``x`` lives at bidegree ``(fv.codomain_size, fh.codomain_size)``;
        the result lives at ``(fv.domain_size, fh.domain_size)``.
        """
        a, b = fv.codomain_size, fh.codomain_size
        for tag, index in peel_generators(fv):
            if tag == "coface":
                x = self.vface(a, b, index, x)
                a -= 1
            else:
                x = self.vdeg(a, b, index, x)
                a += 1
        for tag, index in peel_generators(fh):
            if tag == "coface":
                x = self.hface(a, b, index, x)
                b -= 1
            else:
                x = self.hdeg(a, b, index, x)
                b += 1
        return x

    def degenerate_elements(self, a: int, b: int) -> frozenset[str]:
        """Elements of ``D(a, b)`` hit by a vertical or horizontal degeneracy."""
        out: set[str] = set()
        for i in range(a):
            out.update(self.vertical_degeneracies[(a - 1, b, i)].values())
        for i in range(b):
            out.update(self.horizontal_degeneracies[(a, b - 1, i)].values())
        return frozenset(out)

    def nondegenerate_presentation(
        self, a: int, b: int, x: str
    ) -> tuple[tuple[int, ...], tuple[int, ...], str]:
        """Strip degeneracies: returns ``(vertical_js, horizontal_js, core)``.

        ``x`` equals the core pushed back up by the vertical degeneracy
        indices (applied last-listed first) and then the horizontal
        ones; the core is nondegenerate in both directions.  Only used
        internally; the solver relies on face propagation instead.
        """
        v_indices: list[int] = []
        h_indices: list[int] = []
        changed = True
        while changed:
            changed = False
            for i in range(a):
                table = self.vertical_degeneracies[(a - 1, b, i)]
                for y, image in table.items():
                    if image == x:
                        v_indices.append(i)
                        x, a = y, a - 1
                        changed = True
                        break
                if changed:
                    break
            if changed:
                continue
            for i in range(b):
                table = self.horizontal_degeneracies[(a, b - 1, i)]
                for y, image in table.items():
                    if image == x:
                        h_indices.append(i)
                        x, b = y, b - 1
                        changed = True
                        break
                if changed:
                    break
        return tuple(v_indices), tuple(h_indices), x


def validate_preaug(D: PreaugBisimplicialSet) -> CheckReport:
    """Check table shape and all in-range bisimplicial identities.

    The augmentation table must be total into ``D(0, 0)`` but satisfies
    no equation.
    """
    T = D.total_truncation
    scope = f"bidegrees with total degree <= {T}"
    failures = _structural_failures_preaug(D)
    if failures:
        return report_from_failures(failures, scope, checked_count=1)
    failures.extend(_identity_failures_preaug(D))
    return report_from_failures(failures, scope, checked_count=1)


def _expected_tables(
    D: PreaugBisimplicialSet,
) -> dict[str, dict[tuple[int, int, int], Bidegree]]:
    """Required table keys, each mapped to its target bidegree."""
    inside = set(D.bidegrees())
    expected: dict[str, dict[tuple[int, int, int], Bidegree]] = {
        "vertical_faces": {},
        "vertical_degeneracies": {},
        "horizontal_faces": {},
        "horizontal_degeneracies": {},
    }
    for a, b in inside:
        if a >= 1:
            for i in range(a + 1):
                expected["vertical_faces"][(a, b, i)] = (a - 1, b)
        if b >= 1:
            for i in range(b + 1):
                expected["horizontal_faces"][(a, b, i)] = (a, b - 1)
        if (a + 1, b) in inside:
            for i in range(a + 1):
                expected["vertical_degeneracies"][(a, b, i)] = (a + 1, b)
        if (a, b + 1) in inside:
            for i in range(b + 1):
                expected["horizontal_degeneracies"][(a, b, i)] = (a, b + 1)
    return expected


def _structural_failures_preaug(D: PreaugBisimplicialSet) -> list[Instance]:
    failures: list[Instance] = []

    def fail(role: str, index: tuple, witness: tuple) -> None:
        failures.append(
            Instance(
                condition="table-structure",
                index=index,
                role=role,
                kind="structural",
                witness=witness,
            )
        )

    inside = set(bidegrees_within(D.total_truncation))
    if set(D.levels) != inside:
        for key in sorted(inside - set(D.levels)):
            fail("missing level", key, ())
        for key in sorted(set(D.levels) - inside):
            fail("level outside truncation", key, ())
        return failures
    for key, level in D.levels.items():
        if len(set(level)) != len(level):
            fail("duplicate identifier", key, ())
    if len(set(D.augmentation)) != len(D.augmentation):
        fail("duplicate identifier", (-1,), ())

    expected = _expected_tables(D)
    for name, wanted in expected.items():
        tables = getattr(D, name)
        for key in sorted(set(wanted) - set(tables)):
            fail(f"missing {name} table", key, ())
        for key in sorted(set(tables) - set(wanted)):
            fail(f"unexpected {name} table", key, ())
        for key in sorted(set(wanted) & set(tables)):
            a, b, _ = key
            domain = set(D.levels[(a, b)])
            codomain = set(D.levels[wanted[key]])
            table = tables[key]
            for x in sorted(domain - set(table)):
                fail(f"missing {name} entry", key, (x,))
            for x in sorted(set(table) - domain):
                fail(f"{name} entry for unknown element", key, (x,))
            for x in sorted(domain & set(table)):
                if table[x] not in codomain:
                    fail(f"{name} value outside target level", key, (x, table[x]))
    domain = set(D.augmentation)
    codomain = set(D.levels[(0, 0)])
    for z in sorted(domain - set(D.eps)):
        fail("missing eps entry", (-1,), (z,))
    for z in sorted(set(D.eps) - domain):
        fail("eps entry for unknown element", (-1,), (z,))
    for z in sorted(domain & set(D.eps)):
        if D.eps[z] not in codomain:
            fail("eps value outside target level", (-1,), (z, D.eps[z]))
    return failures


def _identity_failures_preaug(D: PreaugBisimplicialSet) -> list[Instance]:
    failures: list[Instance] = []

    def fail(role: str, index: tuple, witness: tuple) -> None:
        failures.append(
            Instance(
                condition="bisimplicial-identity",
                index=index,
                role=role,
                kind="structural",
                witness=witness,
            )
        )

    inside = set(D.bidegrees())

    def in_range(ab: Bidegree) -> bool:
        return ab in inside

    for a, b in D.bidegrees():
        level = D.levels[(a, b)]
        # Vertical simplicial identities at fixed b.
        if a >= 2:
            for j in range(1, a + 1):
                for i in range(j):
                    for x in level:
                        lhs = D.vface(a - 1, b, i, D.vface(a, b, j, x))
                        rhs = D.vface(a - 1, b, j - 1, D.vface(a, b, i, x))
                        if lhs != rhs:
                            fail("vertical d_i d_j = d_{j-1} d_i", (a, b, i, j), (x, lhs, rhs))
        if in_range((a + 2, b)):
            for j in range(a + 1):
                for i in range(j + 1):
                    for x in level:
                        lhs = D.vdeg(a + 1, b, i, D.vdeg(a, b, j, x))
                        rhs = D.vdeg(a + 1, b, j + 1, D.vdeg(a, b, i, x))
                        if lhs != rhs:
                            fail("vertical s_i s_j = s_{j+1} s_i", (a, b, i, j), (x, lhs, rhs))
        if in_range((a + 1, b)):
            for j in range(a + 1):
                for i in range(a + 2):
                    for x in level:
                        got = D.vface(a + 1, b, i, D.vdeg(a, b, j, x))
                        if i == j or i == j + 1:
                            want = x
                        elif i < j:
                            want = D.vdeg(a - 1, b, j - 1, D.vface(a, b, i, x))
                        else:
                            want = D.vdeg(a - 1, b, j, D.vface(a, b, i - 1, x))
                        if got != want:
                            fail("vertical d_i s_j relation", (a, b, i, j), (x, got, want))
        # Horizontal simplicial identities at fixed a.
        if b >= 2:
            for j in range(1, b + 1):
                for i in range(j):
                    for x in level:
                        lhs = D.hface(a, b - 1, i, D.hface(a, b, j, x))
                        rhs = D.hface(a, b - 1, j - 1, D.hface(a, b, i, x))
                        if lhs != rhs:
                            fail("horizontal d_i d_j = d_{j-1} d_i", (a, b, i, j), (x, lhs, rhs))
        if in_range((a, b + 2)):
            for j in range(b + 1):
                for i in range(j + 1):
                    for x in level:
                        lhs = D.hdeg(a, b + 1, i, D.hdeg(a, b, j, x))
                        rhs = D.hdeg(a, b + 1, j + 1, D.hdeg(a, b, i, x))
                        if lhs != rhs:
                            fail("horizontal s_i s_j = s_{j+1} s_i", (a, b, i, j), (x, lhs, rhs))
        if in_range((a, b + 1)):
            for j in range(b + 1):
                for i in range(b + 2):
                    for x in level:
                        got = D.hface(a, b + 1, i, D.hdeg(a, b, j, x))
                        if i == j or i == j + 1:
                            want = x
                        elif i < j:
                            want = D.hdeg(a, b - 1, j - 1, D.hface(a, b, i, x))
                        else:
                            want = D.hdeg(a, b - 1, j, D.hface(a, b, i - 1, x))
                        if got != want:
                            fail("horizontal d_i s_j relation", (a, b, i, j), (x, got, want))
        # Mixed identities: vertical and horizontal operators commute.
        if a >= 1 and b >= 1:
            for i in range(a + 1):
                for j in range(b + 1):
                    for x in level:
                        lhs = D.vface(a, b - 1, i, D.hface(a, b, j, x))
                        rhs = D.hface(a - 1, b, j, D.vface(a, b, i, x))
                        if lhs != rhs:
                            fail("d^v_i d^h_j = d^h_j d^v_i", (a, b, i, j), (x, lhs, rhs))
        if a >= 1 and in_range((a, b + 1)):
            for i in range(a + 1):
                for j in range(b + 1):
                    for x in level:
                        lhs = D.vface(a, b + 1, i, D.hdeg(a, b, j, x))
                        rhs = D.hdeg(a - 1, b, j, D.vface(a, b, i, x))
                        if lhs != rhs:
                            fail("d^v_i s^h_j = s^h_j d^v_i", (a, b, i, j), (x, lhs, rhs))
        if b >= 1 and in_range((a + 1, b)):
            for i in range(a + 1):
                for j in range(b + 1):
                    for x in level:
                        lhs = D.hface(a + 1, b, j, D.vdeg(a, b, i, x))
                        rhs = D.vdeg(a, b - 1, i, D.hface(a, b, j, x))
                        if lhs != rhs:
                            fail("s^v_i d^h_j = d^h_j s^v_i", (a, b, i, j), (x, lhs, rhs))
        if in_range((a + 1, b + 1)):
            for i in range(a + 1):
                for j in range(b + 1):
                    for x in level:
                        lhs = D.hdeg(a + 1, b, j, D.vdeg(a, b, i, x))
                        rhs = D.vdeg(a, b + 1, i, D.hdeg(a, b, j, x))
                        if lhs != rhs:
                            fail("s^v_i s^h_j = s^h_j s^v_i", (a, b, i, j), (x, lhs, rhs))
    return failures


def restrict_truncation(D: PreaugBisimplicialSet, new_total: int) -> PreaugBisimplicialSet:
    """Forget the bidegrees with total degree above ``new_total``."""
    if not 1 <= new_total <= D.total_truncation:
        raise ValueError(
            f"new truncation {new_total} outside 1..{D.total_truncation}"
        )
    keep = set(bidegrees_within(new_total))

    def cut(tables: dict[tuple[int, int, int], Table], degeneracy: bool, vertical: bool):
        out = {}
        for (a, b, i), table in tables.items():
            if (a, b) not in keep:
                continue
            if degeneracy:
                target = (a + 1, b) if vertical else (a, b + 1)
                if target not in keep:
                    continue
            out[(a, b, i)] = table
        return out

    return PreaugBisimplicialSet(
        new_total,
        {key: level for key, level in D.levels.items() if key in keep},
        D.augmentation,
        cut(D.vertical_faces, False, True),
        cut(D.vertical_degeneracies, True, True),
        cut(D.horizontal_faces, False, False),
        cut(D.horizontal_degeneracies, True, False),
        D.eps,
    )


# ---------------------------------------------------------------------------
# Maps and their enumeration


@dataclass(frozen=True)
class PreaugMap:
    """A level-indexed family of tables commuting with all structure
    tables, including the augmentation."""

    source: PreaugBisimplicialSet
    target: PreaugBisimplicialSet
    components: dict[Bidegree, Table]
    augmentation_component: Table

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "components", {k: dict(v) for k, v in self.components.items()}
        )
        object.__setattr__(
            self, "augmentation_component", dict(self.augmentation_component)
        )

    def __call__(self, a: int, b: int, x: str) -> str:
        return self.components[(a, b)][x]

    def at_aug(self, z: str) -> str:
        return self.augmentation_component[z]

    def is_natural(self) -> bool:
        A, B = self.source, self.target
        if A.total_truncation != B.total_truncation:
            return False
        if set(self.components) != set(A.levels):
            return False
        for key, level in A.levels.items():
            comp = self.components[key]
            if set(comp) != set(level):
                return False
            if not set(comp.values()) <= set(B.levels[key]):
                return False
        if set(self.augmentation_component) != set(A.augmentation):
            return False
        if not set(self.augmentation_component.values()) <= set(B.augmentation):
            return False
        for name, degeneracy, vertical in (
            ("vertical_faces", False, True),
            ("vertical_degeneracies", True, True),
            ("horizontal_faces", False, False),
            ("horizontal_degeneracies", True, False),
        ):
            for (a, b, i), table in getattr(A, name).items():
                if vertical:
                    ta, tb = (a + 1, b) if degeneracy else (a - 1, b)
                else:
                    ta, tb = (a, b + 1) if degeneracy else (a, b - 1)
                b_table = getattr(B, name)[(a, b, i)]
                comp = self.components[(a, b)]
                target_comp = self.components[(ta, tb)]
                for x, y in table.items():
                    if b_table[comp[x]] != target_comp[y]:
                        return False
        comp00 = self.components[(0, 0)]
        for z, w in A.eps.items():
            if B.eps[self.augmentation_component[z]] != comp00[w]:
                return False
        return True

    def is_levelwise_bijective(self) -> bool:
        for key, comp in self.components.items():
            if not (len(set(comp.values())) == len(comp) == len(self.target.levels[key])):
                return False
        aug = self.augmentation_component
        return len(set(aug.values())) == len(aug) == len(self.target.augmentation)


def identity_preaug_map(D: PreaugBisimplicialSet) -> PreaugMap:
    return PreaugMap(
        D,
        D,
        {key: {x: x for x in level} for key, level in D.levels.items()},
        {z: z for z in D.augmentation},
    )


def compose_preaug_maps(f: PreaugMap, g: PreaugMap) -> PreaugMap:
    """The composite ``g after f``."""
    return PreaugMap(
        f.source,
        g.target,
        {
            key: {x: g.components[key][y] for x, y in comp.items()}
            for key, comp in f.components.items()
        },
        {z: g.augmentation_component[w] for z, w in f.augmentation_component.items()},
    )


def _structure_arcs(
    A: PreaugBisimplicialSet, B: PreaugBisimplicialSet
) -> list[tuple[object, object, Table, Table]]:
    """All naturality constraints as ``(src_key, dst_key, A_table, B_table)``.

    Keys are bidegree tuples or ``AUG``; the augmentation table is one
    more arc from ``AUG`` to ``(0, 0)``.
    """
    arcs: list[tuple[object, object, Table, Table]] = []
    for name, degeneracy, vertical in (
        ("vertical_faces", False, True),
        ("vertical_degeneracies", True, True),
        ("horizontal_faces", False, False),
        ("horizontal_degeneracies", True, False),
    ):
        b_tables = getattr(B, name)
        for (a, b, i), table in getattr(A, name).items():
            if vertical:
                target = (a + 1, b) if degeneracy else (a - 1, b)
            else:
                target = (a, b + 1) if degeneracy else (a, b - 1)
            arcs.append(((a, b), target, table, b_tables[(a, b, i)]))
    arcs.append((AUG, (0, 0), A.eps, B.eps))
    return arcs


def hom_preaug(
    A: PreaugBisimplicialSet, B: PreaugBisimplicialSet
) -> tuple[PreaugMap, ...]:
    """All maps of preaugmented bisimplicial sets ``A -> B``.

    Solved as a finite constraint problem: one variable per element of
    ``A`` (augmentation included), candidates in the matching level of
    ``B``, one arc per structure-table entry.  Assigning a variable
    propagates along all arcs (forward through tables, backward through
    fibers); search branches on the most constrained variable.  Every
    complete assignment is verified with a full naturality pass before
    being accepted, and the result is deterministically ordered.
    """
    if A.total_truncation != B.total_truncation:
        raise ValueError(
            "hom requires equal total truncations, got "
            f"{A.total_truncation} != {B.total_truncation}"
        )

    level_keys: list[object] = [AUG] + list(A.bidegrees())
    a_levels: dict[object, tuple[str, ...]] = {AUG: A.augmentation}
    b_levels: dict[object, tuple[str, ...]] = {AUG: B.augmentation}
    for key in A.bidegrees():
        a_levels[key] = A.levels[key]
        b_levels[key] = B.levels[key]

    variables: list[tuple[object, str]] = [
        (key, x) for key in level_keys for x in a_levels[key]
    ]
    var_index = {v: k for k, v in enumerate(variables)}
    b_order: dict[object, dict[str, int]] = {
        key: {y: i for i, y in enumerate(b_levels[key])} for key in level_keys
    }

    # Arc bookkeeping.  forward[v] lists (w, B_table): assigning v forces w.
    # backward[v] lists (w, B_fiber): assigning v narrows w through a fiber.
    forward: dict[int, list[tuple[int, Table]]] = {i: [] for i in range(len(variables))}
    backward: dict[int, list[tuple[int, dict[str, frozenset[str]]]]] = {
        i: [] for i in range(len(variables))
    }
    for src_key, dst_key, a_table, b_table in _structure_arcs(A, B):
        fiber: dict[str, set[str]] = {}
        for y, w in b_table.items():
            fiber.setdefault(w, set()).add(y)
        frozen_fiber = {w: frozenset(ys) for w, ys in fiber.items()}
        for x, y in a_table.items():
            v = var_index[(src_key, x)]
            w = var_index[(dst_key, y)]
            forward[v].append((w, b_table))
            backward[w].append((v, frozen_fiber))

    domains: list[set[str] | None] = [
        set(b_levels[key]) for key, _ in variables
    ]
    assigned: list[str | None] = [None] * len(variables)
    degree_order = {
        v: (len(b_levels[key]), key == AUG) for v, (key, _) in enumerate(variables)
    }

    results: list[PreaugMap] = []

    def propagate(v: int, value: str, trail: list[tuple[int, set[str] | None, str | None]]) -> bool:
        queue = [(v, value)]
        while queue:
            v, value = queue.pop()
            if assigned[v] is not None:
                if assigned[v] != value:
                    return False
                continue
            if value not in domains[v]:  # type: ignore[operator]
                return False
            trail.append((v, domains[v], assigned[v]))
            assigned[v] = value
            domains[v] = None
            for w, b_table in forward[v]:
                queue.append((w, b_table[value]))
            for w, fiber in backward[v]:
                allowed = fiber.get(value, frozenset())
                if assigned[w] is not None:
                    if assigned[w] not in allowed:
                        return False
                    continue
                new_domain = domains[w] & allowed  # type: ignore[operator]
                if not new_domain:
                    return False
                if new_domain != domains[w]:
                    trail.append((w, domains[w], None))
                    domains[w] = new_domain
                    if len(new_domain) == 1:
                        queue.append((w, next(iter(new_domain))))
        return True

    def undo(trail: list[tuple[int, set[str] | None, str | None]]) -> None:
        for v, domain, was_assigned in reversed(trail):
            domains[v] = domain
            assigned[v] = was_assigned

    def pick_variable() -> int | None:
        best = None
        best_key = None
        for v in range(len(variables)):
            if assigned[v] is not None:
                continue
            key = (len(domains[v]), degree_order[v], v)  # type: ignore[arg-type]
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def harvest() -> None:
        components: dict[Bidegree, Table] = {key: {} for key in A.bidegrees()}
        aug_component: Table = {}
        for v, (key, x) in enumerate(variables):
            value = assigned[v]
            assert value is not None
            if key == AUG:
                aug_component[x] = value
            else:
                components[key][x] = value  # type: ignore[index]
        candidate = PreaugMap(A, B, components, aug_component)
        if candidate.is_natural():
            results.append(candidate)

    def solve() -> None:
        v = pick_variable()
        if v is None:
            harvest()
            return
        key = variables[v][0]
        options = sorted(domains[v], key=lambda y: b_order[key][y])  # type: ignore[arg-type]
        for value in options:
            trail: list[tuple[int, set[str] | None, str | None]] = []
            if propagate(v, value, trail):
                solve()
            undo(trail)

    solve()
    results.sort(
        key=lambda m: tuple(
            m.augmentation_component[x] if key == AUG else m.components[key][x]  # type: ignore[index]
            for key, x in variables
        )
    )
    return tuple(results)


def hom_preaug_naive(
    A: PreaugBisimplicialSet, B: PreaugBisimplicialSet
) -> tuple[PreaugMap, ...]:
    """Brute-force oracle: every per-element assignment, filtered by a
    full naturality check.  Only usable on small search spaces; see
    ``naive_search_space`` to bound the cost first."""
    if A.total_truncation != B.total_truncation:
        raise ValueError("hom requires equal total truncations")
    level_keys: list[object] = [AUG] + list(A.bidegrees())
    a_levels: dict[object, tuple[str, ...]] = {AUG: A.augmentation, **A.levels}
    b_levels: dict[object, tuple[str, ...]] = {AUG: B.augmentation, **B.levels}
    variables = [(key, x) for key in level_keys for x in a_levels[key]]
    pools = [b_levels[key] for key, _ in variables]
    results = []
    for choice in product(*pools):
        components: dict[Bidegree, Table] = {key: {} for key in A.bidegrees()}
        aug_component: Table = {}
        for (key, x), value in zip(variables, choice):
            if key == AUG:
                aug_component[x] = value
            else:
                components[key][x] = value  # type: ignore[index]
        candidate = PreaugMap(A, B, components, aug_component)
        if candidate.is_natural():
            results.append(candidate)
    order = variables
    results.sort(
        key=lambda m: tuple(
            m.augmentation_component[x] if key == AUG else m.components[key][x]  # type: ignore[index]
            for key, x in order
        )
    )
    return tuple(results)


def naive_search_space(A: PreaugBisimplicialSet, B: PreaugBisimplicialSet) -> int:
    """Number of raw assignments the naive oracle would enumerate."""
    total = len(B.augmentation) ** len(A.augmentation)
    for key, level in A.levels.items():
        total *= len(B.levels[key]) ** len(level)
    return total


def tensor_with_interval_vertices(
    A: PreaugBisimplicialSet, vertex_count: int
) -> PreaugBisimplicialSet:
    """Levelwise product of ``A`` with a finite vertex set.

    This is the vertex part of tensoring ``A`` with a connected
    simplicial set; structure maps act on the first coordinate only.
    Used by ``interval_tensor_maps`` to confirm that mapping into a
    levelwise-discrete target ignores the extra direction.
    """
    if vertex_count < 1:
        raise ValueError("need at least one vertex")

    def spread(level: tuple[str, ...]) -> tuple[str, ...]:
        return tuple(f"{x}@{v}" for v in range(vertex_count) for x in level)

    def spread_table(table: Table) -> Table:
        return {
            f"{x}@{v}": f"{y}@{v}"
            for v in range(vertex_count)
            for x, y in table.items()
        }

    return PreaugBisimplicialSet(
        A.total_truncation,
        {key: spread(level) for key, level in A.levels.items()},
        spread(A.augmentation),
        {k: spread_table(t) for k, t in A.vertical_faces.items()},
        {k: spread_table(t) for k, t in A.vertical_degeneracies.items()},
        {k: spread_table(t) for k, t in A.horizontal_faces.items()},
        {k: spread_table(t) for k, t in A.horizontal_degeneracies.items()},
        spread_table(A.eps),
    )


def interval_tensor_maps(
    A: PreaugBisimplicialSet, B: PreaugBisimplicialSet, vertex_count: int
) -> tuple[PreaugMap, ...]:
    """Maps out of the tensor of ``A`` with a connected simplicial set
    having ``vertex_count`` vertices, into a levelwise-discrete ``B``.

    Connectedness means a map must take the same value on all copies
    ``x@v`` of an element ``x``; the function enumerates maps from the
    materialized tensor and keeps exactly those.
    """
    doubled = tensor_with_interval_vertices(A, vertex_count)
    kept = []
    for f in hom_preaug(doubled, B):
        constant = all(
            all(
                comp[f"{x}@{v}"] == comp[f"{x}@0"]
                for x in A.levels[key]
                for v in range(vertex_count)
            )
            for key, comp in f.components.items()
        ) and all(
            f.augmentation_component[f"{z}@{v}"] == f.augmentation_component[f"{z}@0"]
            for z in A.augmentation
            for v in range(vertex_count)
        )
        if constant:
            kept.append(f)
    return tuple(kept)
