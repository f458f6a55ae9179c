"""Proto-exact category data and its groupoid-valued grid nerve.

A proto-exact structure on a finite category designates admissible
monomorphisms, admissible epimorphisms, zero objects, and partial
pullback/pushout oracles for the mixed squares.  Its grid nerve at
bidegree ``(a, b)`` is the groupoid of ``(a+1) x (b+1)`` grids whose rows
are admissible monos, whose columns are admissible epis, and whose unit
squares are bicartesian (simultaneously pullback and pushout, decided
exactly by enumerating the universal property); morphisms are
componentwise natural isomorphisms.  Assembling all bidegrees with an
augmentation by zero objects yields a groupoid-valued pre-augmented
bisimplicial diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .groupoids import FiniteGroupoid, GroupoidFunctor, GroupoidSigmaDiagram
from .preaug import bidegrees_within
from .report import CheckReport, Instance, report_from_failures
from .sset import FiniteCategoryData, validate_category

__all__ = [
    "ProtoExactData",
    "validate_proto_exact",
    "category_isos",
    "builtin_pointed_sets",
    "nerve_exact",
    "nerve_exact_augmentation",
    "nerve_exact_diagram",
]

DEFAULT_GRID_CAP = 4


@dataclass(frozen=True)
class ProtoExactData:
    """A finite category with designated classes and square oracles.

    ``pullbacks`` is keyed by cospans ``(e, m)`` — an admissible epi and
    an admissible mono with common target — and holds the designated
    completion ``(top_mono, left_epi)`` with common source.  ``pushouts``
    is keyed by spans ``(m, e)`` with common source and holds
    ``(right_epi, bottom_mono)`` with common target.  Both tables may be
    partial; present entries must be bicartesian squares.
    """

    category: FiniteCategoryData
    monos: tuple[str, ...]
    epis: tuple[str, ...]
    zeros: tuple[str, ...]
    pullbacks: dict[tuple[str, str], tuple[str, str]]
    pushouts: dict[tuple[str, str], tuple[str, str]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "monos", tuple(self.monos))
        object.__setattr__(self, "epis", tuple(self.epis))
        object.__setattr__(self, "zeros", tuple(self.zeros))
        object.__setattr__(self, "pullbacks", dict(self.pullbacks))
        object.__setattr__(self, "pushouts", dict(self.pushouts))


def category_isos(C: FiniteCategoryData) -> dict[str, str]:
    """The isomorphisms of ``C`` mapped to their (unique) inverses."""
    isos: dict[str, str] = {}
    for f in C.morphisms:
        src, tgt = C.source[f], C.target[f]
        for g in C.morphisms:
            if C.source[g] != tgt or C.target[g] != src:
                continue
            if (
                C.composition.get((f, g)) == C.identity[src]
                and C.composition.get((g, f)) == C.identity[tgt]
            ):
                isos[f] = g
                break
    return isos


class _SquareContext:
    """Hom indexes and a cached bicartesian test for one category."""

    def __init__(self, E: ProtoExactData):
        self.E = E
        C = E.category
        self.C = C
        self.hom: dict[tuple[str, str], list[str]] = {}
        for f in C.morphisms:
            self.hom.setdefault((C.source[f], C.target[f]), []).append(f)
        self.monos_from: dict[str, list[str]] = {}
        for m in E.monos:
            self.monos_from.setdefault(C.source[m], []).append(m)
        self.epis_from: dict[str, list[str]] = {}
        for e in E.epis:
            self.epis_from.setdefault(C.source[e], []).append(e)
        self.inverse = category_isos(C)
        self.iso_hom: dict[tuple[str, str], list[str]] = {}
        for f in self.inverse:
            self.iso_hom.setdefault((C.source[f], C.target[f]), []).append(f)
        self._bicartesian_cache: dict[tuple[str, str, str, str], bool] = {}

    def hom_set(self, a: str, b: str) -> list[str]:
        return self.hom.get((a, b), [])

    def is_pullback(self, top: str, left: str, right: str, bottom: str) -> bool:
        C = self.C
        corner = C.source[top]
        B, Cc = C.target[top], C.target[left]
        for W in C.objects:
            for wb in self.hom_set(W, B):
                wb_right = C.compose(wb, right)
                for wc in self.hom_set(W, Cc):
                    if wb_right != C.compose(wc, bottom):
                        continue
                    count = sum(
                        1
                        for w in self.hom_set(W, corner)
                        if C.compose(w, top) == wb and C.compose(w, left) == wc
                    )
                    if count != 1:
                        return False
        return True

    def is_pushout(self, top: str, left: str, right: str, bottom: str) -> bool:
        C = self.C
        B, Cc = C.target[top], C.target[left]
        corner = C.target[right]
        for W in C.objects:
            for wb in self.hom_set(B, W):
                top_wb = C.compose(top, wb)
                for wc in self.hom_set(Cc, W):
                    if top_wb != C.compose(left, wc):
                        continue
                    count = sum(
                        1
                        for w in self.hom_set(corner, W)
                        if C.compose(right, w) == wb and C.compose(bottom, w) == wc
                    )
                    if count != 1:
                        return False
        return True

    def bicartesian(self, top: str, left: str, right: str, bottom: str) -> bool:
        key = (top, left, right, bottom)
        cached = self._bicartesian_cache.get(key)
        if cached is None:
            cached = self.is_pullback(*key) and self.is_pushout(*key)
            self._bicartesian_cache[key] = cached
        return cached


def validate_proto_exact(E: ProtoExactData) -> CheckReport:
    """Exhaustively validate the proto-exact axioms on finite data.

    Checks the underlying category laws, class membership and closure
    (identities admissible both ways, classes closed under composition),
    zero objects initial for admissible monos and terminal for admissible
    epis, and every present oracle entry: class membership, commutation,
    and the bicartesian universal property.
    """
    scope = "proto-exact axioms"
    base = validate_category(E.category)
    if base.verdict == "fail":
        return report_from_failures(list(base.instances), scope, 1)
    failures: list[Instance] = []

    def fail(condition: str, role: str, witness: tuple) -> None:
        failures.append(
            Instance(
                condition=condition,
                index=(),
                role=role,
                kind="structural",
                witness=witness,
            )
        )

    C = E.category
    morphisms = set(C.morphisms)
    objects = set(C.objects)
    for name, values, universe in (
        ("monos", E.monos, morphisms),
        ("epis", E.epis, morphisms),
        ("zeros", E.zeros, objects),
    ):
        for value in values:
            if value not in universe:
                fail("class-membership", f"unknown id in {name}", (value,))
    if failures:
        return report_from_failures(failures, scope, 1)

    monos, epis = set(E.monos), set(E.epis)
    for x in C.objects:
        e = C.identity[x]
        if e not in monos:
            fail("class-membership", "identity not an admissible mono", (x,))
        if e not in epis:
            fail("class-membership", "identity not an admissible epi", (x,))
    for f in E.monos:
        for g in E.monos:
            if C.target[f] == C.source[g] and C.compose(f, g) not in monos:
                fail("class-closure", "monos not closed under composition", (f, g))
    for f in E.epis:
        for g in E.epis:
            if C.target[f] == C.source[g] and C.compose(f, g) not in epis:
                fail("class-closure", "epis not closed under composition", (f, g))

    for z in E.zeros:
        for x in C.objects:
            out = [m for m in E.monos if C.source[m] == z and C.target[m] == x]
            if len(out) != 1:
                fail(
                    "zero-objects",
                    "zero is not initial for admissible monos",
                    (z, x, str(len(out))),
                )
            into = [e for e in E.epis if C.source[e] == x and C.target[e] == z]
            if len(into) != 1:
                fail(
                    "zero-objects",
                    "zero is not terminal for admissible epis",
                    (z, x, str(len(into))),
                )
    if failures:
        return report_from_failures(failures, scope, 1)

    ctx = _SquareContext(E)
    for (e, m), (top, left) in sorted(E.pullbacks.items()):
        witness = (e, m, top, left)
        if e not in epis or m not in monos:
            fail("oracle-tables", "pullback key is not an (epi, mono) cospan", witness)
            continue
        if C.target[e] != C.target[m]:
            fail("oracle-tables", "pullback cospan legs have different targets", witness)
            continue
        if top not in monos or left not in epis:
            fail("oracle-tables", "pullback completion not in the designated classes", witness)
            continue
        if (
            C.source[top] != C.source[left]
            or C.target[top] != C.source[e]
            or C.target[left] != C.source[m]
        ):
            fail("oracle-tables", "pullback completion endpoints do not match", witness)
            continue
        if C.compose(top, e) != C.compose(left, m):
            fail("oracle-tables", "pullback square does not commute", witness)
            continue
        if not ctx.bicartesian(top, left, e, m):
            fail("oracle-tables", "pullback square is not bicartesian", witness)
    for (m, e), (right, bottom) in sorted(E.pushouts.items()):
        witness = (m, e, right, bottom)
        if m not in monos or e not in epis:
            fail("oracle-tables", "pushout key is not a (mono, epi) span", witness)
            continue
        if C.source[m] != C.source[e]:
            fail("oracle-tables", "pushout span legs have different sources", witness)
            continue
        if right not in epis or bottom not in monos:
            fail("oracle-tables", "pushout completion not in the designated classes", witness)
            continue
        if (
            C.target[right] != C.target[bottom]
            or C.source[right] != C.target[m]
            or C.source[bottom] != C.target[e]
        ):
            fail("oracle-tables", "pushout completion endpoints do not match", witness)
            continue
        if C.compose(m, right) != C.compose(e, bottom):
            fail("oracle-tables", "pushout square does not commute", witness)
            continue
        if not ctx.bicartesian(m, e, right, bottom):
            fail("oracle-tables", "pushout square is not bicartesian", witness)
    return report_from_failures(failures, scope, 1)


# ---------------------------------------------------------------------------
# Built-in example: finite pointed sets
# ---------------------------------------------------------------------------


def _pointed_map_id(j: int, k: int, values: tuple[int, ...]) -> str:
    return f"P{j}>P{k}:" + "".join(str(v) for v in values)


def builtin_pointed_sets(max_size: int = 3) -> ProtoExactData:
    """Skeletal finite pointed sets with at most ``max_size`` elements.

    Object ``Pk`` is ``{0, 1, ..., k-1}`` with basepoint ``0``; a
    morphism stores its values on the non-basepoint elements.  Admissible
    monos are the pointed injections; admissible epis are the maps whose
    fibers over non-basepoint elements are singletons; ``P1`` is the zero
    object.  Oracle tables are total on valid cospans/spans, built by
    direct construction (pairs for pullbacks, gluing for pushouts) with
    non-basepoint elements ordered canonically.
    """
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    sizes = range(1, max_size + 1)
    objects = tuple(f"P{k}" for k in sizes)

    morphisms: list[str] = []
    values_of: dict[str, tuple[int, int, tuple[int, ...]]] = {}
    for j in sizes:
        for k in sizes:
            for values in product(range(k), repeat=j - 1):
                mid = _pointed_map_id(j, k, values)
                morphisms.append(mid)
                values_of[mid] = (j, k, values)

    def compose_values(f: str, g: str) -> str:
        j, _, fv = values_of[f]
        _, k2, gv = values_of[g]
        composed = tuple(0 if v == 0 else gv[v - 1] for v in fv)
        return _pointed_map_id(j, k2, composed)

    source = {mid: f"P{j}" for mid, (j, _, _) in values_of.items()}
    target = {mid: f"P{k}" for mid, (_, k, _) in values_of.items()}
    identity = {
        f"P{k}": _pointed_map_id(k, k, tuple(range(1, k))) for k in sizes
    }
    composition = {
        (f, g): compose_values(f, g)
        for f in morphisms
        for g in morphisms
        if target[f] == source[g]
    }
    category = FiniteCategoryData(
        objects, tuple(morphisms), source, target, identity, composition
    )

    monos = tuple(
        mid
        for mid, (_, _, values) in values_of.items()
        if 0 not in values and len(set(values)) == len(values)
    )
    epis = tuple(
        mid
        for mid, (_, k, values) in values_of.items()
        if all(values.count(w) == 1 for w in range(1, k))
    )

    pullbacks: dict[tuple[str, str], tuple[str, str]] = {}
    for e in epis:
        je, ke, ev = values_of[e]
        for m in monos:
            jm, km, mv = values_of[m]
            if ke != km:
                continue
            e_full = (0,) + ev
            m_full = (0,) + mv
            pairs = sorted(
                (x, c)
                for x in range(je)
                for c in range(jm)
                if e_full[x] == m_full[c] and (x, c) != (0, 0)
            )
            corner = len(pairs) + 1
            top = _pointed_map_id(corner, je, tuple(x for x, _ in pairs))
            left = _pointed_map_id(corner, jm, tuple(c for _, c in pairs))
            pullbacks[(e, m)] = (top, left)

    pushouts: dict[tuple[str, str], tuple[str, str]] = {}
    for m in monos:
        jm, km, mv = values_of[m]
        for e in epis:
            je, ke, ev = values_of[e]
            if jm != je:
                continue
            extras = sorted(set(range(1, km)) - set(mv))
            corner = ke + len(extras)
            if corner > max_size:
                continue
            bottom = _pointed_map_id(ke, corner, tuple(range(1, ke)))
            m_inverse = {v: x for x, v in enumerate((0,) + mv)}
            e_full = (0,) + ev
            right_values = tuple(
                e_full[m_inverse[x]]
                if x in m_inverse
                else ke + extras.index(x)
                for x in range(1, km)
            )
            right = _pointed_map_id(km, corner, right_values)
            pushouts[(m, e)] = (right, bottom)

    return ProtoExactData(
        category=category,
        monos=monos,
        epis=epis,
        zeros=("P1",),
        pullbacks=pullbacks,
        pushouts=pushouts,
    )


# ---------------------------------------------------------------------------
# Grid nerve
# ---------------------------------------------------------------------------


def _grid_id(objs: tuple[str, ...], hs: tuple[str, ...], vs: tuple[str, ...]) -> str:
    return "g(" + ",".join(objs) + "|" + ",".join(hs) + "|" + ",".join(vs) + ")"


def _nat_iso_id(src: str, tgt: str, family: tuple[str, ...]) -> str:
    return f"n({src}>{tgt}|" + ",".join(family) + ")"


@dataclass(frozen=True)
class _Grid:
    """One admissible grid: objects row-major, rows of monos, columns of epis.

    ``hs[i * b + j]`` is the mono ``(i, j) -> (i, j + 1)``; ``vs[i * (b + 1)
    + j]`` is the epi ``(i, j) -> (i + 1, j)``.
    """

    a: int
    b: int
    objs: tuple[str, ...]
    hs: tuple[str, ...]
    vs: tuple[str, ...]

    def obj(self, i: int, j: int) -> str:
        return self.objs[i * (self.b + 1) + j]

    def h(self, i: int, j: int) -> str:
        return self.hs[i * self.b + j]

    def v(self, i: int, j: int) -> str:
        return self.vs[i * (self.b + 1) + j]

    @property
    def grid_id(self) -> str:
        return _grid_id(self.objs, self.hs, self.vs)


class _NerveLevel:
    """A fully enumerated grid level with its groupoid and lookup tables."""

    def __init__(self, ctx: _SquareContext, a: int, b: int):
        self.a, self.b = a, b
        self.grids: dict[str, _Grid] = {}
        for grid in _enumerate_grids(ctx, a, b):
            self.grids[grid.grid_id] = grid
        self.morphism_data: dict[str, tuple[str, str, tuple[str, ...]]] = {}
        self.morphism_index: dict[tuple[str, str, tuple[str, ...]], str] = {}
        source: dict[str, str] = {}
        target: dict[str, str] = {}
        C = ctx.C
        # Natural isomorphisms can only relate grids whose object tuples
        # are pointwise isomorphic; bucket by iso-class tuple.
        class_of: dict[str, str] = {}
        for x in C.objects:
            class_of[x] = min(
                y for y in C.objects if ctx.iso_hom.get((x, y))
            )
        class_groups: dict[tuple[str, ...], list[_Grid]] = {}
        for grid in self.grids.values():
            key = tuple(class_of[o] for o in grid.objs)
            class_groups.setdefault(key, []).append(grid)
        for group in class_groups.values():
            for X in group:
                for Y in group:
                    for family in _natural_iso_families(ctx, X, Y):
                        mid = _nat_iso_id(X.grid_id, Y.grid_id, family)
                        self.morphism_data[mid] = (X.grid_id, Y.grid_id, family)
                        self.morphism_index[(X.grid_id, Y.grid_id, family)] = mid
                        source[mid] = X.grid_id
                        target[mid] = Y.grid_id
        identity = {}
        for grid in self.grids.values():
            family = tuple(C.identity[o] for o in grid.objs)
            identity[grid.grid_id] = self.morphism_index[
                (grid.grid_id, grid.grid_id, family)
            ]
        by_source: dict[str, list[str]] = {}
        for mid, src in source.items():
            by_source.setdefault(src, []).append(mid)
        composition: dict[tuple[str, str], str] = {}
        for mid, (src, tgt, family) in self.morphism_data.items():
            for mid2 in by_source.get(tgt, ()):
                _, tgt2, family2 = self.morphism_data[mid2]
                composed = tuple(
                    C.compose(f, g) for f, g in zip(family, family2)
                )
                composition[(mid, mid2)] = self.morphism_index[(src, tgt2, composed)]
        inverse = {
            mid: self.morphism_index[
                (tgt, src, tuple(ctx.inverse[f] for f in family))
            ]
            for mid, (src, tgt, family) in self.morphism_data.items()
        }
        self.groupoid = FiniteGroupoid(
            objects=tuple(sorted(self.grids)),
            morphisms=tuple(sorted(self.morphism_data)),
            source=source,
            target=target,
            identity=identity,
            composition=composition,
            inverse=inverse,
        )


def _enumerate_grids(ctx: _SquareContext, a: int, b: int) -> list[_Grid]:
    C = ctx.C
    rows: list[tuple[tuple[str, ...], tuple[str, ...]]] = []

    def extend_row(objs: list[str], edges: list[str]) -> None:
        if len(edges) == b:
            rows.append((tuple(objs), tuple(edges)))
            return
        for m in ctx.monos_from.get(objs[-1], ()):
            extend_row(objs + [C.target[m]], edges + [m])

    for o in C.objects:
        extend_row([o], [])

    grids: list[_Grid] = []

    def assemble(
        row_acc: list[tuple[tuple[str, ...], tuple[str, ...]]],
        v_acc: list[tuple[str, ...]],
    ) -> None:
        objs = tuple(o for row_objs, _ in row_acc for o in row_objs)
        hs = tuple(h for _, row_h in row_acc for h in row_h)
        vs = tuple(v for row_v in v_acc for v in row_v)
        grids.append(_Grid(a=a, b=b, objs=objs, hs=hs, vs=vs))

    def stack(
        row_acc: list[tuple[tuple[str, ...], tuple[str, ...]]],
        v_acc: list[tuple[str, ...]],
    ) -> None:
        if len(row_acc) == a + 1:
            assemble(row_acc, v_acc)
            return
        prev_objs, prev_h = row_acc[-1]

        def build(next_objs: list[str], next_h: list[str], next_v: list[str]) -> None:
            j = len(next_objs)
            if j == b + 1:
                stack(
                    row_acc + [(tuple(next_objs), tuple(next_h))],
                    v_acc + [tuple(next_v)],
                )
                return
            if j == 0:
                for v0 in ctx.epis_from.get(prev_objs[0], ()):
                    build([C.target[v0]], [], [v0])
                return
            for h2 in ctx.monos_from.get(next_objs[-1], ()):
                corner = C.target[h2]
                for v2 in ctx.epis_from.get(prev_objs[j], ()):
                    if C.target[v2] != corner:
                        continue
                    if C.compose(prev_h[j - 1], v2) != C.compose(next_v[j - 1], h2):
                        continue
                    if not ctx.bicartesian(prev_h[j - 1], next_v[j - 1], v2, h2):
                        continue
                    build(next_objs + [corner], next_h + [h2], next_v + [v2])

        build([], [], [])

    for row in rows:
        stack([row], [])
    return grids


def _vpath(C: FiniteCategoryData, grid: _Grid, r1: int, r2: int, j: int) -> str:
    """The composite of column-``j`` epis from row ``r1`` down to row ``r2``."""
    mor = C.identity[grid.obj(r1, j)]
    for r in range(r1, r2):
        mor = C.compose(mor, grid.v(r, j))
    return mor


def _hpath(C: FiniteCategoryData, grid: _Grid, i: int, c1: int, c2: int) -> str:
    """The composite of row-``i`` monos from column ``c1`` across to ``c2``."""
    mor = C.identity[grid.obj(i, c1)]
    for c in range(c1, c2):
        mor = C.compose(mor, grid.h(i, c))
    return mor


def _row_reindexed_grid(
    C: FiniteCategoryData, grid: _Grid, row_map: tuple[int, ...]
) -> _Grid:
    b = grid.b
    new_a = len(row_map) - 1
    objs = tuple(grid.obj(r, j) for r in row_map for j in range(b + 1))
    hs = tuple(grid.h(r, j) for r in row_map for j in range(b))
    vs = tuple(
        _vpath(C, grid, row_map[r], row_map[r + 1], j)
        for r in range(new_a)
        for j in range(b + 1)
    )
    return _Grid(a=new_a, b=b, objs=objs, hs=hs, vs=vs)


def _column_reindexed_grid(
    C: FiniteCategoryData, grid: _Grid, col_map: tuple[int, ...]
) -> _Grid:
    a = grid.a
    new_b = len(col_map) - 1
    objs = tuple(grid.obj(i, c) for i in range(a + 1) for c in col_map)
    hs = tuple(
        _hpath(C, grid, i, col_map[j], col_map[j + 1])
        for i in range(a + 1)
        for j in range(new_b)
    )
    vs = tuple(grid.v(i, c) for i in range(a) for c in col_map)
    return _Grid(a=a, b=new_b, objs=objs, hs=hs, vs=vs)


def _row_reindexed_family(
    grid: _Grid, family: tuple[str, ...], row_map: tuple[int, ...]
) -> tuple[str, ...]:
    b = grid.b
    return tuple(family[r * (b + 1) + j] for r in row_map for j in range(b + 1))


def _column_reindexed_family(
    grid: _Grid, family: tuple[str, ...], col_map: tuple[int, ...]
) -> tuple[str, ...]:
    a, b = grid.a, grid.b
    return tuple(family[i * (b + 1) + c] for i in range(a + 1) for c in col_map)


class _NerveBuilder:
    """Levels of the grid nerve plus reindexing functors between them."""

    def __init__(self, E: ProtoExactData, grid_cap: int = DEFAULT_GRID_CAP):
        report = validate_proto_exact(E)
        if report.verdict == "fail":
            raise ValueError(
                "proto-exact data fails validation: "
                + report.instances[0].describe()
            )
        self.E = E
        self.ctx = _SquareContext(E)
        self.grid_cap = grid_cap
        self._levels: dict[tuple[int, int], _NerveLevel] = {}

    def level(self, a: int, b: int) -> _NerveLevel:
        if a < 0 or b < 0:
            raise ValueError("bidegrees must be nonnegative")
        if a + b > self.grid_cap:
            raise ValueError(
                f"grid bidegree ({a}, {b}) exceeds the enumeration cap "
                f"{self.grid_cap}; raise grid_cap explicitly to go further"
            )
        if (a, b) not in self._levels:
            self._levels[(a, b)] = _NerveLevel(self.ctx, a, b)
        return self._levels[(a, b)]

    def _reindex_functor(
        self,
        source: _NerveLevel,
        target: _NerveLevel,
        row_map: tuple[int, ...] | None = None,
        col_map: tuple[int, ...] | None = None,
    ) -> GroupoidFunctor:
        C = self.ctx.C
        object_map: dict[str, str] = {}
        new_grid_of: dict[str, str] = {}
        for gid, grid in source.grids.items():
            if row_map is not None:
                new_grid = _row_reindexed_grid(C, grid, row_map)
            else:
                new_grid = _column_reindexed_grid(C, grid, col_map)
            object_map[gid] = new_grid.grid_id
            new_grid_of[gid] = new_grid.grid_id
        morphism_map: dict[str, str] = {}
        for mid, (src, tgt, family) in source.morphism_data.items():
            if row_map is not None:
                new_family = _row_reindexed_family(source.grids[src], family, row_map)
            else:
                new_family = _column_reindexed_family(
                    source.grids[src], family, col_map
                )
            morphism_map[mid] = target.morphism_index[
                (new_grid_of[src], new_grid_of[tgt], new_family)
            ]
        return GroupoidFunctor(
            source_groupoid=source.groupoid,
            target_groupoid=target.groupoid,
            object_map=object_map,
            morphism_map=morphism_map,
        )

    def vertical_face(self, a: int, b: int, i: int) -> GroupoidFunctor:
        row_map = tuple(r for r in range(a + 1) if r != i)
        return self._reindex_functor(self.level(a, b), self.level(a - 1, b), row_map=row_map)

    def vertical_degeneracy(self, a: int, b: int, i: int) -> GroupoidFunctor:
        row_map = tuple(range(i + 1)) + tuple(range(i, a + 1))
        return self._reindex_functor(self.level(a, b), self.level(a + 1, b), row_map=row_map)

    def horizontal_face(self, a: int, b: int, i: int) -> GroupoidFunctor:
        col_map = tuple(c for c in range(b + 1) if c != i)
        return self._reindex_functor(self.level(a, b), self.level(a, b - 1), col_map=col_map)

    def horizontal_degeneracy(self, a: int, b: int, i: int) -> GroupoidFunctor:
        col_map = tuple(range(i + 1)) + tuple(range(i, b + 1))
        return self._reindex_functor(self.level(a, b), self.level(a, b + 1), col_map=col_map)

    def augmentation_groupoid(self) -> FiniteGroupoid:
        C = self.ctx.C
        zeros = set(self.E.zeros)
        morphisms = tuple(
            sorted(
                f
                for f in self.ctx.inverse
                if C.source[f] in zeros and C.target[f] in zeros
            )
        )
        morphism_set = set(morphisms)
        return FiniteGroupoid(
            objects=tuple(sorted(zeros)),
            morphisms=morphisms,
            source={f: C.source[f] for f in morphisms},
            target={f: C.target[f] for f in morphisms},
            identity={z: C.identity[z] for z in sorted(zeros)},
            composition={
                (f, g): C.compose(f, g)
                for f in morphisms
                for g in morphisms
                if C.target[f] == C.source[g]
                and C.compose(f, g) in morphism_set
            },
            inverse={f: self.ctx.inverse[f] for f in morphisms},
        )

    def eps_functor(self, augmentation: FiniteGroupoid) -> GroupoidFunctor:
        level = self.level(0, 0)
        object_map = {z: _grid_id((z,), (), ()) for z in augmentation.objects}
        morphism_map = {
            f: level.morphism_index[
                (
                    object_map[augmentation.source[f]],
                    object_map[augmentation.target[f]],
                    (f,),
                )
            ]
            for f in augmentation.morphisms
        }
        return GroupoidFunctor(
            source_groupoid=augmentation,
            target_groupoid=level.groupoid,
            object_map=object_map,
            morphism_map=morphism_map,
        )


def nerve_exact(
    E: ProtoExactData, a: int, b: int, grid_cap: int = DEFAULT_GRID_CAP
) -> FiniteGroupoid:
    """The grid-nerve groupoid of ``E`` at bidegree ``(a, b)``.

    Objects are the admissible ``(a+1) x (b+1)`` grids (rows admissible
    monos, columns admissible epis, unit squares bicartesian); morphisms
    are componentwise natural isomorphisms.
    """
    return _NerveBuilder(E, grid_cap=grid_cap).level(a, b).groupoid


def nerve_exact_augmentation(E: ProtoExactData) -> FiniteGroupoid:
    """The augmentation level: zero objects and the isomorphisms between them."""
    return _NerveBuilder(E).augmentation_groupoid()


def nerve_exact_diagram(
    E: ProtoExactData,
    total_truncation: int = 4,
    grid_cap: int = DEFAULT_GRID_CAP,
) -> GroupoidSigmaDiagram:
    """The grid nerve of ``E`` as a groupoid-valued pre-augmented diagram.

    Levels are the grid-nerve groupoids for every bidegree with
    ``a + 1 + b <= total_truncation``; faces delete a row or column
    (composing the crossed edges), degeneracies repeat one with identity
    edges, and the augmentation maps zero objects to one-point grids.
    """
    if total_truncation < 1:
        raise ValueError("total_truncation must be at least 1")
    if total_truncation - 1 > grid_cap:
        raise ValueError(
            f"total_truncation {total_truncation} needs grids of total "
            f"bidegree {total_truncation - 1} > grid_cap {grid_cap}; "
            "raise grid_cap explicitly to go further"
        )
    builder = _NerveBuilder(E, grid_cap=grid_cap)
    T = total_truncation
    levels = {
        (a, b): builder.level(a, b).groupoid for a, b in bidegrees_within(T)
    }
    vertical_faces = {}
    horizontal_faces = {}
    vertical_degeneracies = {}
    horizontal_degeneracies = {}
    for a, b in bidegrees_within(T):
        if a >= 1:
            for i in range(a + 1):
                vertical_faces[(a, b, i)] = builder.vertical_face(a, b, i)
        if b >= 1:
            for i in range(b + 1):
                horizontal_faces[(a, b, i)] = builder.horizontal_face(a, b, i)
        if a + 2 + b <= T:
            for i in range(a + 1):
                vertical_degeneracies[(a, b, i)] = builder.vertical_degeneracy(a, b, i)
            for i in range(b + 1):
                horizontal_degeneracies[(a, b, i)] = builder.horizontal_degeneracy(
                    a, b, i
                )
    augmentation = builder.augmentation_groupoid()
    return GroupoidSigmaDiagram(
        total_truncation=T,
        levels=levels,
        augmentation=augmentation,
        vertical_faces=vertical_faces,
        vertical_degeneracies=vertical_degeneracies,
        horizontal_faces=horizontal_faces,
        horizontal_degeneracies=horizontal_degeneracies,
        eps=builder.eps_functor(augmentation),
    )


def _natural_iso_families(
    ctx: _SquareContext, X: _Grid, Y: _Grid
) -> list[tuple[str, ...]]:
    """All componentwise-iso families ``X -> Y`` natural on every edge."""
    C = ctx.C
    a, b = X.a, X.b
    positions = (a + 1) * (b + 1)
    families: list[tuple[str, ...]] = []

    def extend(partial: list[str]) -> None:
        p = len(partial)
        if p == positions:
            families.append(tuple(partial))
            return
        i, j = divmod(p, b + 1)
        x, y = X.objs[p], Y.objs[p]
        for lam in ctx.iso_hom.get((x, y), ()):
            if j >= 1 and C.compose(X.h(i, j - 1), lam) != C.compose(
                partial[p - 1], Y.h(i, j - 1)
            ):
                continue
            if i >= 1 and C.compose(X.v(i - 1, j), lam) != C.compose(
                partial[p - b - 1], Y.v(i - 1, j)
            ):
                continue
            extend(partial + [lam])

    extend([])
    return families
