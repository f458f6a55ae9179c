"""The simplicial set of grid diagrams in a pre-augmented bisimplicial set.

Level ``n`` of the construction is the finite set of pre-augmented maps
from the path construction of the standard ``n``-simplex into the input
object, both restricted to a common total truncation
``min(max(n, 2), T)`` where ``T`` is the input's total truncation.  Faces
and degeneracies act by precomposition with the path construction of the
corresponding simplex coface or codegeneracy, followed by an exact lookup
of the resulting map at the target level's truncation.

Truncation ``max(n, 2)`` is the stable range: at total truncation 1 the
component at bidegree ``(0, 0)`` is constrained only through the
augmentation, so degree-1 hom sets computed there are too big, while all
levels from 2 upward pin each component against the faces one degree
higher.  (Hom sets out of a degree-``n`` path simplex are unchanged by
raising the truncation beyond ``max(n, 2)``.)

Also provides the comparison maps of the equivalence between truncated
simplicial sets and their grid models:

* ``unit_tables`` — the map sending an ``n``-cell to its classifying grid;
* ``counit_tables`` / ``first_row_bijection`` — evaluation of a grid at
  its distinguished generator;
* ``roundtrip_verify`` — the full battery of bijectivity and pushforward
  checks in either direction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .checks import check_2segal, check_sadss
from .pathconstr import path_generator_id, path_of_map, path_of_sset
from .preaug import (
    PreaugBisimplicialSet,
    PreaugMap,
    compose_preaug_maps,
    hom_preaug,
    restrict_truncation,
)
from .report import CheckReport, Instance, merge_subreports, report_from_failures
from .simplex import MonotoneMap, codegeneracy, coface, compose_monotone, enumerate_monotone
from .sset import (
    SimplicialMap,
    TruncatedSimplicialSet,
    classifying_map,
    simplex_element_id,
    standard_simplex,
)

__all__ = [
    "sdot",
    "sdot_with_maps",
    "GridLevel",
    "simplex_map_of_monotone",
    "restrict_preaug_map",
    "counit_tables",
    "counit_report",
    "first_row_bijection",
    "unit_tables",
    "unit_report",
    "roundtrip_verify",
]


def simplex_map_of_monotone(alpha: MonotoneMap, t: int) -> SimplicialMap:
    """The simplicial map between standard simplices induced by ``alpha``.

    For ``alpha: [m] -> [n]`` this is the map from the standard
    ``m``-simplex to the standard ``n``-simplex at truncation ``t``,
    acting on cells by postcomposition.
    """
    m = alpha.domain_size
    n = alpha.codomain_size
    components = []
    for j in range(t + 1):
        table = {
            simplex_element_id(g): simplex_element_id(compose_monotone(g, alpha))
            for g in enumerate_monotone(j, m)
        }
        components.append(table)
    return SimplicialMap(
        source=standard_simplex(m, t),
        target=standard_simplex(n, t),
        components=tuple(components),
    )


def restrict_preaug_map(f: PreaugMap, total: int) -> PreaugMap:
    """Restrict a pre-augmented map to a lower total truncation."""
    source = restrict_truncation(f.source, total)
    target = restrict_truncation(f.target, total)
    components = {key: dict(f.components[key]) for key in source.bidegrees()}
    return PreaugMap(
        source=source,
        target=target,
        components=components,
        augmentation_component=dict(f.augmentation_component),
    )


def _map_signature(f: PreaugMap) -> tuple:
    """Canonical value tuple of a map, for exact comparison and lookup.

    Two maps out of sources with identical element enumerations are equal
    iff their signatures are equal.
    """
    parts = [tuple(f.augmentation_component[z] for z in f.source.augmentation)]
    for a, b in f.source.bidegrees():
        component = f.components[(a, b)]
        parts.append(tuple(component[x] for x in f.source.level(a, b)))
    return tuple(parts)


@dataclass(frozen=True)
class GridLevel:
    """One level of the grid construction: the maps, their ids, and a lookup index."""

    maps: tuple[PreaugMap, ...]
    ids: tuple[str, ...]

    def position_of(self, f: PreaugMap) -> int:
        signature = _map_signature(f)
        index = self._signature_index()
        if signature not in index:
            raise LookupError(
                "map does not occur at this grid level; "
                "the input object is structurally inconsistent"
            )
        return index[signature]

    def _signature_index(self) -> dict:
        index = getattr(self, "_cached_index", None)
        if index is None:
            index = {_map_signature(f): pos for pos, f in enumerate(self.maps)}
            object.__setattr__(self, "_cached_index", index)
        return index


def _grid_truncation(n: int, T: int) -> int:
    """Total truncation at which degree-``n`` grid levels are computed."""
    return min(max(n, 2), T)


def _grid_source(n: int, tau: int) -> PreaugBisimplicialSet:
    """Path construction of the standard ``n``-simplex at total truncation ``tau``."""
    return path_of_sset(standard_simplex(n, tau))


def _grid_levels(D: PreaugBisimplicialSet) -> list[GridLevel]:
    T = D.total_truncation
    levels = []
    for n in range(T + 1):
        tau = _grid_truncation(n, T)
        maps = hom_preaug(_grid_source(n, tau), restrict_truncation(D, tau))
        ids = tuple(f"f{i}" for i in range(len(maps)))
        levels.append(GridLevel(maps=tuple(maps), ids=ids))
    return levels


def _restricted_signature_index(level: GridLevel, total: int) -> dict:
    """Map from restricted-signature to positions of level maps restricting to it."""
    index: dict = {}
    for pos, g in enumerate(level.maps):
        restricted = (
            restrict_preaug_map(g, total)
            if total < g.source.total_truncation
            else g
        )
        index.setdefault(_map_signature(restricted), []).append(pos)
    return index


def _structure_table(
    levels: list[GridLevel], n: int, alpha: MonotoneMap, T: int
) -> dict:
    """Action of ``alpha: [m] -> [n]`` on grid level ``n``, as an id table.

    Each grid is precomposed with the path construction of the induced
    simplex map at the level-``n`` truncation, then located at level
    ``m`` by matching at the common truncation.  Lookups at or below the
    composite's truncation always match exactly once; lookups above it
    (degeneracies into a deeper level) additionally verify that the
    extension upward is unique.
    """
    m = alpha.domain_size
    tau_n = _grid_truncation(n, T)
    tau_m = _grid_truncation(m, T)
    induced = path_of_map(simplex_map_of_monotone(alpha, tau_n))
    target_level = levels[m]
    table: dict = {}
    if tau_m <= tau_n:
        for fid, f in zip(levels[n].ids, levels[n].maps):
            composite = compose_preaug_maps(induced, f)
            if tau_m < tau_n:
                composite = restrict_preaug_map(composite, tau_m)
            table[fid] = target_level.ids[target_level.position_of(composite)]
        return table
    lookup = _restricted_signature_index(target_level, tau_n)
    for fid, f in zip(levels[n].ids, levels[n].maps):
        composite = compose_preaug_maps(induced, f)
        positions = lookup.get(_map_signature(composite), [])
        if len(positions) != 1:
            raise LookupError(
                f"grid at level {n} has {len(positions)} extensions to level {m}; "
                "expected exactly one"
            )
        table[fid] = target_level.ids[positions[0]]
    return table


def sdot_with_maps(
    D: PreaugBisimplicialSet,
    levels: list[GridLevel] | None = None,
) -> tuple[TruncatedSimplicialSet, list[GridLevel]]:
    """The grid construction of ``D`` together with its level bookkeeping."""
    T = D.total_truncation
    if levels is None:
        levels = _grid_levels(D)
    faces = {}
    degeneracies = {}
    for n in range(1, T + 1):
        for i in range(n + 1):
            faces[(n, i)] = _structure_table(levels, n, coface(n, i), T)
    for n in range(T):
        for i in range(n + 1):
            degeneracies[(n, i)] = _structure_table(levels, n, codegeneracy(n, i), T)
    X = TruncatedSimplicialSet(
        truncation=T,
        levels=tuple(level.ids for level in levels),
        faces=faces,
        degeneracies=degeneracies,
    )
    return X, levels


def sdot(D: PreaugBisimplicialSet) -> TruncatedSimplicialSet:
    """The simplicial set of grids in ``D``, truncated at ``D.total_truncation``."""
    X, _ = sdot_with_maps(D)
    return X


# ---------------------------------------------------------------------------
# Comparison maps
# ---------------------------------------------------------------------------


def counit_tables(
    D: PreaugBisimplicialSet, levels: list[GridLevel] | None = None
) -> tuple[dict, dict]:
    """Evaluation of grids at the distinguished generator, per bidegree.

    Returns ``(tables, augmentation_table)`` where ``tables[(a, b)]``
    sends each grid id at level ``a + 1 + b`` to its value in
    ``D(a, b)``, and ``augmentation_table`` sends each level-0 grid id to
    its augmentation value.
    """
    if levels is None:
        levels = _grid_levels(D)
    tables = {}
    for a, b in D.bidegrees():
        n = a + 1 + b
        generator = path_generator_id(n)
        level = levels[n]
        tables[(a, b)] = {
            fid: f.components[(a, b)][generator]
            for fid, f in zip(level.ids, level.maps)
        }
    zero = levels[0]
    augmentation_table = {
        fid: f.augmentation_component[path_generator_id(0)]
        for fid, f in zip(zero.ids, zero.maps)
    }
    return tables, augmentation_table


def _bijection_failures_table(
    condition: str,
    index: tuple[int, ...],
    role: str,
    table: dict,
    codomain,
) -> list[Instance]:
    failures: list[Instance] = []
    seen: dict = {}
    for x, value in table.items():
        if value in seen:
            failures.append(
                Instance(
                    condition=condition,
                    index=index,
                    role=role,
                    kind="not-injective",
                    witness=(str(seen[value]), str(x)),
                )
            )
            break
        seen[value] = x
    missed = next((value for value in codomain if value not in seen), None)
    if missed is not None:
        failures.append(
            Instance(
                condition=condition,
                index=index,
                role=role,
                kind="not-surjective",
                witness=(str(missed),),
            )
        )
    return failures


def counit_report(
    D: PreaugBisimplicialSet, levels: list[GridLevel] | None = None
) -> CheckReport:
    """Bijectivity of the generator-evaluation maps at every bidegree."""
    tables, augmentation_table = counit_tables(D, levels)
    failures: list[Instance] = []
    for (a, b), table in tables.items():
        failures.extend(
            _bijection_failures_table(
                "counit", (a, b), "level", table, D.level(a, b)
            )
        )
    failures.extend(
        _bijection_failures_table(
            "counit", (-1,), "augmentation", augmentation_table, D.augmentation
        )
    )
    return report_from_failures(
        failures,
        scope="generator evaluation at every bidegree and the augmentation",
        checked_count=len(tables) + 1,
    )


def first_row_bijection(
    D: PreaugBisimplicialSet, n: int
) -> tuple[dict, CheckReport]:
    """Evaluation of degree ``n + 1`` grids at the first-row generator.

    Returns the id table of the map into ``D(0, n)`` together with its
    bijectivity report.  Requires ``n + 1 <= D.total_truncation``.
    """
    if n < 0 or n + 1 > D.total_truncation:
        raise ValueError(
            f"first-row comparison needs 0 <= n <= {D.total_truncation - 1}; got {n}"
        )
    tau = _grid_truncation(n + 1, D.total_truncation)
    maps = hom_preaug(_grid_source(n + 1, tau), restrict_truncation(D, tau))
    generator = path_generator_id(n + 1)
    table = {
        f"f{i}": f.components[(0, n)][generator] for i, f in enumerate(maps)
    }
    failures = _bijection_failures_table(
        "first-row", (n,), "evaluation", table, D.level(0, n)
    )
    report = report_from_failures(
        failures, scope=f"first-row evaluation at bidegree (0, {n})", checked_count=1
    )
    return table, report


def unit_tables(
    X: TruncatedSimplicialSet,
) -> tuple[dict[int, dict], TruncatedSimplicialSet, list[GridLevel]]:
    """The classifying-grid map of ``X``, levelwise.

    Each ``n``-cell is sent to the grid obtained by applying the path
    construction to its classifying map and restricting to total
    truncation ``max(n, 1)``.  Returns the per-level id tables together
    with the grid model of the path construction of ``X`` and its level
    bookkeeping.
    """
    t = X.truncation
    D = path_of_sset(X)
    S, levels = sdot_with_maps(D)
    tables: dict[int, dict] = {}
    for n in range(t + 1):
        tau = _grid_truncation(n, t)
        level = levels[n]
        table = {}
        for x in X.level(n):
            image = path_of_map(classifying_map(X, n, x))
            if tau < t:
                image = restrict_preaug_map(image, tau)
            table[x] = level.ids[level.position_of(image)]
        tables[n] = table
    return tables, S, levels


def unit_report(X: TruncatedSimplicialSet) -> CheckReport:
    """Bijectivity of the classifying-grid map at every level."""
    tables, _, levels = unit_tables(X)
    failures: list[Instance] = []
    for n, table in tables.items():
        failures.extend(
            _bijection_failures_table("unit", (n,), "level", table, levels[n].ids)
        )
    return report_from_failures(
        failures,
        scope=f"classifying-grid map at levels 0..{X.truncation}",
        checked_count=len(tables),
    )


def roundtrip_verify(
    X: TruncatedSimplicialSet | None = None,
    D: PreaugBisimplicialSet | None = None,
) -> CheckReport:
    """Verify the equivalence roundtrip starting from either side.

    From a simplicial set ``X``: checks the triangulation conditions of
    ``X``, bijectivity of the classifying-grid map, and the triangulation
    conditions of the grid model of the path construction of ``X``.

    From a pre-augmented bisimplicial set ``D``: checks the stable
    augmented double Segal conditions of ``D``, bijectivity of generator
    evaluation, and the same conditions for the path construction of the
    grid model of ``D``.
    """
    if (X is None) == (D is None):
        raise ValueError("provide exactly one of X or D")
    if X is not None:
        tables, S, levels = unit_tables(X)
        unit_failures: list[Instance] = []
        for n, table in tables.items():
            unit_failures.extend(
                _bijection_failures_table("unit", (n,), "level", table, levels[n].ids)
            )
        unit = report_from_failures(
            unit_failures,
            scope=f"classifying-grid map at levels 0..{X.truncation}",
            checked_count=len(tables),
        )
        named = {
            "two-segal": check_2segal(X),
            "unit": unit,
            "grid-of-path": check_2segal(S),
        }
        return merge_subreports(
            named, scope="roundtrip through the path construction"
        )
    levels = _grid_levels(D)
    S, _ = sdot_with_maps(D, levels)
    named = {
        "sadss": check_sadss(D),
        "counit": counit_report(D, levels),
        "path-of-grid": check_sadss(path_of_sset(S)),
    }
    return merge_subreports(named, scope="roundtrip through the grid construction")
