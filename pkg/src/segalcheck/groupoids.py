"""Finite groupoids, iso-comma pullbacks, and groupoid-level Segal checks.

Levels of groupoid-valued diagrams are finite groupoids; "equivalence of
spaces" at this 1-truncated level means categorical equivalence, decided
exactly by enumeration (essential surjectivity plus full faithfulness).
The homotopy pullback of a cospan of groupoid functors is modeled by the
iso-comma groupoid of triples ``(a, b, phi: F a -> G b)``; each Segal-type
condition is then the statement that a comparison functor into an
iso-comma (or out of one, for the augmentation) is an equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .preaug import PreaugBisimplicialSet, bidegrees_within
from .report import CheckReport, Instance, merge_subreports, report_from_failures

__all__ = [
    "FiniteGroupoid",
    "GroupoidFunctor",
    "GroupoidSigmaDiagram",
    "IsoComma",
    "validate_groupoid",
    "validate_groupoid_diagram",
    "discrete_groupoid",
    "groupoid_diagram_of_preaug",
    "identity_groupoid_functor",
    "compose_groupoid_functors",
    "iso_comma",
    "is_equivalence",
    "check_sadss_groupoid",
]


@dataclass(frozen=True)
class FiniteGroupoid:
    """A finite groupoid with explicit structure tables.

    ``composition[(f, g)]`` is the composite "``f`` then ``g``", defined
    exactly for composable pairs (target of ``f`` equals source of
    ``g``).  Every morphism has a two-sided inverse in ``inverse``.
    """

    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    source: dict[str, str]
    target: dict[str, str]
    identity: dict[str, str]
    composition: dict[tuple[str, str], str]
    inverse: dict[str, str]

    def compose(self, f: str, g: str) -> str:
        return self.composition[(f, g)]

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._hom_index().get((a, b), ())

    def morphisms_from(self, a: str) -> tuple[str, ...]:
        return self._out_index().get(a, ())

    def _hom_index(self) -> dict:
        index = getattr(self, "_cached_hom", None)
        if index is None:
            index = {}
            for f in self.morphisms:
                index.setdefault((self.source[f], self.target[f]), []).append(f)
            index = {key: tuple(fs) for key, fs in index.items()}
            object.__setattr__(self, "_cached_hom", index)
        return index

    def _out_index(self) -> dict:
        index = getattr(self, "_cached_out", None)
        if index is None:
            index = {}
            for f in self.morphisms:
                index.setdefault(self.source[f], []).append(f)
            index = {key: tuple(fs) for key, fs in index.items()}
            object.__setattr__(self, "_cached_out", index)
        return index


def discrete_groupoid(object_ids: tuple[str, ...]) -> FiniteGroupoid:
    """The groupoid with the given objects and only identity morphisms.

    Morphism ids are ``id:<object>``.
    """
    morphisms = tuple(f"id:{x}" for x in object_ids)
    return FiniteGroupoid(
        objects=tuple(object_ids),
        morphisms=morphisms,
        source={f"id:{x}": x for x in object_ids},
        target={f"id:{x}": x for x in object_ids},
        identity={x: f"id:{x}" for x in object_ids},
        composition={(f"id:{x}", f"id:{x}"): f"id:{x}" for x in object_ids},
        inverse={f"id:{x}": f"id:{x}" for x in object_ids},
    )


def validate_groupoid(G: FiniteGroupoid, index: tuple[int, ...] = ()) -> CheckReport:
    """Check the category laws and the two-sided inverse law of ``G``."""
    failures: list[Instance] = []

    def fail(role: str, witness: tuple[str, ...]) -> None:
        failures.append(
            Instance(
                condition="groupoid-laws",
                index=index,
                role=role,
                kind="structural",
                witness=witness,
            )
        )

    object_set = set(G.objects)
    if len(object_set) != len(G.objects):
        fail("duplicate object id", ())
    morphism_set = set(G.morphisms)
    if len(morphism_set) != len(G.morphisms):
        fail("duplicate morphism id", ())
    for f in G.morphisms:
        if G.source.get(f) not in object_set or G.target.get(f) not in object_set:
            fail("source/target missing or out of range", (f,))
            return report_from_failures(failures, "groupoid axioms", 1)
    for x in G.objects:
        e = G.identity.get(x)
        if e not in morphism_set or G.source[e] != x or G.target[e] != x:
            fail("identity missing or with wrong endpoints", (x,))
            return report_from_failures(failures, "groupoid axioms", 1)
    for f in G.morphisms:
        if G.inverse.get(f) not in morphism_set:
            fail("inverse missing", (f,))
            return report_from_failures(failures, "groupoid axioms", 1)

    for (f, g), h in G.composition.items():
        if f not in morphism_set or g not in morphism_set or h not in morphism_set:
            fail("composition entry with unknown morphism", (f, g))
        elif G.target[f] != G.source[g]:
            fail("composition defined on a non-composable pair", (f, g))
        elif G.source[h] != G.source[f] or G.target[h] != G.target[g]:
            fail("composite has wrong endpoints", (f, g, h))
    if failures:
        return report_from_failures(failures, "groupoid axioms", 1)

    for f in G.morphisms:
        for g in G.morphisms_from(G.target[f]):
            if (f, g) not in G.composition:
                fail("composable pair without composite", (f, g))
                break
        else:
            continue
        break
    for f in G.morphisms:
        e_src, e_tgt = G.identity[G.source[f]], G.identity[G.target[f]]
        if G.composition.get((e_src, f)) != f or G.composition.get((f, e_tgt)) != f:
            fail("identity is not neutral", (f,))
            break
    for f in G.morphisms:
        g = G.inverse[f]
        if (
            G.source[g] != G.target[f]
            or G.target[g] != G.source[f]
            or G.composition.get((f, g)) != G.identity[G.source[f]]
            or G.composition.get((g, f)) != G.identity[G.target[f]]
        ):
            fail("inverse law fails", (f, g))
            break
    if not failures:
        for f in G.morphisms:
            stop = False
            for g in G.morphisms_from(G.target[f]):
                fg = G.composition[(f, g)]
                for h in G.morphisms_from(G.target[g]):
                    if G.composition[(fg, h)] != G.composition[(f, G.composition[(g, h)])]:
                        fail("associativity fails", (f, g, h))
                        stop = True
                        break
                if stop:
                    break
            if stop:
                break
    return report_from_failures(failures, "groupoid axioms", 1)


@dataclass(frozen=True)
class GroupoidFunctor:
    """A functor between finite groupoids, as explicit object/morphism tables."""

    source_groupoid: FiniteGroupoid
    target_groupoid: FiniteGroupoid
    object_map: dict[str, str]
    morphism_map: dict[str, str]

    def on_object(self, x: str) -> str:
        return self.object_map[x]

    def on_morphism(self, f: str) -> str:
        return self.morphism_map[f]

    def functor_failures(
        self, condition: str, index: tuple[int, ...], role: str
    ) -> list[Instance]:
        """Violations of totality, endpoint preservation, identities, composition."""
        failures: list[Instance] = []

        def fail(detail: str, witness: tuple[str, ...]) -> None:
            failures.append(
                Instance(
                    condition=condition,
                    index=index,
                    role=f"{role}: {detail}",
                    kind="structural",
                    witness=witness,
                )
            )

        src, tgt = self.source_groupoid, self.target_groupoid
        tgt_objects = set(tgt.objects)
        tgt_morphisms = set(tgt.morphisms)
        for x in src.objects:
            if self.object_map.get(x) not in tgt_objects:
                fail("object image missing", (x,))
                return failures
        for f in src.morphisms:
            if self.morphism_map.get(f) not in tgt_morphisms:
                fail("morphism image missing", (f,))
                return failures
        for f in src.morphisms:
            ff = self.morphism_map[f]
            if tgt.source[ff] != self.object_map[src.source[f]] or tgt.target[
                ff
            ] != self.object_map[src.target[f]]:
                fail("endpoints not preserved", (f, ff))
                break
        for x in src.objects:
            if self.morphism_map[src.identity[x]] != tgt.identity[self.object_map[x]]:
                fail("identity not preserved", (x,))
                break
        for (f, g), h in src.composition.items():
            if tgt.composition.get(
                (self.morphism_map[f], self.morphism_map[g])
            ) != self.morphism_map[h]:
                fail("composition not preserved", (f, g))
                break
        return failures


def identity_groupoid_functor(G: FiniteGroupoid) -> GroupoidFunctor:
    return GroupoidFunctor(
        source_groupoid=G,
        target_groupoid=G,
        object_map={x: x for x in G.objects},
        morphism_map={f: f for f in G.morphisms},
    )


def compose_groupoid_functors(
    F: GroupoidFunctor, G: GroupoidFunctor
) -> GroupoidFunctor:
    """The composite "``F`` then ``G``"."""
    return GroupoidFunctor(
        source_groupoid=F.source_groupoid,
        target_groupoid=G.target_groupoid,
        object_map={x: G.object_map[y] for x, y in F.object_map.items()},
        morphism_map={f: G.morphism_map[g] for f, g in F.morphism_map.items()},
    )


def functors_equal(F: GroupoidFunctor, G: GroupoidFunctor) -> bool:
    return F.object_map == G.object_map and F.morphism_map == G.morphism_map


# ---------------------------------------------------------------------------
# Iso-comma groupoids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IsoComma:
    """The iso-comma groupoid of a cospan, with projections and bookkeeping.

    Objects are triples ``(a, b, phi)`` with ``phi: F a -> G b`` in the
    common target; a morphism out of such a triple is determined by a pair
    ``(alpha, beta)`` of morphisms out of ``a`` and ``b``, since the
    isomorphism component of its target is forced.
    """

    groupoid: FiniteGroupoid
    left_projection: GroupoidFunctor
    right_projection: GroupoidFunctor
    object_data: dict[str, tuple[str, str, str]]
    morphism_data: dict[str, tuple[str, str, str]]
    left_functor: GroupoidFunctor = field(repr=False)
    right_functor: GroupoidFunctor = field(repr=False)

    def object_id(self, a: str, b: str, phi: str) -> str:
        return f"<{a}|{b}|{phi}>"

    def comparison_from(
        self, P: GroupoidFunctor, Q: GroupoidFunctor
    ) -> GroupoidFunctor:
        """The comparison functor of a strictly commuting cone ``(P, Q)``.

        ``P`` and ``Q`` share a source ``W`` and satisfy ``P then F ==
        Q then G`` on the nose; each ``w`` is sent to the triple with
        identity isomorphism component.
        """
        F, G = self.left_functor, self.right_functor
        if not functors_equal(
            compose_groupoid_functors(P, F), compose_groupoid_functors(Q, G)
        ):
            raise ValueError("cone does not commute strictly")
        W = P.source_groupoid
        C = F.target_groupoid
        object_map = {}
        for w in W.objects:
            a, b = P.object_map[w], Q.object_map[w]
            object_map[w] = self.object_id(a, b, C.identity[F.object_map[a]])
        morphism_map = {}
        for f in W.morphisms:
            src = object_map[W.source[f]]
            morphism_map[f] = _comma_morphism_id(
                src, P.morphism_map[f], Q.morphism_map[f]
            )
        return GroupoidFunctor(
            source_groupoid=W,
            target_groupoid=self.groupoid,
            object_map=object_map,
            morphism_map=morphism_map,
        )


def _comma_morphism_id(source_object_id: str, alpha: str, beta: str) -> str:
    return f"[{alpha}|{beta}]{source_object_id}"


def iso_comma(F: GroupoidFunctor, G: GroupoidFunctor) -> IsoComma:
    """The iso-comma groupoid of the cospan ``F: A -> C <- B :G``."""
    if F.target_groupoid != G.target_groupoid:
        raise ValueError("iso_comma needs functors with a common target")
    A, B, C = F.source_groupoid, G.source_groupoid, F.target_groupoid

    object_data: dict[str, tuple[str, str, str]] = {}
    for a in A.objects:
        for b in B.objects:
            for phi in C.hom(F.object_map[a], G.object_map[b]):
                object_data[f"<{a}|{b}|{phi}>"] = (a, b, phi)

    morphism_data: dict[str, tuple[str, str, str]] = {}
    source: dict[str, str] = {}
    target: dict[str, str] = {}
    for oid, (a, b, phi) in object_data.items():
        for alpha in A.morphisms_from(a):
            f_alpha = F.morphism_map[alpha]
            inv_f_alpha = C.inverse[f_alpha]
            for beta in B.morphisms_from(b):
                phi_next = C.compose(
                    inv_f_alpha, C.compose(phi, G.morphism_map[beta])
                )
                mid = _comma_morphism_id(oid, alpha, beta)
                morphism_data[mid] = (oid, alpha, beta)
                source[mid] = oid
                target[mid] = f"<{A.target[alpha]}|{B.target[beta]}|{phi_next}>"

    identity = {
        oid: _comma_morphism_id(oid, A.identity[a], B.identity[b])
        for oid, (a, b, _) in object_data.items()
    }
    composition: dict[tuple[str, str], str] = {}
    by_source: dict[str, list[str]] = {}
    for mid, src in source.items():
        by_source.setdefault(src, []).append(mid)
    for mid, (oid, alpha, beta) in morphism_data.items():
        for mid2 in by_source.get(target[mid], ()):
            _, alpha2, beta2 = morphism_data[mid2]
            composition[(mid, mid2)] = _comma_morphism_id(
                oid, A.compose(alpha, alpha2), B.compose(beta, beta2)
            )
    inverse = {
        mid: _comma_morphism_id(target[mid], A.inverse[alpha], B.inverse[beta])
        for mid, (oid, alpha, beta) in morphism_data.items()
    }
    groupoid = FiniteGroupoid(
        objects=tuple(object_data),
        morphisms=tuple(morphism_data),
        source=source,
        target=target,
        identity=identity,
        composition=composition,
        inverse=inverse,
    )
    left_projection = GroupoidFunctor(
        source_groupoid=groupoid,
        target_groupoid=A,
        object_map={oid: a for oid, (a, _, _) in object_data.items()},
        morphism_map={mid: alpha for mid, (_, alpha, _) in morphism_data.items()},
    )
    right_projection = GroupoidFunctor(
        source_groupoid=groupoid,
        target_groupoid=B,
        object_map={oid: b for oid, (_, b, _) in object_data.items()},
        morphism_map={mid: beta for mid, (_, _, beta) in morphism_data.items()},
    )
    return IsoComma(
        groupoid=groupoid,
        left_projection=left_projection,
        right_projection=right_projection,
        object_data=object_data,
        morphism_data=morphism_data,
        left_functor=F,
        right_functor=G,
    )


# ---------------------------------------------------------------------------
# Equivalence decision
# ---------------------------------------------------------------------------


def is_equivalence(F: GroupoidFunctor) -> CheckReport:
    """Decide whether ``F`` is an equivalence of finite groupoids.

    Essential surjectivity: every target object admits a morphism from an
    image object.  Full faithfulness: for every ordered pair of source
    objects, the hom-set map is a bijection.  Failures carry witnesses.
    """
    failures: list[Instance] = []
    W, V = F.source_groupoid, F.target_groupoid

    image_objects = sorted(set(F.object_map.values()))
    for v in V.objects:
        if any(V.hom(u, v) for u in image_objects):
            continue
        failures.append(
            Instance(
                condition="essential-surjectivity",
                index=(),
                role="object outside the essential image",
                kind="not-surjective",
                witness=(v,),
            )
        )
        break

    for w1 in W.objects:
        for w2 in W.objects:
            mapped: dict[str, str] = {}
            collision = None
            for f in W.hom(w1, w2):
                ff = F.morphism_map[f]
                if ff in mapped and collision is None:
                    collision = (mapped[ff], f)
                mapped.setdefault(ff, f)
            if collision is not None:
                failures.append(
                    Instance(
                        condition="full-faithfulness",
                        index=(),
                        role="hom-set map not injective",
                        kind="not-injective",
                        witness=(w1, w2, collision[0], collision[1]),
                    )
                )
                return report_from_failures(
                    failures, "essential surjectivity and full faithfulness", 2
                )
            for g in V.hom(F.object_map[w1], F.object_map[w2]):
                if g not in mapped:
                    failures.append(
                        Instance(
                            condition="full-faithfulness",
                            index=(),
                            role="hom-set map not surjective",
                            kind="not-surjective",
                            witness=(w1, w2, g),
                        )
                    )
                    return report_from_failures(
                        failures, "essential surjectivity and full faithfulness", 2
                    )
    return report_from_failures(
        failures, "essential surjectivity and full faithfulness", 2
    )


# ---------------------------------------------------------------------------
# Groupoid-valued diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupoidSigmaDiagram:
    """A pre-augmented bisimplicial diagram of finite groupoids.

    Same shape as :class:`~segalcheck.preaug.PreaugBisimplicialSet`, with
    levels finite groupoids and structure maps functors; ``eps`` is a
    functor from the augmentation groupoid into level ``(0, 0)``.
    """

    total_truncation: int
    levels: dict[tuple[int, int], FiniteGroupoid]
    augmentation: FiniteGroupoid
    vertical_faces: dict[tuple[int, int, int], GroupoidFunctor]
    vertical_degeneracies: dict[tuple[int, int, int], GroupoidFunctor]
    horizontal_faces: dict[tuple[int, int, int], GroupoidFunctor]
    horizontal_degeneracies: dict[tuple[int, int, int], GroupoidFunctor]
    eps: GroupoidFunctor

    def bidegrees(self) -> list[tuple[int, int]]:
        return bidegrees_within(self.total_truncation)

    def level(self, a: int, b: int) -> FiniteGroupoid:
        return self.levels[(a, b)]

    def vface(self, a: int, b: int, i: int) -> GroupoidFunctor:
        return self.vertical_faces[(a, b, i)]

    def hface(self, a: int, b: int, i: int) -> GroupoidFunctor:
        return self.horizontal_faces[(a, b, i)]

    def vertical_bottom_functor(self, a: int, b: int, k: int) -> GroupoidFunctor:
        """Iterated lowest vertical face ``(a, b) -> (k, b)``, keeping the back block."""
        functor = identity_groupoid_functor(self.level(a, b))
        for level in range(a, k, -1):
            functor = compose_groupoid_functors(functor, self.vface(level, b, 0))
        return functor

    def vertical_top_functor(self, a: int, b: int, k: int) -> GroupoidFunctor:
        """Iterated highest vertical face ``(a, b) -> (k, b)``, keeping the front block."""
        functor = identity_groupoid_functor(self.level(a, b))
        for level in range(a, k, -1):
            functor = compose_groupoid_functors(functor, self.vface(level, b, level))
        return functor

    def horizontal_bottom_functor(self, a: int, b: int, k: int) -> GroupoidFunctor:
        functor = identity_groupoid_functor(self.level(a, b))
        for level in range(b, k, -1):
            functor = compose_groupoid_functors(functor, self.hface(a, level, 0))
        return functor

    def horizontal_top_functor(self, a: int, b: int, k: int) -> GroupoidFunctor:
        functor = identity_groupoid_functor(self.level(a, b))
        for level in range(b, k, -1):
            functor = compose_groupoid_functors(functor, self.hface(a, level, level))
        return functor


def groupoid_diagram_of_preaug(D: PreaugBisimplicialSet) -> GroupoidSigmaDiagram:
    """The discrete-groupoid image of a set-level pre-augmented object."""
    levels = {key: discrete_groupoid(D.levels[key]) for key in D.bidegrees()}
    augmentation = discrete_groupoid(D.augmentation)

    def lift(table: dict, src: FiniteGroupoid, tgt: FiniteGroupoid) -> GroupoidFunctor:
        return GroupoidFunctor(
            source_groupoid=src,
            target_groupoid=tgt,
            object_map=dict(table),
            morphism_map={f"id:{x}": f"id:{y}" for x, y in table.items()},
        )

    def lift_family(tables: dict, offset_v: int, offset_h: int) -> dict:
        lifted = {}
        for (a, b, i), table in tables.items():
            src = levels[(a, b)]
            tgt = levels[(a + offset_v, b + offset_h)]
            lifted[(a, b, i)] = lift(table, src, tgt)
        return lifted

    return GroupoidSigmaDiagram(
        total_truncation=D.total_truncation,
        levels=levels,
        augmentation=augmentation,
        vertical_faces=lift_family(D.vertical_faces, -1, 0),
        vertical_degeneracies=lift_family(D.vertical_degeneracies, 1, 0),
        horizontal_faces=lift_family(D.horizontal_faces, 0, -1),
        horizontal_degeneracies=lift_family(D.horizontal_degeneracies, 0, 1),
        eps=lift(D.eps, augmentation, levels[(0, 0)]),
    )


def _expected_functor_keys(T: int) -> dict[str, set]:
    expected: dict[str, set] = {
        "vertical_faces": set(),
        "vertical_degeneracies": set(),
        "horizontal_faces": set(),
        "horizontal_degeneracies": set(),
    }
    for a, b in bidegrees_within(T):
        if a >= 1:
            expected["vertical_faces"].update((a, b, i) for i in range(a + 1))
        if b >= 1:
            expected["horizontal_faces"].update((a, b, i) for i in range(b + 1))
        if a + 2 + b <= T:
            expected["vertical_degeneracies"].update((a, b, i) for i in range(a + 1))
            expected["horizontal_degeneracies"].update((a, b, i) for i in range(b + 1))
    return expected


def validate_groupoid_diagram(D: GroupoidSigmaDiagram) -> CheckReport:
    """Validate levels, structure functors, and bisimplicial identities."""
    failures: list[Instance] = []
    T = D.total_truncation
    scope = f"groupoid diagram with total degree <= {T}"
    if T < 1:
        failures.append(
            Instance(
                condition="table-structure",
                index=(T,),
                role="total truncation below 1",
                kind="structural",
                witness=(),
            )
        )
        return report_from_failures(failures, scope, 1)

    expected_levels = set(bidegrees_within(T))
    if set(D.levels) != expected_levels:
        failures.append(
            Instance(
                condition="table-structure",
                index=(),
                role="level keys do not match the bidegrees in range",
                kind="structural",
                witness=tuple(
                    f"({a},{b})"
                    for a, b in sorted(set(D.levels) ^ expected_levels)
                ),
            )
        )
        return report_from_failures(failures, scope, 1)

    for key in sorted(D.levels):
        failures.extend(validate_groupoid(D.levels[key], index=key).instances)
    failures.extend(validate_groupoid(D.augmentation, index=(-1,)).instances)
    if failures:
        return report_from_failures(failures, scope, 1)

    families = {
        "vertical_faces": (D.vertical_faces, -1, 0),
        "vertical_degeneracies": (D.vertical_degeneracies, 1, 0),
        "horizontal_faces": (D.horizontal_faces, 0, -1),
        "horizontal_degeneracies": (D.horizontal_degeneracies, 0, 1),
    }
    expected = _expected_functor_keys(T)
    for name, (family, dv, dh) in families.items():
        if set(family) != expected[name]:
            failures.append(
                Instance(
                    condition="table-structure",
                    index=(),
                    role=f"{name} keys do not match the expected ranges",
                    kind="structural",
                    witness=tuple(
                        str(k) for k in sorted(set(family) ^ expected[name])
                    ),
                )
            )
            continue
        for (a, b, i), functor in sorted(family.items()):
            if functor.source_groupoid != D.levels[(a, b)] or (
                functor.target_groupoid != D.levels[(a + dv, b + dh)]
            ):
                failures.append(
                    Instance(
                        condition="table-structure",
                        index=(a, b, i),
                        role=f"{name} endpoints are not the adjacent levels",
                        kind="structural",
                        witness=(),
                    )
                )
                continue
            failures.extend(
                functor.functor_failures("functor-laws", (a, b, i), name)
            )
    if D.eps.source_groupoid != D.augmentation or D.eps.target_groupoid != D.levels[
        (0, 0)
    ]:
        failures.append(
            Instance(
                condition="table-structure",
                index=(-1,),
                role="eps endpoints are not augmentation -> (0, 0)",
                kind="structural",
                witness=(),
            )
        )
    else:
        failures.extend(D.eps.functor_failures("functor-laws", (-1,), "eps"))
    if failures:
        return report_from_failures(failures, scope, 1)

    def expect_equal(
        F: GroupoidFunctor, G: GroupoidFunctor, index: tuple, role: str
    ) -> None:
        if not functors_equal(F, G):
            failures.append(
                Instance(
                    condition="bisimplicial-identity",
                    index=index,
                    role=role,
                    kind="structural",
                    witness=(),
                )
            )

    compose = compose_groupoid_functors
    for a, b in bidegrees_within(T):
        # Vertical simplicial identities at fixed b.
        if a >= 2:
            for j in range(a + 1):
                for i in range(j):
                    expect_equal(
                        compose(D.vface(a, b, j), D.vertical_faces[(a - 1, b, i)]),
                        compose(D.vface(a, b, i), D.vertical_faces[(a - 1, b, j - 1)]),
                        (a, b, i, j),
                        "d^v_i d^v_j = d^v_{j-1} d^v_i",
                    )
        if b >= 2:
            for j in range(b + 1):
                for i in range(j):
                    expect_equal(
                        compose(D.hface(a, b, j), D.horizontal_faces[(a, b - 1, i)]),
                        compose(D.hface(a, b, i), D.horizontal_faces[(a, b - 1, j - 1)]),
                        (a, b, i, j),
                        "d^h_i d^h_j = d^h_{j-1} d^h_i",
                    )
        if a >= 1 and b >= 1:
            for i in range(a + 1):
                for j in range(b + 1):
                    expect_equal(
                        compose(D.vface(a, b, i), D.horizontal_faces[(a - 1, b, j)]),
                        compose(D.hface(a, b, j), D.vertical_faces[(a, b - 1, i)]),
                        (a, b, i, j),
                        "d^h_j d^v_i = d^v_i d^h_j",
                    )
        if a + 2 + b <= T:
            for j in range(a + 1):
                for i in range(a + 2):
                    s = D.vertical_degeneracies[(a, b, j)]
                    if i == j or i == j + 1:
                        expect_equal(
                            compose(s, D.vertical_faces[(a + 1, b, i)]),
                            identity_groupoid_functor(D.levels[(a, b)]),
                            (a, b, i, j),
                            "d^v_i s^v_j = id",
                        )
                    elif i < j:
                        expect_equal(
                            compose(s, D.vertical_faces[(a + 1, b, i)]),
                            compose(
                                D.vface(a, b, i),
                                D.vertical_degeneracies[(a - 1, b, j - 1)],
                            ),
                            (a, b, i, j),
                            "d^v_i s^v_j = s^v_{j-1} d^v_i",
                        )
                    else:
                        expect_equal(
                            compose(s, D.vertical_faces[(a + 1, b, i)]),
                            compose(
                                D.vface(a, b, i - 1),
                                D.vertical_degeneracies[(a - 1, b, j)],
                            ),
                            (a, b, i, j),
                            "d^v_i s^v_j = s^v_j d^v_{i-1}",
                        )
            for j in range(b + 1):
                for i in range(b + 2):
                    s = D.horizontal_degeneracies[(a, b, j)]
                    if i == j or i == j + 1:
                        expect_equal(
                            compose(s, D.horizontal_faces[(a, b + 1, i)]),
                            identity_groupoid_functor(D.levels[(a, b)]),
                            (a, b, i, j),
                            "d^h_i s^h_j = id",
                        )
                    elif i < j:
                        expect_equal(
                            compose(s, D.horizontal_faces[(a, b + 1, i)]),
                            compose(
                                D.hface(a, b, i),
                                D.horizontal_degeneracies[(a, b - 1, j - 1)],
                            ),
                            (a, b, i, j),
                            "d^h_i s^h_j = s^h_{j-1} d^h_i",
                        )
                    else:
                        expect_equal(
                            compose(s, D.horizontal_faces[(a, b + 1, i)]),
                            compose(
                                D.hface(a, b, i - 1),
                                D.horizontal_degeneracies[(a, b - 1, j)],
                            ),
                            (a, b, i, j),
                            "d^h_i s^h_j = s^h_j d^h_{i-1}",
                        )
            # Mixed degeneracy/face and degeneracy/degeneracy commutation.
            for i in range(a + 1):
                for j in range(b + 1):
                    if b >= 1:
                        expect_equal(
                            compose(
                                D.vertical_degeneracies[(a, b, i)],
                                D.horizontal_faces[(a + 1, b, j)],
                            ),
                            compose(
                                D.hface(a, b, j),
                                D.vertical_degeneracies[(a, b - 1, i)],
                            ),
                            (a, b, i, j),
                            "d^h_j s^v_i = s^v_i d^h_j",
                        )
                    if a >= 1:
                        expect_equal(
                            compose(
                                D.horizontal_degeneracies[(a, b, j)],
                                D.vertical_faces[(a, b + 1, i)],
                            ),
                            compose(
                                D.vface(a, b, i),
                                D.horizontal_degeneracies[(a - 1, b, j)],
                            ),
                            (a, b, i, j),
                            "d^v_i s^h_j = s^h_j d^v_i",
                        )
                    if a + 3 + b <= T:
                        expect_equal(
                            compose(
                                D.vertical_degeneracies[(a, b, i)],
                                D.horizontal_degeneracies[(a + 1, b, j)],
                            ),
                            compose(
                                D.horizontal_degeneracies[(a, b, j)],
                                D.vertical_degeneracies[(a, b + 1, i)],
                            ),
                            (a, b, i, j),
                            "s^h_j s^v_i = s^v_i s^h_j",
                        )
        # Degeneracy/degeneracy identities within one direction.
        if a + 3 + b <= T:
            for j in range(a + 1):
                for i in range(j + 1):
                    expect_equal(
                        compose(
                            D.vertical_degeneracies[(a, b, j)],
                            D.vertical_degeneracies[(a + 1, b, i)],
                        ),
                        compose(
                            D.vertical_degeneracies[(a, b, i)],
                            D.vertical_degeneracies[(a + 1, b, j + 1)],
                        ),
                        (a, b, i, j),
                        "s^v_i s^v_j = s^v_{j+1} s^v_i",
                    )
            for j in range(b + 1):
                for i in range(j + 1):
                    expect_equal(
                        compose(
                            D.horizontal_degeneracies[(a, b, j)],
                            D.horizontal_degeneracies[(a, b + 1, i)],
                        ),
                        compose(
                            D.horizontal_degeneracies[(a, b, i)],
                            D.horizontal_degeneracies[(a, b + 1, j + 1)],
                        ),
                        (a, b, i, j),
                        "s^h_i s^h_j = s^h_{j+1} s^h_i",
                    )
    return report_from_failures(failures, scope, 1)


# ---------------------------------------------------------------------------
# Groupoid-level Segal checks
# ---------------------------------------------------------------------------


class _LazyComma:
    """Hom-set calculus of an iso-comma groupoid, without materializing it.

    Objects are the triples of :func:`iso_comma`; hom-sets between two
    triples are computed on demand.  This keeps the Segal battery within
    memory bounds on levels whose comma groupoids have millions of
    composable pairs.
    """

    def __init__(self, F: GroupoidFunctor, G: GroupoidFunctor):
        if F.target_groupoid != G.target_groupoid:
            raise ValueError("iso-comma needs functors with a common target")
        self.F, self.G = F, G
        self.A = F.source_groupoid
        self.B = G.source_groupoid
        self.C = F.target_groupoid
        self.objects: list[tuple[str, str, str]] = [
            (a, b, phi)
            for a in self.A.objects
            for b in self.B.objects
            for phi in self.C.hom(F.object_map[a], G.object_map[b])
        ]

    def hom(
        self, src: tuple[str, str, str], tgt: tuple[str, str, str]
    ) -> list[tuple[str, str]]:
        a1, b1, phi1 = src
        a2, b2, phi2 = tgt
        pairs = []
        for alpha in self.A.hom(a1, a2):
            lhs = self.C.compose(self.F.morphism_map[alpha], phi2)
            for beta in self.B.hom(b1, b2):
                if self.C.compose(phi1, self.G.morphism_map[beta]) == lhs:
                    pairs.append((alpha, beta))
        return pairs

    def hom_possible(self, src: tuple[str, str, str], tgt: tuple[str, str, str]) -> bool:
        return bool(self.A.hom(src[0], tgt[0])) and bool(self.B.hom(src[1], tgt[1]))


def _describe_triple(triple: tuple[str, str, str]) -> str:
    return f"<{triple[0]}|{triple[1]}|{triple[2]}>"


def _lazy_comparison_failures(
    F: GroupoidFunctor,
    G: GroupoidFunctor,
    P: GroupoidFunctor,
    Q: GroupoidFunctor,
    condition: str,
    index: tuple[int, ...],
    role_prefix: str,
) -> list[Instance]:
    """Failures of the strict-cone comparison ``W -> (F down-iso G)``.

    Equivalent to ``is_equivalence(iso_comma(F, G).comparison_from(P, Q))``
    but with comma hom-sets computed per object pair.
    """
    if not functors_equal(
        compose_groupoid_functors(P, F), compose_groupoid_functors(Q, G)
    ):
        raise ValueError("cone does not commute strictly")
    comma = _LazyComma(F, G)
    W = P.source_groupoid
    C = comma.C
    image = {
        w: (
            P.object_map[w],
            Q.object_map[w],
            C.identity[F.object_map[P.object_map[w]]],
        )
        for w in W.objects
    }
    failures: list[Instance] = []

    by_pair: dict[tuple[str, str], list[str]] = {}
    for w, (a, b, _) in image.items():
        by_pair.setdefault((a, b), []).append(w)
    for triple in comma.objects:
        found = False
        candidates = by_pair.get((triple[0], triple[1]), [])
        for w in candidates:
            if comma.hom(image[w], triple):
                found = True
                break
        if not found:
            for w in W.objects:
                if not comma.hom_possible(image[w], triple):
                    continue
                if comma.hom(image[w], triple):
                    found = True
                    break
        if not found:
            failures.append(
                Instance(
                    condition=condition,
                    index=index,
                    role=f"{role_prefix}: essential-surjectivity",
                    kind="not-surjective",
                    witness=(_describe_triple(triple),),
                )
            )
            return failures

    for w1 in W.objects:
        for w2 in W.objects:
            mapped: dict[tuple[str, str], str] = {}
            for f in W.hom(w1, w2):
                pair = (P.morphism_map[f], Q.morphism_map[f])
                if pair in mapped:
                    failures.append(
                        Instance(
                            condition=condition,
                            index=index,
                            role=f"{role_prefix}: full-faithfulness (hom-set map not injective)",
                            kind="not-injective",
                            witness=(w1, w2, mapped[pair], f),
                        )
                    )
                    return failures
                mapped[pair] = f
            if not mapped and not comma.hom_possible(image[w1], image[w2]):
                continue
            for pair in comma.hom(image[w1], image[w2]):
                if pair not in mapped:
                    failures.append(
                        Instance(
                            condition=condition,
                            index=index,
                            role=f"{role_prefix}: full-faithfulness (hom-set map not surjective)",
                            kind="not-surjective",
                            witness=(w1, w2, f"({pair[0]}, {pair[1]})"),
                        )
                    )
                    return failures
    return failures


def _lazy_augmentation_failures(
    face: GroupoidFunctor,
    eps: GroupoidFunctor,
    leg: GroupoidFunctor,
    condition: str,
    index: tuple[int, ...],
    role_prefix: str,
) -> list[Instance]:
    """Failures of the functor ``(face down-iso eps) -> level`` induced by ``leg``.

    Objects ``(p, z, phi)`` of the comma are sent to ``leg(p)`` and
    morphisms ``(alpha, beta)`` to ``leg(alpha)``; the condition holds
    when this functor is an equivalence.
    """
    comma = _LazyComma(face, eps)
    V = leg.target_groupoid
    failures: list[Instance] = []

    image_objects = sorted({leg.object_map[a] for a, _, _ in comma.objects})
    for v in V.objects:
        if any(V.hom(u, v) for u in image_objects):
            continue
        failures.append(
            Instance(
                condition=condition,
                index=index,
                role=f"{role_prefix}: essential-surjectivity",
                kind="not-surjective",
                witness=(v,),
            )
        )
        return failures

    for src in comma.objects:
        for tgt in comma.objects:
            mapped: dict[str, tuple[str, str]] = {}
            for alpha, beta in comma.hom(src, tgt):
                g = leg.morphism_map[alpha]
                if g in mapped:
                    failures.append(
                        Instance(
                            condition=condition,
                            index=index,
                            role=f"{role_prefix}: full-faithfulness (hom-set map not injective)",
                            kind="not-injective",
                            witness=(
                                _describe_triple(src),
                                _describe_triple(tgt),
                                f"({mapped[g][0]}, {mapped[g][1]})",
                                f"({alpha}, {beta})",
                            ),
                        )
                    )
                    return failures
                mapped[g] = (alpha, beta)
            for g in V.hom(
                leg.object_map[src[0]], leg.object_map[tgt[0]]
            ):
                if g not in mapped:
                    failures.append(
                        Instance(
                            condition=condition,
                            index=index,
                            role=f"{role_prefix}: full-faithfulness (hom-set map not surjective)",
                            kind="not-surjective",
                            witness=(
                                _describe_triple(src),
                                _describe_triple(tgt),
                                g,
                            ),
                        )
                    )
                    return failures
    return failures


def _double_segal_groupoid_instances(
    D: GroupoidSigmaDiagram, index: tuple[int, int, int]
) -> list[Instance]:
    k, l, m = index
    failures: list[Instance] = []

    # Vertical: D(k+l, m) -> D(k, m) x^h_{D(0, m)} D(l, m).
    failures.extend(
        _lazy_comparison_failures(
            F=D.vertical_top_functor(k, m, 0),
            G=D.vertical_bottom_functor(l, m, 0),
            P=D.vertical_bottom_functor(k + l, m, k),
            Q=D.vertical_top_functor(k + l, m, l),
            condition="double-segal",
            index=index,
            role_prefix="vertical",
        )
    )

    # Horizontal: D(m, k+l) -> D(m, k) x^h_{D(m, 0)} D(m, l).
    failures.extend(
        _lazy_comparison_failures(
            F=D.horizontal_bottom_functor(m, k, 0),
            G=D.horizontal_top_functor(m, l, 0),
            P=D.horizontal_top_functor(m, k + l, k),
            Q=D.horizontal_bottom_functor(m, k + l, l),
            condition="double-segal",
            index=index,
            role_prefix="horizontal",
        )
    )
    return failures


def _stability_groupoid_report(D: GroupoidSigmaDiagram) -> CheckReport:
    if D.total_truncation < 3:
        return CheckReport(
            verdict="partial",
            scope="no square level at this truncation; stability undecidable",
        )
    failures: list[Instance] = []

    # Corner span: left column and top row, glued at the top-left vertex.
    failures.extend(
        _lazy_comparison_failures(
            F=D.vface(1, 0, 1),
            G=D.hface(0, 1, 1),
            P=D.hface(1, 1, 1),
            Q=D.vface(1, 1, 1),
            condition="stability",
            index=(1, 1),
            role_prefix="span",
        )
    )

    # Corner cospan: bottom row and right column, glued at the bottom-right vertex.
    failures.extend(
        _lazy_comparison_failures(
            F=D.hface(0, 1, 0),
            G=D.vface(1, 0, 0),
            P=D.vface(1, 1, 0),
            Q=D.hface(1, 1, 0),
            condition="stability",
            index=(1, 1),
            role_prefix="cospan",
        )
    )
    return report_from_failures(
        failures, scope="both corner comparison functors on squares", checked_count=2
    )


def _augmentation_groupoid_report(D: GroupoidSigmaDiagram) -> CheckReport:
    if D.total_truncation < 2:
        return CheckReport(
            verdict="partial",
            scope="no edge levels at this truncation; augmentation undecidable",
        )
    failures: list[Instance] = []

    # Vertical: iso-comma of the bottom vertex against eps, classified by the top vertex.
    failures.extend(
        _lazy_augmentation_failures(
            face=D.vface(1, 0, 0),
            eps=D.eps,
            leg=D.vface(1, 0, 1),
            condition="augmentation",
            index=(1, 0),
            role_prefix="vertical",
        )
    )
    # Horizontal: iso-comma of the right vertex against eps, classified by the left vertex.
    failures.extend(
        _lazy_augmentation_failures(
            face=D.hface(0, 1, 1),
            eps=D.eps,
            leg=D.hface(0, 1, 0),
            condition="augmentation",
            index=(0, 1),
            role_prefix="horizontal",
        )
    )
    return report_from_failures(
        failures, scope="both augmentation comparison functors", checked_count=2
    )


def check_sadss_groupoid(D: GroupoidSigmaDiagram, jobs: int = 1) -> CheckReport:
    """Groupoid-level stable augmented double Segal conditions of ``D``.

    Mirrors the set-level battery with each comparison map replaced by a
    comparison functor into (or out of) an iso-comma groupoid, tested via
    :func:`is_equivalence`.  Returns the same three sub-reports.
    """
    from .checks import _run_indexed

    T = D.total_truncation
    indices = sorted(
        (k, l, m)
        for total in range(T)
        for k in range(total + 1)
        for l in range(total + 1 - k)
        for m in (total - k - l,)
    )
    chunks = _run_indexed(
        lambda idx: _double_segal_groupoid_instances(D, idx), indices, jobs
    )
    double_segal = report_from_failures(
        [instance for chunk in chunks for instance in chunk],
        scope=f"row and column gluing for k + l + m <= {T - 1}",
        checked_count=2 * len(indices),
    )
    named = {
        "double-segal": double_segal,
        "stability": _stability_groupoid_report(D),
        "augmentation": _augmentation_groupoid_report(D),
    }
    return merge_subreports(named, scope=f"total degree <= {T}")
