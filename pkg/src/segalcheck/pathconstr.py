"""Path construction: reindex a truncated simplicial set as an augmented bisimplicial object.

The path construction ``P`` sends a truncated simplicial set ``X`` to the
pre-augmented bisimplicial set with

* level ``(a, b)`` equal to ``X_{a+1+b}``,
* vertical faces/degeneracies acting on the front block of vertices
  (simplicial indices ``0..a``),
* horizontal faces/degeneracies acting on the back block
  (simplicial indices ``a+1..a+1+b``),
* augmentation level ``X_0`` with unit map ``s_0: X_0 -> X_1``.

The total truncation of ``P(X)`` equals the truncation of ``X``, so ``X``
must be truncated at level 1 or higher.
"""

from __future__ import annotations

from .preaug import AUG, PreaugBisimplicialSet, PreaugMap, bidegrees_within
from .sset import SimplicialMap, TruncatedSimplicialSet, standard_simplex

__all__ = [
    "path_of_sset",
    "path_of_map",
    "path_standard_simplex",
    "path_generator_id",
]


def path_of_sset(X: TruncatedSimplicialSet) -> PreaugBisimplicialSet:
    """Reindex ``X`` as a pre-augmented bisimplicial set of total truncation ``X.truncation``.

    Raises ``ValueError`` when ``X`` is truncated at level 0, since the
    result needs at least the bidegree ``(0, 0)`` level ``X_1``.
    """
    t = X.truncation
    if t < 1:
        raise ValueError(
            "path construction needs truncation >= 1; "
            f"got a simplicial set truncated at level {t}"
        )
    levels = {}
    vfaces = {}
    vdegens = {}
    hfaces = {}
    hdegens = {}
    for a, b in bidegrees_within(t):
        n = a + 1 + b
        levels[(a, b)] = X.level(n)
        if a >= 1:
            for i in range(a + 1):
                vfaces[(a, b, i)] = dict(X.faces[(n, i)])
        if b >= 1:
            for i in range(b + 1):
                hfaces[(a, b, i)] = dict(X.faces[(n, i + 1 + a)])
        if n < t:
            for i in range(a + 1):
                vdegens[(a, b, i)] = dict(X.degeneracies[(n, i)])
            for i in range(b + 1):
                hdegens[(a, b, i)] = dict(X.degeneracies[(n, i + 1 + a)])
    return PreaugBisimplicialSet(
        total_truncation=t,
        levels=levels,
        augmentation=X.level(0),
        vertical_faces=vfaces,
        vertical_degeneracies=vdegens,
        horizontal_faces=hfaces,
        horizontal_degeneracies=hdegens,
        eps=dict(X.degeneracies[(0, 0)]),
    )


def path_of_map(f: SimplicialMap) -> PreaugMap:
    """Apply the path construction to a simplicial map, levelwise."""
    source = path_of_sset(f.source)
    target = path_of_sset(f.target)
    components = {
        (a, b): dict(f.components[a + 1 + b])
        for a, b in source.bidegrees()
    }
    return PreaugMap(
        source=source,
        target=target,
        components=components,
        augmentation_component=dict(f.components[0]),
    )


def path_standard_simplex(n: int) -> PreaugBisimplicialSet:
    """Path construction of the standard ``n``-simplex.

    For ``n >= 1`` the simplex is truncated at level ``n``; for ``n = 0``
    it is truncated at level 1 so the path construction is defined.  The
    resulting object has total truncation ``max(n, 1)``.
    """
    if n < 0:
        raise ValueError(f"simplex dimension must be >= 0; got {n}")
    return path_of_sset(standard_simplex(n, max(n, 1)))


def path_generator_id(n: int) -> str:
    """Identifier of the distinguished generator of ``path_standard_simplex(n)``.

    For ``n >= 1`` this is the nondegenerate top cell of the ``n``-simplex,
    sitting in every bidegree ``(a, b)`` with ``a + 1 + b = n``.  For
    ``n = 0`` it is the unique augmentation element.
    """
    if n < 0:
        raise ValueError(f"simplex dimension must be >= 0; got {n}")
    if n == 0:
        return "0"
    return "".join(str(v) for v in range(n + 1))


def path_generator_key(n: int, a: int, b: int):
    """Level key at which the distinguished generator of degree ``n`` lives.

    Returns the bidegree ``(a, b)`` unchanged after checking
    ``a + 1 + b == n``; the ``n = 0`` generator lives at the augmentation
    level ``AUG``.
    """
    if n == 0:
        return AUG
    if a + 1 + b != n:
        raise ValueError(f"bidegree ({a},{b}) has total degree {a + 1 + b}, not {n}")
    return (a, b)
