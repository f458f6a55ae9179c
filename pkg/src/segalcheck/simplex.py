"""Finite ordinals and weakly monotone maps between them.

The finite ordinals ``[n] = {0, ..., n}`` together with the weakly
monotone functions between them index everything in this package:
levels of truncated simplicial sets are indexed by single ordinals,
and the doubly indexed diagrams used by the path and S-dot
constructions are indexed by pairs of ordinals plus one extra
augmentation index sitting below all bidegrees.

Maps are stored as explicit value tables, which makes identity tests,
composition, and exhaustive enumeration direct.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterator


@dataclass(frozen=True)
class MonotoneMap:
    """A weakly monotone function ``[domain_size] -> [codomain_size]``.

    ``values[k]`` is the image of ``k``.  The tuple has length
    ``domain_size + 1``, is weakly increasing, and every entry lies in
    ``[0, codomain_size]``.
    """

    domain_size: int
    codomain_size: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.domain_size < 0:
            raise ValueError(f"domain size must be >= 0, got {self.domain_size}")
        if self.codomain_size < 0:
            raise ValueError(f"codomain size must be >= 0, got {self.codomain_size}")
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.domain_size + 1:
            raise ValueError(
                f"need {self.domain_size + 1} values for domain [{self.domain_size}], "
                f"got {len(values)}"
            )
        for k, v in enumerate(values):
            if not 0 <= v <= self.codomain_size:
                raise ValueError(
                    f"value {v} at position {k} lies outside [0, {self.codomain_size}]"
                )
            if k > 0 and values[k - 1] > v:
                raise ValueError(
                    f"values must be weakly increasing, got {values[k-1]} > {v} "
                    f"at positions {k-1}, {k}"
                )

    def __call__(self, k: int) -> int:
        return self.values[k]

    @property
    def is_identity(self) -> bool:
        return self.domain_size == self.codomain_size and all(
            v == k for k, v in enumerate(self.values)
        )

    @property
    def is_injective(self) -> bool:
        return all(self.values[k] < self.values[k + 1] for k in range(self.domain_size))

    @property
    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.codomain_size + 1))


def identity_monotone(n: int) -> MonotoneMap:
    """The identity map of the ordinal ``[n]``."""
    return MonotoneMap(n, n, tuple(range(n + 1)))


def compose_monotone(f: MonotoneMap, g: MonotoneMap) -> MonotoneMap:
    """The composite ``g after f`` of monotone maps.

    Raises ``ValueError`` when the codomain of ``f`` does not match the
    domain of ``g``, naming both sizes.
    """
    if f.codomain_size != g.domain_size:
        raise ValueError(
            f"cannot compose: codomain [{f.codomain_size}] of the first map "
            f"differs from domain [{g.domain_size}] of the second"
        )
    return MonotoneMap(f.domain_size, g.codomain_size, tuple(g(v) for v in f.values))


def coface(n: int, i: int) -> MonotoneMap:
    """The injection ``[n-1] -> [n]`` whose image omits ``i`` (0 <= i <= n)."""
    if n < 1:
        raise ValueError(f"coface target [{n}] must have n >= 1")
    if not 0 <= i <= n:
        raise ValueError(f"coface index {i} out of range [0, {n}]")
    return MonotoneMap(n - 1, n, tuple(v if v < i else v + 1 for v in range(n)))


def codegeneracy(n: int, i: int) -> MonotoneMap:
    """The surjection ``[n+1] -> [n]`` that repeats ``i`` (0 <= i <= n)."""
    if n < 0:
        raise ValueError(f"codegeneracy target [{n}] must have n >= 0")
    if not 0 <= i <= n:
        raise ValueError(f"codegeneracy index {i} out of range [0, {n}]")
    return MonotoneMap(n + 1, n, tuple(v if v <= i else v - 1 for v in range(n + 2)))


def vertex_inclusion(vertices: tuple[int, ...], codomain_size: int) -> MonotoneMap:
    """The injection ``[k] -> [codomain_size]`` selecting the given vertices.

    ``vertices`` must be strictly increasing and contained in
    ``[0, codomain_size]``; ``k + 1`` is its length.
    """
    mono = MonotoneMap(len(vertices) - 1, codomain_size, tuple(vertices))
    if not mono.is_injective:
        raise ValueError(f"vertex list {vertices} is not strictly increasing")
    return mono


def factorize_epi_mono(f: MonotoneMap) -> tuple[MonotoneMap, MonotoneMap]:
    """Split ``f`` as a monotone surjection followed by a monotone injection.

    Returns ``(surjection, injection)`` with
    ``f = compose_monotone(surjection, injection)``.  The factorization
    through the image is unique.
    """
    image = sorted(set(f.values))
    rank = {v: r for r, v in enumerate(image)}
    k = len(image) - 1
    surjection = MonotoneMap(f.domain_size, k, tuple(rank[v] for v in f.values))
    injection = MonotoneMap(k, f.codomain_size, tuple(image))
    return surjection, injection


def enumerate_monotone(n: int, m: int) -> tuple[MonotoneMap, ...]:
    """All monotone maps ``[n] -> [m]`` in lexicographic order of value tables.

    The count is ``binomial(n + m + 1, m)``.
    """
    if n < 0 or m < 0:
        raise ValueError(f"ordinal sizes must be >= 0, got ({n}, {m})")
    return tuple(
        MonotoneMap(n, m, values)
        for values in combinations_with_replacement(range(m + 1), n + 1)
    )


def peel_generators(f: MonotoneMap) -> Iterator[tuple[str, int]]:
    """Decompose ``f`` into coface and codegeneracy generators.

    Yields pairs ``(tag, index)`` with tag ``"coface"`` or
    ``"codegeneracy"``, ordered from the *outermost* generator inwards:
    cofaces are peeled off the codomain side first, largest omitted
    vertex first, then codegeneracies off the domain side, so that

        f  =  coface(...) after ... after codegeneracy(...) after ...

    Applying a contravariant table-valued functor therefore means
    applying the yielded face operations first (largest index first)
    and the yielded degeneracy operations afterwards.
    """
    surjection, injection = factorize_epi_mono(f)
    omitted = sorted(set(range(injection.codomain_size + 1)) - set(injection.values))
    for v in reversed(omitted):
        # Dropping the largest omitted vertex first keeps the remaining
        # omitted vertices' indices unchanged.
        yield ("coface", v)
    repeats = [j for j in range(surjection.domain_size) if surjection(j) == surjection(j + 1)]
    for j in repeats:
        yield ("codegeneracy", j)
