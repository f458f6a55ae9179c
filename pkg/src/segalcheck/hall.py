"""Convolution structure constants of a finite simplicial set.

Triangles are read as partial multiplications on edges: the count
``c(a, b, e)`` is the number of triangles whose long edge is ``e`` and
whose short edges are ``a`` then ``b``.  For a 2-Segal input this
convolution is associative; the checker verifies that directly, in exact
integer arithmetic, and reports a witness quadruple otherwise.

This module is a behavioral cross-check that goes beyond the core
equivalence machinery of the package; it exists to exercise the
2-Segal checkers against an independent algebraic consequence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .report import CheckReport, Instance, report_from_failures
from .sset import TruncatedSimplicialSet

__all__ = ["StructureConstants", "structure_constants", "check_associativity"]


@dataclass(frozen=True)
class StructureConstants:
    """Sparse triangle counts over the edge basis.

    ``table[(a, b, e)]`` counts triangles with faces ``d_2 = a``,
    ``d_0 = b``, ``d_1 = e``; absent keys mean zero.
    """

    basis: tuple[str, ...]
    table: dict[tuple[str, str, str], int]

    def count(self, a: str, b: str, e: str) -> int:
        return self.table.get((a, b, e), 0)


def structure_constants(X: TruncatedSimplicialSet) -> StructureConstants:
    """Count triangles of ``X`` by their three edges."""
    if X.truncation < 2:
        raise ValueError("structure constants need at least triangle level 2")
    d0 = X.faces[(2, 0)]
    d1 = X.faces[(2, 1)]
    d2 = X.faces[(2, 2)]
    table: dict[tuple[str, str, str], int] = {}
    for triangle in X.level(2):
        key = (d2[triangle], d0[triangle], d1[triangle])
        table[key] = table.get(key, 0) + 1
    return StructureConstants(basis=tuple(X.level(1)), table=dict(table))


def check_associativity(S: StructureConstants) -> CheckReport:
    """Verify the convolution identity over all basis quadruples.

    For every ``(a, b, c, f)``: sum over ``e`` of ``c(a,b,e) * c(e,c,f)``
    must equal sum over ``e`` of ``c(b,c,e) * c(a,e,f)``.
    """
    left: dict[tuple[str, str], dict[str, int]] = {}
    for (a, b, e), count in S.table.items():
        left.setdefault((a, b), {})[e] = count

    def lhs(a: str, b: str, c: str, f: str) -> int:
        total = 0
        for e, count in left.get((a, b), {}).items():
            total += count * S.count(e, c, f)
        return total

    def rhs(a: str, b: str, c: str, f: str) -> int:
        total = 0
        for e, count in left.get((b, c), {}).items():
            total += count * S.count(a, e, f)
        return total

    failures: list[Instance] = []
    for a in S.basis:
        for b in S.basis:
            for c in S.basis:
                for f in S.basis:
                    l, r = lhs(a, b, c, f), rhs(a, b, c, f)
                    if l != r:
                        failures.append(
                            Instance(
                                condition="hall-associativity",
                                index=(),
                                role=f"left sum {l} != right sum {r}",
                                kind="structural",
                                witness=(a, b, c, f),
                            )
                        )
                        return report_from_failures(
                            failures,
                            scope="all basis quadruples",
                            checked_count=len(S.basis) ** 4,
                        )
    return report_from_failures(
        failures, scope="all basis quadruples", checked_count=len(S.basis) ** 4
    )
