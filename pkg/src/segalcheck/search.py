"""Smallest-first search for simplicial sets that fail the triangle-gluing check.

Enumerates every valid truncated simplicial set within given level-size
bounds — smallest total size first, then lexicographic size profiles,
then a deterministic backtracking order over the face/degeneracy tables
— and returns the first one on which ``check_2segal`` fails.  The
enumeration assigns one table entry at a time and prunes as soon as any
fully determined simplicial identity is violated, so only valid objects
reach the checker.
"""

from __future__ import annotations

from itertools import product

from .checks import check_2segal
from .report import CheckReport
from .sset import TruncatedSimplicialSet

__all__ = ["find_minimal_non_2segal", "enumerate_valid_structures"]

Tables = dict[tuple[int, int], dict[str, str]]


def _identities_hold(
    t: int,
    levels: tuple[tuple[str, ...], ...],
    faces: Tables,
    degens: Tables,
) -> bool:
    """True while no *fully assigned* simplicial identity is violated."""
    for n in range(2, t + 1):
        for j in range(1, n + 1):
            for i in range(j):
                for x in levels[n]:
                    dj = faces[(n, j)].get(x)
                    di = faces[(n, i)].get(x)
                    if dj is None or di is None:
                        continue
                    lhs = faces[(n - 1, i)].get(dj)
                    rhs = faces[(n - 1, j - 1)].get(di)
                    if lhs is not None and rhs is not None and lhs != rhs:
                        return False
    for n in range(t - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                for x in levels[n]:
                    sj = degens[(n, j)].get(x)
                    si = degens[(n, i)].get(x)
                    if sj is None or si is None:
                        continue
                    lhs = degens[(n + 1, i)].get(sj)
                    rhs = degens[(n + 1, j + 1)].get(si)
                    if lhs is not None and rhs is not None and lhs != rhs:
                        return False
    for n in range(t):
        for j in range(n + 1):
            for i in range(n + 2):
                for x in levels[n]:
                    sj = degens[(n, j)].get(x)
                    if sj is None:
                        continue
                    got = faces[(n + 1, i)].get(sj)
                    if got is None:
                        continue
                    if i == j or i == j + 1:
                        if got != x:
                            return False
                    elif i < j:
                        di = faces[(n, i)].get(x)
                        if di is None:
                            continue
                        want = degens[(n - 1, j - 1)].get(di)
                        if want is not None and got != want:
                            return False
                    else:
                        di = faces[(n, i - 1)].get(x)
                        if di is None:
                            continue
                        want = degens[(n - 1, j)].get(di)
                        if want is not None and got != want:
                            return False
    return True


def enumerate_valid_structures(profile: tuple[int, ...]):
    """Yield every valid truncated simplicial set with the given level sizes.

    ``profile[n]`` is the size of level ``n``; the truncation is
    ``len(profile) - 1``.  Elements are named ``x{n}_{k}``; objects are
    yielded in a deterministic backtracking order.
    """
    t = len(profile) - 1
    levels = tuple(
        tuple(f"x{n}_{k}" for k in range(size)) for n, size in enumerate(profile)
    )
    faces: Tables = {(n, i): {} for n in range(1, t + 1) for i in range(n + 1)}
    degens: Tables = {(n, i): {} for n in range(t) for i in range(n + 1)}

    cells: list[tuple[str, int, int, str]] = []
    for n in range(t):
        for i in range(n + 1):
            cells.extend(("s", n, i, x) for x in levels[n])
        for i in range(n + 2):
            cells.extend(("d", n + 1, i, x) for x in levels[n + 1])

    def assign(idx: int):
        if idx == len(cells):
            yield TruncatedSimplicialSet(
                t,
                levels,
                {key: dict(table) for key, table in faces.items()},
                {key: dict(table) for key, table in degens.items()},
            )
            return
        kind, n, i, x = cells[idx]
        table = degens[(n, i)] if kind == "s" else faces[(n, i)]
        targets = levels[n + 1] if kind == "s" else levels[n - 1]
        for value in targets:
            table[x] = value
            if _identities_hold(t, levels, faces, degens):
                yield from assign(idx + 1)
        del table[x]

    yield from assign(0)


def find_minimal_non_2segal(
    max_x0: int = 1,
    max_x1: int = 2,
    truncation: int = 3,
    max_total: int = 8,
) -> tuple[TruncatedSimplicialSet, CheckReport] | None:
    """The smallest simplicial set within the bounds failing ``check_2segal``.

    Nonempty objects only (level sizes at least 1); profiles are ordered
    by total size, then lexicographically.  Returns the object together
    with its failing report, or ``None`` when everything in range passes.
    ``max_total`` bounds the summed level sizes; enumeration cost grows
    steeply with it, so keep the bounds at desk scale.
    """
    if truncation < 3:
        raise ValueError("need truncation >= 3 for a nontrivial triangle check")
    bounds = [max_x0, max_x1] + [max_total] * (truncation - 1)
    for total in range(truncation + 1, max_total + 1):
        for profile in product(*(range(1, bound + 1) for bound in bounds)):
            if sum(profile) != total:
                continue
            for X in enumerate_valid_structures(profile):
                report = check_2segal(X)
                if report.verdict == "fail":
                    return X, report
    return None
