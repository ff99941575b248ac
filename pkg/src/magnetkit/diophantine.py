"""Exact nonnegative integer linear solving.

Decides whether  sum_i x_i * col_i = target  has a solution with x in N^k,
where each coordinate row is either an exact equation over Z or a congruence
modulo n (n >= 2).  Congruence rows are compiled away with a pair of slack
columns (+n, -n), after which the question is homogenized with an extra
column -target and handed to a completion search in the style of
Contejean and Devie: breadth-first over coefficient vectors, extending t by
e_i only when <A t, A e_i> < 0, pruning anything that strictly dominates an
already-found minimal solution.  The search is complete, so a False answer is
a proof of non-membership; hitting the node cap raises instead of guessing.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import ResourceLimitError

DEFAULT_MAX_NODES = 200_000


def has_nonneg_solution(
    columns: Sequence[Sequence[int]],
    target: Sequence[int],
    moduli: Optional[Sequence[int]] = None,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> bool:
    """True iff target is a nonnegative integer combination of the columns.

    moduli[r] == 0 means row r is an exact equation; moduli[r] == n >= 2 means
    row r only has to match modulo n.
    """
    target = tuple(int(v) for v in target)
    m = len(target)
    cols = [tuple(int(v) for v in col) for col in columns]
    for col in cols:
        if len(col) != m:
            raise ValueError("column length does not match target length")
    if moduli is None:
        moduli = (0,) * m
    moduli = tuple(int(v) for v in moduli)
    if len(moduli) != m:
        raise ValueError("one modulus per row required")

    if all(v == 0 for v in target):
        return True

    work = list(cols)
    for r, n in enumerate(moduli):
        if n == 0:
            continue
        if n < 2:
            raise ValueError("modulus must be 0 or >= 2")
        slack = [0] * m
        slack[r] = n
        work.append(tuple(slack))
        slack = [0] * m
        slack[r] = -n
        work.append(tuple(slack))

    hom = len(work)
    work.append(tuple(-v for v in target))
    q = len(work)

    def value_plus(v: tuple, i: int) -> tuple:
        col = work[i]
        return tuple(a + b for a, b in zip(v, col))

    def dot(v: tuple, i: int) -> int:
        col = work[i]
        return sum(a * b for a, b in zip(v, col))

    zero_value = (0,) * m
    minimal: list[tuple] = []
    seen: set[tuple] = set()
    frontier: list[tuple[tuple, tuple]] = []
    for i in range(q):
        x = [0] * q
        x[i] = 1
        frontier.append((tuple(x), tuple(work[i])))
    processed = 0

    while frontier:
        next_frontier: list[tuple[tuple, tuple]] = []
        for x, v in frontier:
            processed += 1
            if processed > max_nodes:
                raise ResourceLimitError(
                    "diophantine search exceeded %d nodes" % max_nodes
                )
            if v == zero_value:
                if x[hom] == 1:
                    return True
                minimal.append(x)
                continue
            at_hom_cap = x[hom] == 1
            for i in range(q):
                if at_hom_cap and i == hom:
                    continue
                if dot(v, i) < 0:
                    y = list(x)
                    y[i] += 1
                    y = tuple(y)
                    if y in seen:
                        continue
                    if any(_strictly_dominates(y, s) for s in minimal):
                        continue
                    seen.add(y)
                    next_frontier.append((y, value_plus(v, i)))
        frontier = next_frontier
    return False


def _strictly_dominates(y: tuple, s: tuple) -> bool:
    ge = True
    strict = False
    for a, b in zip(y, s):
        if a < b:
            ge = False
            break
        if a > b:
            strict = True
    return ge and strict
