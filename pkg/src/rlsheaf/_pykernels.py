"""Pure-Python versions of the hot loops.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Tables are square nested sequences of ints; ``le`` is the 0/1 order matrix.
"""

from __future__ import annotations

from typing import Optional, Sequence

Table = Sequence[Sequence[int]]


def first_assoc_violation(op: Table) -> Optional[tuple[int, int, int]]:
    n = len(op)
    for x in range(n):
        row = op[x]
        for y in range(n):
            xy = row[y]
            opy = op[y]
            for z in range(n):
                if op[xy][z] != row[opy[z]]:
                    return (x, y, z)
    return None


def first_adjunction_violation(
    tensor: Table, residuum: Table, le: Table
) -> Optional[tuple[int, int, int]]:
    n = len(tensor)
    for x in range(n):
        tx = tensor[x]
        lex = le[x]
        for y in range(n):
            lhs_row = le[tx[y]]
            ry = residuum[y]
            for z in range(n):
                if lhs_row[z] != lex[ry[z]]:
                    return (x, y, z)
    return None


def derive_residuum(tensor: Table, join: Table, le: Table, bottom: int) -> list[list[int]]:
    """Candidate residuum: join of all w with w (x) y <= z. Not verified here."""
    n = len(tensor)
    out = [[bottom] * n for _ in range(n)]
    for y in range(n):
        for z in range(n):
            acc = bottom
            for w in range(n):
                if le[tensor[w][y]][z]:
                    acc = join[acc][w]
            out[y][z] = acc
    return out


def _consistent(T, le, join, n) -> bool:
    for x in range(n):
        Tx = T[x]
        for y in range(n):
            a = Tx[y]
            if a < 0:
                continue
            # monotone in the second argument
            for y2 in range(n):
                b = Tx[y2]
                if b >= 0 and le[y][y2] and not le[a][b]:
                    return False
            # binary joins are preserved
            for z in range(n):
                b = Tx[z]
                c = Tx[join[y][z]]
                if b >= 0 and c >= 0 and c != join[a][b]:
                    return False
            # associativity wherever both sides are known
            Ta = T[a]
            Ty = T[y]
            for z in range(n):
                left = Ta[z]
                yz = Ty[z]
                if left >= 0 and yz >= 0:
                    right = Tx[yz]
                    if right >= 0 and right != left:
                        return False
    return True


def search_tensors(
    le: Table, meet: Table, join: Table, bottom: int, top: int
) -> list[list[list[int]]]:
    """All commutative, associative, join-preserving tensors with identity ``top``.

    On a finite lattice these are exactly the tensors that admit a residuum.
    Results are produced in lexicographic order of the free cells.
    """
    n = len(le)
    T = [[-1] * n for _ in range(n)]
    for x in range(n):
        T[bottom][x] = T[x][bottom] = bottom
    for x in range(n):
        if x != bottom:
            T[top][x] = T[x][top] = x
    T[top][bottom] = T[bottom][top] = bottom
    free = [
        (i, j)
        for i in range(n)
        for j in range(i, n)
        if i not in (bottom, top) and j not in (bottom, top)
    ]
    domains = [[v for v in range(n) if le[v][meet[i][j]]] for i, j in free]
    results: list[list[list[int]]] = []
    if not _consistent(T, le, join, n):
        return results

    def rec(k: int) -> None:
        if k == len(free):
            results.append([row[:] for row in T])
            return
        i, j = free[k]
        for v in domains[k]:
            T[i][j] = T[j][i] = v
            if _consistent(T, le, join, n):
                rec(k + 1)
        T[i][j] = T[j][i] = -1

    rec(0)
    return results


def enumerate_sections(sizes: Sequence[int], allow) -> list[tuple[int, ...]]:
    """Choice vectors c with bit c[q] of allow[p][c[p]][q] set for every p != q.

    ``allow[p][c][q]`` is a bit mask over the classes of stalk q. Output is in
    lexicographic order.
    """
    k = len(sizes)
    out: list[tuple[int, ...]] = []
    cur = [0] * k

    def rec(q: int) -> None:
        if q == k:
            out.append(tuple(cur))
            return
        allow_q = allow[q]
        for d in range(sizes[q]):
            ad = allow_q[d]
            for p in range(q):
                cp = cur[p]
                if not (allow[p][cp][q] >> d) & 1 or not (ad[p] >> cp) & 1:
                    break
            else:
                cur[q] = d
                rec(q + 1)

    rec(0)
    return out
