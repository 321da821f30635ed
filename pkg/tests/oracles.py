"""Brute-force reference computations, written from the definitions only.

Nothing here calls the library's filter, spectrum, quotient or sheaf code, so
agreement with those modules is evidence rather than tautology.
"""

from itertools import product


def le(L, x, y):
    return L.meet[x][y] == x


def subset_elems(n, S):
    return [i for i in range(n) if S >> i & 1]


def filters_by_scan(L):
    """All nonempty, upward closed, tensor closed subsets, found by scanning 2^n masks."""
    n = L.n
    out = []
    for S in range(1, 1 << n):
        el = subset_elems(n, S)
        up = all(S >> y & 1 for x in el for y in range(n) if le(L, x, y))
        closed = all(S >> L.tensor[x][y] & 1 for x in el for y in el)
        if up and closed:
            out.append(S)
    return sorted(out, key=lambda m: (bin(m).count("1"), m))


def primes_by_scan(L):
    full = (1 << L.n) - 1
    out = []
    for F in filters_by_scan(L):
        if F == full:
            continue
        if all(
            not F >> L.join[x][y] & 1 or F >> x & 1 or F >> y & 1
            for x in range(L.n) for y in range(L.n)
        ):
            out.append(F)
    return out


def o_of_p_direct(L, P):
    return sum(
        1 << x
        for x in range(L.n)
        if any(not P >> a & 1 and L.join[a][x] == L.top for a in range(L.n))
    )


def generated_by_scan(L, X):
    """Least filter containing X: intersection of all filters that contain it."""
    out = (1 << L.n) - 1
    for F in filters_by_scan(L):
        if X & ~F == 0:
            out &= F
    return out


def residuum_by_max(L):
    """r(y, z) = greatest w with w (x) y <= z, or None when no greatest exists."""
    n = L.n
    table = []
    for y in range(n):
        row = []
        for z in range(n):
            ws = [w for w in range(n) if le(L, L.tensor[w][y], z)]
            top = [w for w in ws if all(le(L, v, w) for v in ws)]
            row.append(top[0] if len(top) == 1 else None)
        table.append(row)
    return table


def classes_mod(L, F):
    """class id of each element: least element equivalent to it."""
    r, t = L.residuum, L.tensor
    return [
        min(y for y in range(L.n) if F >> t[r[x][y]][r[y][x]] & 1) for x in range(L.n)
    ]


class BruteSheaf:
    """Total space with points (prime index, least representative)."""

    def __init__(self, L):
        self.L = L
        self.primes = primes_by_scan(L)
        self.filters = filters_by_scan(L)
        self.cls = [classes_mod(L, o_of_p_direct(L, P)) for P in self.primes]
        self.stalk_reps = [sorted(set(c)) for c in self.cls]
        k = len(self.primes)
        self.D = [
            frozenset(i for i in range(k) if F & ~self.primes[i]) for F in self.filters
        ]
        self.spec_opens = set(self.D)
        self.base = {
            frozenset((i, self.cls[i][a]) for i in D) for D in self.D for a in range(L.n)
        }

    def total_opens(self):
        opens = {frozenset()}
        frontier = [frozenset()]
        while frontier:
            nxt = []
            for U in frontier:
                for B in self.base:
                    V = U | B
                    if V not in opens:
                        opens.add(V)
                        nxt.append(V)
            frontier = nxt
        return opens

    def sections(self):
        """Choice vectors (by class position) continuous for the preimage test on all opens."""
        k = len(self.primes)
        opens = self.total_opens()
        out = []
        for choice in product(*(range(len(r)) for r in self.stalk_reps)):
            pts = [(i, self.stalk_reps[i][c]) for i, c in enumerate(choice)]
            if all(
                frozenset(i for i in range(k) if pts[i] in U) in self.spec_opens for U in opens
            ):
                out.append(choice)
        return out
