"""Regenerate the fixture lattices in src/rlsheaf/data/."""

from pathlib import Path

from rlsheaf.algebra import ResiduatedLattice, tables_from_order
from rlsheaf.latfile import dump

OUT = Path(__file__).resolve().parents[1] / "src" / "rlsheaf" / "data"


def from_order(names, leq, tensor, residuum=None):
    n = len(names)
    le = [[1 if leq(x, y) else 0 for y in range(n)] for x in range(n)]
    meet, join = tables_from_order(le)
    return ResiduatedLattice.from_tables(names, meet, join, tensor, residuum)


def chain(n, tensor):
    names = ["0"] + [f"m{i}" for i in range(1, n - 1)] + ["1"]
    if n == 3:
        names = ["0", "m", "1"]
    t = [[tensor(x, y, n) for y in range(n)] for x in range(n)]
    return from_order(names, lambda x, y: x <= y, t)


def godel(x, y, n):
    return min(x, y)


def lukasiewicz(x, y, n):
    return max(0, x + y - (n - 1))


# worked examples; index order 0, a, b, (c,) 1
DIAMOND5 = {(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)}
L5_TENSOR = [
    [0, 0, 0, 0, 0],
    [0, 1, 0, 1, 1],
    [0, 0, 2, 2, 2],
    [0, 1, 2, 3, 3],
    [0, 1, 2, 3, 4],
]
L5_RESIDUUM = [
    [4, 4, 4, 4, 4],
    [2, 4, 2, 4, 4],
    [1, 1, 4, 4, 4],
    [0, 1, 2, 4, 4],
    [0, 1, 2, 3, 4],
]
SQUARE4 = {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)}
L4_TENSOR = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]]
L4_RESIDUUM = [[3, 3, 3, 3], [2, 3, 2, 3], [1, 1, 3, 3], [0, 1, 2, 3]]


def product_mv(k1, k2):
    pts = sorted(((a, b) for a in range(k1) for b in range(k2)), key=lambda p: (sum(p), p))
    names = [f"{a}{b}" for a, b in pts]
    idx = {p: i for i, p in enumerate(pts)}
    n = len(pts)

    def t(x, y):
        (a, b), (c, d) = pts[x], pts[y]
        return idx[(max(0, a + c - (k1 - 1)), max(0, b + d - (k2 - 1)))]

    tensor = [[t(x, y) for y in range(n)] for x in range(n)]
    return from_order(
        names, lambda x, y: pts[x][0] <= pts[y][0] and pts[x][1] <= pts[y][1], tensor
    )


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    lattices = {
        "l2": from_order(["0", "1"], lambda x, y: x <= y, [[0, 0], [0, 1]]),
        "l3-chain": chain(3, godel),
        "l3-luk": chain(3, lukasiewicz),
        "l4": from_order(
            ["0", "a", "b", "1"], lambda x, y: x == y or (x, y) in SQUARE4,
            L4_TENSOR, L4_RESIDUUM,
        ),
        "l5": from_order(
            ["0", "a", "b", "c", "1"], lambda x, y: x == y or (x, y) in DIAMOND5,
            L5_TENSOR, L5_RESIDUUM,
        ),
        "l5-luk": chain(5, lukasiewicz),
        "l6-godel": chain(6, godel),
        "l6-mv2x3": product_mv(2, 3),
    }
    for name, L in lattices.items():
        dump(L, OUT / f"{name}.lat")
        print(name, L.n)


if __name__ == "__main__":
    main()
