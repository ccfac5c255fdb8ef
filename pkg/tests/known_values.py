"""Published reference values for the four worked matrices in data/.

All indices here are 1-based, as displayed. Values are exact Fractions;
tests convert to log domain and compare with the library tolerance.
Sunflower matrices are given as ``{(i, j): value}`` of their positive
entries.
"""

from fractions import Fraction as F
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "data"


def parse_rows(text):
    """Dense matrix from whitespace-separated Fraction literals, one row per line."""
    rows = [[F(tok) for tok in line.split()] for line in text.strip().splitlines() if line.strip()]
    assert all(len(r) == len(rows) for r in rows)
    return rows


def sparse_to_dense(entries, n):
    out = [[F(0)] * n for _ in range(n)]
    for (i, j), v in entries.items():
        out[i - 1][j - 1] = F(v)
    return out


# --- 3x3: two critical components --------------------------------------------

M3_FILE = DATA / "m3.txt"
M3_MU = F(2)
M3_CRITICAL_EDGES = {(1, 2), (2, 1), (2, 2), (3, 3)}
M3_BASIS = [[F(2), F(2), F(1)], [F(1), F(1), F(2)]]
M3_DELTA = parse_rows("""
1   1   1/2
1   1   1/2
1/2 1/2 1
""")
# both noncritical circuits through (1 2) carry product 1/4 on A'
M3_TIED_PRODUCTS = {(1, 2, 3): F(1, 4), (2, 3): F(1, 4), (1, 3): F(1, 4)}
M3_SUNFLOWERS_12 = [
    {(1, 2): 2, (2, 1): 2, (3, 1): 1},
    {(1, 2): 2, (2, 1): 2, (3, 2): 1},
]
M3_SUNFLOWERS_22 = [
    {(1, 2): 2, (2, 2): 2, (3, 1): 1},
    {(1, 2): 2, (2, 2): 2, (3, 2): 1},
]
M3_SUNFLOWER_33 = {(1, 2): 2, (2, 3): 1, (3, 3): 2}

# --- 4x4: one critical circuit of length 2 -----------------------------------

M4_FILE = DATA / "m4.txt"
M4_MU = F(4)
M4_PRODUCT_14 = F(5, 16)
M4_PRODUCT_12 = F(3, 16)
M4_SUNFLOWER = {(1, 3): 4, (2, 4): 1, (3, 1): 4, (4, 1): 5}
M4_EIGENVECTOR = [F(4), F(5, 4), F(4), F(5)]
M4_DELTA = parse_rows("""
1    3/4   1    3/4
5/16 1     5/16 1/4
1    3/4   1    3/4
5/4  15/16 5/4  1
""")

# --- 10x10: two disjoint critical circuits -----------------------------------

M10_FILE = DATA / "m10.txt"
M10_MU = F(5)
M10_CRITICAL_CIRCUITS = [(1, 2, 3, 4), (5, 6, 7, 8, 9)]
_M10_COMMON = {(1, 2): 5, (2, 3): 5, (3, 4): 5, (4, 1): 5,
               (6, 7): 5, (7, 8): 5, (8, 9): 5, (9, 5): 5, (10, 2): 6}
M10_SUNFLOWER_1 = {**_M10_COMMON, (5, 3): 7}
M10_SUNFLOWER_2 = {**_M10_COMMON, (5, 6): 5}
M10_BASIS = [
    [F(1)] * 4 + [F(7, 5)] * 5 + [F(6, 5)],
    [F(1, 5)] * 4 + [F(1)] * 5 + [F(6, 25)],
]
M10_DELTA = parse_rows("""
1   1   1   1   1/5  1/5  1/5  1/5  1/5  1/5
1   1   1   1   1/5  1/5  1/5  1/5  1/5  1/5
1   1   1   1   1/5  1/5  1/5  1/5  1/5  1/5
1   1   1   1   1/5  1/5  1/5  1/5  1/5  1/5
7/5 7/5 7/5 7/5 1    1    1    1    1    2/5
7/5 7/5 7/5 7/5 1    1    1    1    1    2/5
7/5 7/5 7/5 7/5 1    1    1    1    1    2/5
7/5 7/5 7/5 7/5 1    1    1    1    1    2/5
7/5 7/5 7/5 7/5 1    1    1    1    1    2/5
6/5 6/5 6/5 6/5 6/25 6/25 6/25 6/25 6/25 1
""")

# --- 15x15: three critical components ---------------------------------------

M15_FILE = DATA / "m15.txt"
M15_MU = F(4)
M15_R = 3
_M15_COMMON = {(1, 2): 4, (2, 3): 4, (3, 5): 4, (5, 1): 4,
               (6, 7): 4, (7, 8): 4, (8, 9): 4, (9, 10): 4, (10, 11): 4, (11, 6): 4,
               (12, 15): 4, (13, 12): 4, (14, 15): 2, (15, 13): 4}
# as printed: row 15 of the first display has two positive entries
M15_SUNFLOWER_1 = {**_M15_COMMON, (4, 5): 1, (15, 1): 2}
M15_SUNFLOWER_2 = {**_M15_COMMON, (4, 6): 1}
M15_SUNFLOWER_3 = {**_M15_COMMON, (4, 7): 1}
M15_BASIS = [
    [F(1), F(1), F(1), F(1, 4), F(1)] + [F(1, 2)] * 8 + [F(1, 4), F(1, 2)],
    [F(1, 4)] * 5 + [F(1)] * 6 + [F(1, 4), F(1, 4), F(1, 8), F(1, 4)],
    [F(1, 2)] * 3 + [F(3, 16), F(1, 2)] + [F(3, 4)] * 6 + [F(1), F(1), F(1, 2), F(1)],
]
M15_DELTA = parse_rows("""
1   1   1   1/4 1   1/4 1/4 1/4 1/4 1/4 1/4 1/2  1/2  1/4 1/2
1   1   1   1/4 1   1/4 1/4 1/4 1/4 1/4 1/4 1/2  1/2  1/4 1/2
1   1   1   1/4 1   1/4 1/4 1/4 1/4 1/4 1/4 1/2  1/2  1/4 1/2
1/4 1/4 1/4 1   1/4 1/4 1/4 1/4 1/4 1/4 1/4 3/16 3/16 1/4 3/16
1   1   1   1/4 1   1/4 1/4 1/4 1/4 1/4 1/4 1/2  1/2  1/4 1/2
1/2 1/2 1/2 1/4 1/2 1   1   1   1   1   1   3/4  3/4  1/4 3/4
1/2 1/2 1/2 1/4 1/2 1   1   1   1   1   1   3/4  3/4  1/4 3/4
1/2 1/2 1/2 1/4 1/2 1   1   1   1   1   1   3/4  3/4  1/4 3/4
1/2 1/2 1/2 1/4 1/2 1   1   1   1   1   1   3/4  3/4  1/4 3/4
1/2 1/2 1/2 1/4 1/2 1   1   1   1   1   1   3/4  3/4  1/4 3/4
1/2 1/2 1/2 1/4 1/2 1   1   1   1   1   1   3/4  3/4  1/4 3/4
1/2 1/2 1/2 1/4 1/2 1/4 1/4 1/4 1/4 1/4 1/4 1    1    1/4 1
1/2 1/2 1/2 1/4 1/2 1/4 1/4 1/4 1/4 1/4 1/4 1    1    1/4 1
1/4 1/4 1/4 1/4 1/4 1/8 1/8 1/8 1/8 1/8 1/8 1/2  1/2  1   1/2
1/2 1/2 1/2 1/4 1/2 1/4 1/4 1/4 1/4 1/4 1/4 1    1    1/4 1
""")
