"""
Published values that the computed results are compared against.

Nothing in this module is derived from the code; ``reproduce-paper`` and the
tests treat it as the expected side of every comparison.
"""

from z4group.exactalg import Cyc8

A_VALUE = Cyc8(-1, 0, -2, 0)  # a = -1-2i
B_VALUE = Cyc8(-1, 0, 2, 0)  # b = -1+2i
_I = Cyc8(0, 0, 1, 0)

GROUP_ORDER = 384
CENTER_ORDER = 4
PROJECTIVE_ORDER = 96
GROUP_EXPONENT = 24
NUM_CLASSES = 10

SHAPE_COUNTS = {
    "W1": 1,
    "W2": 7,
    "W3": 7,
    "W4": 49,
    "W5": 28,
    "W6": 196,
    "W7": 12,
    "W8": 84,
}

CLASS_SIZES = (1, 12, 3, 12, 3, 3, 12, 32, 12, 6)
CLASS_ORDERS = (1, 8, 4, 8, 2, 4, 2, 3, 4, 4)
IRREP_DEGREES = (1, 1, 2, 3, 3, 3, 3, 3, 3, 6)

_a, _b, _i = A_VALUE, B_VALUE, _I

CHARACTER_TABLE = (
    (1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    (1, -1, 1, -1, 1, 1, -1, 1, -1, 1),
    (2, 0, 2, 0, 2, 2, 0, -1, 0, 2),
    (3, -1, -1, -1, 3, -1, 1, 0, 1, -1),
    (3, 1, -1, 1, 3, -1, -1, 0, -1, -1),
    (3, -_i, _a, _i, -1, _b, -1, 0, 1, 1),
    (3, _i, _b, -_i, -1, _a, -1, 0, 1, 1),
    (3, -_i, _b, _i, -1, _a, 1, 0, -1, 1),
    (3, _i, _a, -_i, -1, _b, 1, 0, -1, 1),
    (6, 0, 2, 0, -2, 2, 0, 0, 0, -2),
)

# Row i: multiplicities of χ1..χ10 in χ7·χi.
FUSION_MATRIX = (
    (0, 0, 0, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 1, 0, 0),
    (0, 0, 0, 0, 0, 1, 0, 0, 0, 1),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 1),
    (1, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (0, 0, 0, 1, 0, 1, 0, 0, 1, 0),
    (0, 0, 0, 0, 1, 1, 0, 0, 1, 0),
    (0, 1, 1, 0, 0, 0, 0, 0, 0, 1),
    (0, 0, 0, 1, 1, 0, 1, 1, 0, 1),
)

# The same products written as sums of irreducible indices.
FUSION_PRODUCTS = {
    1: (7,),
    2: (8,),
    3: (7, 8),
    4: (6, 10),
    5: (9, 10),
    6: (1, 3, 10),
    7: (4, 6, 9),
    8: (5, 6, 9),
    9: (2, 3, 10),
    10: (4, 5, 7, 8, 10),
}

CHI7_CHI10_VALUES = (18, 0, -2 + 4 * _i, 0, 2, -2 - 4 * _i, 0, 0, 0, -2)
CHI7_CHI10_DECOMPOSITION = (0, 0, 0, 1, 1, 0, 1, 1, 0, 1)

BRATTELI_ROWS = {
    0: (1, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    1: (0, 0, 0, 0, 0, 0, 1, 0, 0, 0),
    2: (0, 0, 0, 1, 0, 1, 0, 0, 1, 0),
    3: (1, 1, 2, 0, 0, 1, 0, 0, 0, 3),
    4: (1, 0, 1, 3, 3, 0, 6, 6, 0, 4),
    5: (0, 0, 0, 10, 10, 15, 6, 5, 15, 10),
}
BRATTELI_SQUARE_SUMS = {0: 1, 1: 1, 2: 3, 3: 16, 4: 108, 5: 811}

CENTRALIZER_DIMS = (1, 1, 3, 16, 108, 811, 6513, 54706, 472818, 4157701)
