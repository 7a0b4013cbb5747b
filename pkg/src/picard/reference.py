"""Published reference values that the verification suites compare against.

Tables are keyed by :class:`ConfigClass`; incidence entries are indexed (row, column) with
the row type counted relative to the column representative.
"""
from __future__ import annotations

from typing import Dict, Tuple

from .configurations import STRONGLY_ADMISSIBLE, ConfigClass
from .group import GroupInvariants

C = ConfigClass

STABILIZER_ORDERS: Dict[ConfigClass, int] = {
    C.J2_1: 8, C.J2_2: 8, C.J3_1: 12, C.J3_2: 6, C.J3_3: 1,
    C.J4_1: 1, C.J4_2: 2, C.J5: 2, C.J8: 32,
}

STABILIZER_NAMES: Dict[ConfigClass, str] = {
    C.J2_1: "Z/4 x Z/2", C.J2_2: "Z/8", C.J3_1: "Z/12", C.J3_2: "S3", C.J3_3: "1",
    C.J4_1: "1", C.J4_2: "Z/2", C.J5: "Z/2", C.J8: "G31 (order 32)",
}


def structure_matches(tag: ConfigClass, inv: GroupInvariants) -> bool:
    """Whether computed invariants pin down the tabulated isomorphism type."""
    if inv.order != STABILIZER_ORDERS[tag]:
        return False
    if tag is C.J2_1:
        return inv.abelian and inv.exponent == 4 and not inv.cyclic
    if tag in (C.J2_2, C.J3_1, C.J4_2, C.J5, C.J3_3, C.J4_1):
        return inv.cyclic
    if tag is C.J3_2:
        return not inv.abelian
    if tag is C.J8:
        # exponent 8, centre Z/4 and two classes of maximal elementary abelian subgroups
        return inv.exponent == 8 and inv.center_structure == (4,) and inv.max_elem_abelian_class_count == 2
    return False


_ORDER = list(STRONGLY_ADMISSIBLE)
_ROWS = [
    # I21 I22 I31 I32 I33 I41 I42 I5 I8   (None marks same-order entries)
    [None, None, 3, 3, 2, 5, 4, 8, 16],
    [None, None, 0, 0, 1, 1, 2, 2, 8],
    [2, 0, None, None, None, 1, 0, 2, 0],
    [4, 0, None, None, None, 1, 0, 2, 0],
    [12, 8, None, None, None, 2, 4, 6, 32],
    [40, 8, 12, 6, 2, None, None, 4, 0],
    [16, 8, 0, 0, 2, None, None, 1, 16],
    [32, 8, 12, 6, 3, 2, 1, None, None],
    [4, 2, 0, 0, 1, 0, 1, None, None],
]

INCIDENCE_TABLE: Dict[Tuple[ConfigClass, ConfigClass], int] = {
    (_ORDER[i], _ORDER[j]): v
    for i, row in enumerate(_ROWS)
    for j, v in enumerate(row)
    if v is not None
}

# counts stated independently in the cell-by-cell description of the boundaries
# (row type, column cell) -> number of row-type cells in the boundary of the column cell,
# plus one coface count for an order-3 cell
TEXT_COUNTS: Dict[Tuple[ConfigClass, ConfigClass], int] = {
    (C.J5, C.J4_1): 2,
    (C.J5, C.J4_2): 1, (C.J8, C.J4_2): 1,
    (C.J4_1, C.J3_2): 6, (C.J5, C.J3_2): 6,
    (C.J4_1, C.J3_3): 2, (C.J4_2, C.J3_3): 2, (C.J5, C.J3_3): 3, (C.J8, C.J3_3): 1,
    (C.J3_1, C.J2_1): 2, (C.J3_2, C.J2_1): 4, (C.J3_3, C.J2_1): 16,
    (C.J4_1, C.J2_1): 40, (C.J4_2, C.J2_1): 16, (C.J5, C.J2_1): 32, (C.J8, C.J2_1): 4,
    (C.J3_3, C.J2_2): 8, (C.J4_1, C.J2_2): 8, (C.J4_2, C.J2_2): 8, (C.J5, C.J2_2): 8, (C.J8, C.J2_2): 2,
    (C.J2_1, C.J3_1): 3,
}

# Sym^n table: n -> (h0, h1, h2, h3)
_H2 = [1, 0, 0, 1, 3, 1, 2, 2, 5, 1, 2, 3, 7, 4, 5, 4, 9, 5, 7, 5]
_H1 = [0] * 11 + [1, 0, 0, 3, 4, 2, 5, 8, 11]
_H3 = [0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1]
SYMN_TABLE: Dict[int, Tuple[int, int, int, int]] = {
    n: (0, _H1[n - 1], _H2[n - 1], _H3[n - 1]) for n in range(1, 21)
}

TRIVIAL_Z = "Z, 0, Z, 0"
STANDARD_Z = "0, 0, Z^2, Z/2Z"
