"""Reference constants.

The 15-digit values of δ and γ are regenerated by ``scripts/derive_constants.py``:
γ from the Euler–Maclaurin expansion of the harmonic sum, δ from the Hardy relation
with that γ, cross-checked against δ = −e·Ei(−1).
"""

import math
from typing import Dict, NamedTuple

# Euler-Gompertz constant δ = F_{Y3}(1)
EULER_GOMPERTZ = 0.596347362323194

# Euler-Mascheroni constant γ = F_{Y5}(1)
EULER_MASCHERONI = 0.577215664901533

PI = math.pi
E = math.e
GUMBEL_VARIANCE = PI * PI / 6.0


class TableEntry(NamedTuple):
    """One row of the κₙ table as printed: digits shown and whether they are truncated."""
    printed: float
    truncated: bool


# κₙ = F_{Yn}(1) = F_{Wn}(0); odd rows are printed truncated to six decimals
KAPPA_TABLE: Dict[int, TableEntry] = {
    1: TableEntry(0.632120, True),
    2: TableEntry(0.5, False),
    3: TableEntry(0.596347, True),
    4: TableEntry(0.5, False),
    5: TableEntry(0.577215, True),
    6: TableEntry(0.5, False),
    7: TableEntry(0.566094, True),
    8: TableEntry(0.5, False),
}
