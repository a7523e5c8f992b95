"""
Exact coefficient rings
=======================

All coefficients in this library are exact: arbitrary-precision integers,
residues mod q (q >= 2, composite allowed), or reduced fractions.  No
floating point anywhere; every identity later in the demos is checked with
equality, not tolerance.
"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from envnorm import make_ring

# the three supported rings come from one-line descriptors
Z = make_ring("Z")
Q = make_ring("Q")
Z4 = make_ring("Zmod 4")

print("integers:   2 + 3 =", Z.scalar(2) + Z.scalar(3))
print("rationals:  1/2 + 1/3 =", Q.scalar(Fraction(1, 2)) + Q.scalar(Fraction(1, 3)))

# mod 4 is not a field: 2 is a zero divisor.  Supporting that case is the
# point -- normal ordering works over any of these rings.
print("mod 4:      2 + 3 =", Z4.scalar(2) + Z4.scalar(3))
print("mod 4:      2 * 2 =", Z4.scalar(2) * Z4.scalar(2))

# canonical representatives make equality structural
print("4 mod 4 == 0 mod 4:", Z4.scalar(4) == Z4.scalar(0))
print("2/4 == 1/2 in Q:   ", Q.scalar(Fraction(2, 4)) == Q.scalar(Fraction(1, 2)))

# integer arithmetic never overflows; straightening coefficients can grow fast
big = Z.scalar(10**30)
print("10^30 squared:", big * big)
