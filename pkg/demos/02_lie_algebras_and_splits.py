"""
Lie algebras, validation, and two-block splits
==============================================

An algebra is a finite basis plus the table of all basis brackets.  Nothing
is trusted: validation checks alternating and Jacobi exhaustively over all
basis triples, and a split is only usable when each part is closed under the
bracket.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from envnorm import (
    LieAlgebra,
    SplitDecomposition,
    make_ring,
    sl2_algebra,
    sl_algebra,
    sl_triangular_split,
    validate_algebra,
    validate_split,
)

Z = make_ring("Z")

# sl(2): the classical e, f, h table
sl2 = sl2_algebra(Z)
print("sl2 validates:", validate_algebra(sl2).ok)
e, f, h = (sl2.basis_vector(i) for i in range(3))
print("[e,f] =", sl2.bracket(e, f))
print("[h,e] =", sl2.bracket(h, e))

# corrupt one entry and validation pinpoints the broken triple
bad = LieAlgebra.from_brackets(
    Z, ("e", "f", "h"),
    {("e", "f"): {"e": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}},
)
report = validate_algebra(bad)
print("\ncorrupted table ([e,f] = e):")
for line in report.lines()[:2]:
    print("  ", line)

# splits: {f} | {h, e} is fine, {e, f} | {h} leaks h out of part 1
print("\nsplit {f} | {h,e}: ", validate_split(sl2, (1,), (0, 2)).ok)
print("split {e,f} | {h}:")
for line in validate_split(sl2, (0, 1), (2,)).lines():
    print("  ", line)

# projectors are coordinate masks; they always sum to the identity
split = SplitDecomposition(sl2, (1,), (0, 2))
v = sl2.vector({"e": 3, "f": 1, "h": -2})
print("\nv          =", v)
print("project 1  =", split.project(1, v))
print("project 2  =", split.project(2, v))

# sl(3) is built from matrix commutators: uppers, lowers, diagonal H's,
# grouped as (uppers + diagonal) | lowers
sl3 = sl_algebra(3, Z)
split3 = sl_triangular_split(sl3, 3)
print("\nsl3 basis:", " ".join(sl3.basis))
print("sl3 split:", split3)
print("sl3 validates:", validate_algebra(sl3).ok)

# the same table survives reduction mod q -- including composite q
sl3_mod4 = sl3.change_ring(make_ring("Zmod 4"))
print("sl3 mod 4 validates:", validate_algebra(sl3_mod4).ok)
