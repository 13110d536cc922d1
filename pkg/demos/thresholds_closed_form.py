"""Closed-form thresholds of disjoint sums and their building blocks."""

from fractions import Fraction as F

from fptlab import fpt_diagonal_fold, fpt_monomial, ts_fthreshold

for p in (2, 3, 5, 7, 11, 13):
    r = ts_fthreshold(F(1, 2), F(1, 3), p)
    print(f"x^2 + y^3 at p={p}: {r.value} ({r.classification.value})")

print("monomial x^2 y^3 z^8:", fpt_monomial([2, 3, 8]))
print("x^4 + y^4 at p=97:", fpt_diagonal_fold([4, 4], 97).value)
print("x^2 + y^2 + z^2 at p=3:", fpt_diagonal_fold([2, 2, 2], 3))
