"""Scan primes for equality of the F-pure and log canonical thresholds."""

from fractions import Fraction as F

from fptlab import lct, mtw_scan, trend_report
from fptlab.lctscan import Diagonal, DisjointSum, Import, Imported, Monomial

family = DisjointSum(
    Diagonal((4, 4)),
    DisjointSum(Imported("g2", F(3, 16), "z^7*w^2 + z^5*w^6"), Monomial((2, 3, 8))),
)
print("lct =", lct(family))
reports = mtw_scan(family, {"g2": Import(F(3, 16), 1, 32)}, 200, [(1, 32)])
for r in reports:
    print(f"p={r.prime}: fpt={r.fpt} match={r.match}")
print(trend_report(mtw_scan(Diagonal((2, 3)), {}, 100)))
