"""Digits, truncations and carries for a few thresholds."""

from fractions import Fraction as F

from fptlab import carry_profile, expand, lucas_binomial_mod_p

for p in (2, 3, 5, 7):
    s = expand(F(5, 6), p)
    print(f"5/6 in base {p}: preperiod {s.preperiod} period {s.period}")
    print(f"  truncations: {[str(s.truncate(e)) for e in range(1, 4)]}")

# 1/2 + 1/3 adds cleanly only when p = 1 mod 6
for p in (5, 7, 11, 13):
    prof = carry_profile(F(1, 2), F(1, 3), p)
    print(f"p={p}: L={prof.L} d={prof.d}")

# Lucas: C(N, k) mod p is a digitwise product
print("C(97, 33) mod 7 =", lucas_binomial_mod_p(97, 33, 7))
