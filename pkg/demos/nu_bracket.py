"""Bracket the threshold of the cusp with nu at a few primes."""

from fptlab import fpt_bracket, maximal_ideal, nu, parse

for p in (2, 3, 5, 7):
    f = parse("x^2 + y^3", p)
    m = maximal_ideal(p, f.ctx)
    for e in (1, 2, 3):
        lo, hi = fpt_bracket(f, m, e)
        print(f"p={p} e={e}: nu={nu(f, m, e).nu:4d}  threshold in ({lo}, {hi}]")
