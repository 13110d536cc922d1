"""Test ideals of a disjoint sum, by formula and by definition."""

from fractions import Fraction as F

from fptlab import parse, test_ideal, ts_sum, ts_test_ideal

p = 3
g1, g2 = parse("x^4", p), parse("y^12", p)
split = ts_test_ideal(g1, g2, F(1, 4), F(1, 12), 4)
print(f"exponent {split.exponent}, branch {split.case_tag.value}: {split.ideal}")
direct = test_ideal(ts_sum(g1, g2), split.exponent, 4)
print("definition:", direct.ideal, "agrees:", direct.ideal.equals(split.ideal))

# a sum of p-th powers falls outside the formula's reach
g1, g2 = parse("x^3", p), parse("z^3", p)
split = ts_test_ideal(g1, g2, F(1, 3), F(1, 3), 4)
direct = test_ideal(ts_sum(g1, g2), split.exponent, 4)
print(f"x^3 + z^3 at {split.exponent}: formula {split.ideal}, definition {direct.ideal}")
