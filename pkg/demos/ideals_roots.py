"""Polynomials over F_p, Frobenius powers and roots."""

from fptlab import Ideal, frobenius_power, frobenius_root, parse

p = 3
f = parse("x^4*y + 2*x*y^5 + y^7", p)
print("f =", f)
print("f^[3] =", f.frobenius(1))

I = Ideal([f])
root = frobenius_root(I, 1)
print("I^[1/3] =", root)
# the root is the smallest J with I inside J^[p]
print("I inside (I^[1/3])^[3]:", frobenius_power(root, 1).contains_ideal(I))

J = Ideal.parse("x^2; x*y", p, f.ctx)
print("Groebner basis of", J, "->", [str(g) for g in J.groebner()])
