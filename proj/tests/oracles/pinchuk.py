"""Independent sympy oracle for the Pinchuk plane map.

Prints the expanded components, checks the closed-form Jacobian identity
and evaluates j at fixed rational points. Values are pasted into the C++
tests; rerun this script after any change to the builtin transcription.
"""
import sympy as sp

x, y = sp.symbols("x y")
t = x * y - 1
h = t * (x * t + 1)
f = (x * t + 1) ** 2 * (t**2 + y)
P = sp.expand(f + h)
u = 170 * f * h + 91 * h**2 + 195 * f * h**2 + 69 * h**3 + 75 * f * h**3 + sp.Rational(75, 4) * h**4
Q = sp.expand(-t**2 - 6 * t * h * (h + 1) - u)

j = sp.expand(sp.Matrix([P, Q]).jacobian([x, y]).det())
closed = sp.expand(t**2 + (t + f * (13 + 15 * h)) ** 2 + f**2)
assert sp.expand(j - closed) == 0

print("P =", P)
print("Q =", Q)
print("deg P =", sp.Poly(P, x, y).total_degree(), "terms", len(sp.Poly(P, x, y).terms()))
print("deg Q =", sp.Poly(Q, x, y).total_degree(), "terms", len(sp.Poly(Q, x, y).terms()))
print("deg j =", sp.Poly(j, x, y).total_degree(), "terms", len(sp.Poly(j, x, y).terms()))
for pt in [(0, 0), (1, 1), (sp.Rational(1, 2), -3), (-2, sp.Rational(5, 7))]:
    print("j", pt, "=", j.subs({x: pt[0], y: pt[1]}))
print("Q(0,0) =", Q.subs({x: 0, y: 0}), "P(0,0) =", P.subs({x: 0, y: 0}))
print("Q(2,-1) =", Q.subs({x: 2, y: -1}))
