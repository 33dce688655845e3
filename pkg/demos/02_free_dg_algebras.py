"""Free DG extensions: exterior and divided-power variables with signs.

B = R<X, Y | dX = x, dY = X*y> adjoins an odd variable X (so X^2 = 0) and
an even variable Y carrying divided powers Y^(n).  The differential obeys
the Leibniz rule with Koszul signs, d(Y^(n)) = Y^(n-1)*dY, and squares to
zero; the constructor rejects anything that breaks these rules.
"""

from dglift import CycleViolation, parse_problem

problem = parse_problem("""
ring R = QQ[x:1,y:1]/(x*y)
algebra B = R<X:1, Y:2 | dX = x, dY = X*y>
""")
B = problem.algebra
X, Y = B.gen("X"), B.gen("Y")
Y2 = B.divided_power("Y", 2)
y = B.ring.gen("y")

print("B =", B)
print("X*X       =", X * X)
print("Y*X       =", Y * X, "  (even against odd commutes)")
print("Y*Y       =", Y * Y, " (ordinary square of a divided-power variable)")
print("Y^(2)*Y   =", Y2 * Y)
print("d(X*Y)    =", (X * Y).diff())
print("d(Y^(2))  =", Y2.diff(), "  (= Y*dY)")
print("d(d(Y^(2))) =", Y2.diff().diff())

print("\nmonomial basis by homological degree:")
for n in range(6):
    print("  degree %d: %s" % (n, [B.render_mono(m) for m in B.monomial_basis(n)]))

print("\nground-field basis of the bidegree (3,4) piece:")
for mono, rm in B.bidegree_basis(3, 4):
    print("  %s * %s" % (B.render_mono(mono), B.ring.render_mono(rm)))

# Over QQ[x,y] with no relation, d(dY) = x*y is nonzero and the algebra
# is rejected outright.
try:
    parse_problem("""
ring R = QQ[x:1,y:1]
algebra B = R<X:1, Y:2 | dX = x, dY = X*y>
""")
except CycleViolation as exc:
    print("\nrejected over QQ[x,y]:", exc)
