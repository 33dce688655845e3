"""Graded coefficient rings: exact arithmetic in monomial quotients.

The engine works over QQ or a prime field, optionally extended by weighted
polynomial generators and cut down by a monomial ideal.  Normal forms are
divisibility tests, so every computation below is exact.
"""

from dglift import parse_ring
from dglift.coefficients import principal_intersection_dim

R = parse_ring("QQ[x:1,y:1]/(x*y)")
print("R =", R)

x, y = R.gen("x"), R.gen("y")
print("x*y =", x * y, "   (the relation kills it)")
print("(x+y)^2 =", (x + y) * (x + y))

for w in range(5):
    basis = [R.render_mono(m) for m in R.graded_basis(w)]
    print("basis of R_%d: %s" % (w, basis))

# The lifting examples need the principal ideals of x and y to meet only
# in zero; the rank identity dim(U) + dim(V) - dim(U+V) checks each degree.
print("\ndim(xR ∩ yR) by internal degree:")
for w in range(1, 7):
    print("  degree %d: %d" % (w, principal_intersection_dim(R, x, y, w)))

F = parse_ring("FF(5)[x:1,y:2]/(x^3)")
print("\nover a prime field:", F)
a = F.gen("x")
print("x^2 * x =", a * a * a, "  x^2 * x^2 =", a * a * a * a)
