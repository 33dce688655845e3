"""The obstruction map of a semifree module and the connection calculus.

For d(e_lam) = sum e_mu b[mu][lam], the obstruction map sends e_lam to
sum e_mu (x) delta(b[mu][lam]) inside N (x) J.  It equals sigma_N d rho_N
(the failure of the graded section rho_N to be a chain map), and for any
connection D the defect psi_D = dD - Dd represents the same homotopy
class; for the canonical connection it is exactly minus the obstruction.
"""

from dglift import (Connection, canonical_connection, delta, obstruction_values,
                    parse_problem, psi_apply, psi_values)
from dglift.semifree import TensorJElement

problem = parse_problem("""
ring R = QQ[x:1,y:1]/(x*y)
algebra B = R<X:1, Y:2 | dX = x, dY = X*y>
module N over B = <e:0, ep:4 | de = 0, dep = e*X*Y*y>
""")
N = problem.modules["N"]
B = N.algebra

values = obstruction_values(N, "formula")
print("obstruction on the basis (structure-matrix formula):")
for lab in N.labels:
    print("  %s -> %s" % (lab, values[lab]))
print("agrees with sigma_N d rho_N:",
      values == obstruction_values(N, "splitting"))

# rho_N is a section but not a chain map; its defect is the obstruction
v = N.gen("ep")
gap = N.rho_n(v).diff() - N.rho_n(v.diff())
print("d(rho_N ep) - rho_N(d ep) =", N.sigma_n(gap))

can = canonical_connection(N)
print("\npsi of the canonical connection:")
for lab, value in psi_values(can).items():
    print("  %s -> %s" % (lab, value))

# a different connection moves psi by an exact term; this one kills it
witness = Connection(N, {"ep": TensorJElement(
    N, {"e": delta(B.divided_power("Y", 2))})})
print("\nwith gamma_ep = e (x) delta(Y^(2)):")
for lab in N.labels:
    print("  psi(%s) = %s" % (lab, psi_apply(witness, N.gen(lab))))
