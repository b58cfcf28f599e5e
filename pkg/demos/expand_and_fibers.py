##
## Walkthrough: middle polynomials of the alternating product map, and
## closed-form fiber completions over a few targets
##

from fractions import Fraction

from sl2factor import (
    ExactComplex, InteriorPoint, SL2, complete_generic_even,
    complete_nongeneric_even, format_exact, format_point, interior_sample,
    middle_Q)

EC = ExactComplex

for n in (4, 5, 6):
    q = middle_Q(n)
    names = [f"z{j}" for j in range(2, n)]
    print(f"N = {n}: Q1 = {q[0].to_str(names)}")
    print(f"       Q2 = {q[1].to_str(names)}")
    det = q[0] * q[3] - q[1] * q[2]
    print(f"       Q1 Q4 - Q2 Q3 = {det.to_str(names)}")

# generic branch: the fiber is a graph over an interior level set
target = SL2(EC(2), EC(3), EC(1), EC(2))
interior = InteriorPoint(4, "Q1", EC(2), (EC(1), EC(1)))
comp = complete_generic_even(target, interior)
print("\ntarget [[2,3],[1,2]] completed at", format_point(comp.point))
print("d-equation residual:", format_exact(comp.eq4_residual),
      "(exactly zero)")

# non-generic branch: the corner entry vanishes and z1 runs free
rot = SL2(EC(0), EC(1), EC(-1), EC(0))
for z1 in (0, 1, Fraction(1, 2)):
    comp = complete_nongeneric_even(rot, EC(z1), (EC(1),))
    print(f"rotation with z1 = {z1}: point {format_point(comp.point)}")

# a random interior point on a prescribed level, any length
pt = interior_sample(7, EC(Fraction(5, 3)), stratum="Q2", seed=1)
print("\nrandom interior on {Q2 = 5/3} for N = 7:", format_point(pt.values))
print("its Q entries:", format_point(pt.q_entries()))
