##
## Walkthrough: where the product map is a submersion, and spray fields
## whose flows stay on the level sets
##

from sl2factor import (
    ExactComplex, PhiTemplate, check_lemma_submersive, flow_rk4, frame_rank,
    sl2_jacobian, v_field_spec, vfield_apply)

EC = ExactComplex

# on the singular set (interior coordinates all zero) the rank drops
singular = sl2_jacobian(PhiTemplate(4), [EC(5), EC(0), EC(0), EC(7)])
print("rank at (5,0,0,7):", frame_rank(singular))

generic = sl2_jacobian(PhiTemplate(4), [EC(5), EC(1), EC(0), EC(7)])
print("rank at (5,1,0,7):", frame_rank(generic))

report = check_lemma_submersive(5, 200, seed=0)
print("N=5 sampled check:", report["samples"], "points,",
      len(report["violations"]), "violations;",
      "singular ranks", report["singular_ranks"])

# the spray field V_kl = P_l d_k - P_k d_l kills P by construction
spec = v_field_spec(6, 3, 5)
print("\nV_35 applied to its own level polynomial:",
      vfield_apply(spec, spec.p).to_str())

# numerically: RK4 along V_23 for N=4 conserves Q1 = 1 + z2 z3
spec = v_field_spec(4, 2, 3)
res = flow_rk4(spec, [0.4 + 0.1j, -0.8 + 0.2j], t=1.0, step=1e-3)
print("flow start level:", res.p_start)
print("flow end level:  ", res.p_end)
print("drift:", abs(res.drift))

# this field is linear (dz2/dt = z2, dz3/dt = -z3), so the time-1 map
# multiplies the coordinates by e and 1/e
import math
print("z2(1) / z2(0) =", res.end[0] / (0.4 + 0.1j), "vs e =", math.e)
