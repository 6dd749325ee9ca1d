"""
A tour of Phi(z, s, a) across the z-plane
=========================================

One parameter pair (s = 3/4, a = 0.3), five very different z regimes,
and the engine that handles each of them.
"""

import cmath

from lerchphi._types import LerchPoint
from lerchphi.engines import eval_auto

S, A = 0.75, 0.3

points = [
    (0.5 + 0.0j, "inside the unit disk: plain series"),
    (0.999 + 0.02j, "hugging the branch point"),
    (-40.0 + 0.0j, "far out on the negative axis"),
    (25.0 + 25.0j, "large and well off the cut"),
    (-8.0 - 3.0j, "lower half-plane"),
]

for z, what in points:
    rep = eval_auto(LerchPoint(z, S, A))
    print(f"z = {z:<12}  {what}")
    print(f"    Phi = {rep.value:.12f}   engine={rep.engine} "
          f"n={rep.n_terms} m={rep.m_terms} est={rep.abs_err_estimate:.1e}")

# On the cut [1, inf) the function is two-valued; the flag picks the side.
above = eval_auto(LerchPoint(10.0, S, A, "above")).value
below = eval_auto(LerchPoint(10.0, S, A, "below")).value
print(f"\nz = 10 on the cut:")
print(f"    above = {above:.12f}")
print(f"    below = {below:.12f}")
print(f"    jump  = {abs(above - below):.6f}, and below == conj(above): "
      f"{abs(below - above.conjugate()):.1e}")

# every engine result satisfies the shift identity
# Phi(z,s,a) = a^-s + z Phi(z,s,a+1); quick spot check
z = -40.0 + 0.0j
va = eval_auto(LerchPoint(z, S, A)).value
va1 = eval_auto(LerchPoint(z, S, A + 1.0)).value
print(f"\nshift identity defect at z={z}: "
      f"{abs(va - (A ** -S + z * va1)):.1e}")

# conjugating every input conjugates the value
vc = eval_auto(LerchPoint(cmath.rect(8.0, -2.5), S, A)).value
vr = eval_auto(LerchPoint(cmath.rect(8.0, 2.5), S, A)).value
print(f"conjugate symmetry defect: {abs(vc - vr.conjugate()):.1e}")
