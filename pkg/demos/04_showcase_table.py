"""Recompute the four showcase evaluations through the library API.

Same content as `lerchphi table1`, but spelled out: reference value from
the oracle, the five-pair approximation, the automatic truncation pick,
and the scaled remainder |z|^6 |Phi - approx|.
"""

from lerchphi._types import LerchPoint
from lerchphi.engines import choose_optimal_M, eval_main_theorem
from lerchphi.oracle import reference_value

S, A, N = 0.75, 0.3, 5

for z in (-5.0 + 0.0j, -10.0 + 0.0j, 10.0j, 10.0 + 0.01j):
    p = LerchPoint(z, S, A)
    ref = reference_value(p)
    rep = eval_main_theorem(p, N)
    pick = choose_optimal_M(p, N)
    scaled = abs(z) ** (N + 1) * abs(ref.value - rep.value)
    print(f"z = {z}")
    print(f"  reference   = {ref.value:.8f}  (err bar {ref.err_bar:.1e})")
    print(f"  five pairs  = {rep.value:.8f}  with M = {pick}")
    print(f"  |z|^6 * |remainder| = {scaled:.3f}")
    print()
