"""
Optimal truncation of the logarithmic series
============================================

For large |z| the correction series in powers of log(-z) is divergent.
Cut it at the right place and it is extremely accurate; run past that
place and the terms blow up factorially.  This script shows the error
landscape as a function of the cut position M, the automatic pick, and
what happens with no subtraction at all.
"""

from lerchphi._types import LerchPoint
from lerchphi.coefficients import csc_coefficients
from lerchphi.engines import (
    _branch_log,
    _log_series_terms,
    choose_optimal_M,
    eval_main_theorem,
    remainder_estimate,
    residue_series,
)
from lerchphi.oracle import reference_value

S, A, N = 0.75, 0.3, 5
p = LerchPoint(-10.0 + 0.0j, S, A)
ref = reference_value(p).value

print("error of the assembled value vs the truncation point M")
print("(z = -10, 5 mirror pairs, residue tail completed exactly)")
print()

tail = residue_series(p, N)
errs = {}
for m in range(1, 27):
    rep = eval_main_theorem(p, N, m_override=m)
    errs[m] = abs(rep.value + tail - ref)
    print(f"  M = {m:2d}   err = {errs[m]:9.3e}")

pick = choose_optimal_M(p, N)
best = min(errs, key=errs.get)
print(f"\nsmallest-term rule picks M = {pick}; true minimum at M = {best}")

est = remainder_estimate(p, N, pick)
print(f"remainder estimate at the pick: {est:.3e} "
      f"(actual {errs[pick]:.3e})")

# Without subtracting the first N terms of the defining series the same
# machinery is useless: the coefficients grow right away.
p5 = LerchPoint(-5.0 + 0.0j, S, A)
raw = [abs(t) for t in _log_series_terms(
    p5, _branch_log(p5), csc_coefficients(A, 31).values)]
print("\nunsubtracted log-series terms at z = -5:")
for n in (0, 1, 2, 5, 10, 20, 30):
    print(f"  |term {n:2d}| = {raw[n]:.3e}")
print("no plateau to truncate on; subtraction is what creates one")
