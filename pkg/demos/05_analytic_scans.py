"""Scans of W(it) = it zeta(1+it), the partial Euler product J(t, X),
and progression error statistics.

The W scan reports where two candidate lower bounds actually hold on a
grid: the exponential bound e^{t^2/6} never does (the quadratic growth of
|W| near 0 is too slow), and the power bound t^{2/3} only holds from
t of about 14.5 on.  J(1, X) grows slowly with the cutoff.  The last
section sums worst-residue deviations |theta(N; q, a) - N/phi(q)| over
small moduli and watches the normalized sum decay.
"""

import math

from gpylab import ap_error_star
from gpylab.bv import BVConfig, bv_sum
from gpylab.oracle import j_product, verify_w_bounds, w_function

print("W(it) sample values:")
for t in (0.5, 2.0, 14.12):
    print(f"  |W({t}i)| = {abs(w_function(t)):.6f}  vs  t^(2/3) = {t ** (2 / 3):.6f}")

rep = verify_w_bounds(50.0, 0.01)
print(f"\nbound scan to t=50: exponential prefix t0={rep['t0']}, "
      f"power bound holds from t1={rep['t1']}, "
      f"worst margin {rep['power_bound_worst_margin']:.3f} at t={rep['power_bound_worst_t']}")

print("\npartial Euler product J(1, X):")
for k in (3, 4, 5, 6):
    print(f"  X=10^{k}: J = {j_product(1.0, 10**k):.6f}")

print("\nnormalized progression error sums:")
for N in (10**5, 10**6):
    Q = 5
    val = bv_sum(BVConfig(N=N, Q=Q)) / N
    print(f"  N=10^{int(math.log10(N))}, Q={Q}: sum/N = {val:.3e}")
print(f"  running-max variant E*(10^5, 7) = {ap_error_star(10**5, 7):.3f}")
