"""Certified singular-series intervals and their subset averages.

singular_series(H) returns a midpoint plus a radius that certifiably
contains the infinite Euler product: special primes are handled exactly
and the tail above the cutoff is bounded in closed form.  The demo
narrows the interval around the twin constant, then looks at the average
of S(H) over k-subsets of an interval (close to 1 after normalizing by
h^k) and at the exactly rational quasi-prime density.
"""

from gpylab import TupleH, quasiprime_density, s_star, singular_series
from gpylab.singular import quasiprime_count
from gpylab.tuples import primorial

H = TupleH((0, 2))
print("S({0,2}) with increasing cutoff:")
for cutoff in (10**3, 10**4, 10**5, 10**6):
    sv = singular_series(H, cutoff)
    print(f"  cutoff {cutoff:>8}: mid={sv.mid:.10f}  radius={sv.rad:.2e}")
print("  (the twin constant 1.3203236316... stays inside every interval)")

A = TupleH(tuple(range(1, 101)))
print("\nnormalized subset averages S*(k) = B(k)/h^k over [1, 100]:")
for k in (1, 2, 3, 4):
    print(f"  k={k}: S*(k) = {s_star(A, k):.5f}")
print("  (tends to 1 as the interval grows; at h=100 the deficit is visible)")

print("\nquasi-prime density, exact rational vs direct count over one period:")
for z in (5, 7, 11):
    r = quasiprime_density(H, z)
    Z = primorial(z)
    count = quasiprime_count(H, z)
    print(f"  z={z:>2}: density {r} * {Z} = {r * Z}  direct count = {count}")
