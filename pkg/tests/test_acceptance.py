"""Acceptance battery: one test per numbered criterion.

Each test prints a single "[criterion NN] PASS/FAIL ..." line and then
asserts, so `pytest -v` shows exactly one verdict per criterion.  Three
criteria are expected to fail at desk scale and are left failing on
purpose rather than weakened:

* criterion 05: extending {0,2} and {0,6} by h0 = 4 makes the combined
  shift set hit every residue mod 3, so the empirical theta-weighted sum
  and the predicted main term are both exactly zero and no ratio exists.
* criterion 08: the quasi-monotonicity floor 0.95 is outside what the
  interval [1, 100] actually delivers; the first exact ratio is already
  0.940 and later ones fall to 0.71 (the underlying bound is asymptotic
  in a regime these parameters do not reach).
* criterion 10: |W(it)| < e^{t^2/6} for every t > 0 (the quadratic
  coefficient of |W|^2 is about 0.188 < 1/3), and |W(it)| dips below
  t^{2/3} around t = 14.1, so neither scanned bound holds as stated.
"""

import math
import random

import numpy as np

from gpylab import bv, combinat, oracle, primes, singular, weights
from gpylab import tuples as tc

H1 = tc.TupleH((0, 2))
H2 = tc.TupleH((0, 6))


def verdict(num: int, ok: bool, detail: str) -> None:
    print(f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num:02d}: {detail}"


def test_criterion_01_z_identity_exact_on_full_grid():
    bad = 0
    checked = 0
    for d in range(26):
        for u in range(26):
            for y in range(-u, 26):
                t = combinat.SuitableTriplet(d, u, y)
                checked += 1
                if combinat.Z_sum(t) != combinat.Z_closed(t):
                    bad += 1
    verdict(1, bad == 0, f"{checked} triplets checked, {bad} violations")


def test_criterion_02_coefficient_identity_and_ratio_bounds():
    mismatches = 0
    for d in range(13):
        for u in range(13):
            for v in range(13):
                for j in range(u + 1):
                    for nu in range(v + d + u - j + 1):
                        if combinat.coeff_A_sum(j, nu, d, u, v) != combinat.coeff_A_closed(
                            j, nu, d, u, v
                        ):
                            mismatches += 1
    ratio_violations = 0
    for d in range(13):
        for u in range(13):
            for v in range(u, 13):
                ratio_violations += len(combinat.coeff_ratio_check(d, u, v)["violations"])
    ok = mismatches == 0 and ratio_violations == 0
    verdict(2, ok, f"{mismatches} identity mismatches, {ratio_violations} bound violations")


def test_criterion_03_dual_strategy_pair_sums_agree():
    cases = [
        ((0, 2), (0, 6), 1, 1, 2000, 30.0, 5),
        ((0, 2), (0, 6), 0, 0, 2000, 50.0, 3),
        ((0, 2), (0, 6), 2, 1, 3000, 80.0, 5),
        ((0, 2), (0, 6), 1, 2, 10**4, 300.0, 5),
        ((0, 2), (0, 2), 1, 1, 5000, 100.0, 5),
        ((0, 2), (0, 2), 2, 2, 10**5, 1000.0, 5),
        ((0, 4), (0, 6), 1, 1, 2000, 40.0, 3),
        ((0, 4), (0, 6), 0, 2, 8000, 200.0, 5),
        ((0,), (0, 2), 0, 1, 1000, 20.0, 3),
        ((0,), (0, 4, 6), 1, 0, 4000, 60.0, 5),
        ((0, 2, 6), (0, 2, 6), 1, 1, 2000, 30.0, 5),
        ((0, 2, 6), (0, 2, 6), 0, 0, 10**5, 500.0, 5),
        ((0, 2, 6), (0, 6, 8), 1, 2, 4000, 60.0, 5),
        ((0, 2, 6), (0, 6, 8), 2, 2, 10**4, 150.0, 5),
        ((0, 2, 6), (0, 2, 12), 1, 1, 5000, 100.0, 5),
        ((0, 4, 6), (0, 4, 6), 1, 0, 3000, 70.0, 3),
        ((0, 4, 6), (0, 6, 10), 0, 1, 6000, 120.0, 5),
        ((0, 2), (0, 12), 1, 1, 2000, 35.0, 3),
        ((0, 6), (0, 12), 2, 0, 7000, 250.0, 5),
        ((0, 2, 8), (0, 2, 8), 1, 1, 10**4, 400.0, 5),
    ]
    worst = 0.0
    for s1, s2, e1, e2, N, R, V in cases:
        Ha, Hb = tc.TupleH(s1), tc.TupleH(s2)
        K = max(Ha.size, Hb.size)
        params = weights.WeightParams(K=K, ell=max(e1, e2), R=R, V=V, N=N)
        direct = weights.pair_sum_direct(Ha, Hb, e1, e2, params)
        divisor = weights.pair_sum_divisor(Ha, Hb, e1, e2, params)
        scale = max(abs(direct), abs(divisor), 1e-30)
        worst = max(worst, abs(direct - divisor) / scale)
    verdict(3, worst < 1e-9, f"20 cases, worst relative gap {worst:.2e}")


def _t4_ratio(N: int) -> float:
    R = (3.0 * N) ** 0.2
    params = weights.WeightParams(K=2, ell=1, R=R, V=5, N=N)
    emp = weights.pair_sum_direct(H1, H2, 1, 1, params)
    pred = oracle.main_term_t4(oracle.MainTermParams(H1, H2, 1, 1, R, N, 5))
    comp = oracle.compare(emp, pred["density_adjusted_mid"], pred["density_adjusted_rad"])
    assert comp["comparable"]
    return comp["ratio"]


def test_criterion_04_plain_pair_sum_tracks_prediction():
    r5 = _t4_ratio(10**5)
    r7 = _t4_ratio(10**7)
    ok = 0.5 <= r7 <= 2.0 and abs(r7 - 1) < abs(r5 - 1)
    verdict(4, ok, f"ratio {r5:.4f} at N=1e5 -> {r7:.4f} at N=1e7")


def _t5_comparison(N: int, h0: int) -> dict:
    R = (3.0 * N) ** 0.2
    params = weights.WeightParams(K=2, ell=1, R=R, V=5, N=N)
    emp = weights.pair_sum_theta(H1, H2, 1, 1, h0, params)
    pred = oracle.main_term_t5(oracle.MainTermParams(H1, H2, 1, 1, R, N, 5, h0))
    return oracle.compare(emp, pred["density_adjusted_mid"], pred["density_adjusted_rad"])


def test_criterion_05_theta_weighted_pair_sum_tracks_prediction():
    comps = {N: _t5_comparison(N, 4) for N in (10**5, 10**7)}
    if all(c["comparable"] for c in comps.values()):
        r5, r7 = comps[10**5]["ratio"], comps[10**7]["ratio"]
        ok = 0.4 <= r7 <= 2.5 and abs(r7 - 1) < abs(r5 - 1)
        verdict(5, ok, f"ratio {r5:.4f} at N=1e5 -> {r7:.4f} at N=1e7")
    else:
        c = comps[10**7]
        verdict(
            5,
            False,
            "no ratio exists: shifting by h0=4 covers every residue mod 3, "
            f"empirical={c['empirical']} and predicted={c['predicted_mid']} exactly",
        )


def test_criterion_06_twin_theta_correlation_at_1e8():
    N = 10**8
    table = primes.primes_upto(N + 2)
    p = table.primes
    idx = np.searchsorted(p, p + 2)
    ok_idx = idx < p.size
    hit = np.zeros(p.size, dtype=bool)
    hit[ok_idx] = p[idx[ok_idx]] == p[ok_idx] + 2
    hit &= p <= N
    total = math.fsum(np.log(p[hit].astype(np.float64)) * np.log((p[hit] + 2).astype(np.float64)))
    S = singular.singular_series(H1, 10**6)
    assert S.rad < 1e-6
    ratio = total / (S.mid * N)
    verdict(6, 0.9 <= ratio <= 1.1, f"theta correlation ratio {ratio:.5f}, radius {S.rad:.1e}")


def test_criterion_07_subset_average_near_h_power_k():
    A = tc.TupleH(tuple(range(1, 151)))
    devs = {k: abs(singular.s_star(A, k) - 1.0) for k in (2, 3)}
    ok = all(d <= 0.15 for d in devs.values())
    verdict(7, ok, f"|S*(k)-1| = {devs[2]:.4f} (k=2), {devs[3]:.4f} (k=3)")


def test_criterion_08_subset_average_quasi_monotonicity():
    A = tc.TupleH(tuple(range(1, 101)))
    rep = singular.check_monotone(A, 6, floor=0.95)
    ratios = ", ".join(f"{r:.3f}" for r in rep["ratios"])
    verdict(8, not rep["violations"], f"ratios {ratios} against floor 0.95")


def test_criterion_09_quasiprime_density_equals_direct_count():
    from itertools import combinations

    bad = 0
    checked = 0
    for size in (1, 2, 3, 4):
        for shifts in combinations(range(7), size):
            H = tc.TupleH(shifts)
            for z in (2, 3, 5, 7, 11, 13):
                checked += 1
                if singular.quasiprime_density(H, z) * tc.primorial(z) != singular.quasiprime_count(H, z):
                    bad += 1
    verdict(9, bad == 0, f"{checked} (tuple, z) pairs checked exactly, {bad} mismatches")


def test_criterion_10_w_function_lower_bounds():
    rep = oracle.verify_w_bounds(100.0, 0.01)
    exp_ok = rep["t0"] is not None and rep["t0"] >= 0.1
    pow_ok = rep["t1"] is not None and rep["t1"] <= 8.0
    detail = (
        f"e^(t^2/6) prefix t0={rep['t0']}, t^(2/3) holds from t1={rep['t1']}, "
        f"worst margin {rep['power_bound_worst_margin']:.3f} at t={rep['power_bound_worst_t']}"
    )
    verdict(10, exp_ok and pow_ok, detail)


def test_criterion_11_euler_product_growth_in_cutoff():
    vals = [oracle.j_product(1.0, 10**k) for k in (4, 5, 6, 7)]
    increasing = all(a < b for a, b in zip(vals, vals[1:]))
    growth = vals[-1] / math.sqrt(vals[0])
    verdict(
        11,
        increasing,
        f"J(1,10^4..10^7) = {', '.join(f'{v:.4f}' for v in vals)}; "
        f"J(1,10^7)/sqrt(J(1,10^4)) = {growth:.3f} (reported, not asserted)",
    )


def test_criterion_12_divisor_mean_inequality():
    bad = 0
    for m in range(1, 7):
        for x in (10**3, 10**4, 10**5):
            if not combinat.divisor_mean_check(x, m)["holds"]:
                bad += 1
    verdict(12, bad == 0, f"18 (x, m) pairs, {bad} violations")


def test_criterion_13_progression_error_sum_decays():
    norms = []
    for N in (10**5, 10**6, 10**7):
        # floor(sqrt(N)/log(N)^5) is 0 at every desk N; clamp to Q >= 1.
        Q = max(1, int(math.isqrt(N) / math.log(N) ** 5))
        norms.append(bv.bv_sum(bv.BVConfig(N=N, Q=Q)) / N)
    increases = sum(1 for a, b in zip(norms, norms[1:]) if b >= a)
    verdict(
        13,
        increases <= 1,
        f"normalized sums {', '.join(f'{v:.2e}' for v in norms)} ({increases} non-decreasing steps)",
    )


def test_criterion_14_regular_class_count_formula():
    rng = random.Random(20260823)
    bad = 0
    for _ in range(100):
        size = rng.randint(1, 5)
        H = tc.TupleH(tuple(rng.sample(range(0, 50), size)))
        V = rng.choice([2, 3, 5, 7, 11, 13])
        if len(tc.regular_classes(H, V)) != tc.regular_class_count(H, V):
            bad += 1
    verdict(14, bad == 0, f"100 random tuples, {bad} count mismatches")
