"""Acceptance gate: every criterion at its stated tolerance, one line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the PASS/FAIL lines.
"""

import cmath
import math
import time

import numpy as np
import pytest

from hcslab.fock import (
    FockMoments,
    build_hcs,
    choose_truncation,
    fidelity,
    quadrature_central_moment,
)
from hcslab.heralding import HeraldingParams, simulate_herald
from hcslab.moments import ClosedFormMoments, HcsParams, mean_number
from hcslab.witnesses import QuadratureSpec, VacuumStateError, hm_squeezing, hoa_g

GRID_EPSILONS = (0.0, 0.25, 0.5, 0.75, 1.0)
GRID_PHIS = (0.0, math.pi / 4, math.pi / 2, math.pi)
GRID_ALPHA_ABS = (0.0, 0.5, 1.0, 2.0, 3.0)
GRID_ALPHA_ARGS = (0.0, math.pi / 3)

MOMENT_ORDER_CAP = 12

Q0 = QuadratureSpec(0.0)
Q90 = QuadratureSpec(math.pi / 2)


def _report(criterion, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {criterion}: {status}  {detail}")
    assert ok, f"criterion {criterion} failed: {detail}"


@pytest.fixture(scope="module")
def grid():
    """All 200 grid states with both providers; build time kept for criterion 1."""
    t0 = time.perf_counter()
    points = []
    for eps in GRID_EPSILONS:
        for phi in GRID_PHIS:
            for arg in GRID_ALPHA_ARGS:
                for aa in GRID_ALPHA_ABS:
                    params = HcsParams(eps, phi, aa * cmath.exp(1j * arg))
                    dim = choose_truncation(params.alpha, headroom=MOMENT_ORDER_CAP + 2)
                    state = build_hcs(params, dim)
                    points.append((params, state, ClosedFormMoments(params), FockMoments(state)))
    return points, time.perf_counter() - t0


def test_criterion_1_oracle_equivalence(grid):
    points, build_seconds = grid
    t0 = time.perf_counter()
    worst = 0.0
    for params, state, closed, oracle in points:
        for n in range(MOMENT_ORDER_CAP + 1):
            for m in range(MOMENT_ORDER_CAP + 1 - n):
                reference = oracle.moment(n, m)
                err = abs(closed.moment(n, m) - reference)
                worst = max(worst, err / max(1e-12, 1e-9 * abs(reference)))
    elapsed = build_seconds + (time.perf_counter() - t0)
    _report(
        "1 oracle equivalence (n+m <= 12)",
        worst <= 1.0 and elapsed < 60.0,
        f"worst error = {worst:.3e} x tolerance, runtime {elapsed:.1f}s",
    )


def test_criterion_2_variance_reconstruction(grid):
    points, _ = grid
    worst = 0.0
    for params, state, closed, _oracle in points:
        for psi in (0.0, math.pi / 2):
            quad = QuadratureSpec(psi)
            for n in (1, 2, 3):
                result = hm_squeezing(closed, quad, n)
                direct = quadrature_central_moment(state, quad, 2 * n)
                worst = max(worst, abs(result.total_variance - direct))
    _report("2 variance reconstruction", worst <= 1e-9, f"worst abs dev = {worst:.3e}")


def test_criterion_3_coherent_limits():
    worst_s, worst_g = 0.0, 0.0
    for aa in (0.5, 1.0, 2.0, 4.0):
        for arg in (0.0, math.pi / 3):
            provider = ClosedFormMoments(HcsParams(1.0, 0.0, aa * cmath.exp(1j * arg)))
            for n in (1, 2, 3):
                for quad in (Q0, Q90):
                    worst_s = max(worst_s, abs(hm_squeezing(provider, quad, n).s_value))
                worst_g = max(worst_g, abs(hoa_g(provider, n).g_value - 1.0))
    _report(
        "3 coherent limits",
        worst_s <= 1e-10 and worst_g <= 1e-10,
        f"max |S| = {worst_s:.3e}, max |g-1| = {worst_g:.3e}",
    )


def test_criterion_4_pinned_point_values():
    two_level = ClosedFormMoments(HcsParams(0.75, 0.0, 0.0))
    s2 = hm_squeezing(two_level, Q0, 1).s_value
    s4 = hm_squeezing(two_level, Q0, 2).s_value
    g2 = hoa_g(ClosedFormMoments(HcsParams(0.0, 0.0, 1.0)), 1).g_value
    nbar = mean_number(HcsParams(0.0, 0.0, 1.0))
    ok = (
        abs(s2 - (-0.125)) <= 1e-12
        and abs(s4 - (-0.234375)) <= 1e-12
        and abs(g2 - 0.8) <= 1e-9
        and abs(nbar - 2.5) <= 1e-10
    )
    _report(
        "4 pinned point values",
        ok,
        f"S2={s2:.15g} S4={s4:.15g} g2={g2:.15g} nbar={nbar:.15g}",
    )


def _axis_sweep(n, quad=Q0):
    return [
        hm_squeezing(ClosedFormMoments(HcsParams(0.5, 0.0, a)), quad, n).s_value
        for a in np.linspace(0.0, 4.0, 81)
    ]


def test_criterion_5_squeezing_deepens_with_order():
    minima = {n: min(_axis_sweep(n)) for n in (1, 2, 3)}
    ok = all(v < 0 for v in minima.values()) and abs(minima[3]) > abs(minima[2]) > abs(minima[1])
    _report(
        "5 squeezing minima deepen with order",
        ok,
        f"min S2={minima[1]:.6g}, min S4={minima[2]:.6g}, min S6={minima[3]:.6g}",
    )


def test_criterion_6_no_simultaneous_squeezing():
    violations = 0
    for n in (1, 2, 3):
        for s0, s90 in zip(_axis_sweep(n, Q0), _axis_sweep(n, Q90)):
            if s0 < -1e-10 and s90 < -1e-10:
                violations += 1
    _report("6 quadrature exclusivity", violations == 0, f"{violations} violations over the axis")


def test_criterion_7_small_alpha_advantage():
    s4 = {
        eps: hm_squeezing(ClosedFormMoments(HcsParams(eps, 0.0, 0.05)), Q0, 2).s_value
        for eps in (0.0, 0.25, 0.5, 0.75)
    }
    ok = s4[0.75] < 0.0 and s4[0.0] > 0.0
    # regression values from the first validated run (implementation data, not
    # figure ground truth): the intermediate mixtures stay unsqueezed here
    ok = ok and s4[0.25] == pytest.approx(2.1890414243899214, rel=1e-9)
    ok = ok and s4[0.5] == pytest.approx(0.60748016762629198, rel=1e-9)
    _report(
        "7 small-alpha higher-order squeezing",
        ok,
        "S4 at |alpha|=0.05: " + ", ".join(f"eps={e}: {v:.6g}" for e, v in s4.items()),
    )


def test_criterion_8_antibunching_depth_rises_with_order():
    axis = np.linspace(0.1, 2.0, 20)
    all_below = True
    for n in (1, 2, 3):
        values = [hoa_g(ClosedFormMoments(HcsParams(0.5, 0.0, a)), n).g_value for a in axis]
        all_below = all_below and max(values) < 1.0
    depth = [1.0 - hoa_g(ClosedFormMoments(HcsParams(0.5, 0.0, 1.0)), n).g_value for n in (1, 2, 3)]
    rising = depth[0] < depth[1] < depth[2]
    coherent_flat = max(
        abs(hoa_g(ClosedFormMoments(HcsParams(1.0, 0.0, a)), n).g_value - 1.0)
        for a in axis
        for n in (1, 2, 3)
    )
    _report(
        "8 antibunching depth rises with order",
        all_below and rising and coherent_flat <= 1e-10,
        f"1-g at |alpha|=1: {depth}, coherent max |g-1| = {coherent_flat:.2e}",
    )


def test_criterion_9_heralding():
    balanced = 1.0 / math.sqrt(2.0)

    # (a) balanced splitter, theta = 0 heralds the photon-added state
    outcome = simulate_herald(HeraldingParams(balanced, balanced, 0.0, 0.01, 1.0))
    fid_a = fidelity(outcome.state_a, build_hcs(outcome.mapped, outcome.state_a.dim))
    ok_a = outcome.mapped.epsilon == 0.0 and fid_a >= 1 - 1e-9

    # (b) linearized round trip over a random parameter sample
    rng = np.random.default_rng(2024)
    worst_rt = 1.0
    for _ in range(20):
        hp = HeraldingParams.from_transmissivity(
            rng.uniform(0.2, 0.98),
            theta=rng.uniform(0, 2 * math.pi),
            phi_xpm=rng.uniform(0.002, 0.1),
            alpha=rng.uniform(0.2, 2.0) * cmath.exp(1j * rng.uniform(0, 2 * math.pi)),
        )
        out = simulate_herald(hp)
        worst_rt = min(worst_rt, fidelity(out.state_a, build_hcs(out.mapped, out.state_a.dim)))
    ok_b = worst_rt >= 1 - 1e-9

    # (c) exact vs linearized at weak coupling, monotone in the coupling
    def mode_fidelity(xpm, t, theta, alpha):
        r = math.sqrt(1.0 - t * t)
        exact = simulate_herald(HeraldingParams(t, r, theta, xpm, alpha, "exact"))
        linear = simulate_herald(HeraldingParams(t, r, theta, xpm, alpha, "linearized"))
        return fidelity(exact.state_a, linear.state_a)

    worst_c = min(
        mode_fidelity(0.01, t, theta, alpha)
        for t in (0.4, balanced, 0.9)
        for theta in (0.0, 1.0, math.pi)
        for alpha in (0.5, 2.0)
    )
    ladder = [mode_fidelity(x, balanced, 0.0, 2.0) for x in (0.1, 0.05, 0.02, 0.01)]
    ok_c = worst_c >= 0.999 and all(a < b for a, b in zip(ladder, ladder[1:]))

    _report(
        "9 heralding",
        ok_a and ok_b and ok_c,
        f"(a) fid={fid_a:.12f} (b) worst roundtrip={worst_rt:.12f} "
        f"(c) worst weak-XPM fid={worst_c:.6f}, ladder={['%.6f' % f for f in ladder]}",
    )


def test_criterion_10_covariance_suite():
    rng = np.random.default_rng(31)
    worst = 0.0
    for _ in range(50):
        eps = rng.uniform(0, 1)
        phi = rng.uniform(0, 2 * math.pi)
        alpha = rng.uniform(0, 2) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        chi, psi = rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi)
        base = ClosedFormMoments(HcsParams(eps, phi, alpha))
        rotated = ClosedFormMoments(HcsParams(eps, phi + chi, alpha * cmath.exp(1j * chi)))
        for n in (1, 2, 3):
            s1 = hm_squeezing(base, QuadratureSpec(psi), n).s_value
            s2 = hm_squeezing(rotated, QuadratureSpec(psi + chi), n).s_value
            worst = max(worst, abs(s1 - s2))
            try:
                worst = max(worst, abs(hoa_g(base, n).g_value - hoa_g(rotated, n).g_value))
            except VacuumStateError:
                pass
    _report("10 covariance suite", worst <= 1e-10, f"worst deviation = {worst:.3e} over 50 draws")
