"""Acceptance gate: one test per shipped claim, each printing PASS or FAIL.

Every expected value here was frozen from an independent oracle (direct
enumeration, Monte Carlo, or high-precision reference evaluation) before
the expansions were wired up.  One check is expected to fail and is kept
honest rather than loosened: the T = 3 quadratic-coefficient window at
snr = 0.05 (criterion 6), where the next-order term is already ~11% —
see the repository notes for the analysis.
"""

import time

import numpy as np

from signrate import cli, lowsnr
from signrate.blockfading import (
    exact_stat_csi_mi_T2,
    qpsk_rate,
    qpsk_rate_T2_closed,
    qpsk_rate_T3_closed,
    se_ee_point,
    snr_at_capacity,
)
from signrate.channel import exact_mi_perfect_csi, exact_sign_entropy, mc_ergodic_mi
from signrate.constellations import qpsk_iid
from signrate.delayspread import _bound_coeff, fig9_curve
from signrate.selfcheck import run_verify


def report(capsys, num, ok, detail):
    with capsys.disabled():
        print("criterion %02d: %s (%s)" % (num, "PASS" if ok else "FAIL", detail))


def test_criterion_01_linear_power_penalty(capsys, cn_channel):
    t0 = time.monotonic()
    rng = np.random.default_rng(1)
    snr = 1e-3
    devs = []
    for _ in range(10):
        N = int(rng.integers(1, 4))
        M = int(rng.integers(1, 4))
        H = cn_channel(rng, N, M)
        d = qpsk_iid(M, 1.0)
        exact = exact_mi_perfect_csi(H, d, 1.0 / snr)
        unq = lowsnr.mi_expansion_unquantized(H, np.eye(M) / M).evaluate(snr)
        devs.append(exact / unq - 2.0 / np.pi)
    worst = max(abs(v) for v in devs)
    elapsed = time.monotonic() - t0
    ok = worst <= 0.01 and elapsed < 10.0
    report(capsys, 1, ok, "worst |ratio - 2/pi| %.2g over 10 channels, %.1fs" % (worst, elapsed))
    assert worst <= 0.01
    assert elapsed < 10.0


def test_criterion_02_energy_per_bit_gaps(capsys):
    t0 = time.monotonic()
    limit_gap = se_ee_point(0.0, "one_bit")[1] - se_ee_point(0.0, "ideal")[1]
    s_star = snr_at_capacity(1.0, "one_bit")
    # both systems at 1 bit per use: the ideal one needs snr = 1 (0 dB Eb/N0)
    gap_at_one = se_ee_point(s_star, "one_bit")[1] - 0.0
    elapsed = time.monotonic() - t0
    ok = abs(limit_gap - 1.9612) <= 0.005 and 1.60 <= gap_at_one <= 1.90 and elapsed < 1.0
    report(capsys, 2, ok, "limit gap %.4f dB, gap at 1 bit %.4f dB" % (limit_gap, gap_at_one))
    assert abs(limit_gap - 1.9612) <= 0.005
    assert 1.60 <= gap_at_one <= 1.90
    assert elapsed < 1.0


def test_criterion_03_entropy_expansion_remainder(capsys, random_proper):
    t0 = time.monotonic()
    rng = np.random.default_rng(7)
    ratios = []
    for trial in range(20):
        d = random_proper(rng, 1 + trial % 2)
        e = lowsnr.entropy_expansion(d)
        r1 = abs(exact_sign_entropy(d, 0.1) - e.evaluate(0.01))
        r2 = abs(exact_sign_entropy(d, 0.05) - e.evaluate(0.0025))
        ratios.append(r1 / r2)
    elapsed = time.monotonic() - t0
    ok = all(32.0 <= r <= 128.0 for r in ratios) and elapsed < 30.0
    report(capsys, 3, ok, "residual ratios %.1f..%.1f over 20 inputs, %.1fs"
           % (min(ratios), max(ratios), elapsed))
    assert all(32.0 <= r <= 128.0 for r in ratios)
    assert elapsed < 30.0


def test_criterion_04_mi_expansion_remainder(capsys, cn_channel):
    t0 = time.monotonic()
    rng = np.random.default_rng(3)
    ratios = []
    for _ in range(10):
        N = int(rng.integers(1, 4))
        M = int(rng.integers(1, 4))
        H = cn_channel(rng, N, M)
        d = qpsk_iid(M, 1.0)
        e = lowsnr.mi_expansion_perfect_csi(H, d)
        r1 = abs(exact_mi_perfect_csi(H, d, 10.0) - e.evaluate(0.1))
        r2 = abs(exact_mi_perfect_csi(H, d, 20.0) - e.evaluate(0.05))
        ratios.append(r1 / r2)
    elapsed = time.monotonic() - t0
    ok = all(4.0 <= r <= 16.0 for r in ratios) and elapsed < 30.0
    report(capsys, 4, ok, "residual ratios %.2f..%.2f over 10 channels, %.1fs"
           % (min(ratios), max(ratios), elapsed))
    assert all(4.0 <= r <= 16.0 for r in ratios)
    assert elapsed < 30.0


def test_criterion_05_block_rate_closed_forms(capsys):
    t0 = time.monotonic()
    worst = 0.0
    for s in (0.1, 1.0, 10.0):
        worst = max(worst, abs(qpsk_rate(2, s) - qpsk_rate_T2_closed(s)))
        worst = max(worst, abs(qpsk_rate(3, s) - qpsk_rate_T3_closed(s)))
    two_dim = abs(exact_stat_csi_mi_T2(1.0) - qpsk_rate_T2_closed(1.0))
    elapsed = time.monotonic() - t0
    ok = worst <= 1e-6 and two_dim <= 1e-4 and elapsed < 10.0
    report(capsys, 5, ok, "closed vs quadrature %.2g nats, vs 2-D reference %.2g nats"
           % (worst, two_dim))
    assert worst <= 1e-6
    assert two_dim <= 1e-4
    assert elapsed < 10.0


def test_criterion_06_t3_quadratic_window(capsys):
    t0 = time.monotonic()
    coeff = 12.0 / np.pi**2

    def ratio(s):
        return qpsk_rate_T3_closed(s) / (coeff * s**2)

    window = ratio(0.05)
    window_ok = 0.95 <= window <= 1.05
    trend = [abs(ratio(s) - 1.0) for s in (0.04, 0.02, 0.01)]
    trend_ok = trend[0] > trend[1] > trend[2] and trend[2] < 0.05
    elapsed = time.monotonic() - t0
    ok = window_ok and trend_ok and elapsed < 1.0
    report(capsys, 6, ok, "ratio at snr 0.05 is %.4f (window 0.95..1.05, known red); "
           "deviations %.3f -> %.3f -> %.3f" % (window, *trend))
    assert elapsed < 1.0
    assert trend_ok
    assert window_ok  # documented honest failure: next-order term ~ -2.42 snr


def test_criterion_07_ergodic_monte_carlo(capsys):
    t0 = time.monotonic()
    snr = 0.05
    d = qpsk_iid(2, 1.0)
    est, se = mc_ergodic_mi(2, 2, d, 1.0 / snr, 2000, 12345)
    poly = lowsnr.ergodic_capacity_1bit(2, 2).evaluate(snr)
    elapsed = time.monotonic() - t0
    dev_sigma = abs(est - poly) / se
    ok = dev_sigma <= 3.0 and se < 0.02 * est and elapsed < 300.0
    report(capsys, 7, ok, "estimate %.6f vs expansion %.6f, %.2f sigma, se/mean %.2g, %.0fs"
           % (est, poly, dev_sigma, se / est, elapsed))
    assert dev_sigma <= 3.0
    assert se < 0.02 * est
    assert elapsed < 300.0


def test_criterion_08_dimension_tradeoff(capsys):
    t0 = time.monotonic()
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(50):
        N = int(rng.integers(2, 51))
        M = int(rng.integers(1, N + 1))
        N1, M1 = lowsnr.dimension_tradeoff(N, M)
        q = lowsnr.ergodic_capacity_1bit(N1, M1)
        u = lowsnr.ergodic_capacity_unquantized(N, M)
        worst = max(worst, abs(q.linear / u.linear - 1.0), abs(q.quadratic / u.quadratic - 1.0))
    _, m_large = lowsnr.dimension_tradeoff(100, 1)
    m_dev = abs(m_large - 1.0)
    elapsed = time.monotonic() - t0
    ok = worst <= 1e-9 and m_dev < 0.01 and elapsed < 1.0
    report(capsys, 8, ok, "worst coefficient mismatch %.2g, M' at (100,1) off by %.2g%%"
           % (worst, 100.0 * m_dev))
    assert worst <= 1e-9
    assert m_dev < 0.01
    assert elapsed < 1.0


def test_criterion_09_verification_battery(capsys):
    t0 = time.monotonic()
    checks = run_verify(seed=0, mc_samples=10**7)
    elapsed = time.monotonic() - t0
    failed = [name for name, ok, _ in checks if not ok]
    ok = not failed and len(checks) == 6 and elapsed < 120.0
    report(capsys, 9, ok, "%d/%d independent checks passed, %.0fs"
           % (len(checks) - len(failed), len(checks), elapsed))
    assert len(checks) == 6
    assert not failed, failed
    assert elapsed < 120.0


def test_criterion_10_delay_spread_bound(capsys):
    t0 = time.monotonic()
    rng = np.random.default_rng(5)
    grid = np.linspace(0.0, 1.0, 10**4)
    worst_u = worst_g = 0.0
    for _ in range(100):
        z, c = rng.uniform(0.0, 2.0, 2)
        beta = rng.uniform(1.0, 5.0)
        u, gamma = _bound_coeff(z, c, beta)
        vals = grid * beta * (z + c) - grid**2 * c
        worst_u = max(worst_u, abs(u - float(vals.max())))
        worst_g = max(worst_g, abs(gamma - float(grid[int(vals.argmax())])))
    g, curves = fig9_curve((1, 5), 2.0, np.geomspace(1e-2, 1e3, 51))
    tails = [curves[T][-1] for T in (1, 5)]
    caps = max(float(curves[T].max()) for T in (1, 5))
    elapsed = time.monotonic() - t0
    ok = (worst_u <= 1e-6 and worst_g <= 1.5e-4 and caps <= 1.0 + 1e-12
          and all(t >= 0.99 for t in tails) and elapsed < 10.0)
    report(capsys, 10, ok, "bound vs grid search: value off %.2g, duty off %.2g; "
           "i.i.d./bound tail ratios %.4f, %.4f" % (worst_u, worst_g, *tails))
    assert worst_u <= 1e-6
    assert worst_g <= 1.5e-4
    assert caps <= 1.0 + 1e-12
    assert all(t >= 0.99 for t in tails)
    assert elapsed < 10.0


def test_criterion_11_report_determinism(capsys, tmp_path):
    t0 = time.monotonic()
    names = ["fig1", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"]
    stable = []
    for name in names:
        blobs = []
        for run in ("a", "b"):
            out = tmp_path / ("%s_%s.csv" % (name, run))
            code = cli.main([name, "--out", str(out), "--no-plot"])
            assert code == 0, name
            blobs.append(out.read_bytes())
        stable.append(blobs[0] == blobs[1])
    elapsed = time.monotonic() - t0
    ok = all(stable) and elapsed < 60.0
    report(capsys, 11, ok, "%d/%d tables byte-identical across reruns, %.0fs"
           % (sum(stable), len(stable), elapsed))
    assert all(stable), [n for n, s in zip(names, stable) if not s]
    assert elapsed < 60.0
