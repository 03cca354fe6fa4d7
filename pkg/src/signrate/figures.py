"""Builders for the report tables and their rendering.

Each fig* builder returns (header, rows) ready for `write_csv`; the CLI
writes the delimited table and, by default, a PNG rendering next to it.
Numbers are formatted with 12 significant digits so reruns are
byte-identical.
"""

import numpy as np

from . import blockfading as bf
from . import delayspread as ds
from . import lowsnr
from .channel import exact_mi_perfect_csi
from .constellations import qpsk_iid
from .numcore import LN2, convert_units


def format_value(x):
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def write_csv(path, header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(format_value(v) for v in row) for row in rows)
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def render_png(path, header, rows, title="", logx=False):
    """Line plot of every numeric column against the first column."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    data = np.array([[float(v) for v in row] for row in rows], dtype=float)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for col in range(1, data.shape[1]):
        ax.plot(data[:, 0], data[:, col], marker=".", label=header[col])
    if logx and np.all(data[:, 0] > 0):
        ax.set_xscale("log")
    ax.set_xlabel(header[0])
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def default_snr_grid(lo=10.0**-1.5, hi=10.0, points=26):
    return np.geomspace(lo, hi, points)


def random_channel(n_rx, n_tx, seed):
    """CN(0,1) channel draw from a counter-based generator."""
    rng = np.random.Generator(np.random.Philox(key=seed))
    return rng.normal(0.0, np.sqrt(0.5), (n_rx, n_tx)) + 1j * rng.normal(
        0.0, np.sqrt(0.5), (n_rx, n_tx)
    )


def fig1_table(snr_grid=None, units="bits"):
    """Spectral vs energy efficiency, one-bit against unquantized.

    Per row both systems run at the same spectral efficiency (the
    one-bit capacity at that snr); the first row is the snr -> 0 limit
    and one grid point is placed exactly at 1 bit per channel use.
    """
    if snr_grid is None:
        snr_grid = np.geomspace(1e-2, 16.0, 30)
    snrs = sorted(set(float(s) for s in snr_grid) | {bf.snr_at_capacity(1.0, "one_bit")})
    header = ["snr", "capacity_" + units, "ebn0_db_one_bit", "ebn0_db_ideal"]
    rows = [(0.0, 0.0, bf.se_ee_point(0.0, "one_bit")[1], bf.se_ee_point(0.0, "ideal")[1])]
    for s in snrs:
        c_bits, eb1 = bf.se_ee_point(s, "one_bit")
        snr_ideal = 2.0**c_bits - 1.0
        eb_ideal = 10.0 * np.log10(snr_ideal / c_bits)
        cap = c_bits if units == "bits" else c_bits * LN2
        rows.append((s, cap, eb1, eb_ideal))
    return header, rows


def fig3_table(m_values=None, n_values=(20, 30, 40)):
    """Transmit-array growth factor needed to undo one-bit quantization."""
    if m_values is None:
        m_values = range(1, 41)
    header = ["n_tx"] + ["ratio_n%d" % n for n in n_values]
    rows = []
    for m in m_values:
        row = [int(m)]
        for n in n_values:
            _, m1 = lowsnr.dimension_tradeoff(n, m)
            row.append(m1 / m)
        rows.append(tuple(row))
    return header, rows


def fig4_table(n_rx=4, n_tx=4, total_power=1.0, seed=0, snr_grid=None, units="bits"):
    """Exact QPSK mutual information vs its low-SNR expansions, fixed channel.

    The unquantized column is the Gaussian-input waterline
    log det(I + snr/M H H^H).
    """
    if snr_grid is None:
        snr_grid = default_snr_grid()
    H = random_channel(n_rx, n_tx, seed)
    d = qpsk_iid(n_tx, total_power)
    exp = lowsnr.capacity_qpsk_2nd(H, total_power)
    G = H @ H.conj().T
    header = ["snr", "exact", "second_order", "first_order", "unquantized_gauss"]
    rows = []
    for s in snr_grid:
        s = float(s)
        sigma2 = total_power / s
        exact = exact_mi_perfect_csi(H, d, sigma2, "nats")
        gauss = float(np.linalg.slogdet(np.eye(n_rx) + (s / n_tx) * G)[1])
        rows.append(
            (
                s,
                convert_units(exact, units),
                convert_units(exp.evaluate(s), units),
                convert_units(exp.linear * s, units),
                convert_units(gauss, units),
            )
        )
    return header, rows


def fig5_table(snr_grid=None, units="bits", nodes=96):
    """Non-coherent block rates per symbol vs the coherent benchmark."""
    if snr_grid is None:
        snr_grid = np.geomspace(0.1, 100.0, 31)
    header = ["snr", "rate_t2", "rate_t3", "coherent"]
    rows = []
    for s in snr_grid:
        s = float(s)
        rows.append(
            (
                s,
                convert_units(bf.qpsk_rate_T2_closed(s) / 2.0, units),
                convert_units(bf.qpsk_rate_T3_closed(s) / 3.0, units),
                convert_units(bf.coherent_rayleigh_qpsk(s, nodes=nodes), units),
            )
        )
    return header, rows


def fig6_table(block_lens=None, snr=10.0, units="bits", nodes=96):
    """Per-symbol block rate against coherence length at fixed snr."""
    if block_lens is None:
        block_lens = range(1, 21)
    coh = convert_units(bf.coherent_rayleigh_qpsk(snr, nodes=nodes), units)
    header = ["block_len", "rate_per_symbol", "coherent"]
    rows = []
    for T in block_lens:
        T = int(T)
        rate = convert_units(bf.qpsk_rate(T, snr, nodes=nodes) / T, units)
        rows.append((T, rate, coh))
    return header, rows


def fig7_table(block_len=10, snr=10.0, nodes=96):
    """Rate retained by pilot-based schemes, relative to the block rate."""
    total = bf.qpsk_rate(block_len, snr, nodes=nodes)
    header = ["training_len", "fraction_of_block", "rate_ratio"]
    rows = []
    for tt in range(1, block_len):
        ratio = bf.training_rate(block_len, tt, snr, nodes=nodes) / total
        rows.append((tt, tt / block_len, ratio))
    return header, rows


def fig8_table(snr_grid=None, units="bits"):
    """Exact T = 3 block rate against its quadratic low-SNR term."""
    if snr_grid is None:
        snr_grid = np.geomspace(1e-2, 10.0**0.5, 26)
    header = ["snr", "exact_t3", "second_order"]
    rows = []
    for s in snr_grid:
        s = float(s)
        rows.append(
            (
                s,
                convert_units(bf.qpsk_rate_T3_closed(s), units),
                convert_units((12.0 / np.pi**2) * s**2, units),
            )
        )
    return header, rows


def fig9_table(beta=2.0, T_values=(1, 5), grid=None):
    """I.i.d. signaling vs the duty-cycled bound across channel mixes."""
    if grid is None:
        grid = np.geomspace(1e-2, 1e3, 51)
    ratios_grid, curves = ds.fig9_curve(T_values, beta, grid)
    header = ["chi_over_zeta"] + ["ratio_t%d" % t for t in T_values]
    rows = [
        tuple([float(r)] + [float(curves[t][i]) for t in T_values])
        for i, r in enumerate(ratios_grid)
    ]
    return header, rows
