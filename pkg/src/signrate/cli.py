"""Command line front end.

Subcommands fig1..fig9 write the report tables as CSV (12 significant
digits, byte-identical across reruns) plus a PNG rendering alongside;
expand/exact/ergodic/bound expose the library on ad-hoc channels, and
verify runs the numerical self-checks.

Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 enumeration cap exceeded.
"""

import argparse
import json
import sys

import numpy as np

from . import blockfading as bf
from . import delayspread as ds
from . import figures, lowsnr, selfcheck
from .channel import EnumerationCapError, exact_mi_perfect_csi, mc_ergodic_mi
from .constellations import DiscreteInputDistribution, qpsk_iid
from .numcore import LN2, convert_units


def parse_snr(text):
    """Parse an snr value; a trailing 'dB' marks a decibel figure."""
    s = text.strip()
    if s.lower().endswith("db"):
        return 10.0 ** (float(s[:-2].strip()) / 10.0)
    value = float(s)
    if value < 0:
        raise ValueError("linear snr must be nonnegative: %r" % text)
    return value


def snr_grid_from_args(args, default=None):
    if args.snr_list:
        return [parse_snr(tok) for tok in args.snr_list.split(",") if tok.strip()]
    if args.snr_min is not None or args.snr_max is not None:
        lo = parse_snr(args.snr_min) if args.snr_min is not None else 1e-3
        hi = parse_snr(args.snr_max) if args.snr_max is not None else 10.0
        if not 0 < lo <= hi:
            raise ValueError("need 0 < snr-min <= snr-max")
        return list(np.geomspace(lo, hi, args.snr_points))
    return default


def load_channel(args):
    if args.h_file:
        with open(args.h_file) as fh:
            entries = np.asarray(json.load(fh), dtype=float)
        if entries.ndim != 3 or entries.shape[2] != 2:
            raise ValueError("channel file must hold an N x M array of [re, im] pairs")
        return entries[:, :, 0] + 1j * entries[:, :, 1]
    return figures.random_channel(args.n, args.m, args.seed)


def load_constellation(args, n_tx, total_power):
    if getattr(args, "constellation", None):
        return DiscreteInputDistribution.from_json_file(args.constellation)
    return qpsk_iid(n_tx, total_power)


def emit(args, header, rows, logx=True):
    out = args.out
    figures.write_csv(out, header, rows)
    print("wrote %s (%d rows)" % (out, len(rows)))
    want_plot = args.plot if args.plot is not None else args.cmd.startswith("fig")
    if want_plot:
        png = out[:-4] + ".png" if out.endswith(".csv") else out + ".png"
        figures.render_png(png, header, rows, title=args.cmd, logx=logx)
        print("wrote %s" % png)


def cmd_fig(args):
    grid = snr_grid_from_args(args)
    units = args.units
    if args.cmd == "fig1":
        header, rows = figures.fig1_table(snr_grid=grid, units=units) if grid else figures.fig1_table(units=units)
    elif args.cmd == "fig3":
        header, rows = figures.fig3_table()
    elif args.cmd == "fig4":
        header, rows = figures.fig4_table(
            n_rx=args.n, n_tx=args.m, total_power=args.power, seed=args.seed,
            snr_grid=grid, units=units,
        )
    elif args.cmd == "fig5":
        header, rows = figures.fig5_table(snr_grid=grid, units=units, nodes=args.nodes)
    elif args.cmd == "fig6":
        header, rows = figures.fig6_table(snr=args.snr, units=units, nodes=args.nodes)
    elif args.cmd == "fig7":
        header, rows = figures.fig7_table(block_len=args.block_len, snr=args.snr, nodes=args.nodes)
    elif args.cmd == "fig8":
        header, rows = figures.fig8_table(snr_grid=grid, units=units)
    elif args.cmd == "fig9":
        header, rows = figures.fig9_table(beta=args.beta)
    else:
        raise ValueError("unknown figure %r" % args.cmd)
    emit(args, header, rows, logx=args.cmd not in ("fig3", "fig6", "fig7"))
    return 0


def cmd_expand(args):
    H = load_channel(args)
    quant = lowsnr.capacity_qpsk_2nd(H, args.power)
    unq = lowsnr.mi_expansion_unquantized(H, (args.power / H.shape[1]) * np.eye(H.shape[1]))
    conv = 1.0 if args.units == "nats" else 1.0 / LN2
    header = ["term", "linear", "quadratic", "rho"]
    rows = [
        ("one_bit", quant.linear * conv, quant.quadratic * conv, quant.rho_kind),
        # unquantized coefficients restated per unit snr = P/sigma2
        ("unquantized", unq.linear / args.power * conv,
         unq.quadratic / args.power**2 * conv, "snr"),
    ]
    emit(args, header, rows, logx=False)
    return 0


def cmd_exact(args):
    H = load_channel(args)
    d = load_constellation(args, H.shape[1], args.power)
    grid = snr_grid_from_args(args, default=list(np.geomspace(1e-2, 10.0, 21)))
    header = ["snr", "mi_" + args.units]
    rows = []
    for s in grid:
        mi = exact_mi_perfect_csi(H, d, args.power / s, args.units)
        rows.append((s, mi))
    emit(args, header, rows)
    return 0


def cmd_ergodic(args):
    d = qpsk_iid(args.m, args.power)
    grid = snr_grid_from_args(args, default=[0.05])
    exp = lowsnr.ergodic_capacity_1bit(args.n, args.m)
    header = ["snr", "mc_estimate", "std_error", "second_order"]
    rows = []
    for s in grid:
        est, se = mc_ergodic_mi(args.n, args.m, d, args.power / s, args.draws, args.seed, args.units)
        rows.append((s, est, se, convert_units(exp.evaluate(s), args.units)))
    emit(args, header, rows)
    return 0


def cmd_bound(args):
    with open(args.model) as fh:
        raw = json.load(fh)
    C_h = np.asarray(raw["C_h"], dtype=float) if np.asarray(raw["C_h"]).ndim == 2 else None
    if C_h is None:
        arr = np.asarray(raw["C_h"], dtype=float)
        C_h = arr[:, :, 0] + 1j * arr[:, :, 1]
    model = ds.FadingCorrelationModel(C_h, raw["c_h"], raw["alpha"], raw["beta"])
    bound = ds.upper_bound(model)
    grid = snr_grid_from_args(args)
    if grid:
        header = ["snr", "upper_bound", "iid_rate"]
        rows = [
            (s, ds.bound_value(bound, s, args.units), ds.iid_rate(model, s, args.units))
            for s in grid
        ]
    else:
        header = ["quantity", "value"]
        rows = [
            ("zeta", bound.zeta),
            ("chi", bound.chi),
            ("u_coeff", bound.u_coeff),
            ("gamma_opt", bound.gamma_opt),
            ("oofsk_duty", bound.oofsk_duty),
        ]
    emit(args, header, rows, logx=bool(grid))
    return 0


def cmd_verify(args):
    checks = selfcheck.run_verify(seed=args.seed, mc_samples=args.samples)
    failed = 0
    for name, ok, detail in checks:
        print("%s %s (%s)" % ("PASS" if ok else "FAIL", name, detail))
        failed += 0 if ok else 1
    print("%d/%d checks passed" % (len(checks) - failed, len(checks)))
    return 1 if failed else 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="signrate",
        description="Rates of one-bit quantized vector channels: exact, asymptotic, and bounds.",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, out_default):
        sp.add_argument("--out", default=out_default, help="output CSV path")
        sp.add_argument("--units", choices=("bits", "nats"), default="bits")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--nodes", type=int, default=96, help="quadrature nodes")
        sp.add_argument("--snr-min", default=None, help="grid start (linear or '...dB')")
        sp.add_argument("--snr-max", default=None, help="grid end (linear or '...dB')")
        sp.add_argument("--snr-points", type=int, default=21)
        sp.add_argument("--snr-list", default=None, help="comma-separated snr values")
        plot = sp.add_mutually_exclusive_group()
        plot.add_argument("--plot", dest="plot", action="store_true", default=None)
        plot.add_argument("--no-plot", dest="plot", action="store_false")

    for name, fn in (
        ("fig1", cmd_fig), ("fig3", cmd_fig), ("fig4", cmd_fig), ("fig5", cmd_fig),
        ("fig6", cmd_fig), ("fig7", cmd_fig), ("fig8", cmd_fig), ("fig9", cmd_fig),
    ):
        sp = sub.add_parser(name, help="write the %s table (CSV + PNG)" % name)
        common(sp, name + ".csv")
        if name == "fig4":
            sp.add_argument("--n", type=int, default=4)
            sp.add_argument("--m", type=int, default=4)
            sp.add_argument("--power", type=float, default=1.0)
        if name in ("fig6", "fig7"):
            sp.add_argument("--snr", type=parse_snr, default=10.0)
        if name == "fig7":
            sp.add_argument("--block-len", type=int, default=10)
        if name == "fig9":
            sp.add_argument("--beta", type=float, default=2.0)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("expand", help="second-order expansion coefficients of a channel")
    common(sp, "expand.csv")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--power", type=float, default=1.0)
    sp.add_argument("--h-file", default=None, help="JSON N x M array of [re, im] pairs")
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("exact", help="exact mutual information over an snr grid")
    common(sp, "exact.csv")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--power", type=float, default=1.0)
    sp.add_argument("--h-file", default=None)
    sp.add_argument("--constellation", default=None, help="JSON input distribution")
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("ergodic", help="Monte-Carlo ergodic rate vs its expansion")
    common(sp, "ergodic.csv")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--power", type=float, default=1.0)
    sp.add_argument("--draws", type=int, default=2000)
    sp.set_defaults(func=cmd_ergodic)

    sp = sub.add_parser("bound", help="delay-spread low-SNR bound from a JSON model")
    common(sp, "bound.csv")
    sp.add_argument("--model", required=True, help="JSON with C_h, c_h, alpha, beta")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("verify", help="run the numerical self-check battery")
    common(sp, "verify.csv")
    sp.add_argument("--samples", type=int, default=10**7, help="Monte-Carlo samples")
    sp.set_defaults(func=cmd_verify)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EnumerationCapError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
