"""Command-line interface: parsing, file outputs, exit codes."""

import json

import numpy as np
import pytest

from signrate import cli
from signrate.blockfading import awgn_1bit_capacity
from signrate.figures import format_value, write_csv
from signrate.lowsnr import ergodic_capacity_1bit
from signrate.numcore import LN2


def read_csv(path):
    lines = path.read_text().splitlines()
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


def test_parse_snr():
    assert cli.parse_snr("2") == 2.0
    assert cli.parse_snr(" 0.5 ") == 0.5
    assert cli.parse_snr("0dB") == pytest.approx(1.0)
    assert cli.parse_snr("3dB") == pytest.approx(1.9952623149688795, rel=1e-14)
    assert cli.parse_snr("-3dB") == pytest.approx(10.0**-0.3, rel=1e-14)
    with pytest.raises(ValueError):
        cli.parse_snr("-1")
    with pytest.raises(ValueError):
        cli.parse_snr("loud")


def test_snr_grid_from_args():
    args = cli.build_parser().parse_args(
        ["exact", "--snr-min", "0.1", "--snr-max", "10", "--snr-points", "5"]
    )
    grid = cli.snr_grid_from_args(args)
    np.testing.assert_allclose(grid, np.geomspace(0.1, 10.0, 5))
    args = cli.build_parser().parse_args(["exact", "--snr-list", "1,2dB, 3"])
    assert cli.snr_grid_from_args(args) == pytest.approx([1.0, 10.0**0.2, 3.0])
    args = cli.build_parser().parse_args(["exact"])
    assert cli.snr_grid_from_args(args, default=[7.0]) == [7.0]


def test_fig3_no_plot(tmp_path, capsys):
    out = tmp_path / "fig3.csv"
    assert cli.main(["fig3", "--out", str(out), "--no-plot"]) == 0
    assert "wrote %s (40 rows)" % out in capsys.readouterr().out
    header, rows = read_csv(out)
    assert header == ["n_tx", "ratio_n20", "ratio_n30", "ratio_n40"]
    assert len(rows) == 40
    assert not (tmp_path / "fig3.png").exists()
    # more transmit antennas are needed at every finite ratio, growing with M
    ratios = [float(r[1]) for r in rows]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    assert all(r > 1.0 - 0.05 for r in ratios)


def test_fig_csv_byte_deterministic(tmp_path):
    outs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        assert (
            cli.main(
                ["fig4", "--out", str(out), "--no-plot", "--snr-list", "0.05,0.1,0.2"]
            )
            == 0
        )
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert outs[0].endswith(b"\n") and b"\r" not in outs[0]


def test_fig_renders_png_by_default(tmp_path, capsys):
    out = tmp_path / "fig9.csv"
    assert cli.main(["fig9", "--out", str(out)]) == 0
    png = tmp_path / "fig9.png"
    assert png.exists()
    assert png.read_bytes()[:4] == b"\x89PNG"
    assert "wrote %s" % png in capsys.readouterr().out


def test_expand_with_channel_file(tmp_path):
    h_file = tmp_path / "h.json"
    h_file.write_text(json.dumps([[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]))
    out = tmp_path / "expand.csv"
    assert (
        cli.main(
            ["expand", "--h-file", str(h_file), "--out", str(out), "--units", "nats"]
        )
        == 0
    )
    header, rows = read_csv(out)
    assert header == ["term", "linear", "quadratic", "rho"]
    table = {r[0]: r for r in rows}
    # identity 2x2 channel: one-bit linear term (2/pi) tr(I)/M = 2/pi
    assert float(table["one_bit"][1]) == pytest.approx(2.0 / np.pi, rel=1e-10)
    assert float(table["unquantized"][1]) == pytest.approx(1.0, rel=1e-10)
    assert not out.with_suffix(".png").exists()


def test_expand_malformed_channel_file(tmp_path, capsys):
    h_file = tmp_path / "h.json"
    h_file.write_text(json.dumps([[1.0, 2.0]]))
    assert cli.main(["expand", "--h-file", str(h_file), "--out", str(tmp_path / "x.csv")]) == 2
    assert "error:" in capsys.readouterr().err
    assert cli.main(["expand", "--h-file", str(tmp_path / "missing.json")]) == 2


def test_exact_with_constellation_file(tmp_path):
    from signrate import qpsk_iid

    h_file = tmp_path / "h.json"
    h_file.write_text(json.dumps([[[1.0, 0.0]]]))
    c_file = tmp_path / "qpsk.json"
    c_file.write_text(json.dumps(qpsk_iid(1, 1.0).to_json_dict()))
    out = tmp_path / "exact.csv"
    code = cli.main(
        [
            "exact", "--h-file", str(h_file), "--constellation", str(c_file),
            "--snr-list", "1", "--out", str(out), "--no-plot",
        ]
    )
    assert code == 0
    header, rows = read_csv(out)
    assert header == ["snr", "mi_bits"]
    assert len(rows) == 1
    assert float(rows[0][1]) == pytest.approx(awgn_1bit_capacity(1.0, "bits"), rel=1e-10)


def test_exact_enumeration_cap_exit_code(tmp_path, capsys):
    code = cli.main(
        ["exact", "--n", "13", "--m", "1", "--snr-list", "1",
         "--out", str(tmp_path / "x.csv"), "--no-plot"]
    )
    assert code == 3
    assert "error:" in capsys.readouterr().err


def test_ergodic_subcommand(tmp_path):
    out = tmp_path / "ergodic.csv"
    code = cli.main(
        ["ergodic", "--n", "1", "--m", "1", "--draws", "5",
         "--snr-list", "0.05", "--out", str(out), "--no-plot"]
    )
    assert code == 0
    header, rows = read_csv(out)
    assert header == ["snr", "mc_estimate", "std_error", "second_order"]
    assert len(rows) == 1
    assert float(rows[0][2]) > 0.0
    want = ergodic_capacity_1bit(1, 1).evaluate(0.05) / LN2
    assert float(rows[0][3]) == pytest.approx(want, rel=1e-10)


def write_model(tmp_path, **overrides):
    model = {
        "C_h": [[1.0]],
        "c_h": [0.6**k for k in range(30)],
        "alpha": [1.0],
        "beta": 2.0,
    }
    model.update(overrides)
    path = tmp_path / "model.json"
    path.write_text(json.dumps(model))
    return path


def test_bound_summary_rows(tmp_path):
    path = write_model(tmp_path)
    out = tmp_path / "bound.csv"
    assert cli.main(["bound", "--model", str(path), "--out", str(out), "--no-plot"]) == 0
    header, rows = read_csv(out)
    assert header == ["quantity", "value"]
    table = {r[0]: float(r[1]) for r in rows}
    zeta_want = sum(0.36**k for k in range(1, 30))
    assert table["zeta"] == pytest.approx(zeta_want, rel=1e-9)
    assert table["chi"] == 0.0
    assert table["u_coeff"] == pytest.approx(2.0 * zeta_want, rel=1e-9)
    assert table["gamma_opt"] == 1.0
    assert table["oofsk_duty"] == 0.5


def test_bound_curve_rows(tmp_path):
    path = write_model(tmp_path)
    out = tmp_path / "bound.csv"
    code = cli.main(
        ["bound", "--model", str(path), "--snr-list", "0.1,1",
         "--out", str(out), "--units", "nats", "--no-plot"]
    )
    assert code == 0
    header, rows = read_csv(out)
    assert header == ["snr", "upper_bound", "iid_rate"]
    assert len(rows) == 2
    zeta_want = sum(0.36**k for k in range(1, 30))
    want = (2.0 * 0.1 / np.pi) ** 2 * 2.0 * zeta_want
    assert float(rows[0][1]) == pytest.approx(want, rel=1e-9)
    for row in rows:
        assert float(row[2]) <= float(row[1]) + 1e-12


def test_bound_missing_key_exit_code(tmp_path, capsys):
    model = {"C_h": [[1.0]], "c_h": [1.0]}
    path = tmp_path / "model.json"
    path.write_text(json.dumps(model))
    assert cli.main(["bound", "--model", str(path), "--out", str(tmp_path / "b.csv")]) == 2
    assert "error:" in capsys.readouterr().err


def test_verify_subcommand(capsys):
    assert cli.main(["verify", "--samples", "100000"]) == 0
    out = capsys.readouterr().out
    assert "6/6 checks passed" in out
    assert out.count("PASS") == 6


def test_format_value():
    assert format_value("label") == "label"
    assert format_value(7) == "7"
    assert format_value(np.int64(7)) == "7"
    assert format_value(1.5) == "1.5"
    assert format_value(1.0 / 3.0) == "0.333333333333"


def test_write_csv_layout(tmp_path):
    path = tmp_path / "t.csv"
    write_csv(str(path), ["a", "b"], [(1, 2.5), ("x", 0.1)])
    assert path.read_text() == "a,b\n1,2.5\nx,0.1\n"
