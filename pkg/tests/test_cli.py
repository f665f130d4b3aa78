import json

import pytest

from deltastar import delta_dist
from deltastar.cli import main
from deltastar.expr_io import decode
from deltastar.schrodinger import InteractingSA, PseudoPotential, classify


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def run_json(capsys, *argv):
    rc, out, err = run(capsys, *argv, "--format", "json")
    assert rc == 0, err
    return json.loads(out)


def cell(value):
    return complex(value.replace("i", "j"))


def test_product_text(capsys):
    rc, out, err = run(capsys, "product", "delta(0)*heaviside(0)")
    assert rc == 0
    assert out == "delta(0)\n"


def test_product_json_record_decodes(capsys):
    payload = run_json(capsys, "product", "D(heaviside(0))")
    assert payload["status"] == "ok"
    assert payload["result"] == "delta(0)"
    assert decode(payload["record"]) == delta_dist(0, 0)


def test_product_parse_error_exits_2(capsys):
    rc, out, err = run(capsys, "product", "delta(")
    assert rc == 2
    assert "offset" in err and out == ""


def test_product_regularity_cap_exits_2(capsys):
    rc, out, err = run(capsys, "product", "delta^2(0)", "--n-cap", "1")
    assert rc == 2


def test_classify_delta_well(capsys):
    payload = run_json(capsys, "classify", "--c1", "-1", "--c2", "-1")
    assert payload["kind"] == "interacting"
    assert payload["jump"] == "-2"
    assert decode(payload["classification"]) == InteractingSA(0, 0, -1)


def test_classify_theta_family(capsys):
    payload = run_json(capsys, "classify", "--b1", "1/3", "--b2", "1/3")
    assert payload["kind"] == "interacting"
    assert payload["theta"] == "2"


def test_classify_not_self_adjoint(capsys):
    payload = run_json(capsys, "classify", "--c1", "1i")
    assert payload["kind"] == "not-self-adjoint"


def test_classify_bad_scalar_exits_2(capsys):
    rc, out, err = run(capsys, "classify", "--c1", "abc")
    assert rc == 2


def test_represent_interacting_round_trip(capsys):
    payload = run_json(capsys, "represent", "--interacting", "0,1/2,-3/2")
    assert payload["family"] == "conjugate-pair"
    spec = decode(payload["specs"][0])
    assert classify(spec) == InteractingSA(0, "1/2", "-3/2")


def test_represent_opposite_sign_with_override(capsys):
    payload = run_json(
        capsys, "represent", "--interacting", "0,0,2", "--b1", "1/3"
    )
    assert payload["family"] == "opposite-sign"
    spec = decode(payload["specs"][0])
    assert classify(spec) == InteractingSA(0, 0, 2)


def test_represent_pseudo_only(capsys):
    payload = run_json(capsys, "represent", "--interacting", "0,1i,1")
    assert payload["family"] == "pseudo-only"
    assert isinstance(decode(payload["specs"][0]), PseudoPotential)
    assert payload["notes"]


def test_represent_degenerate_exits_3(capsys):
    rc, out, err = run(capsys, "represent", "--interacting", "0,1,5")
    assert rc == 3
    assert "error" in err


def test_represent_separating_overrides(capsys):
    payload = run_json(
        capsys, "represent", "--separating", "0,1,0,1", "--c1", "3", "--c2", "4"
    )
    assert payload["family"] == "separating"
    assert payload["params"]["free"] == "c1,c2"


def test_represent_from_bc_neumann(capsys):
    payload = run_json(capsys, "represent", "--bc", "0,0,1,0;0,0,0,1")
    assert payload["family"] == "from-bc"
    assert any("not representable" in n for n in payload["notes"])
    assert isinstance(decode(payload["specs"][0]), PseudoPotential)


def test_represent_from_bc_recognizes_jump(capsys):
    payload = run_json(capsys, "represent", "--bc", "1,-1,0,0;2,0,1,-1")
    # continuity with psi'(0+) - psi'(0-) = 2 psi(0)
    assert any("jump 2" in n for n in payload["notes"])
    assert len(payload["specs"]) == 2


def test_represent_bc_rank_check_exits_3(capsys):
    rc, out, err = run(capsys, "represent", "--bc", "1,0,0,0;2,0,0,0")
    assert rc == 3


def test_scatter_table(capsys):
    payload = run_json(capsys, "scatter", "--delta", "-2", "--k", "1,2")
    assert payload["columns"][0] == "k"
    assert len(payload["rows"]) == 2
    row = payload["rows"][0]
    t = cell(row[2])
    assert abs(t - 2j / (2j + 2)) < 1e-12
    assert abs(float(row[5]) + float(row[6]) - 1.0) < 1e-12
    assert row[7] == "0"


def test_scatter_singular_row(capsys):
    payload = run_json(capsys, "scatter", "--bc", "1,0,0,0;0,0,1,0")
    assert payload["rows"][0][7] == "1"
    assert payload["rows"][0][1] == "nan"


def test_spectrum_bound_state(capsys):
    payload = run_json(capsys, "spectrum", "--delta", "-2")
    rows = payload["rows"]
    assert rows and rows[0][0] == "bound"
    assert abs(float(rows[0][2]) + 1.0) < 1e-9


def test_spectrum_with_grid(capsys):
    payload = run_json(
        capsys, "spectrum", "--delta", "-2", "--grid", "0.2,10,400"
    )
    sources = {r[0] for r in payload["rows"]}
    assert sources == {"bound", "grid"}
    grid_e = [float(r[2]) for r in payload["rows"] if r[0] == "grid"]
    assert grid_e[0] < 0


def test_spectrum_grid_needs_strength(capsys):
    rc, out, err = run(capsys, "spectrum", "--bc", "0,1,0,0;1,0,0,0",
                       "--grid", "0.1,10,100")
    assert rc == 3


def test_weaklimit_table(capsys):
    payload = run_json(
        capsys, "weaklimit", "--dist", "heaviside(0)", "--eps", "0.1,0.05"
    )
    assert payload["columns"] == ["eps", "value", "exact", "abs_error"]
    assert len(payload["rows"]) == 2
    for row in payload["rows"]:
        assert float(row[3]) < 1e-8
    assert float(payload["rows"][0][2]) == 1.0


def test_weaklimit_rejects_delta_dist(capsys):
    rc, out, err = run(capsys, "weaklimit", "--dist", "delta(0)")
    assert rc == 3
