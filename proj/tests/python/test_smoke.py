import json
import math

import pytest

import ghkmirror


def test_presets_and_schema():
    assert ghkmirror.presets() == ["P2", "BlpP2", "dP5", "dP3"]
    schema = ghkmirror.config_schema()
    for key in ("preset", "lambda", "c", "L", "t", "out"):
        assert key in schema
    assert "verify" in ghkmirror.subcommands()


def test_parse_t():
    assert ghkmirror.parse_t("e-5") == pytest.approx(math.exp(-5))
    with pytest.raises(ghkmirror.ConfigError):
        ghkmirror.parse_t("2")


def test_bad_config_is_value_error():
    with pytest.raises(ValueError):
        ghkmirror.Pipeline(preset="nowhere")


def test_p2_superpotential_and_charge():
    p = ghkmirror.Pipeline(preset="P2")
    terms = sorted(p.superpotential())
    assert [e for e, _, _ in terms] == [(-1, -1), (0, 1), (1, 0)]
    assert all(c == "1" for _, c, _ in terms)
    assert p.charges_equal()
    t = math.exp(-8)
    g = 0.5772156649015329
    assert p.ztop(t).real == pytest.approx(288 - 72 * g + math.pi**2 / 4 + 4.5 * g * g, rel=1e-12)


def test_custom_omega():
    p = ghkmirror.Pipeline(preset="BlpP2", lambdas=["5/4", "3/2", "7/6"], c="1/3 ; ;")
    assert p.lambdas() == ["5/4", "3/2", "7/6"]


def test_blpp2_exact_w():
    p = ghkmirror.pipeline("BlpP2")
    assert sorted(p.superpotential()) == sorted(p.truncated_superpotential())
    eps_prime, eps = p.eps()
    assert eps_prime == "1/6" and eps == "1/12"


def test_polytope_report():
    data = ghkmirror.Pipeline(preset="BlpP2").report_data("polytope")
    assert data["xi_equals_xi_star"] is True
    assert len(data["Xi"]["facets"]) == 4


def test_real_locus_is_positive():
    z = ghkmirror.Pipeline(preset="P2").zb_real_locus(math.exp(-6))
    assert z.real > 0 and abs(z.imag) < 1e-12 * z.real


def test_verify_blpp2_difference_decreases():
    p = ghkmirror.Pipeline(preset="BlpP2", L="E11", t=["e-5", "e-7", "e-9"])
    v = p.verify()
    assert len(v["rows"]) == 3
    assert v["diff_decreasing"]
    assert float(json.loads(p.report("verify"))["rows"][0]["t"]) == pytest.approx(math.exp(-5))


def test_gamma_integrals():
    r = ghkmirror.gamma_integral_checks(math.exp(-10), 0.25)
    assert abs(r["residual1"]) < 2.87 and abs(r["residual2"]) < 2.87


def test_run_writes_charge(tmp_path):
    p = ghkmirror.Pipeline(preset="P2", out=str(tmp_path))
    status, _ = p.run("charge")
    assert status == 0
    assert (tmp_path / "charge.json").exists()
