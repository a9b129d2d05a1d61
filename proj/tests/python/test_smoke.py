import json
import math

import pytest

import pcurv


def test_graph_builders():
    p5 = pcurv.make_path(5)
    assert p5.vertex_count == 5
    assert p5.edge_count == 4
    assert p5.degree(2) == 2
    assert p5.labels()[0] == "v0"

    q3 = pcurv.make_hypercube(3)
    assert q3.vertex_count == 8
    assert all(q3.degree(v) == 3 for v in range(8))


def test_cartesian_product_degrees():
    prod = pcurv.cartesian_product(pcurv.make_star(3), pcurv.make_cycle(4))
    assert prod.vertex_count == 16
    hub_corner = prod.find("c|v0")
    assert prod.degree(hub_corner) == 3 + 2


def test_graph_json_round_trip():
    g = pcurv.make_cycle(4)
    text = pcurv.serialize_graph(g)
    back = pcurv.parse_graph(text)
    assert back.vertex_count == 4
    assert json.loads(text)["vertices"][0]["id"] == "v0"
    with pytest.raises(pcurv.ParseError):
        pcurv.parse_graph("{broken")


def test_operator_values():
    p3 = pcurv.make_path(3)
    f = {"v0": 1.0, "v1": 0.0, "v2": 1.0}
    assert pcurv.delta_p(p3, f, "v1", 2.0) == pytest.approx(2.0)
    assert pcurv.gamma_p(p3, f, "v1", 2.0) == pytest.approx(1.0)
    assert pcurv.gamma2_p(p3, f, "v1", 2.0) == pytest.approx(2.5)
    assert pcurv.gamma2_p(p3, f, "v1", 3.0) == pytest.approx(7.0 / 6.0)
    assert pcurv.cd_ratio(p3, f, "v1", 2.0, 2.0) == pytest.approx(0.5)
    with pytest.raises(pcurv.DegenerateFunctionError):
        pcurv.cd_ratio(p3, {"v0": 1.0, "v1": 1.0, "v2": 1.0}, "v1", 2.0, math.inf)


def test_closed_forms():
    assert pcurv.star_leaf_curvature(2, 2.0) == pytest.approx(1.5)
    assert pcurv.star_leaf_curvature(8, 3.0) == pytest.approx(-1.0 / 12.0)
    assert pcurv.path_leaf_curvature(3.0) == pytest.approx(5.0 / 12.0)
    assert pcurv.negativity_threshold(3.0) == 7.0
    argmin, value = pcurv.aux_g_min(3.0)
    assert (argmin, value) == (1.0, pytest.approx(-1.0 / 12.0))


def test_estimate_star_leaf():
    est = pcurv.estimate_curvature(pcurv.make_star(3), "z1", 2.0, math.inf, restarts=32)
    assert est["status"] == "converged"
    assert est["value"] == pytest.approx(1.0, abs=1e-3)
    assert est["witness"]["z1"] == 0.0
    assert len(est["best_per_restart"]) == 32


def test_subquadratic_divergence():
    est = pcurv.estimate_curvature(pcurv.make_path(3), "v1", 1.5, math.inf)
    assert est["status"] == "diverging_to_minus_infinity"
    assert est["evidence"]["ratio"] < -1e6


def test_brute_force_agreement():
    oracle = pcurv.brute_force_curvature(pcurv.make_path(3), "v0", 3.0, math.inf)
    assert oracle == pytest.approx(5.0 / 12.0, abs=5e-2)


def test_check_cd():
    verdict = pcurv.check_cd(pcurv.make_cycle(4), "v0", 1.5, math.inf, 0.0)
    assert verdict["falsified"]
    verdict = pcurv.check_cd(pcurv.make_path(5), "v2", 3.0, math.inf, 0.0)
    assert not verdict["falsified"]


def test_product_gap():
    k2 = pcurv.make_path(2)
    witness = pcurv.counterexample_function(k2, k2, "v0", "v0")
    gb = pcurv.gamma2_decomposition_gap(k2, k2, witness, "v0", "v0", 3.0)
    assert gb["gap"] == pytest.approx(-1.0 / 12.0)
    assert pcurv.verify_product_superadditivity_failure(k2, k2, "v0", "v0", 3.0)


def test_run_verify_quick():
    results = pcurv.run_verify("quick")
    assert len(results) >= 5
    assert all(r["passed"] for r in results)
