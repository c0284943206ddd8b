from fractions import Fraction

import pytest

import kchow

COLLINEAR = [(["1", "0", "0"], 1), (["0", "1", "0"], 1), (["1", "1", "0"], 1)]


def test_weights():
    assert kchow.mumford_weight(["1", "0", "0"], [1, 1, -2]) == 1
    assert kchow.mumford_weight(["0", "0", "1"], [1, 1, -2]) == -2
    assert kchow.chow_weight(2, COLLINEAR, [1, 1, -2]) == 3
    assert kchow.chow_weight(2, [(["1", "0", "0"], 4)], [2, -1, -1]) == 8


def test_classify():
    assert kchow.classify(2, COLLINEAR) == "unstable"
    general = [(["1", "0", "0"], 1), (["0", "1", "0"], 1), (["0", "0", "1"], 1)]
    assert kchow.classify(2, general) == "strictly_semistable"
    assert kchow.classify(2, general + [(["1", "1", "1"], 1)]) == "stable"


def test_hilbert():
    assert [kchow.fat_point_length(2, a) for a in (1, 2, 3)] == [1, 3, 6]
    assert kchow.h0_with_vanishing(2, [(["1", "0", "0"], 1)], 4, r=2) == 12
    assert kchow.futaki_from_coeffs(1, 3, 2, 1) == 5


def test_df_collinear_gamma_4():
    f = kchow.df_invariant(2, COLLINEAR, [1, 1, -2], 4)
    assert f == Fraction(-75, 26)
    assert kchow.df_invariant(2, [], [2, -1, -1], 4) == 0


def test_run_check_certificate():
    doc = {
        "ambient": {"projective": 2},
        "points": [{"coords": c, "mult": m} for c, m in COLLINEAR],
    }
    code, report = kchow.run("check", doc)
    assert code == 1
    cert = report["certificate"]
    assert cert["ratio"] == "3/2"
    assert cert["destabilizer"]["weights"] == [1, 1, -2]
    assert cert["destabilizer"]["chow_weight"] == "3"


def test_run_input_error():
    code, report = kchow.run("check", '{"ambient": {"projective": 2}, "points": [{"coords": ["1", "x", "0"]}]}')
    assert code == 2
    assert report["error"]["kind"] == "NonRationalCoordinate"
    with pytest.raises(kchow.InputError):
        kchow.chow_weight(2, [(["1", "0"], 1)], [1, 1, -2])


def test_balance():
    simplex = [([1, 0, 0], 1.0), ([0, 1, 0], 1.0), ([0, 0, 1], 1.0), ([1, 1, 1], 1.0)]
    assert kchow.balance_flow(2, simplex)["status"] == "converged"
    collinear = [([1, 0, 0], 1.0), ([0, 1, 0], 1.0), ([1, 1, 0], 1.0)]
    assert kchow.balance_flow(2, collinear)["status"] == "diverged"


def test_run_df_reports_alternating_trace():
    doc = {
        "ambient": {"projective": 2},
        "points": [{"coords": ["0", "0", "1"]}, {"coords": ["1", "0", "1"]}, {"coords": ["0", "1", "1"]}],
        "weights": [1, 1, 0],
    }
    code, out = kchow.run("df", doc, gamma=3)
    assert code == 0
    assert Fraction(out["F"]) > 0
    assert out["fit"]["alternating_trace"] == ["1/16"]
