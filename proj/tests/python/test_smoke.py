import math

import pytest

import opim


def test_catalog():
    assert opim.catalog_names() == ["example1", "isothermal", "lane_emden_s1", "lane_emden_s5"]
    with pytest.raises(opim.UnknownProblem):
        opim.iterate("polytrope", [1.0])


def test_first_corrections_are_exact():
    assert opim.first_correction("example1") == "rational:[0,0,3,0,1/3]"
    assert opim.first_correction("isothermal") == "rational:[0,0,-1/2]"


def test_iterate_matches_closed_form():
    coeffs = opim.iterate("example1", [1.0, 1.0])
    for x in (0.25, 0.5, 0.75):
        x2 = x * x
        closed = 1 + (x2 * x2 / 3 + 3 * x2) + 2 * x2 / 630 * (15 * x2**3 + 294 * x2**2 + 805 * x2 - 3780)
        value = sum(c * x**i for i, c in enumerate(coeffs))
        assert abs(value - closed) < 1e-12
    assert opim.iterate_exact("example1", [1.0]) == "rational:[1,0,3,0,1/3]"


def test_collocation_fit():
    fit = opim.fit("example1", 3, points=[0.3, 0.6, 0.9], init=[0.3, 0.3, 0.2])
    assert fit["converged"]
    expected = [0.3342343984217452, 0.31859877627965916, 0.20764389922289617]
    assert all(abs(a - b) < 1e-6 for a, b in zip(fit["constants"], expected))
    assert fit["objective"] == pytest.approx(opim.objective("example1", fit["constants"]))
    with pytest.raises(opim.ConfigError):
        opim.fit("example1", 2, mode="gradient")


def test_least_squares_descends():
    ones = [1.0, 1.0]
    fit = opim.fit("isothermal", 2, mode="least_squares", init=ones)
    assert fit["objective"] <= opim.objective("isothermal", ones)


def test_residual_of_starting_guess():
    r = opim.residual("example1", [0.0])
    assert r == [-6.0, 0.0, -4.0]


def test_reference_integrator():
    xs = [0.1 * i for i in range(1, 11)]
    ys = opim.integrate("lane_emden_s1", 1.0, 1e-12, xs)
    assert max(abs(y - math.sin(x) / x) for x, y in zip(xs, ys)) < 1e-9
    assert opim.bootstrap_series("isothermal", 6)[2::2] == ["-1/6", "1/120", "-1/1890"]


def test_table1_shape():
    t = opim.table1()
    assert len(t["order4"]) == 10 and len(t["order5"]) == 10
    assert t["csv"].startswith("# table1")
    assert isinstance(t["pass"], bool)
