import pytest

from glk.checks import (
    check_brauer_pairing,
    check_dl_round_trip,
    check_kernel_quartic,
    check_molien,
    check_series_algebra_map,
    check_structure_constants,
    check_t_spectrum,
    default_suite,
    resolve_budget,
    run_suite,
)
from glk.errors import BudgetError
from glk.ffpoly import FpPoly

ROW_KEYS = {"check", "parameters", "formula_value", "oracle_value", "equal"}


def test_default_suite_all_equal():
    rows = default_suite()
    assert len(rows) == 40
    for row in rows:
        assert set(row) == ROW_KEYS
        assert isinstance(row["check"], str)
        assert isinstance(row["parameters"], dict)
        assert isinstance(row["formula_value"], str)
        assert isinstance(row["oracle_value"], str)
        assert row["equal"] is True
        assert row["formula_value"] == row["oracle_value"]


def test_structure_constant_row_readable():
    row = check_structure_constants(2, 1, 1)
    assert row["equal"]
    # the classic value surfaces verbatim in the report
    assert "11*11=6*pi[101]" in row["formula_value"]


def test_t_spectrum_row():
    row = check_t_spectrum(2, 3)
    assert row["equal"]
    assert row["formula_value"] == "i=0=4;i=1=2;i=2=1;i=3=1"


def test_dl_round_trip_row():
    row = check_dl_round_trip(3, 2)
    assert row["equal"]
    assert "identity" in row["formula_value"]


def test_molien_row_digested():
    row = check_molien(2, 3, 16)
    assert row["equal"]
    # seven characters times 17 coefficients is too long to show verbatim
    assert row["formula_value"].startswith("sha256:")


def test_quartic_row_shows_relation():
    row = check_kernel_quartic(order=16)
    assert row["equal"]
    assert "relation=-5,1,3,1" in row["formula_value"]


def test_pairing_accepts_any_basis_poly():
    row = check_brauer_pairing(2, FpPoly.from_digits(2, "1001"), 6)
    assert row["equal"]
    assert row["parameters"]["N"] == 2  # (x+1)(x^2+x+1) needs lcm(1,2)


def test_series_algebra_map_mixed_degrees():
    row = check_series_algebra_map(2, 2, 2, 10)
    assert row["equal"]
    assert row["parameters"] == {"p": 2, "deg_a": 2, "deg_b": 2, "order": 10}


def test_budget_refusal_propagates():
    # GL_2(F_5) has order 480 and is built by no other test, so the table
    # cache cannot satisfy this call
    with pytest.raises(BudgetError):
        check_structure_constants(5, 1, 1, budget=10)


def test_resolve_budget(monkeypatch):
    monkeypatch.delenv("GLK_ORACLE_BUDGET", raising=False)
    assert resolve_budget() is None
    assert resolve_budget(77) == 77
    monkeypatch.setenv("GLK_ORACLE_BUDGET", "123")
    assert resolve_budget() == 123
    assert resolve_budget(77) == 77


def test_run_suite_rejects_unknown_name():
    with pytest.raises(ValueError):
        run_suite("nightly")
