"""Acceptance suite: one test per verification criterion, each printing its
pass/fail line and asserting the criterion's stated requirements."""

import json

import pytest

from mvgb import checks


def _run(fn, idx):
    entry = fn()
    status = "PASS" if entry["pass"] else "FAIL"
    print("ACCEPTANCE %2d %s: %s (%.2f s)" % (idx, status, entry["name"],
                                              entry["seconds"]))
    if not entry["pass"]:
        print(json.dumps(entry["details"], indent=2, sort_keys=True,
                         default=str))
    return entry


def test_criterion_01_generic_initial_ideal():
    entry = _run(checks.criterion_1_generic_initial_ideal, 1)
    assert entry["pass"], entry["details"]


@pytest.mark.slow
def test_criterion_02_universal_basis():
    entry = _run(checks.criterion_2_universal_basis, 2)
    assert entry["pass"], entry["details"]


def test_criterion_03_hilbert_identities():
    entry = _run(checks.criterion_3_hilbert_identities, 3)
    assert entry["pass"], entry["details"]


def test_criterion_04_focal_dichotomy():
    entry = _run(checks.criterion_4_focal_dichotomy, 4)
    assert entry["pass"], entry["details"]


def test_criterion_05_prime_decomposition():
    entry = _run(checks.criterion_5_prime_decomposition, 5)
    assert entry["pass"], entry["details"]


def test_criterion_06_toric_three_cameras():
    entry = _run(checks.criterion_6_toric_three_cameras, 6)
    assert entry["pass"], entry["details"]


@pytest.mark.slow
def test_criterion_07_toric_four_cameras():
    entry = _run(checks.criterion_7_toric_four_cameras, 7)
    assert entry["pass"], entry["details"]


@pytest.mark.slow
def test_criterion_08_degeneration_chain():
    entry = _run(checks.criterion_8_degeneration_chain, 8)
    assert entry["pass"], entry["details"]


@pytest.mark.slow
def test_criterion_09_tangent_dimensions():
    entry = _run(checks.criterion_9_tangent_dimensions, 9)
    assert entry["pass"], entry["details"]


@pytest.mark.slow
def test_criterion_10_census():
    entry = _run(checks.criterion_10_census, 10)
    assert entry["pass"], entry["details"]


def test_criterion_11_fundamental_matrix():
    entry = _run(checks.criterion_11_fundamental_matrix, 11)
    assert entry["pass"], entry["details"]
