from __future__ import annotations

import pytest

from irregular_tr.algebra.scalar import Scalar
from irregular_tr.asymptotics import companion_check, leading_asymptotics_check
from irregular_tr.fixtures import FIXTURES, fixture
from irregular_tr.recursion import TopologicalRecursion


def test_legendre_genus_one():
    curve = fixture("legendre").build()
    corr = TopologicalRecursion(curve).correlator(1, 1, "xi")
    assert corr[[(0, 1)]] == Scalar.sqrt2() / 8
    assert leading_asymptotics_check(curve, 1, 1)["ok"]


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_every_branch(name):
    curve = fixture(name).build()
    engine = TopologicalRecursion(curve)
    for g, n in [(0, 3), (1, 1), (0, 4), (1, 2), (0, 5), (1, 3), (2, 1)]:
        report = leading_asymptotics_check(curve, g, n, engine)
        assert report["ok"], report


def test_airy_is_identity():
    report = leading_asymptotics_check(fixture("airy").build(), 1, 1)
    assert report["branches"][0]["sqrt_eta"] == "1"


@pytest.mark.parametrize("name", ["legendre", "gauss", "des"])
def test_trivial_kernel_companion(name):
    report = companion_check(fixture(name), 2, 3)
    assert report["r_identity"] and report["ok"]


def test_unstable():
    with pytest.raises(ValueError):
        leading_asymptotics_check(fixture("airy").build(), 0, 2)
