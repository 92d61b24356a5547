from __future__ import annotations

import json

import pytest
import sympy as sp

from irregular_tr.algebra.scalar import Scalar
from irregular_tr.curve import CurveError
from irregular_tr.fixtures import FIXTURES, curve_from_json, curve_to_json, fixture, load_curve
from irregular_tr.recursion import TopologicalRecursion

KINDS = {
    "airy": ["regular"],
    "bessel": ["irregular"],
    "legendre": ["irregular", "irregular"],
    "gauss": ["regular", "regular"],
    "des": ["regular", "irregular"],
    "gw-local": ["regular", "regular"],
}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_branch_kinds(name):
    curve = fixture(name).build()
    assert [curve.branch(a).kind for a in curve.labels] == KINDS[name]


@pytest.mark.parametrize("name", ["airy", "bessel", "legendre", "gauss", "des"])
def test_eta_two_ways(name):
    curve = fixture(name).build()
    for a in curve.labels:
        assert curve.eta(a) == curve.eta_residue(a)


def test_legendre_eta():
    curve = fixture("legendre").build()
    assert curve.eta(1) == Scalar(1) / 2
    assert curve.eta(2) == Scalar(-1) / 2


def _legendre_local_roots(order: int):
    """Branches of ``z^2 - x z + 1 = 0`` near ``z = 1`` and ``z = -1`` with ``x = +-2 + s^2/2``."""
    s = sp.symbols("s")
    z1 = sp.series((2 + s**2 / 2 + s * sp.sqrt(2) * sp.sqrt(1 + s**2 / 8)) / 2, s, 0, order).removeO()
    z2 = sp.series((-2 + s**2 / 2 - sp.I * s * sp.sqrt(2) * sp.sqrt(1 - s**2 / 8)) / 2, s, 0, order).removeO()
    return s, z1, z2


def test_bergman_against_symbolic_oracle():
    # independent oracle: the regular part of dz dz'/(z - z')^2 in the local coordinates, by sympy
    s, z1, z2 = _legendre_local_roots(6)
    t = sp.symbols("t")
    za, zb = z1, z2.subs(s, t)
    cross = sp.limit(sp.limit(sp.diff(za, s) * sp.diff(zb, t) / (za - zb) ** 2, t, 0), s, 0)
    zb_same = z1.subs(s, t)
    same = sp.limit(sp.limit(sp.diff(za, s) * sp.diff(zb_same, t) / (za - zb_same) ** 2 - 1 / (s - t) ** 2, t, 0), s, 0)
    assert sp.nsimplify(same) == sp.Rational(-1, 16)
    assert sp.nsimplify(cross) == -sp.I / 8
    curve = fixture("legendre").build()
    assert curve.bergman(1, 1, 2)[(0, 0)] == Scalar(-1) / 16
    assert curve.bergman(1, 2, 2)[(0, 0)] == Scalar.i() * Scalar(-1) / 8


def test_bergman_symmetry():
    curve = fixture("des").build()
    b12 = curve.bergman(1, 2, 4)
    b21 = curve.bergman(2, 1, 4)
    assert all(b12[(k, l)] == b21[(l, k)] for (k, l) in b12)


def test_json_round_trip_preserves_correlators(tmp_path):
    spec = fixture("legendre")
    path = tmp_path / "legendre.json"
    path.write_text(json.dumps(curve_to_json(spec)))
    loaded = load_curve(str(path))
    a = TopologicalRecursion(spec.build()).correlator(1, 2)
    b = TopologicalRecursion(loaded.build()).correlator(1, 2)
    assert a == b
    assert curve_from_json(curve_to_json(spec)).name == "legendre"


def test_unknown_fixture():
    with pytest.raises(CurveError):
        fixture("nope")


def test_malformed_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(CurveError):
        load_curve(str(path))
