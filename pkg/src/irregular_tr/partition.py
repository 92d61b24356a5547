"""Free energies, partition functions and the KdV check."""

from __future__ import annotations

from fractions import Fraction

from .algebra.polynomial import TimesPolynomial, Truncation
from .algebra.scalar import Scalar
from .recursion import Correlator, TopologicalRecursion, multiplicity


def stable_range(g_max: int, n_max: int) -> list[tuple[int, int]]:
    return [(g, n) for g in range(g_max + 1) for n in range(1, n_max + 1) if 2 * g - 2 + n > 0]


def correlator_term(corr: Correlator, namespace: str = "v", ring=Scalar) -> TimesPolynomial:
    """``hbar^(g-1) sum_{ordered} c prod v / n!`` = ``sum_{sorted} c / prod mult! prod v``."""
    terms = {}
    for key, value in corr.nonzero().items():
        terms[(corr.g - 1, key)] = value * Fraction(1, multiplicity(key))
    return TimesPolynomial(terms, ring, namespace)


def free_energy(
    engine: TopologicalRecursion, g_max: int, n_max: int, namespace: str = "v"
) -> TimesPolynomial:
    """``sum hbar^(g-1) omega_{g,n}|_{V -> v} / n!`` over the stable range within the bounds."""
    ring = engine.curve.ring
    total = TimesPolynomial({}, ring, namespace)
    for g, n in stable_range(g_max, n_max):
        total = total + correlator_term(engine.correlator(g, n), namespace, ring)
    return total


def partition_truncation(g_max: int, n_max: int) -> Truncation:
    """Truncation by ``2h + degree`` that keeps every term of the free energy."""
    return Truncation(max_degree=n_max, max_weight=2 * g_max - 2 + n_max)


def partition_function(engine: TopologicalRecursion, g_max: int, n_max: int, namespace: str = "v") -> TimesPolynomial:
    """``exp`` of the free energy, truncated at weight ``2 g_max - 2 + n_max`` and degree ``n_max``."""
    trunc = partition_truncation(g_max, n_max)
    return free_energy(engine, g_max, n_max, namespace).exp(trunc)


# ---------------------------------------------------------------------------
# KdV

T0 = (0, 1)
T1 = (1, 1)


def kdv_u(F: TimesPolynomial) -> TimesPolynomial:
    """``U = hbar d^2F/dt_0^2``."""
    return F.derivative(T0).derivative(T0).times_hbar(1)


def kdv_residual(F: TimesPolynomial, max_degree: int, max_genus: int) -> TimesPolynomial:
    """``U_{t1} - U U_{t0} - (hbar/12) U_{t0 t0 t0}`` up to degree ``max_degree`` and ``hbar^max_genus``.

    If ``F`` is complete through degree ``D`` and genus ``G`` the residual is
    exact through degree ``D - 5`` and ``hbar^G``; callers choose bounds accordingly.
    """
    U = kdv_u(F)
    ut0 = U.derivative(T0)
    trunc = Truncation(max_degree=max_degree, max_hbar=max_genus)
    res = U.derivative(T1) - U.mul(ut0, trunc) - ut0.derivative(T0).derivative(T0).times_hbar(1).scale(
        Scalar(1) / 12
    )
    return res.truncate(trunc)


def kdv_initial_condition(F: TimesPolynomial) -> TimesPolynomial:
    """``U(t_0, 0, 0, ...)``: the part of U depending on ``t_0`` alone."""
    U = kdv_u(F)
    return TimesPolynomial(
        {(h, vs): c for (h, vs), c in U.terms.items() if all(v == T0 for v in vs)}, U.ring, U.namespace
    )
