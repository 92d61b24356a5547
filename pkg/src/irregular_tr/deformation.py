"""Correlators of deformed Airy and Bessel curves from the base tables.

On ``x = z^2/2`` with ``y = sum_k y_k z^k`` the correlators depend on the
higher coefficients through a finite sum of Airy or Bessel coefficients with
extra arguments, one per factor ``y_{alpha-2}/(y_min alpha)``.  The results
are returned in the local monomial basis ``dz/z^(d+1)`` (``d = 2k+1``) with
formal parameters, so they can be compared with the recursion run on a
curve whose coefficients are formal.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .algebra.params import ParamScalar
from .fixtures import deformation_top, deformed_local
from .recursion import Correlator, Key, TopologicalRecursion, bounded_multisets, multiplicity
from .tables import family_coefficient, homogeneous_weight


def _odd_multisets(size: int, total_max: int, lowest: int) -> Iterator[tuple[int, ...]]:
    """Sorted tuples of ``size`` odd integers ``>= lowest`` with sum at most ``total_max``."""

    def rec(start: int, size: int, left: int) -> Iterator[tuple[int, ...]]:
        if size == 0:
            yield ()
            return
        a = start
        while a * size <= left:
            for tail in rec(a, size - 1, left - a):
                yield (a,) + tail
            a += 2

    return rec(lowest, size, total_max)


def deformed_formula(family: str, g: int, n: int) -> Correlator:
    """The closed deformation formula for ``omega_{g,n}`` as a parametric table."""
    if family not in ("airy", "bessel"):
        raise ValueError(f"unknown family {family!r}")
    ymin_index = 1 if family == "airy" else -1
    lowest_alpha = 5 if family == "airy" else 3
    ymin = ParamScalar.var(ymin_index)
    prefactor = ParamScalar.var(ymin_index, 2 - 2 * g - n)
    out: dict[Key, ParamScalar] = {}
    m = 0
    while True:
        weight = homogeneous_weight(family, g, n + m)
        budget = weight - n  # every d_i is at least 1
        if m > 0 and budget < lowest_alpha * m:
            # each alpha consumes at least lowest_alpha and adds only 3 (airy) or 1 (bessel) to the weight
            break
        for alphas in _odd_multisets(m, budget, lowest_alpha):
            rest = weight - sum(alphas)
            factor = ParamScalar.coerce(Fraction((-1) ** m, multiplicity(tuple(alphas))))
            for a in alphas:
                factor = factor * ParamScalar.var(a - 2) * ymin.inverse() * Fraction(1, a)
            for ds in _odd_multisets(n, rest, 1):
                if sum(ds) != rest:
                    continue
                coeff = family_coefficient(family, g, ds + alphas)
                if coeff == 0:
                    continue
                key = tuple(sorted(((d - 1) // 2, 1) for d in ds))
                term = prefactor * factor * coeff
                prev = out.get(key)
                out[key] = term if prev is None else prev + term
        m += 1
    return Correlator(g, n, {k: v for k, v in out.items() if not v.is_zero()}, "xi")


def deformed_airy(g: int, n: int) -> Correlator:
    return deformed_formula("airy", g, n)


def deformed_bessel(g: int, n: int) -> Correlator:
    return deformed_formula("bessel", g, n)


@lru_cache(maxsize=None)
def deformed_engine(family: str, top: int) -> TopologicalRecursion:
    return TopologicalRecursion(deformed_local(family, top).build())


def deformed_recursion(family: str, g: int, n: int, top: int | None = None) -> Correlator:
    """Direct recursion on the deformed curve with formal coefficients."""
    top = deformation_top(family, g, n) if top is None else top
    return deformed_engine(family, top).correlator(g, n, "xi")


@lru_cache(maxsize=None)
def _deformed_correlator(family: str, top: int, g: int, n: int) -> Correlator:
    return deformed_engine(family, top).correlator(g, n, "xi")


def variational_check(family: str, g: int, n: int, k: int) -> dict:
    """Compare ``d omega_{g,n}/d y_k`` with ``Res_{z0=inf} z0^(k+2)/(k+2) omega_{g,n+1}``.

    In coefficients: ``d c_{g,n}(mu)/d y_k = -c_{g,n+1}(mu, k+2)/(k+2)``.
    """
    lowest = 1 if family == "airy" else -1
    if k < lowest:
        raise ValueError(f"y_{k} is not a coefficient of a deformed {family} curve")
    top = max(deformation_top(family, g, n + 1), k + (k - lowest) % 2)
    lower = _deformed_correlator(family, top, g, n)
    upper = _deformed_correlator(family, top, g, n + 1)
    keys = set(lower.nonzero())
    if (k + 2) % 2 == 1:
        extra = ((k + 2 - 1) // 2, 1)
        for key in upper.nonzero():
            if extra in key:
                rest = list(key)
                rest.remove(extra)
                keys.add(tuple(rest))
    mismatches = []
    for key in sorted(keys):
        lhs = lower[key].derivative(k) if key in lower.coeffs else ParamScalar()
        if (k + 2) % 2 == 1:
            full = tuple(sorted(key + (((k + 1) // 2, 1),)))
            rhs = ParamScalar.coerce(upper[full]) * Fraction(-1, k + 2)
        else:
            rhs = ParamScalar()
        if lhs != rhs:
            mismatches.append({"key": key, "lhs": str(lhs), "rhs": str(rhs)})
    return {"family": family, "g": g, "n": n, "k": k, "checked": len(keys), "ok": not mismatches, "mismatches": mismatches}
