"""Coefficient tables of the Airy and Bessel curves.

``a_{g,n}(mu)`` and ``b_{g,n}(mu)`` are the coefficients of
``prod dz_i / z_i^(mu_i + 1)`` in ``omega_{g,n}`` of the curves
``x = z^2/2`` with ``y = z`` and ``y = 1/z``.  In the V-basis
``V_k = (2k+1)!! dz/z^(2k+2)`` this reads ``a(mu) = c^V prod (2k_i+1)!!``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .fixtures import airy, bessel
from .recursion import TopologicalRecursion

FAMILIES = ("airy", "bessel")


@lru_cache(maxsize=None)
def local_engine(family: str) -> TopologicalRecursion:
    """Shared recursion engine for the Airy or Bessel curve."""
    if family == "airy":
        return TopologicalRecursion(airy().build())
    if family == "bessel":
        return TopologicalRecursion(bessel().build())
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def homogeneous_weight(family: str, g: int, n: int) -> int:
    """The only value of ``sum mu_i`` with nonzero coefficients."""
    return 6 * g - 6 + 3 * n if family == "airy" else 2 * g - 2 + n


def family_coefficient(family: str, g: int, mus: Iterable[int]) -> Fraction:
    """``a_{g,n}(mu)`` or ``b_{g,n}(mu)``; zero for even entries or wrong total."""
    mus = tuple(mus)
    n = len(mus)
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"(g, n) = ({g}, {n}) is unstable")
    if any(m < 0 or m % 2 == 0 for m in mus):
        return Fraction(0)
    if sum(mus) > 6 * g - 6 + 3 * n:
        return Fraction(0)
    key = tuple(sorted(((m - 1) // 2, 1) for m in mus))
    value = local_engine(family).xi_correlator(g, n).get(key)
    return Fraction(0) if value is None else value.to_fraction()


@dataclass(frozen=True)
class CoeffTable:
    family: str
    entries: dict[tuple[int, tuple[int, ...]], Fraction]

    def __call__(self, g: int, *mus: int) -> Fraction:
        return self.entries.get((g, tuple(sorted(mus))), Fraction(0))

    def to_json(self) -> list[dict]:
        return [
            {"g": g, "mu": list(mu), "value": str(v)}
            for (g, mu), v in sorted(self.entries.items())
        ]


def coefficient_table(family: str, g_max: int, n_max: int) -> CoeffTable:
    """All nonzero ``a`` or ``b`` coefficients with ``g <= g_max``, ``1 <= n <= n_max``."""
    engine = local_engine(family)
    entries: dict[tuple[int, tuple[int, ...]], Fraction] = {}
    for g in range(g_max + 1):
        for n in range(1, n_max + 1):
            if 2 * g - 2 + n <= 0:
                continue
            for key, value in engine.xi_correlator(g, n).items():
                if value.is_zero():
                    continue
                mu = tuple(sorted(2 * k + 1 for k, _ in key))
                entries[(g, mu)] = value.to_fraction()
    return CoeffTable(family, entries)
