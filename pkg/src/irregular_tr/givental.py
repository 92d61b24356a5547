"""R-matrix, quantized operators and the product decomposition of partition functions.

The partition function of a curve with D branch points is rebuilt from D
base factors (Kontsevich-Witten at regular, Brezin-Gross-Witten at irregular
points): each factor is translated and rescaled, then the quantized R-matrix
glues them.  ``assemble_decomposition`` compares the result with the
partition function computed directly from the recursion.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from .algebra.matrix import Matrix, MatrixSeries, mat_is_zero, mat_transpose
from .algebra.polynomial import Monomial, TimesPolynomial, Truncation, Var
from .curve import SpectralCurve
from .partition import correlator_term, free_energy
from .recursion import TopologicalRecursion
from .tables import local_engine


def double_factorial(n: int) -> int:
    """``n!!`` with ``(-1)!! = 1``."""
    return prod(range(n, 0, -2)) if n > 0 else 1


# ---------------------------------------------------------------------------
# R-matrix


@dataclass(frozen=True)
class RMatrix:
    dim: int
    R: MatrixSeries
    R_inverse: MatrixSeries
    r_log: tuple[Matrix, ...]  # r_log[l] multiplies z^l; r_log[0] = 0

    def to_json(self) -> dict:
        return {"R": self.R.to_json(), "R_inverse": self.R_inverse.to_json()}


def r_inverse_from_b(curve: SpectralCurve, order: int) -> MatrixSeries:
    """``[R^-1]^{ab} = delta - sum_m (2m-1)!! B^{ab}_{0,2m} z^(m+1)``, ``order`` coefficients."""
    labels = curve.labels
    d = curve.dim
    size = 2 * order
    tables = {(a, b): curve.bergman(a, b, size) for a in labels for b in labels}
    coeffs = []
    for p in range(order):
        if p == 0:
            coeffs.append(tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d)))
            continue
        m = p - 1
        coeffs.append(
            tuple(
                tuple(-tables[(a, b)].get((0, 2 * m), 0) * double_factorial(2 * m - 1) for b in labels)
                for a in labels
            )
        )
    return MatrixSeries(coeffs, order, d)


def r_log(R: MatrixSeries) -> tuple[Matrix, ...]:
    return R.log().coeffs


def r_matrix(curve: SpectralCurve, order: int) -> RMatrix:
    inv = r_inverse_from_b(curve, order)
    R = inv.inverse()
    return RMatrix(curve.dim, R, inv, r_log(R))


def symplectic_defect(R: MatrixSeries) -> MatrixSeries:
    """``R^T(-z) R(z) - Id``; vanishes for a genuine Givental R-matrix."""
    flipped = MatrixSeries(
        [mat_transpose(m) if p % 2 == 0 else tuple(tuple(-x for x in row) for row in mat_transpose(m))
         for p, m in enumerate(R.coeffs)],
        R.order,
        R.dim,
    )
    return flipped * R - MatrixSeries.identity(R.dim, R.order)


# ---------------------------------------------------------------------------
# Quantized R


class QuantizedR:
    """``exp(r^)`` acting on partition functions in the times ``v^{k,a}``.

    ``r^`` is the sum over ``m`` of
    ``sum v^{k,a} (r_m)_{ab} d/dv^{m+k,b}
    + (hbar/2) sum_{i<m} (-1)^(i+1) (r_m)_{ab} d^2/dv^{i,a} dv^{m-1-i,b}``.
    Each application lowers ``sum_vars (k+1)``, so the exponential series
    terminates on polynomials.
    """

    def __init__(self, rlog: tuple[Matrix, ...], labels: list[int]) -> None:
        self.labels = list(labels)
        self.pieces = [(m, r) for m, r in enumerate(rlog) if m >= 1 and not mat_is_zero(r)]
        self.max_m = max((m for m, _ in self.pieces), default=0)

    def is_identity(self) -> bool:
        return not self.pieces

    def _apply_once(self, terms: dict[Monomial, object]) -> dict[Monomial, object]:
        out: dict[Monomial, object] = {}

        def add(key: Monomial, value) -> None:
            if value.is_zero():
                return
            prev = out.get(key)
            out[key] = value if prev is None else prev + value

        idx = {a: i for i, a in enumerate(self.labels)}
        for (h, vs), c in terms.items():
            counts = Counter(vs)
            for m, r in self.pieces:
                # first-order part: v^{K,b} -> v^{K-m,a} (r_m)_{ab}
                for (K, b), mult in counts.items():
                    if K < m:
                        continue
                    rest = list(vs)
                    rest.remove((K, b))
                    for a in self.labels:
                        coef = r[idx[a]][idx[b]]
                        if coef.is_zero():
                            continue
                        new = tuple(sorted(rest + [(K - m, a)], key=_vkey))
                        add((h, new), c * coef * mult)
                # second-order part
                for i in range(m):
                    j = m - 1 - i
                    sign = Fraction((-1) ** (i + 1), 2)
                    for a in self.labels:
                        na = counts.get((i, a), 0)
                        if not na:
                            continue
                        for b in self.labels:
                            nb = counts.get((j, b), 0) - (1 if (j, b) == (i, a) else 0)
                            if nb <= 0:
                                continue
                            coef = r[idx[a]][idx[b]]
                            if coef.is_zero():
                                continue
                            rest = list(vs)
                            rest.remove((i, a))
                            rest.remove((j, b))
                            add((h + 1, tuple(rest)), c * coef * (sign * na * nb))
        return out

    def apply(self, Z: TimesPolynomial) -> TimesPolynomial:
        if self.is_identity():
            return Z
        total: dict[Monomial, object] = dict(Z.terms)
        current = dict(Z.terms)
        j = 0
        while current:
            j += 1
            current = self._apply_once(current)
            scale = Fraction(1, j)
            current = {k: v * scale for k, v in current.items()}
            for k, v in current.items():
                prev = total.get(k)
                total[k] = v if prev is None else prev + v
        return TimesPolynomial(total, Z.ring, Z.namespace)


def _vkey(var: Var):
    return (str(type(var[1]).__name__), var[1], var[0])


def quantize_r(rlog: tuple[Matrix, ...], labels: list[int]) -> QuantizedR:
    return QuantizedR(rlog, labels)


# ---------------------------------------------------------------------------
# Translation and rescaling


def base_family(curve: SpectralCurve, alpha: int) -> str:
    return "bessel" if curve.branch(alpha).kind == "irregular" else "airy"


def translation_constants(curve: SpectralCurve, alpha: int, kmax: int) -> dict[int, object]:
    """``c_k = (2k-1)!! y_{2k-1}/y_min`` for the shifted indices ``k <= kmax``.

    Shifted indices start at 1 at irregular and at 2 at regular points.
    """
    first = 1 if curve.branch(alpha).kind == "irregular" else 2
    ymin_inv = curve.y_min(alpha).inverse()
    out = {}
    for k in range(first, kmax + 1):
        c = curve.y_coefficient(alpha, 2 * k - 1) * ymin_inv * double_factorial(2 * k - 1)
        if not c.is_zero():
            out[k] = c
    return out


def max_dilatons(kind: str, g: int, n: int) -> int:
    """How many translated arguments can feed a genus ``g`` term of degree ``n``."""
    return g - 1 if kind == "irregular" else 3 * g - 3 + n


def translated_factor(curve: SpectralCurve, alpha: int, weight: int) -> TimesPolynomial:
    """Base free energy at ``alpha`` after translation then rescaling, up to the given weight.

    Concretely ``F(hbar/y^2, v/y - c)`` with ``y = y_min(alpha)``, relabelled
    to branch ``alpha``; constant terms are dropped.
    """
    kind = curve.branch(alpha).kind
    family = base_family(curve, alpha)
    engine = local_engine(family)
    ring = curve.ring
    trunc = Truncation(max_weight=weight)
    ymin = curve.y_min(alpha)
    yinv = ymin.inverse()
    result = TimesPolynomial({}, ring)
    g = 0
    while 2 * g - 1 <= weight:
        top_n = weight + 2 - 2 * g
        base_n = max(n + max_dilatons(kind, g, n) for n in range(1, top_n + 1))
        kmax = max(3 * g - 3 + base_n, 0)
        shifts = translation_constants(curve, alpha, kmax)
        base = TimesPolynomial({}, ring)
        for n in range(1, base_n + 1):
            if 2 * g - 2 + n <= 0:
                continue
            corr = engine.correlator(g, n)
            term = correlator_term(corr, "v", ring)
            base = base + term
        base = base.relabel(lambda v: (v[0], alpha))
        images = {
            (k, alpha): TimesPolynomial({(0, ((k, alpha),)): 1, (0, ()): -c * ymin}, ring)
            for k, c in shifts.items()
        }
        # rescaling first turns the image v - y c into v/y - c
        scaled = base.rescale(yinv * yinv, lambda v: yinv)
        shifted = scaled.substitute(images, trunc) if images else scaled.truncate(trunc)
        result = result + TimesPolynomial(
            {(h, vs): c for (h, vs), c in shifted.terms.items() if vs}, ring
        )
        g += 1
    return result.truncate(trunc)


def delta_scaling(curve: SpectralCurve, alpha: int) -> tuple[object, object]:
    """``(hbar factor, time factor)`` of the rescaling at ``alpha``: ``(y^-2, y^-1)``."""
    yinv = curve.y_min(alpha).inverse()
    return yinv * yinv, yinv


# ---------------------------------------------------------------------------
# End-to-end comparison


@dataclass
class DecompositionReport:
    curve: str
    g_max: int
    n_max: int
    weight: int
    compared: int
    mismatches: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "curve": self.curve,
            "g_max": self.g_max,
            "n_max": self.n_max,
            "weight": self.weight,
            "compared": self.compared,
            "ok": self.ok,
            "mismatches": self.mismatches,
        }


def decomposition_free_energy(curve: SpectralCurve, weight: int) -> TimesPolynomial:
    """``log(R^ prod_a exp(translated factor a))`` through the given weight."""
    trunc = Truncation(max_weight=weight)
    F = TimesPolynomial({}, curve.ring)
    for alpha in curve.labels:
        F = F + translated_factor(curve, alpha, weight)
    Z = F.exp(trunc)
    kmax = max((v[0] for v in Z.variables()), default=0)
    rm = r_matrix(curve, kmax + 2)
    # the operator that glues the factors is the quantization of log(R^-1) = -log(R)
    Z = quantize_r(r_log(rm.R_inverse), curve.labels).apply(Z).truncate(trunc)
    return Z.log(trunc)


def assemble_decomposition(curve: SpectralCurve, g_max: int, n_max: int, name: str = "") -> DecompositionReport:
    """Compare the decomposition with the recursion's free energy for ``g <= g_max``, ``1 <= n <= n_max``."""
    weight = 2 * g_max - 2 + n_max
    pipeline = decomposition_free_energy(curve, weight)
    direct = free_energy(TopologicalRecursion(curve), g_max, n_max)

    def in_range(mono: Monomial) -> bool:
        h, vs = mono
        return 1 <= len(vs) <= n_max and h + 1 <= g_max

    keys = {m for m in pipeline.terms if in_range(m)} | {m for m in direct.terms if in_range(m)}
    zero = curve.ring.coerce(0)
    mismatches = []
    for mono in sorted(keys, key=lambda m: (m[0], len(m[1]), [(_vkey(v)) for v in m[1]])):
        a = pipeline.terms.get(mono, zero)
        b = direct.terms.get(mono, zero)
        if a != b:
            mismatches.append(
                {"hbar": mono[0], "vars": [list(v) for v in mono[1]], "pipeline": str(a), "direct": str(b)}
            )
    return DecompositionReport(name or "curve", g_max, n_max, weight, len(keys), mismatches)
