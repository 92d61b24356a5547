"""Genus-zero spectral curves: branch points, local coordinates, expansions.

A curve is given by a rational function ``x(z)`` on the Riemann sphere, a
function ``y`` (rational, or a local series at each branch point), and the
Cauchy kernel ``B = dz dz'/(z - z')^2``.  A *trivial-kernel* curve instead
uses ``ds ds'/(s - s')^2`` in the local coordinate of each branch point and
no coupling between different branch points.

Conventions used throughout:

* the local coordinate ``s`` at a branch point satisfies
  ``x(z(s)) = x(P) + s^2/2`` and ``z - z_P ~ s/eps`` with ``eps^2 = x''(z_P)``;
  ``eps`` is the principal square root times a per-branch sign;
* the auxiliary differentials obey ``V_{k+1} = -d(V_k/dx)`` so that the
  principal part of ``V_k`` at its own branch point is ``(2k+1)!! ds/s^(2k+2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from .algebra.rational import Poly, RationalFunction
from .algebra.scalar import ONE, ZERO, Scalar, double_factorial
from .algebra.series import LaurentSeries, TruncationError


class CurveError(ValueError):
    """The curve data violate an assumption of the recursion."""


# ---------------------------------------------------------------------------
# exact root finding over Q(zeta_8)

def _scalar_to_sympy(a: Scalar):
    import sympy

    s2, i = sympy.sqrt(2), sympy.I
    zeta = (s2 + i * s2) / 2
    c0, c1, c2, c3 = (sympy.Rational(c.numerator, c.denominator) for c in a.coords)
    return sympy.expand(c0 + c1 * zeta + c2 * zeta**2 + c3 * zeta**3)


def _sympy_to_scalar(expr) -> Scalar:
    import sympy

    expr = sympy.expand(sympy.radsimp(sympy.expand(expr)))
    s2, i = sympy.sqrt(2), sympy.I
    a = b = c = d = Fraction(0)
    for key, coeff in expr.as_coefficients_dict().items():
        if not coeff.is_Rational:
            raise CurveError(f"coefficient {expr} is not representable in Q(zeta_8)")
        q = Fraction(int(coeff.p), int(coeff.q))
        if key == 1:
            a += q
        elif key == s2:
            b += q
        elif key == i:
            c += q
        elif key == s2 * i:
            d += q
        else:
            raise CurveError(f"{expr} is not representable in Q(zeta_8)")
    # sqrt(2) = z - z^3, i = z^2, i*sqrt(2) = z + z^3
    return Scalar(a, b + d, c, d - b)


def field_roots(p: Poly) -> list[tuple[Scalar, int]]:
    """All roots of ``p`` with multiplicities; every root must lie in Q(zeta_8)."""
    import sympy

    if p.degree < 1:
        return []
    z = sympy.Symbol("z")
    expr = sum(_scalar_to_sympy(c) * z**k for k, c in enumerate(p.c))
    _, factors = sympy.factor_list(sympy.expand(expr), z, extension=[sympy.sqrt(2), sympy.I])
    roots: list[tuple[Scalar, int]] = []
    for fac, mult in factors:
        fp = sympy.Poly(fac, z)
        if fp.degree() == 0:
            continue
        if fp.degree() > 1:
            raise CurveError(f"zero of dx not representable in Q(zeta_8): factor {fac}")
        c1, c0 = fp.all_coeffs()
        roots.append((_sympy_to_scalar(-c0 / c1), mult))
    # independent check: each root really annihilates p
    for r, _ in roots:
        if not p(r).is_zero():
            raise CurveError("root conversion failed")
    return sorted(roots, key=lambda rm: tuple(-c for c in rm[0].coords))


# ---------------------------------------------------------------------------
# curve specification

LocalYFunction = Callable[["SpectralCurve", int, int], LaurentSeries]


@dataclass(frozen=True)
class LocalY:
    """``y`` given near each branch point as a series in the local coordinate.

    ``series`` maps branch label to an exact finite series (missing terms are
    zero); ``generator`` instead produces the expansion to a requested order.
    """

    series: Mapping[int, LaurentSeries] | None = None
    generator: LocalYFunction | None = None

    def expansion(self, curve: "SpectralCurve", alpha: int, order: int) -> LaurentSeries:
        if self.generator is not None:
            return self.generator(curve, alpha, order)
        assert self.series is not None
        given = self.series[alpha]
        terms = given.terms()
        return LaurentSeries.from_dict(terms, order, var="s", ring=given.ring)


@dataclass(frozen=True)
class CurveSpec:
    name: str
    x: RationalFunction
    y: RationalFunction | LocalY
    signs: Mapping[int, int] = field(default_factory=dict)
    kernel: str = "cauchy"  # or "trivial"
    y_leading_only: bool = False

    def companion(self) -> CurveSpec:
        """The trivial-kernel curve keeping only the leading local behaviour of y."""
        return CurveSpec(self.name + "-S0", self.x, self.y, dict(self.signs), "trivial", True)

    def build(self) -> SpectralCurve:
        return SpectralCurve(self)


@dataclass(frozen=True)
class BranchPoint:
    label: int
    z: Scalar
    x_value: Scalar
    eps: Scalar
    kind: str  # "regular" or "irregular"


class SpectralCurve:
    """Built curve with cached local data; immutable after construction."""

    def __init__(self, spec: CurveSpec) -> None:
        self.spec = spec
        self.name = spec.name
        self.x = spec.x
        if self.x.num.degree <= 0 and self.x.den.degree <= 0:
            raise CurveError("x must be nonconstant")
        self.dx = self.x.derivative()
        roots = field_roots(self.dx.num)
        for r, mult in roots:
            if mult > 1:
                raise CurveError(f"zero of dx at z = {r} is not simple (multiplicity {mult})")
        if not roots:
            raise CurveError("dx has no finite zeros")
        branches = []
        self._cache: dict = {}
        for idx, (r, _) in enumerate(roots, start=1):
            second = self.dx.derivative()(r)
            sign = spec.signs.get(idx, 1)
            try:
                eps = second.sqrt(sign)
            except ValueError as exc:
                raise CurveError(f"x''({r}) = {second} has no square root in Q(zeta_8)") from exc
            branches.append(BranchPoint(idx, r, self.x(r), eps, "regular"))
        self.branches = branches
        # classify from y
        classified = []
        for b in branches:
            y = self._y_raw(b.label, 4)
            if y.is_zero():
                raise CurveError(f"y vanishes identically near branch {b.label}")
            if y.low < -1:
                raise CurveError(f"y has a pole of order {-y.low} >= 2 at branch {b.label}")
            if y.low == -1:
                kind = "irregular"
            else:
                if y.coeff(1).is_zero():
                    raise CurveError(f"dy vanishes at the regular branch point {b.label}")
                kind = "regular"
            classified.append(BranchPoint(b.label, b.z, b.x_value, b.eps, kind))
        self.branches = classified

    # -- basic accessors ----------------------------------------------
    @property
    def labels(self) -> list[int]:
        return [b.label for b in self.branches]

    @property
    def dim(self) -> int:
        return len(self.branches)

    def branch(self, alpha: int) -> BranchPoint:
        return self.branches[alpha - 1]

    @property
    def trivial_kernel(self) -> bool:
        return self.spec.kernel == "trivial"

    @property
    def ring(self):
        y = self.y_local(self.labels[0], 2)
        return y.ring

    # -- local coordinate ---------------------------------------------
    def local_coordinate(self, alpha: int, order: int) -> LaurentSeries:
        """``z(s)`` known below ``s^order``."""
        b = self.branch(alpha)
        return self.local_offset(alpha, order) + b.z

    def local_offset(self, alpha: int, order: int) -> LaurentSeries:
        """``w(s) = z(s) - z_alpha`` known below ``s^order`` (order >= 2)."""
        have = self._cache.get(("w", alpha))
        if have is not None and have.order >= order:
            return have.truncate(order)
        order = max(order, have.order + 8 if have is not None else 12)
        b = self.branch(alpha)
        n = max(order, 2)
        w = LaurentSeries([1], low=1, order=n + 2, var="w")
        xw = self.x.expand_at(b.z, w) - b.x_value  # known below w^(n+2)
        c2 = xw.coeff(2)
        h = xw.shift(-2).scale(c2.inverse())  # 1 + O(w), known below w^n
        s_of_w = h.sqrt().shift(1).scale(b.eps)  # known below w^(n+1)
        w_of_s = s_of_w.reverse()
        result = LaurentSeries(w_of_s.coeffs, w_of_s.low, w_of_s.order, var="s").truncate(order)
        self._cache[("w", alpha)] = result
        return result

    # -- y --------------------------------------------------------------
    def _y_raw(self, alpha: int, order: int) -> LaurentSeries:
        y = self.spec.y
        if isinstance(y, RationalFunction):
            w = self.local_offset(alpha, order + 2)
            return y.expand_at(self.branch(alpha).z, w).truncate(order)
        return y.expansion(self, alpha, order)

    def y_local(self, alpha: int, order: int) -> LaurentSeries:
        """Expansion of y in the local coordinate, known below ``s^order``.

        Only odd coefficients (and ``y_{-1}``) are used downstream; the
        constant term is dropped.
        """
        key = ("y", alpha, order)
        if key in self._cache:
            return self._cache[key]
        y = self._y_raw(alpha, order)
        terms = {e: c for e, c in y.terms().items() if e != 0}
        if self.spec.y_leading_only:
            lead = min(e for e in terms if e % 2)
            terms = {lead: terms[lead]}
        out = LaurentSeries.from_dict(terms, order, var="s", ring=y.ring)
        self._cache[key] = out
        return out

    def y_coefficient(self, alpha: int, k: int):
        return self.y_local(alpha, max(k + 2, 3)).coeff(k)

    def y_min(self, alpha: int):
        """``y_{-1}`` at irregular and ``y_1`` at regular branch points."""
        b = self.branch(alpha)
        return self.y_coefficient(alpha, -1 if b.kind == "irregular" else 1)

    def eta(self, alpha: int):
        """eta from the local coefficients: ``y_1^2`` or ``y_{-1}^2``."""
        m = self.y_min(alpha)
        return m * m

    def eta_residue(self, alpha: int) -> Scalar:
        """eta as a residue in the global coordinate z (rational y only)."""
        y = self.spec.y
        if not isinstance(y, RationalFunction):
            raise CurveError("residue form of eta needs a rational y")
        b = self.branch(alpha)
        w = LaurentSeries([1], low=1, order=8, var="w")
        if b.kind == "regular":
            dy = y.derivative().expand_at(b.z, w)
            dxs = self.dx.expand_at(b.z, w)
            return (dy * dy * dxs.inverse()).residue()
        ys = y.expand_at(b.z, w)
        return (ys * ys * self.dx.expand_at(b.z, w)).residue()

    # -- Bergman kernel -------------------------------------------------
    def bergman(self, alpha: int, beta: int, size: int) -> dict[tuple[int, int], Scalar]:
        """``B^{alpha,beta}_{m,m'}`` for ``m, m' < size``.

        Coefficients of ``B(z(s), z(t)) - delta ds dt/(s-t)^2`` in ``s^m t^m' ds dt``
        with ``s`` at ``alpha`` and ``t`` at ``beta``.
        """
        if self.trivial_kernel:
            return {(m, mp): ZERO for m in range(size) for mp in range(size)}
        key = ("B", alpha, beta)
        requested = size
        have = self._cache.get(key)
        if have is not None and have[0] >= size:
            return {k: v for k, v in have[1].items() if k[0] < size and k[1] < size}
        size = max(size, have[0] + 4 if have is not None else 8)
        table = self._bergman_from_column(alpha, beta, size)
        self._cache[key] = (size, table)
        return {k: v for k, v in table.items() if k[0] < requested and k[1] < requested}

    def column_differential(self, alpha: int, m: int) -> list[tuple[Scalar, int]]:
        """``b^alpha_m(p) = [s^m] B(z(s), p)/ds`` as ``sum c_a dp/(z_alpha - p)^(a+2)``.

        Returned as a list of ``(c_a, a)`` pairs.
        """
        return self._column_coefficients(alpha, m + 1)[m]

    def _column_coefficients(self, alpha: int, size: int) -> list[list[tuple[Scalar, int]]]:
        have = self._cache.get(("cols", alpha))
        if have is not None and len(have) >= size:
            return have
        size = max(size, len(have) + 4 if have is not None else 8)
        u = self.local_offset(alpha, size + 2)
        du = u.derivative()
        # [s^m](u^a u') for all a <= m < size
        prods = []
        power = LaurentSeries([1], 0, u.order, var="s")
        for a in range(size):
            prods.append(power * du)
            power = power * u
        cols = []
        for m in range(size):
            col = []
            for a in range(m + 1):
                c = prods[a].coeff(m) * ((a + 1) * (-1) ** a)
                if not c.is_zero():
                    col.append((c, a))
            cols.append(col)
        self._cache[("cols", alpha)] = cols
        return cols

    def _bergman_from_column(self, alpha: int, beta: int, size: int) -> dict[tuple[int, int], Scalar]:
        # s at alpha carries the column index m; expand each b^alpha_m at beta in t.
        za = self.branch(alpha).z
        zb = self.branch(beta).z
        same = alpha == beta
        t_order = 2 * size + 4 if same else size + 2
        wb = self.local_offset(beta, t_order)
        dwb = wb.derivative()
        # basis series P_a(t) = dt-coefficient of dp/(z_alpha - p)^(a+2) at p = z_beta + w_beta(t)
        base = (wb - (za - zb)).inverse() if not same else wb.inverse()
        sign = -1  # 1/(z_alpha - p) = -1/(p - z_alpha)
        basis = []
        power = base.scale(sign) * base.scale(sign)
        for a in range(size):
            basis.append((power * dwb))
            power = power * base.scale(sign)
        table: dict[tuple[int, int], Scalar] = {}
        for m in range(size):
            col = self.column_differential(alpha, m)
            total = None
            for c, a in col:
                term = basis[a].scale(c)
                total = term if total is None else total + term
            if same:
                singular = LaurentSeries([m + 1], -m - 2, total.order, var="s")
                total = total - singular
                if total.low < 0:
                    raise CurveError("Bergman kernel expansion has an unexpected singular part")
            for mp in range(size):
                table[(m, mp)] = total.coeff(mp)
        return table

    # -- auxiliary differentials ----------------------------------------
    def v_rational(self, alpha: int, k: int) -> RationalFunction:
        """``V^alpha_k = f(p) dp`` as the rational function ``f``."""
        if self.trivial_kernel:
            raise CurveError("auxiliary differentials of a trivial-kernel curve are local only")
        key = ("V", alpha, k)
        if key in self._cache:
            return self._cache[key]
        if k == 0:
            b = self.branch(alpha)
            p = Poly([-b.z, 1])
            f = RationalFunction(Poly([b.eps.inverse()]), p * p)
        else:
            prev = self.v_rational(alpha, k - 1)
            f = -(prev / self.dx).derivative()
        self._cache[key] = f
        return f

    def expand_differential(self, f: RationalFunction, alpha: int, order: int) -> LaurentSeries:
        """``f(z(s)) z'(s)``: the ds-coefficient of ``f dz`` near branch ``alpha``."""
        b = self.branch(alpha)
        pole = _pole_order(f, b.z)
        w = self.local_offset(alpha, order + pole + 2)
        return (f.expand_at(b.z, w) * w.derivative()).truncate(order)

    def evaluate_at_branch(self, f: RationalFunction, alpha: int):
        """``Res_{p=P} f dz / sqrt(2(x - x(P)))``, i.e. ``[s^0]`` of the ds-coefficient."""
        return self.expand_differential(f, alpha, 1).coeff(0)

    def v_in_principal_basis(self, kmax: int) -> dict[tuple[int, int], dict[tuple[int, int], Scalar]]:
        """``V^alpha_k = sum c xi^beta_j`` from B-table data (recursive route).

        ``xi^beta_j`` has principal part ``ds/s^(2j+2)`` at ``beta`` and none elsewhere.
        """
        key = ("M", kmax)
        if key in self._cache:
            return self._cache[key]
        size = 2 * kmax + 2
        b00 = {(a, b): self.bergman(a, b, size) for a in self.labels for b in self.labels}
        out: dict[tuple[int, int], dict[tuple[int, int], Scalar]] = {}
        for alpha in self.labels:
            cur = {(0, alpha): ONE}
            out[(0, alpha)] = cur
            for k in range(1, kmax + 1):
                nxt: dict[tuple[int, int], Scalar] = {}
                for (j, beta), c in cur.items():
                    key2 = (j + 1, beta)
                    nxt[key2] = nxt.get(key2, ZERO) + c * (2 * j + 3)
                    for gamma in self.labels:
                        coeff = b00[(beta, gamma)][(2 * j, 0)] * Fraction(1, 2 * j + 1)
                        if not coeff.is_zero():
                            nxt[(0, gamma)] = nxt.get((0, gamma), ZERO) + c * coeff
                cur = {kk: v for kk, v in nxt.items() if not v.is_zero()}
                out[(k, alpha)] = cur
        self._cache[key] = out
        return out

    def v_principal_parts(self, alpha: int, k: int) -> dict[tuple[int, int], Scalar]:
        """Principal parts of the closed-form ``V^alpha_k`` at every branch (direct route)."""
        f = self.v_rational(alpha, k)
        out: dict[tuple[int, int], Scalar] = {}
        for beta in self.labels:
            ser = self.expand_differential(f, beta, 1)
            for e, c in ser.terms().items():
                if e >= 0:
                    continue
                if e % 2:
                    raise CurveError(f"V^{alpha}_{k} has a non-skew principal part at branch {beta}")
                out[((-e - 2) // 2, beta)] = c
        return out


def _pole_order(f: RationalFunction, point: Scalar) -> int:
    order = 0
    p = f.den
    lin = Poly([-point, 1])
    while not p.is_zero() and p(point).is_zero():
        p = p.divmod(lin)[0]
        order += 1
    return order


def xi_expansion(curve: SpectralCurve, index: tuple[int, int], alpha: int, order: int) -> dict[int, Scalar]:
    """Expansion at ``alpha`` of ``xi^beta_j`` (``index = (j, beta)``) as ``{exponent: coeff}``."""
    j, beta = index
    out: dict[int, Scalar] = {}
    if beta == alpha:
        out[-2 * j - 2] = ONE
    if curve.trivial_kernel:
        return out
    size = max(order, 2 * j + 1)
    table = curve.bergman(beta, alpha, size)
    for m in range(order):
        c = table[(2 * j, m)]
        if not c.is_zero():
            out[m] = c * Fraction(1, 2 * j + 1)
    return out


def v_local_expansion(curve: SpectralCurve, alpha: int, k: int, beta: int, order: int) -> LaurentSeries:
    """Expansion of ``V^alpha_k`` at ``beta``; for trivial kernels ``(2k+1)!! ds/s^(2k+2)`` at ``alpha`` only."""
    if curve.trivial_kernel:
        terms = {-2 * k - 2: Scalar(double_factorial(2 * k + 1))} if alpha == beta else {}
        return LaurentSeries.from_dict(terms, order, var="s")
    return curve.expand_differential(curve.v_rational(alpha, k), beta, order)
