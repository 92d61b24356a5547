"""Truncated Laurent series with explicit, pessimistically tracked precision.

A series stores the exact coefficients of ``t^e`` for ``low <= e < order``.
Everything from ``order`` upwards is unknown; reading such a coefficient
raises :class:`TruncationError` instead of returning zero.

Coefficients may live in any commutative ring whose elements support
``+ - *`` and ``inverse()`` on units (``Scalar`` or ``ParamScalar``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .scalar import Scalar


class TruncationError(ArithmeticError):
    """A coefficient beyond the known precision of a series was requested."""


def _is_zero(c) -> bool:
    return c.is_zero()


class LaurentSeries:
    """Immutable truncated Laurent series ``sum_{low <= e < order} c_e t^e``."""

    __slots__ = ("var", "low", "coeffs", "order", "ring")

    def __init__(
        self,
        coeffs: Sequence,
        low: int = 0,
        order: int | None = None,
        var: str = "t",
        ring=Scalar,
    ) -> None:
        cs = [ring.coerce(c) for c in coeffs]
        if order is None:
            order = low + len(cs)
        if order < low + len(cs):
            cs = cs[: max(order - low, 0)]
        # pad to full known range, then strip leading zeros
        cs.extend(ring.coerce(0) for _ in range(order - low - len(cs)))
        start = 0
        while start < len(cs) and _is_zero(cs[start]):
            start += 1
        self.var = var
        self.ring = ring
        self.order = order
        if start == len(cs):
            self.low = order
            self.coeffs = ()
        else:
            self.low = low + start
            self.coeffs = tuple(cs[start:])

    # -- construction -------------------------------------------------
    @classmethod
    def from_dict(cls, terms: dict[int, object], order: int, var: str = "t", ring=Scalar) -> LaurentSeries:
        known = [e for e in terms if e < order]
        if not known:
            return cls([], low=order, order=order, var=var, ring=ring)
        low = min(known)
        cs = [terms.get(e, 0) for e in range(low, order)]
        return cls(cs, low=low, order=order, var=var, ring=ring)

    @classmethod
    def monomial(cls, coeff, exponent: int, order: int, var: str = "t", ring=Scalar) -> LaurentSeries:
        return cls.from_dict({exponent: coeff}, order, var=var, ring=ring)

    @classmethod
    def exact(cls, terms: dict[int, object], var: str = "t", ring=Scalar, extra: int = 0) -> LaurentSeries:
        """A polynomial known exactly up to ``max exponent + 1 + extra``."""
        top = max(terms) + 1 if terms else 0
        return cls.from_dict(terms, top + extra, var=var, ring=ring)

    def _new(self, coeffs, low: int, order: int) -> LaurentSeries:
        return LaurentSeries(coeffs, low=low, order=order, var=self.var, ring=self.ring)

    def zero_like(self, order: int) -> LaurentSeries:
        return self._new([], order, order)

    # -- access -------------------------------------------------------
    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    @property
    def valuation(self) -> int:
        if not self.coeffs:
            raise TruncationError("valuation of a series that vanishes to its precision")
        return self.low

    def __getitem__(self, exponent: int):
        return self.coeff(exponent)

    def coeff(self, exponent: int):
        if exponent >= self.order:
            raise TruncationError(
                f"coefficient of {self.var}^{exponent} requested but series is only known below {self.order}"
            )
        if exponent < self.low:
            return self.ring.coerce(0)
        return self.coeffs[exponent - self.low]

    def terms(self) -> dict[int, object]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if not _is_zero(c)}

    def truncate(self, order: int) -> LaurentSeries:
        if order > self.order:
            raise TruncationError(f"cannot raise precision from {self.order} to {order}")
        return self._new(self.coeffs[: max(order - self.low, 0)], self.low, order)

    def lead(self):
        if not self.coeffs:
            raise TruncationError("series vanishes to its precision; no leading coefficient")
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------
    def _coerce_other(self, other) -> LaurentSeries | None:
        if isinstance(other, LaurentSeries):
            return other
        try:
            c = self.ring.coerce(other)
        except TypeError:
            return None
        # constants are exact: infinite precision, capped at our own order
        return self._new([c], 0, max(self.order, 1))

    def __add__(self, other) -> LaurentSeries:
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        low = min(self.low, other.low, order)
        out = [self.ring.coerce(0)] * (order - low)
        for i, c in enumerate(self.coeffs):
            e = self.low + i
            if e >= order:
                break
            out[e - low] = out[e - low] + c
        for i, c in enumerate(other.coeffs):
            e = other.low + i
            if e >= order:
                break
            out[e - low] = out[e - low] + c
        return self._new(out, low, order)

    __radd__ = __add__

    def __neg__(self) -> LaurentSeries:
        return self._new([-c for c in self.coeffs], self.low, self.order)

    def __sub__(self, other) -> LaurentSeries:
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentSeries:
        return (-self) + other

    def scale(self, c) -> LaurentSeries:
        c = self.ring.coerce(c)
        return self._new([c * a for a in self.coeffs], self.low, self.order)

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by ``t^k`` (exact)."""
        return self._new(self.coeffs, self.low + k, self.order + k)

    def __mul__(self, other) -> LaurentSeries:
        if isinstance(other, LaurentSeries):
            return self._mul_series(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other) -> LaurentSeries:
        return self.scale(other)

    def _mul_series(self, other: LaurentSeries) -> LaurentSeries:
        order = min(self.low + other.order, other.low + self.order)
        low = self.low + other.low
        if order <= low:
            return self._new([], order, order)
        n = order - low
        zero = self.ring.coerce(0)
        out = [zero] * n
        a, b = self.coeffs, other.coeffs
        for i in range(min(len(a), n)):
            ai = a[i]
            if _is_zero(ai):
                continue
            for j in range(min(len(b), n - i)):
                bj = b[j]
                if not _is_zero(bj):
                    out[i + j] = out[i + j] + ai * bj
        return self._new(out, low, order)

    def inverse(self) -> LaurentSeries:
        """Multiplicative inverse; the leading coefficient must be a unit."""
        lead = self.lead()
        inv_lead = lead.inverse()
        rel = self.order - self.low
        # normalized u = 1 + h, invert termwise
        a = [c * inv_lead for c in self.coeffs]
        zero = self.ring.coerce(0)
        out = [self.ring.coerce(1)] + [zero] * (rel - 1)
        for k in range(1, rel):
            acc = zero
            for j in range(1, k + 1):
                if j < len(a) and not _is_zero(a[j]):
                    acc = acc + a[j] * out[k - j]
            out[k] = -acc
        out = [c * inv_lead for c in out]
        return self._new(out, -self.low, -self.low + rel)

    def __truediv__(self, other) -> LaurentSeries:
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return self.scale(self.ring.coerce(other).inverse())

    def __pow__(self, exponent: int) -> LaurentSeries:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if exponent == 0:
            return self._new([1], 0, max(self.order - self.low, 1))
        if not self.coeffs:
            return self._new([], self.order * exponent, self.order * exponent)
        # a power keeps the relative precision of its base
        rel = self.order - self.low
        result = self._new([1], 0, rel)
        base = self.shift(-self.low)
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result.shift(self.low * exponent)

    # -- calculus -----------------------------------------------------
    def derivative(self) -> LaurentSeries:
        out = [c * (self.low + i) for i, c in enumerate(self.coeffs)]
        if not out:
            return self._new([], self.order - 1, self.order - 1)
        return self._new(out, self.low - 1, self.order - 1)

    def residue(self):
        """Coefficient of ``t^-1``."""
        return self.coeff(-1)

    def integrate(self):
        """Antiderivative; requires a vanishing residue."""
        if self.low <= -1 < self.order and not _is_zero(self.coeff(-1)):
            raise ValueError("series with nonzero residue has no Laurent antiderivative")
        out = {}
        for e, c in self.terms().items():
            out[e + 1] = c * Fraction(1, e + 1)
        return LaurentSeries.from_dict(out, self.order + 1, var=self.var, ring=self.ring)

    def negate_variable(self) -> LaurentSeries:
        """The series in ``-t``."""
        return self._new(
            [c if (self.low + i) % 2 == 0 else -c for i, c in enumerate(self.coeffs)], self.low, self.order
        )

    def odd_part(self) -> LaurentSeries:
        return self._new(
            [c if (self.low + i) % 2 else self.ring.coerce(0) for i, c in enumerate(self.coeffs)],
            self.low,
            self.order,
        )

    def even_part(self) -> LaurentSeries:
        return self._new(
            [self.ring.coerce(0) if (self.low + i) % 2 else c for i, c in enumerate(self.coeffs)],
            self.low,
            self.order,
        )

    def compose(self, inner: LaurentSeries) -> LaurentSeries:
        """``self(inner(t))`` for ``inner`` of valuation >= 1."""
        if inner.is_zero() or inner.low < 1:
            raise ValueError("inner series must have positive valuation")
        v = inner.low
        rel = inner.order - inner.low
        order = v * self.order
        if self.coeffs:
            order = min(order, v * self.low + rel)
        result = self._new([], order, order)
        if not self.coeffs:
            return result
        power = inner ** self.low
        for i, c in enumerate(self.coeffs):
            if (self.low + i) * v >= order:
                break
            if not _is_zero(c):
                result = result + power.scale(c)
            power = power * inner
        return result.truncate(order)

    def reverse(self) -> LaurentSeries:
        """Compositional inverse g with ``self(g(t)) = t`` to the series precision."""
        if self.is_zero() or self.low != 1:
            raise ValueError("reversion needs a series with valuation exactly 1")
        c1 = self.coeff(1)
        if _is_zero(c1):
            raise ValueError("reversion needs an invertible linear coefficient")
        order = self.order
        # Lagrange inversion: [t^n] g = (1/n) [t^(n-1)] (t/f)^n
        phi = self.shift(-1).inverse()
        out = []
        power = self._new([1], 0, phi.order)
        for n in range(1, order):
            power = power * phi
            out.append(power.coeff(n - 1) * Fraction(1, n))
        return self._new(out, 1, order)

    def sqrt(self, sign: int = 1) -> LaurentSeries:
        """Square root with leading coefficient ``sign * principal_sqrt(lead)``."""
        if self.is_zero():
            raise ValueError("square root of a series vanishing to its precision")
        if self.low % 2:
            raise ValueError("square root needs an even valuation")
        lead = self.lead()
        root = lead.sqrt(sign)
        rel = self.order - self.low
        a = [c * lead.inverse() for c in self.coeffs]
        zero = self.ring.coerce(0)
        # u = sqrt(1 + h) via u_k = (a_k - sum_{0<j<k} u_j u_{k-j}) / 2
        u = [self.ring.coerce(1)] + [zero] * (rel - 1)
        for k in range(1, rel):
            acc = a[k] if k < len(a) else zero
            for j in range(1, k):
                acc = acc - u[j] * u[k - j]
            u[k] = acc * Fraction(1, 2)
        return self._new([root * c for c in u], self.low // 2, self.low // 2 + rel)

    def map_coeffs(self, fn: Callable, ring=None) -> LaurentSeries:
        ring = ring or self.ring
        return LaurentSeries([fn(c) for c in self.coeffs], self.low, self.order, self.var, ring)

    # -- comparison / output -----------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.low, self.order, self.coeffs) == (other.low, other.order, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.low, self.order, self.coeffs))

    def agrees_with(self, other: LaurentSeries) -> bool:
        """Equality on the common known range."""
        order = min(self.order, other.order)
        return (self - other).truncate(order).is_zero()

    def __repr__(self) -> str:
        parts = [f"({c})*{self.var}^{self.low + i}" for i, c in enumerate(self.coeffs) if not _is_zero(c)]
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({self.var}^{self.order})"

    def to_json(self) -> dict:
        return {
            "low": self.low,
            "order": self.order,
            "coeffs": [c.to_json() for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict, var: str = "t") -> LaurentSeries:
        return cls([Scalar.from_json(c) for c in data["coeffs"]], data["low"], data["order"], var=var)


def series_sum(items: Iterable[LaurentSeries], order: int, var: str = "t", ring=Scalar) -> LaurentSeries:
    total = LaurentSeries([], low=order, order=order, var=var, ring=ring)
    for it in items:
        total = total + it
    return total
