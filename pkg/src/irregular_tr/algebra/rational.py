"""Univariate polynomials and rational functions over Q(zeta_8)."""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalar import ONE, ZERO, Scalar
from .series import LaurentSeries


class Poly:
    """Dense polynomial, coefficients listed from the constant term up."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()) -> None:
        cs = [Scalar.coerce(x) for x in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.c = tuple(cs)

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def const(cls, a) -> Poly:
        return cls([a])

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.c

    def lead(self) -> Scalar:
        return self.c[-1]

    def __add__(self, other) -> Poly:
        other = _poly(other)
        n = max(len(self.c), len(other.c))
        return Poly(
            (self.c[i] if i < len(self.c) else ZERO) + (other.c[i] if i < len(other.c) else ZERO) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-a for a in self.c)

    def __sub__(self, other) -> Poly:
        return self + (-_poly(other))

    def __rsub__(self, other) -> Poly:
        return _poly(other) - self

    def __mul__(self, other) -> Poly:
        other = _poly(other)
        if not self.c or not other.c:
            return Poly()
        out = [ZERO] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a.is_zero():
                continue
            for j, b in enumerate(other.c):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        out = Poly([1])
        for _ in range(e):
            out = out * self
        return out

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        q = [ZERO] * max(len(rem) - len(other.c) + 1, 0)
        inv = other.lead().inverse()
        dq = other.degree
        while len(rem) - 1 >= dq and rem:
            shift = len(rem) - 1 - dq
            f = rem[-1] * inv
            q[shift] = f
            for i, b in enumerate(other.c):
                rem[shift + i] = rem[shift + i] - f * b
            rem.pop()
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly(q), Poly(rem)

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        inv = self.lead().inverse()
        return Poly(a * inv for a in self.c)

    def gcd(self, other: Poly) -> Poly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def derivative(self) -> Poly:
        return Poly(a * i for i, a in enumerate(self.c) if i > 0)

    def __call__(self, z):
        """Horner evaluation at a scalar or a Laurent series."""
        if isinstance(z, LaurentSeries):
            result = _const_series(self.c[-1] if self.c else ZERO, z)
            for a in reversed(self.c[:-1]):
                result = result * z + a
            return result
        acc = ZERO
        for a in reversed(self.c):
            acc = acc * z + a
        return acc

    def shift(self, a) -> Poly:
        """p(z + a)."""
        out = Poly()
        lin = Poly([a, 1])
        for coeff in reversed(self.c):
            out = out * lin + coeff
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Scalar)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        return " + ".join(f"({a})*z^{i}" for i, a in enumerate(self.c) if not a.is_zero())

    def to_json(self) -> list:
        return [a.to_json() for a in self.c]


def _poly(p) -> Poly:
    return p if isinstance(p, Poly) else Poly([p])


def _const_series(a, like: LaurentSeries) -> LaurentSeries:
    return LaurentSeries([a], low=0, order=max(like.order, 1), var=like.var)


class RationalFunction:
    """``num/den`` in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce: bool = True) -> None:
        num = _poly(num)
        den = Poly([1]) if den is None else _poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce and not num.is_zero():
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num.divmod(g)[0], den.divmod(g)[0]
        if num.is_zero():
            den = Poly([1])
        lead_inv = den.lead().inverse()
        self.num = num * lead_inv
        self.den = den * lead_inv

    @classmethod
    def from_coeffs(cls, num: Sequence, den: Sequence = (1,)) -> RationalFunction:
        return cls(Poly(num), Poly(den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other) -> RationalFunction:
        other = _rat(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other) -> RationalFunction:
        return self + (-_rat(other))

    def __rsub__(self, other) -> RationalFunction:
        return _rat(other) - self

    def __mul__(self, other) -> RationalFunction:
        other = _rat(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        other = _rat(other)
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> RationalFunction:
        return _rat(other) / self

    def derivative(self) -> RationalFunction:
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def __call__(self, z):
        if isinstance(z, LaurentSeries):
            return self.num(z) * self.den(z).inverse()
        d = self.den(z)
        if d.is_zero():
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(z) / d

    def expand_at(self, point, local: LaurentSeries) -> LaurentSeries:
        """Expansion of ``f(z)`` where ``z = point + local`` (``local`` of positive valuation)."""
        num = self.num.shift(point)
        den = self.den.shift(point)
        return num(local) * den(local).inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Scalar)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"({self.num}) / ({self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def _rat(f) -> RationalFunction:
    if isinstance(f, RationalFunction):
        return f
    return RationalFunction(_poly(f))


Z = RationalFunction(Poly.x())
