"""Exact arithmetic in the cyclotomic field Q(zeta_8).

An element is stored as ``(n0 + n1*z + n2*z^2 + n3*z^3) / d`` with integer
numerators, a positive common denominator and ``gcd(n0, n1, n2, n3, d) = 1``.
Here ``z`` is a primitive 8th root of unity, so ``z^4 = -1``, ``i = z^2`` and
``sqrt(2) = z - z^3``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Union

Number = Union[int, Fraction, "Scalar"]


def _normalize(n0: int, n1: int, n2: int, n3: int, d: int) -> tuple[int, int, int, int, int]:
    if d < 0:
        n0, n1, n2, n3, d = -n0, -n1, -n2, -n3, -d
    g = gcd(gcd(gcd(n0, n1), gcd(n2, n3)), d)
    if g > 1:
        return n0 // g, n1 // g, n2 // g, n3 // g, d // g
    return n0, n1, n2, n3, d


class Scalar:
    """Element of Q(zeta_8), immutable and hashable."""

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, c0: Number = 0, c1: Number = 0, c2: Number = 0, c3: Number = 0) -> None:
        coords = [Fraction(c) for c in (c0, c1, c2, c3)]
        d = 1
        for c in coords:
            d = d * c.denominator // gcd(d, c.denominator)
        nums = [int(c.numerator * (d // c.denominator)) for c in coords]
        self._set(*_normalize(nums[0], nums[1], nums[2], nums[3], d))

    def _set(self, n0: int, n1: int, n2: int, n3: int, d: int) -> None:
        self._n = (n0, n1, n2, n3)
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, n0: int, n1: int, n2: int, n3: int, d: int) -> Scalar:
        obj = object.__new__(cls)
        obj._set(*_normalize(n0, n1, n2, n3, d))
        return obj

    @classmethod
    def coerce(cls, value: Number) -> Scalar:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, int):
            return cls._raw(value, 0, 0, 0, 1)
        if isinstance(value, Fraction):
            return cls._raw(value.numerator, 0, 0, 0, value.denominator)
        raise TypeError(f"cannot coerce {type(value).__name__} to Scalar")

    # -- named constants -------------------------------------------------
    @classmethod
    def zeta(cls) -> Scalar:
        return cls._raw(0, 1, 0, 0, 1)

    @classmethod
    def i(cls) -> Scalar:
        return cls._raw(0, 0, 1, 0, 1)

    @classmethod
    def sqrt2(cls) -> Scalar:
        return cls._raw(0, 1, 0, -1, 1)

    # -- accessors --------------------------------------------------------
    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(n, self._d) for n in self._n)  # type: ignore[return-value]

    @property
    def c0(self) -> Fraction:
        return Fraction(self._n[0], self._d)

    @property
    def c1(self) -> Fraction:
        return Fraction(self._n[1], self._d)

    @property
    def c2(self) -> Fraction:
        return Fraction(self._n[2], self._d)

    @property
    def c3(self) -> Fraction:
        return Fraction(self._n[3], self._d)

    def is_zero(self) -> bool:
        return not any(self._n)

    def is_rational(self) -> bool:
        return not (self._n[1] or self._n[2] or self._n[3])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._n[0], self._d)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: Number) -> Scalar:
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, d1 = self._n, self._d
        b, d2 = other._n, other._d
        if d1 == d2:
            return Scalar._raw(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], d1)
        return Scalar._raw(
            a[0] * d2 + b[0] * d1,
            a[1] * d2 + b[1] * d1,
            a[2] * d2 + b[2] * d1,
            a[3] * d2 + b[3] * d1,
            d1 * d2,
        )

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        a = self._n
        obj = object.__new__(Scalar)
        obj._set(-a[0], -a[1], -a[2], -a[3], self._d)
        return obj

    def __pos__(self) -> Scalar:
        return self

    def __sub__(self, other: Number) -> Scalar:
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> Scalar:
        return Scalar.coerce(other) - self

    def __mul__(self, other: Number) -> Scalar:
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                a = self._n
                return Scalar._raw(a[0] * other, a[1] * other, a[2] * other, a[3] * other, self._d)
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        a0, a1, a2, a3 = self._n
        b0, b1, b2, b3 = other._n
        d = self._d * other._d
        if not (b1 or b2 or b3):
            return Scalar._raw(a0 * b0, a1 * b0, a2 * b0, a3 * b0, d)
        if not (a1 or a2 or a3):
            return Scalar._raw(a0 * b0, a0 * b1, a0 * b2, a0 * b3, d)
        # z^4 = -1 folds the degree 4..6 products back with a sign flip
        c0 = a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1
        c1 = a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2
        c2 = a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3
        c3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
        return Scalar._raw(c0, c1, c2, c3, d)

    __rmul__ = __mul__

    def galois(self, k: int) -> Scalar:
        """Apply the automorphism z -> z^k for odd k."""
        if k % 2 == 0:
            raise ValueError("Galois exponent must be odd")
        out = [0, 0, 0, 0]
        for j, n in enumerate(self._n):
            e = (j * k) % 8
            if e >= 4:
                out[e - 4] -= n
            else:
                out[e] += n
        return Scalar._raw(out[0], out[1], out[2], out[3], self._d)

    def conjugate(self) -> Scalar:
        return self.galois(7)

    def norm(self) -> Fraction:
        """Field norm down to Q: product over all four embeddings."""
        prod = self * self.galois(3) * self.galois(5) * self.galois(7)
        return prod.to_fraction()

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_8)")
        if self.is_rational():
            n0, d = self._n[0], self._d
            return Scalar._raw(d, 0, 0, 0, n0)
        others = self.galois(3) * self.galois(5) * self.galois(7)
        nrm = (self * others).to_fraction()
        return others * Scalar.coerce(1 / nrm)

    def __truediv__(self, other: Number) -> Scalar:
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                if other == 0:
                    raise ZeroDivisionError("division by zero in Q(zeta_8)")
                a = self._n
                return Scalar._raw(a[0], a[1], a[2], a[3], self._d * other)
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> Scalar:
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> Scalar:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- square roots -----------------------------------------------------
    def sqrt(self, sign: int = 1) -> Scalar:
        """Square root inside Q(zeta_8).

        The two roots are ordered by a fixed rule (see ``principal_sqrt``);
        ``sign=-1`` returns the negative of the principal one.  Raises
        ``ValueError`` when the element is not a square in the field.
        """
        root = principal_sqrt(self)
        return root if sign >= 0 else -root

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self._n == other._n and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self == Scalar.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._d))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- formatting / serialization ---------------------------------------
    def to_json(self) -> list[str]:
        return [_frac_str(c) for c in self.coords]

    @classmethod
    def from_json(cls, data: Iterable[str] | str | int) -> Scalar:
        if isinstance(data, (str, int)):
            return cls(Fraction(data))
        parts = list(data)
        if len(parts) != 4:
            raise ValueError(f"expected four coordinates, got {len(parts)}")
        return cls(*(Fraction(p) for p in parts))

    def __repr__(self) -> str:
        return f"Scalar({', '.join(repr(str(c)) for c in self.coords)})"

    def __str__(self) -> str:
        names = ("", "z", "z^2", "z^3")
        parts = []
        for c, name in zip(self.coords, names):
            if c == 0:
                continue
            if name == "":
                parts.append(str(c))
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{c}*{name}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


ZERO = Scalar._raw(0, 0, 0, 0, 1)
ONE = Scalar._raw(1, 0, 0, 0, 1)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sort_key(x: Scalar) -> tuple[Fraction, ...]:
    return tuple(x.coords)


def principal_sqrt(a: Scalar) -> Scalar:
    """A square root of ``a`` in Q(zeta_8), chosen deterministically.

    Write ``a = p + q*sqrt(2)`` with ``p, q`` in Q(i).  A root ``u + v*sqrt(2)``
    satisfies ``u^2 + 2 v^2 = p`` and ``2 u v = q``, which reduces to square
    roots in Q(i), which in turn reduce to rational square roots.  Of the two
    roots the one whose coordinate tuple is lexicographically larger is
    returned.
    """
    if a.is_zero():
        return ZERO
    c0, c1, c2, c3 = a.coords
    # sqrt(2) = z - z^3 and i*sqrt(2) = z + z^3
    p = (c0, c2)
    q = ((c1 - c3) / 2, (c1 + c3) / 2)
    candidates = []
    for u, v in _sqrt_pairs(p, q):
        root = _from_qi(u) + _from_qi(v) * Scalar.sqrt2()
        if root * root == a:
            candidates.append(root)
    if not candidates:
        raise ValueError(f"{a} has no square root in Q(zeta_8)")
    best = max(candidates, key=_sort_key)
    other = -best
    return best if _sort_key(best) >= _sort_key(other) else other


QI = tuple  # (re, im) pair of Fractions representing an element of Q(i)


def _from_qi(x: QI) -> Scalar:
    return Scalar(x[0], 0, x[1], 0)


def _qi_mul(x: QI, y: QI) -> QI:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _qi_sub(x: QI, y: QI) -> QI:
    return (x[0] - y[0], x[1] - y[1])


def _qi_scale(x: QI, c: Fraction) -> QI:
    return (x[0] * c, x[1] * c)


def _qi_inv(x: QI) -> QI:
    n = x[0] * x[0] + x[1] * x[1]
    return (x[0] / n, -x[1] / n)


def _qi_sqrt_all(x: QI) -> list[QI]:
    """All square roots of x in Q(i) (zero, one pair, or none)."""
    a, b = x
    if a == 0 and b == 0:
        return [(Fraction(0), Fraction(0))]
    nrm = _rational_sqrt(a * a + b * b)
    if nrm is None:
        return []
    out = []
    for r2 in ((a + nrm) / 2, (a - nrm) / 2):
        r = _rational_sqrt(r2)
        if r is None:
            continue
        for re in (r, -r):
            if re != 0:
                im = b / (2 * re)
            else:
                s = _rational_sqrt(-a)
                if s is None:
                    continue
                im = s
            cand = (re, im)
            if _qi_mul(cand, cand) == (a, b) and cand not in out:
                out.append(cand)
            neg = (-re, -im)
            if _qi_mul(neg, neg) == (a, b) and neg not in out:
                out.append(neg)
    return out


def _sqrt_pairs(p: QI, q: QI) -> list[tuple[QI, QI]]:
    """Solutions (u, v) in Q(i)^2 of u^2 + 2 v^2 = p, 2 u v = q."""
    zero = (Fraction(0), Fraction(0))
    out: list[tuple[QI, QI]] = []
    if q == zero:
        for u in _qi_sqrt_all(p):
            out.append((u, zero))
        for v in _qi_sqrt_all(_qi_scale(p, Fraction(1, 2))):
            out.append((zero, v))
        return out
    # u^2 is a root of X^2 - p X + q^2/2 = 0
    disc = _qi_sub(_qi_mul(p, p), _qi_scale(_qi_mul(q, q), Fraction(2)))
    for r in _qi_sqrt_all(disc):
        u2 = _qi_scale((p[0] + r[0], p[1] + r[1]), Fraction(1, 2))
        for u in _qi_sqrt_all(u2):
            if u == zero:
                continue
            v = _qi_mul(q, _qi_inv(_qi_scale(u, Fraction(2))))
            out.append((u, v))
    return out


def double_factorial(n: int) -> int:
    """(n)!! with the convention (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError("double factorial undefined below -1")
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result
