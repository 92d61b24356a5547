"""Laurent polynomials in formal curve parameters y_k with Q(zeta_8) coefficients.

Used to run the recursion on deformed Airy/Bessel curves with symbolic
coefficients, so that deformation formulas are checked as polynomial
identities rather than at sample points.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .scalar import ONE, ZERO, Scalar

Monomial = tuple[tuple[int, int], ...]  # sorted ((k, exponent), ...) with exponent != 0


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for k, e in b:
        exps[k] = exps.get(k, 0) + e
    return tuple(sorted((k, e) for k, e in exps.items() if e))


class ParamScalar:
    """Sparse Laurent polynomial in parameters y_k, immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None) -> None:
        clean: dict[Monomial, Scalar] = {}
        if terms:
            for mono, coeff in terms.items():
                c = Scalar.coerce(coeff)
                if not c.is_zero():
                    clean[mono] = c
        self.terms = clean

    @classmethod
    def coerce(cls, value: Union[int, Fraction, Scalar, "ParamScalar"]) -> ParamScalar:
        if isinstance(value, ParamScalar):
            return value
        return cls({(): Scalar.coerce(value)})

    @classmethod
    def var(cls, k: int, power: int = 1) -> ParamScalar:
        """The parameter y_k raised to ``power``."""
        return cls({((k, power),): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other) -> ParamScalar:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            out[m] = c if s is None else s + c
        return ParamScalar(out)

    __radd__ = __add__

    def __neg__(self) -> ParamScalar:
        return ParamScalar({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> ParamScalar:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> ParamScalar:
        return _coerce(other) - self

    def __mul__(self, other) -> ParamScalar:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return ParamScalar(out)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> ParamScalar:
        """Inverse of a single monomial term; other elements are not units."""
        if len(self.terms) != 1:
            raise ZeroDivisionError("only single-term parameter expressions are invertible")
        (mono, coeff), = self.terms.items()
        return ParamScalar({tuple((k, -e) for k, e in mono): coeff.inverse()})

    def __truediv__(self, other) -> ParamScalar:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, exponent: int) -> ParamScalar:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ParamScalar.coerce(1)
        for _ in range(exponent):
            result = result * self
        return result

    def derivative(self, k: int) -> ParamScalar:
        """Partial derivative with respect to y_k."""
        out: dict[Monomial, Scalar] = {}
        for mono, coeff in self.terms.items():
            exps = dict(mono)
            e = exps.get(k, 0)
            if e == 0:
                continue
            exps[k] = e - 1
            new = tuple(sorted((j, f) for j, f in exps.items() if f))
            out[new] = out.get(new, ZERO) + coeff * e
        return ParamScalar(out)

    def substitute(self, values: Mapping[int, Scalar]) -> Scalar | ParamScalar:
        """Replace the listed parameters by scalars."""
        out = ParamScalar()
        for mono, coeff in self.terms.items():
            term = ParamScalar({(): coeff})
            rest = []
            for k, e in mono:
                if k in values:
                    term = term * ParamScalar.coerce(Scalar.coerce(values[k]) ** e)
                else:
                    rest.append((k, e))
            out = out + term * ParamScalar({tuple(rest): ONE})
        if all(not m for m in out.terms):
            return out.terms.get((), ZERO)
        return out

    def variables(self) -> set[int]:
        return {k for mono in self.terms for k, _ in mono}

    def degree_in(self, k: int) -> tuple[int, int]:
        """(min, max) exponent of y_k over the terms."""
        exps = [dict(m).get(k, 0) for m in self.terms] or [0]
        return min(exps), max(exps)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Scalar)):
            other = ParamScalar.coerce(other)
        if not isinstance(other, ParamScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"ParamScalar({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            name = "*".join(f"y[{k}]^{e}" if e != 1 else f"y[{k}]" for k, e in mono)
            coeff = self.terms[mono]
            parts.append(f"({coeff})" + (f"*{name}" if name else ""))
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [
            {"monomial": [[k, e] for k, e in mono], "coeff": self.terms[mono].to_json()}
            for mono in sorted(self.terms)
        ]


def _coerce(value) -> ParamScalar | None:
    if isinstance(value, ParamScalar):
        return value
    if isinstance(value, (int, Fraction, Scalar)):
        return ParamScalar.coerce(value)
    return None


def param_sum(items: Iterable[ParamScalar]) -> ParamScalar:
    out = ParamScalar()
    for it in items:
        out = out + it
    return out
