"""Sparse polynomials in hbar and time variables.

A monomial is ``(h, vars)`` where ``h`` is the power of hbar and ``vars`` is
a sorted tuple of time variables with repetition.  A time variable is a pair
``(k, label)``: ``label`` is a branch number for v-times and t-times, or
``"+"``/``"-"`` for the global times of the two-edge ensemble.

Free energies carry ``h = g - 1``.  Partition functions (exponentials) can
have arbitrarily negative hbar powers; they are kept finite by truncating on
the *weight* ``2h + degree``, which is positive on every stable term.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Mapping

from .scalar import Scalar

Var = tuple[int, object]
Monomial = tuple[int, tuple[Var, ...]]


@dataclass(frozen=True)
class Truncation:
    """Which monomials to keep; ``None`` means unbounded in that grading."""

    max_degree: int | None = None
    max_hbar: int | None = None
    max_weight: int | None = None

    def keeps(self, h: int, degree: int) -> bool:
        if self.max_degree is not None and degree > self.max_degree:
            return False
        if self.max_hbar is not None and h > self.max_hbar:
            return False
        if self.max_weight is not None and 2 * h + degree > self.max_weight:
            return False
        return True

    def grading(self, h: int, degree: int) -> int:
        """Quantity that must grow under multiplication for exp/log to terminate."""
        if self.max_weight is not None:
            return 2 * h + degree
        if self.max_degree is not None:
            return degree
        if self.max_hbar is not None:
            return h
        raise ValueError("exp/log need a bounded grading")


NO_TRUNCATION = Truncation()


def var_sort_key(var: Var):
    k, label = var
    return (str(type(label).__name__), label, k)


def _sorted_vars(vs: Iterable[Var]) -> tuple[Var, ...]:
    return tuple(sorted(vs, key=var_sort_key))


class TimesPolynomial:
    """Immutable sparse polynomial; coefficients in ``ring`` (Scalar by default)."""

    __slots__ = ("terms", "ring", "namespace")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, ring=Scalar, namespace: str = "v") -> None:
        clean: dict[Monomial, object] = {}
        if terms:
            for (h, vs), c in terms.items():
                c = ring.coerce(c)
                if not c.is_zero():
                    key = (h, _sorted_vars(vs))
                    prev = clean.get(key)
                    clean[key] = c if prev is None else prev + c
            clean = {k: c for k, c in clean.items() if not c.is_zero()}
        self.terms = clean
        self.ring = ring
        self.namespace = namespace

    @classmethod
    def _raw(cls, terms: dict, ring, namespace: str) -> TimesPolynomial:
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.ring = ring
        obj.namespace = namespace
        return obj

    def _like(self, terms: dict) -> TimesPolynomial:
        return TimesPolynomial._raw(terms, self.ring, self.namespace)

    @classmethod
    def constant(cls, c, ring=Scalar, namespace: str = "v") -> TimesPolynomial:
        return cls({(0, ()): c}, ring, namespace)

    @classmethod
    def monomial(cls, c, h: int = 0, vs: Iterable[Var] = (), ring=Scalar, namespace: str = "v") -> TimesPolynomial:
        return cls({(h, tuple(vs)): c}, ring, namespace)

    @classmethod
    def variable(cls, k: int, label, ring=Scalar, namespace: str = "v") -> TimesPolynomial:
        return cls({(0, ((k, label),)): 1}, ring, namespace)

    # -- inspection ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, h: int, vs: Iterable[Var]):
        return self.terms.get((h, _sorted_vars(vs)), self.ring.coerce(0))

    def constant_term(self):
        return self.terms.get((0, ()), self.ring.coerce(0))

    def variables(self) -> set[Var]:
        return {v for (_, vs) in self.terms for v in vs}

    def labels(self) -> set:
        return {label for (_, label) in self.variables()}

    def max_degree(self) -> int:
        return max((len(vs) for _, vs in self.terms), default=0)

    def hbar_range(self) -> tuple[int, int]:
        hs = [h for h, _ in self.terms] or [0]
        return min(hs), max(hs)

    def check_genus_grading(self) -> None:
        """Free-energy invariant: every hbar power is g - 1 with g >= 0."""
        for h, _ in self.terms:
            if h < -1:
                raise ValueError(f"hbar exponent {h} below -1 in a free energy")

    def sorted_items(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], len(kv[0][1]), [var_sort_key(v) for v in kv[0][1]]))

    # -- arithmetic ---------------------------------------------------
    def truncate(self, trunc: Truncation) -> TimesPolynomial:
        return self._like({m: c for m, c in self.terms.items() if trunc.keeps(m[0], len(m[1]))})

    def __add__(self, other) -> TimesPolynomial:
        if not isinstance(other, TimesPolynomial):
            other = TimesPolynomial.constant(other, self.ring, self.namespace)
        out = dict(self.terms)
        for m, c in other.terms.items():
            prev = out.get(m)
            if prev is None:
                out[m] = c
            else:
                s = prev + c
                if s.is_zero():
                    del out[m]
                else:
                    out[m] = s
        return self._like(out)

    __radd__ = __add__

    def __neg__(self) -> TimesPolynomial:
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> TimesPolynomial:
        if not isinstance(other, TimesPolynomial):
            other = TimesPolynomial.constant(other, self.ring, self.namespace)
        return self + (-other)

    def scale(self, c) -> TimesPolynomial:
        c = self.ring.coerce(c)
        if c.is_zero():
            return self._like({})
        return self._like({m: c * a for m, a in self.terms.items()})

    def mul(self, other: TimesPolynomial, trunc: Truncation = NO_TRUNCATION) -> TimesPolynomial:
        out: dict[Monomial, object] = {}
        for (h1, v1), c1 in self.terms.items():
            for (h2, v2), c2 in other.terms.items():
                h = h1 + h2
                deg = len(v1) + len(v2)
                if not trunc.keeps(h, deg):
                    continue
                key = (h, _sorted_vars(v1 + v2))
                prev = out.get(key)
                out[key] = c1 * c2 if prev is None else prev + c1 * c2
        return self._like({m: c for m, c in out.items() if not c.is_zero()})

    def __mul__(self, other) -> TimesPolynomial:
        if isinstance(other, TimesPolynomial):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TimesPolynomial):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    # -- exponential and logarithm ------------------------------------
    def exp(self, trunc: Truncation) -> TimesPolynomial:
        """Truncated exponential; needs positive grading on every term."""
        f = self.truncate(trunc)
        for h, vs in f.terms:
            if trunc.grading(h, len(vs)) <= 0:
                raise ValueError("exp needs every term to have positive grading under the truncation")
        one = TimesPolynomial.constant(1, self.ring, self.namespace)
        result = one
        power = one
        m = 0
        while True:
            m += 1
            power = power.mul(f, trunc)
            if power.is_zero():
                break
            result = result + power.scale(Fraction(1, factorial(m)))
        return result

    def log(self, trunc: Truncation) -> TimesPolynomial:
        """Truncated logarithm of a series with constant term 1."""
        p = self.truncate(trunc)
        if p.constant_term() != self.ring.coerce(1):
            raise ValueError("log needs constant term 1")
        q = p - TimesPolynomial.constant(1, self.ring, self.namespace)
        for h, vs in q.terms:
            if trunc.grading(h, len(vs)) <= 0:
                raise ValueError("log needs every nonconstant term to have positive grading")
        result = self._like({})
        power = TimesPolynomial.constant(1, self.ring, self.namespace)
        m = 0
        while True:
            m += 1
            power = power.mul(q, trunc)
            if power.is_zero():
                break
            sign = 1 if m % 2 else -1
            result = result + power.scale(Fraction(sign, m))
        return result

    # -- calculus and substitutions -----------------------------------
    def derivative(self, var: Var) -> TimesPolynomial:
        out: dict[Monomial, object] = {}
        for (h, vs), c in self.terms.items():
            count = vs.count(var)
            if not count:
                continue
            i = vs.index(var)
            key = (h, vs[:i] + vs[i + 1 :])
            prev = out.get(key)
            val = c * count
            out[key] = val if prev is None else prev + val
        return self._like({m: c for m, c in out.items() if not c.is_zero()})

    def times_var(self, var: Var, trunc: Truncation = NO_TRUNCATION) -> TimesPolynomial:
        out = {}
        for (h, vs), c in self.terms.items():
            if trunc.keeps(h, len(vs) + 1):
                out[(h, _sorted_vars(vs + (var,)))] = c
        return self._like(out)

    def times_hbar(self, power: int = 1) -> TimesPolynomial:
        return self._like({(h + power, vs): c for (h, vs), c in self.terms.items()})

    def rescale(self, hbar_factor, var_factor: Callable[[Var], object] | Mapping) -> TimesPolynomial:
        """Monomial rescaling ``hbar -> a*hbar``, ``var -> f(var)*var``."""
        a = self.ring.coerce(hbar_factor)
        get = var_factor if callable(var_factor) else (lambda v: var_factor.get(v, 1))
        cache: dict[Var, object] = {}
        out = {}
        for (h, vs), c in self.terms.items():
            val = c * (a ** h)
            for v in vs:
                if v not in cache:
                    cache[v] = self.ring.coerce(get(v))
                val = val * cache[v]
            if not val.is_zero():
                out[(h, vs)] = val
        return self._like(out)

    def substitute(
        self,
        images: Mapping[Var, TimesPolynomial],
        trunc: Truncation = NO_TRUNCATION,
        namespace: str | None = None,
    ) -> TimesPolynomial:
        """Replace each listed variable by a polynomial; others are kept."""
        ns = namespace or self.namespace
        one = TimesPolynomial.constant(1, self.ring, ns)
        power_cache: dict[tuple[Var, int], TimesPolynomial] = {}

        def image_power(v: Var, e: int) -> TimesPolynomial:
            key = (v, e)
            if key not in power_cache:
                base = images[v] if v in images else TimesPolynomial.variable(v[0], v[1], self.ring, ns)
                # untruncated: the hbar power of the host term is not known here
                power_cache[key] = one if e == 0 else image_power(v, e - 1).mul(base)
            return power_cache[key]

        result = TimesPolynomial({}, self.ring, ns)
        for (h, vs), c in self.terms.items():
            term = TimesPolynomial({(h, ()): c}, self.ring, ns)
            for v, e in Counter(vs).items():
                # every grading only grows as factors are multiplied in, so early truncation is safe
                term = term.mul(image_power(v, e), trunc)
            result = result + term.truncate(trunc)
        return result

    def map_coeffs(self, fn: Callable, ring=None) -> TimesPolynomial:
        ring = ring or self.ring
        return TimesPolynomial({m: fn(c) for m, c in self.terms.items()}, ring, self.namespace)

    def relabel(self, mapping: Callable[[Var], Var], namespace: str | None = None) -> TimesPolynomial:
        out: dict[Monomial, object] = {}
        for (h, vs), c in self.terms.items():
            key = (h, _sorted_vars(mapping(v) for v in vs))
            prev = out.get(key)
            out[key] = c if prev is None else prev + c
        return TimesPolynomial(out, self.ring, namespace or self.namespace)

    # -- output -------------------------------------------------------
    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (h, vs), c in self.sorted_items():
            mono = "*".join(f"v[{k},{label}]" for k, label in vs)
            hb = f"hbar^{h}" if h else ""
            parts.append("*".join(p for p in (f"({c})", hb, mono) if p))
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [
            {"hbar": h, "vars": [[k, label] for k, label in vs], "coeff": c.to_json()}
            for (h, vs), c in self.sorted_items()
        ]

