"""Topological recursion on a built spectral curve.

Correlators are stored as symmetric coefficient tables.  Internally the
recursion runs in the basis ``xi^alpha_k`` of differentials with pure
principal part ``ds/s^(2k+2)`` at one branch point; the public basis is the
auxiliary differentials ``V^alpha_k``.  Keys are sorted tuples of indices
``(k, alpha)``; a key stands for all of its orderings.

With ``Delta y(s) = y(s) - y(-s)`` at a branch point, the coefficient of
``xi^alpha_k(p_0)`` in ``omega_{g,n+1}(p_0, L)`` is

    Res_{s=0} s^(2k) G(s) ds / Delta y(s),

where ``G`` collects ``omega_{g-1,n+2}(s, -s, L)`` and the products
``omega_{g1}(s, I) omega_{g2}(-s, J)`` with both differentials expressed as
ds-coefficients evaluated at ``s`` and at ``-s``.
"""

from __future__ import annotations

import itertools
from math import comb, factorial
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .algebra.scalar import ONE, Scalar, double_factorial
from .algebra.series import LaurentSeries, TruncationError
from .curve import SpectralCurve, xi_expansion

Index = tuple[int, int]  # (k, branch label)
Key = tuple[Index, ...]
DictSeries = dict[int, object]


# ---------------------------------------------------------------------------
# sparse series helpers (exponent -> coefficient, truncated above ``hi``)

def _add_into(target: dict, key, value) -> None:
    cur = target.get(key)
    target[key] = value if cur is None else cur + value


def _mul(a: DictSeries, b: DictSeries, hi: int) -> DictSeries:
    out: DictSeries = {}
    for i, x in a.items():
        lim = hi - i
        for j, y in b.items():
            if j <= lim:
                _add_into(out, i + j, x * y)
    return out


def _scaled_into(target: DictSeries, a: DictSeries, c) -> None:
    for e, x in a.items():
        _add_into(target, e, x * c)


def _reflect(a: DictSeries) -> DictSeries:
    """``f(-s)``."""
    return {e: (x if e % 2 == 0 else -x) for e, x in a.items()}


def sub_multisets(items: Key) -> Iterator[tuple[Key, Key, int]]:
    """Split a sorted multiset into ``(I, J)`` over all position subsets.

    Yields each distinct split once together with the number of position
    subsets producing it.
    """
    counts = sorted(Counter(items).items())
    ranges = [range(m + 1) for _, m in counts]
    for choice in itertools.product(*ranges):
        left: list[Index] = []
        right: list[Index] = []
        mult = 1
        for (idx, m), c in zip(counts, choice):
            left.extend([idx] * c)
            right.extend([idx] * (m - c))
            mult *= comb(m, c)
        yield tuple(left), tuple(right), mult


def bounded_multisets(indices: list[Index], size: int, budget: int) -> Iterator[Key]:
    """Sorted multisets of ``size`` elements of ``indices`` with total ``k`` at most ``budget``."""
    ordered = sorted(indices)

    def rec(start: int, size: int, budget: int) -> Iterator[Key]:
        if size == 0:
            yield ()
            return
        for pos in range(start, len(ordered)):
            idx = ordered[pos]
            if idx[0] * size > budget:
                break
            for tail in rec(pos, size - 1, budget - idx[0]):
                yield (idx,) + tail

    return rec(0, size, budget)


def sorted_key(indices: Iterable[Index]) -> Key:
    return tuple(sorted(indices))


# ---------------------------------------------------------------------------
# correlator container

@dataclass(frozen=True)
class Correlator:
    """Symmetric coefficient table of ``omega_{g,n}`` in a given basis."""

    g: int
    n: int
    coeffs: Mapping[Key, object]
    basis: str = "V"

    def __getitem__(self, indices: Iterable[Index]):
        key = sorted_key(indices)
        if len(key) != self.n:
            raise KeyError(f"expected {self.n} indices, got {len(key)}")
        value = self.coeffs.get(key)
        if value is None:
            return Scalar(0)
        return value

    def items(self) -> list[tuple[Key, object]]:
        return sorted(self.coeffs.items())

    def nonzero(self) -> dict[Key, object]:
        return {k: v for k, v in self.coeffs.items() if not v.is_zero()}

    def support_ok(self) -> bool:
        bound = 6 * self.g - 6 + 3 * self.n
        return all(sum(2 * k + 1 for k, _ in key) <= bound for key in self.nonzero())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Correlator):
            return NotImplemented
        return (self.g, self.n, self.basis) == (other.g, other.n, other.basis) and self.nonzero() == other.nonzero()

    def to_json(self) -> list:
        return [
            {"indices": [[k, a] for k, a in key], "value": value.to_json()}
            for key, value in self.items()
            if not value.is_zero()
        ]


class RecursionError_(ArithmeticError):
    """The recursion produced inconsistent data (asymmetry or residual)."""


# ---------------------------------------------------------------------------
# the engine

class TopologicalRecursion:
    """Memoized correlators of one curve."""

    def __init__(self, curve: SpectralCurve) -> None:
        self.curve = curve
        self._xi: dict[tuple[int, int], dict[Key, object]] = {}
        self._e_cache: dict[tuple[Index, int], tuple[int, DictSeries]] = {}
        self._w_cache: dict[tuple[int, Key, int], tuple[int, DictSeries]] = {}
        self._inv_cache: dict[int, LaurentSeries] = {}
        self._double: dict[tuple[int, int], dict[Key, dict[tuple[Index, Index], object]]] = {}
        self._single: dict[tuple[int, int], dict[Key, dict[Index, object]]] = {}

    # -- local data ------------------------------------------------------
    def _k_bound(self, g: int, n: int) -> int:
        """Largest k that can appear in omega_{g,n}."""
        return max(3 * g - 3 + n, 0)

    def xi_series(self, index: Index, alpha: int, hi: int) -> DictSeries:
        """Expansion of ``xi_index`` at ``alpha`` up to and including ``s^hi``."""
        key = (index, alpha)
        have = self._e_cache.get(key)
        if have is not None and have[0] >= hi:
            return {e: c for e, c in have[1].items() if e <= hi}
        series = xi_expansion(self.curve, index, alpha, hi + 1)
        self._e_cache[key] = (hi, series)
        return series

    def _inverse_delta_y(self, alpha: int, hi: int) -> DictSeries:
        """``1/(y(s) - y(-s))`` up to and including ``s^hi``."""
        have = self._inv_cache.get(alpha)
        if have is None or have.order <= hi:
            order = hi + 4
            while True:
                y = self.curve.y_local(alpha, order)
                delta = y.odd_part().scale(2)
                if delta.is_zero():
                    raise RecursionError_(f"odd part of y vanishes at branch {alpha}")
                inv = delta.inverse()
                if inv.order > hi:
                    break
                order += hi + 2 - inv.order
            self._inv_cache[alpha] = inv
            have = inv
        return {e: c for e, c in have.terms().items() if e <= hi}

    def _w_series(self, g: int, part: Key, alpha: int, hi: int) -> DictSeries:
        """ds-coefficient of ``omega_{g,|part|+1}(s, part)`` at ``alpha`` up to ``s^hi``.

        ``part`` collects the indices of the remaining points; the result is
        the contraction of the correlator with the first slot expanded.
        """
        ck = (g, part, alpha)
        have = self._w_cache.get(ck)
        if have is not None and have[0] >= hi:
            return {e: c for e, c in have[1].items() if e <= hi}
        out: DictSeries = {}
        if g == 0 and len(part) == 1:
            (k, beta), = part
            # B(z(s), p) = sum_m s^m b_m(p) with b_{2k} = (2k+1) xi_k; odd m drop out of G
            if beta == alpha:
                out[2 * k] = Scalar(2 * k + 1)
        else:
            single = self._slices(g, len(part) + 1).get(part, {})
            for b, v in single.items():
                _scaled_into(out, self.xi_series(b, alpha, hi), v)
        out = {e: c for e, c in out.items() if not c.is_zero()}
        self._w_cache[ck] = (hi, out)
        return out

    def _slices(self, g: int, n: int) -> dict[Key, dict[Index, object]]:
        key = (g, n)
        if key not in self._single:
            table: dict[Key, dict[Index, object]] = {}
            for full, value in self.xi_correlator(g, n).items():
                for pos in range(len(full)):
                    rest = full[:pos] + full[pos + 1 :]
                    table.setdefault(rest, {})[full[pos]] = value
            self._single[key] = table
        return self._single[key]

    def _double_slices(self, g: int, n: int) -> dict[Key, dict[tuple[Index, Index], object]]:
        key = (g, n)
        if key not in self._double:
            table: dict[Key, dict[tuple[Index, Index], object]] = {}
            for full, value in self.xi_correlator(g, n).items():
                for i in range(len(full)):
                    for j in range(len(full)):
                        if i == j:
                            continue
                        rest = tuple(x for p, x in enumerate(full) if p not in (i, j))
                        table.setdefault(rest, {})[(full[i], full[j])] = value
            self._double[key] = table
        return self._double[key]

    # -- the recursion ---------------------------------------------------
    def _g_series(self, g: int, rest: Key, alpha: int, hi: int, pole: int) -> DictSeries:
        """The recursion integrand numerator ``G(s)`` up to ``s^hi``.

        ``pole`` bounds the pole order of every factor, so factors are needed up
        to ``s^(hi + pole)``.
        """
        ext = hi + pole
        G: DictSeries = {}
        # omega_{g-1,n+2}(s, -s, rest)
        if g >= 1 and 2 * (g - 1) + len(rest) > 0:
            pairs = self._double_slices(g - 1, len(rest) + 2).get(rest, {})
            by_first: dict[Index, DictSeries] = {}
            for (a, b), v in pairs.items():
                acc = by_first.setdefault(a, {})
                _scaled_into(acc, _reflect(self.xi_series(b, alpha, ext)), v)
            for a, partner in by_first.items():
                for e, c in _mul(self.xi_series(a, alpha, ext), partner, hi).items():
                    _add_into(G, e, c)
        # products over splittings of genus and of the remaining points
        for left, right, mult in sub_multisets(rest):
            for g1 in range(g + 1):
                g2 = g - g1
                if (g1 == 0 and len(left) == 0) or (g2 == 0 and len(right) == 0):
                    continue
                w1 = self._w_series(g1, left, alpha, ext)
                if not w1:
                    continue
                w2 = self._w_series(g2, right, alpha, ext)
                if not w2:
                    continue
                prod = _mul(w1, _reflect(w2), hi)
                for e, c in prod.items():
                    _add_into(G, e, c * mult)
        # B(s, -s) itself for the (1,1) case
        if g == 1 and not rest:
            _add_into(G, -2, Scalar(Fraction(1, 4)))
            if not self.curve.trivial_kernel:
                table = self.curve.bergman(alpha, alpha, hi + 1)
                for m in range(hi + 1):
                    for mp in range(hi + 1 - m):
                        c = table[(m, mp)]
                        if not c.is_zero():
                            _add_into(G, m + mp, c if mp % 2 == 0 else -c)
        return {e: c for e, c in G.items() if e % 2 == 0 and not c.is_zero()}

    def _harvest(self, g: int, rest: Key, alpha: int, kmax: int) -> dict[int, object]:
        """Coefficients of ``xi^alpha_k`` for ``k <= kmax`` given the other points ``rest``."""
        kind = self.curve.branch(alpha).kind
        lead = 1 if kind == "irregular" else -1  # valuation of 1/Delta y
        hi = -1 - lead  # G beyond this exponent never reaches the residue
        pole = 2 * self._k_bound(g, len(rest) + 2) + 2
        G = self._g_series(g, rest, alpha, hi, pole)
        if not G:
            return {}
        low = min(G)
        inv = self._inverse_delta_y(alpha, -1 - low)
        out: dict[int, object] = {}
        for k in range(kmax + 1):
            target = -1 - 2 * k
            acc = None
            for e, c in G.items():
                d = inv.get(target - e)
                if d is not None:
                    acc = c * d if acc is None else acc + c * d
            if acc is not None and not acc.is_zero():
                out[k] = acc
        return out

    def xi_correlator(self, g: int, n: int) -> dict[Key, object]:
        """``omega_{g,n}`` in the principal-part basis, as ``{sorted key: value}``."""
        if 2 * g - 2 + n <= 0 or n < 1:
            raise ValueError(f"(g, n) = ({g}, {n}) is outside the stable range with n >= 1")
        key = (g, n)
        if key in self._xi:
            return self._xi[key]
        kmax = self._k_bound(g, n)
        indices = [(k, a) for k in range(kmax + 1) for a in self.curve.labels]
        table: dict[Key, object] = {}
        for rest in bounded_multisets(indices, n - 1, kmax):
            for alpha in self.curve.labels:
                budget = kmax - sum(k for k, _ in rest)
                for k, value in self._harvest(g, rest, alpha, budget).items():
                    full = sorted_key(rest + ((k, alpha),))
                    prev = table.get(full)
                    if prev is None:
                        table[full] = value
                    elif prev != value:
                        raise RecursionError_(f"asymmetric correlator at {full}: {prev} vs {value}")
        self._xi[key] = table
        return table

    def xi_entry(self, g: int, first: Index, rest: Iterable[Index]):
        """One coefficient computed with ``first`` as the recursion point (no symmetry used)."""
        rest_key = sorted_key(rest)
        k, alpha = first
        vals = self._harvest(g, rest_key, alpha, k)
        return vals.get(k, Scalar(0))

    def correlator(self, g: int, n: int, basis: str = "V") -> Correlator:
        xi = self.xi_correlator(g, n)
        if basis == "xi":
            return Correlator(g, n, dict(xi), "xi")
        if basis != "V":
            raise ValueError(f"unknown basis {basis!r}")
        return Correlator(g, n, xi_to_v(self.curve, xi, self._k_bound(g, n)), "V")


# ---------------------------------------------------------------------------
# basis change between xi and V

def v_to_xi_matrix(curve: SpectralCurve, kmax: int) -> dict[Index, dict[Index, object]]:
    """Rows ``V^alpha_k = sum_b M[(k,alpha)][b] xi_b``."""
    if curve.trivial_kernel:
        return {
            (k, a): {(k, a): Scalar(double_factorial(2 * k + 1))}
            for k in range(kmax + 1)
            for a in curve.labels
        }
    return curve.v_in_principal_basis(kmax)


def xi_to_v_matrix(curve: SpectralCurve, kmax: int) -> dict[Index, dict[Index, object]]:
    """Rows ``xi_b = sum_a Minv[b][a] V_a`` by back substitution (M is triangular in k)."""
    M = v_to_xi_matrix(curve, kmax)
    inv: dict[Index, dict[Index, object]] = {}
    for k in range(kmax + 1):
        for a in curve.labels:
            row = M[(k, a)]
            diag = row[(k, a)]
            # xi_a = (V_a - sum_{b != a} M[a][b] xi_b) / diag, with k_b < k
            acc: dict[Index, object] = {(k, a): ONE}
            for b, c in row.items():
                if b == (k, a):
                    continue
                if b[0] >= k:
                    raise RecursionError_("V-to-xi matrix is not triangular")
                for t, d in inv[b].items():
                    _add_into(acc, t, -(c * d))
            inv[(k, a)] = {t: v / diag for t, v in acc.items() if not v.is_zero()}
    return inv


def _transform(coeffs: Mapping[Key, object], matrix: Mapping[Index, Mapping[Index, object]]) -> dict[Key, object]:
    """Apply ``matrix`` in every slot of a symmetric table given by sorted keys.

    The table is read as the polynomial ``sum c/prod(mult!) prod x_key`` and
    each variable is replaced by its image ``sum_t matrix[b][t] x_t``.
    """
    out: dict[Key, object] = {}
    for key, value in coeffs.items():
        partial: dict[Key, object] = {(): value * Fraction(1, multiplicity(key))}
        for b in key:
            nxt: dict[Key, object] = {}
            for mono, c in partial.items():
                for t, m in matrix[b].items():
                    _add_into(nxt, sorted_key(mono + (t,)), c * m)
            partial = nxt
        for mono, c in partial.items():
            _add_into(out, mono, c)
    return {k: v * multiplicity(k) for k, v in out.items() if not v.is_zero()}


def multiplicity(key: Key) -> int:
    """``prod mult!`` over the repeated entries of a sorted key."""
    out = 1
    for m in Counter(key).values():
        out *= factorial(m)
    return out


def xi_to_v(curve: SpectralCurve, coeffs: Mapping[Key, object], kmax: int) -> dict[Key, object]:
    return _transform(coeffs, xi_to_v_matrix(curve, kmax))


def v_to_xi(curve: SpectralCurve, coeffs: Mapping[Key, object], kmax: int) -> dict[Key, object]:
    return _transform(coeffs, v_to_xi_matrix(curve, kmax))


def project_to_v_basis(
    curve: SpectralCurve, expansions: Mapping[int, LaurentSeries]
) -> dict[Index, object]:
    """V-basis coefficients of a one-form from its local expansions at every branch.

    Principal parts are read off one branch at a time, deepest pole first, and
    the matching V-differential is subtracted everywhere.  The leftover must
    have no principal part at any branch; otherwise the input was not in the
    span of the V-differentials (for example it had an even principal part).
    """
    work = {a: s for a, s in expansions.items()}
    out: dict[Index, object] = {}
    while True:
        deepest = None
        for a, s in work.items():
            for e, c in s.terms().items():
                if e < 0 and not c.is_zero():
                    if e % 2:
                        raise RecursionError_(f"principal part s^{e} at branch {a} is not skew")
                    if deepest is None or e < deepest[0]:
                        deepest = (e, a, c)
        if deepest is None:
            break
        e, a, c = deepest
        k = (-e - 2) // 2
        coeff = c / double_factorial(2 * k + 1)
        out[(k, a)] = coeff
        from .curve import v_local_expansion

        for b in work:
            v = v_local_expansion(curve, a, k, b, work[b].order)
            work[b] = work[b] - v.scale(coeff)
    return {k: v for k, v in out.items() if not v.is_zero()}
