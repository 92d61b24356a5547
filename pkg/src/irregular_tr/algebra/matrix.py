"""Square matrices of power series in z, truncated at a common order."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalar import ONE, ZERO, Scalar

Matrix = tuple[tuple[Scalar, ...], ...]


def mat_zero(d: int) -> Matrix:
    return tuple(tuple(ZERO for _ in range(d)) for _ in range(d))


def mat_identity(d: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(d)) for i in range(d))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c) -> Matrix:
    return tuple(tuple(x * c for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    d = len(a)
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = ZERO
            for k in range(d):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_is_zero(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse over Q(zeta_8)."""
    d = len(a)
    work = [list(row) + list(ident) for row, ident in zip(a, mat_identity(d))]
    for col in range(d):
        pivot = next((r for r in range(col, d) if not work[r][col].is_zero()), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        inv = work[col][col].inverse()
        work[col] = [x * inv for x in work[col]]
        for r in range(d):
            if r != col and not work[r][col].is_zero():
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[d:]) for row in work)


class MatrixSeries:
    """``sum_{0 <= m < order} M_m z^m`` with D x D scalar matrices ``M_m``."""

    __slots__ = ("dim", "coeffs", "order")

    def __init__(self, coeffs: Sequence[Matrix], order: int | None = None, dim: int | None = None) -> None:
        if dim is None:
            if not coeffs:
                raise ValueError("dimension needed for an empty matrix series")
            dim = len(coeffs[0])
        order = len(coeffs) if order is None else order
        cs = [tuple(tuple(Scalar.coerce(x) for x in row) for row in m) for m in coeffs[:order]]
        cs.extend(mat_zero(dim) for _ in range(order - len(cs)))
        self.dim = dim
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def identity(cls, dim: int, order: int) -> MatrixSeries:
        return cls([mat_identity(dim)], order, dim)

    def coeff(self, m: int) -> Matrix:
        if m >= self.order:
            raise ArithmeticError(f"z^{m} beyond truncation order {self.order}")
        return self.coeffs[m]

    def entry(self, i: int, j: int) -> list[Scalar]:
        """Coefficient list of the (i, j) entry (0-based)."""
        return [m[i][j] for m in self.coeffs]

    def __add__(self, other: MatrixSeries) -> MatrixSeries:
        order = min(self.order, other.order)
        return MatrixSeries([mat_add(a, b) for a, b in zip(self.coeffs, other.coeffs)][:order], order, self.dim)

    def __sub__(self, other: MatrixSeries) -> MatrixSeries:
        return self + other.scale(-1)

    def scale(self, c) -> MatrixSeries:
        return MatrixSeries([mat_scale(m, c) for m in self.coeffs], self.order, self.dim)

    def __mul__(self, other: MatrixSeries) -> MatrixSeries:
        order = min(self.order, other.order)
        out = []
        for n in range(order):
            acc = mat_zero(self.dim)
            for i in range(n + 1):
                a, b = self.coeffs[i], other.coeffs[n - i]
                if not mat_is_zero(a) and not mat_is_zero(b):
                    acc = mat_add(acc, mat_mul(a, b))
            out.append(acc)
        return MatrixSeries(out, order, self.dim)

    def inverse(self) -> MatrixSeries:
        c0_inv = mat_inverse(self.coeffs[0])
        out = [c0_inv]
        for n in range(1, self.order):
            acc = mat_zero(self.dim)
            for i in range(1, n + 1):
                acc = mat_add(acc, mat_mul(self.coeffs[i], out[n - i]))
            out.append(mat_scale(mat_mul(c0_inv, acc), -1))
        return MatrixSeries(out, self.order, self.dim)

    def is_identity(self) -> bool:
        return self == MatrixSeries.identity(self.dim, self.order)

    def log(self) -> MatrixSeries:
        """Logarithm of a series with constant term the identity."""
        if self.coeffs[0] != mat_identity(self.dim):
            raise ValueError("matrix logarithm needs R(0) = Id")
        x = self - MatrixSeries.identity(self.dim, self.order)
        result = MatrixSeries([], self.order, self.dim)
        power = MatrixSeries.identity(self.dim, self.order)
        for m in range(1, self.order):
            power = power * x
            sign = 1 if m % 2 else -1
            result = result + power.scale(Fraction(sign, m))
        return result

    def exp(self) -> MatrixSeries:
        """Exponential of a series with vanishing constant term."""
        if not mat_is_zero(self.coeffs[0]):
            raise ValueError("matrix exponential needs a vanishing constant term")
        result = MatrixSeries.identity(self.dim, self.order)
        power = MatrixSeries.identity(self.dim, self.order)
        fact = 1
        for m in range(1, self.order):
            power = power * self
            fact *= m
            result = result + power.scale(Fraction(1, fact))
        return result

    def transpose(self) -> MatrixSeries:
        return MatrixSeries([mat_transpose(m) for m in self.coeffs], self.order, self.dim)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "order": self.order,
            "entries": [
                [[c.to_json() for c in self.entry(i, j)] for j in range(self.dim)] for i in range(self.dim)
            ],
        }

    def __repr__(self) -> str:
        return f"MatrixSeries(dim={self.dim}, order={self.order}, coeffs={self.coeffs})"
