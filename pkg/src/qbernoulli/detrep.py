"""Determinant representations of the three polynomial families.

Each degree-n member is (-1)^n times the determinant of an (n+1)x(n+1)
matrix whose first row holds weighted powers of z and whose remaining
rows hold q-binomially weighted moment coefficients mu.  The polynomial
is assembled by Laplace expansion along the symbolic first row, so only
scalar minors are ever eliminated; minors use fraction-free Bareiss
elimination after clearing denominators row by row.

The moment ratio (q^(2a+1); q^2)_m / (q^(2a+1); q)_m shares its m=0
factor (1 - q^(2a+1)) between numerator and denominator, and is stored
with that factor cancelled; this keeps alpha = -1/2 (where the shared
factor vanishes) well defined and agrees with the generating function
there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .qcore import QContext, q_binomial, q_factorial, require_exact_alpha
from .series import PolyZ, expq_reciprocal_series


@dataclass(frozen=True)
class ExactMatrix:
    """Square dense matrix of exact rationals."""

    rows: tuple

    def __post_init__(self):
        n = len(self.rows)
        if n < 1:
            raise ValueError("dimension must be >= 1")
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def det(self) -> Fraction:
        return _bareiss_det([list(r) for r in self.rows])


def _bareiss_det(rows) -> Fraction:
    """Fraction-free determinant: clear denominators per row, run the
    Bareiss recurrence over integers (all divisions exact), undo scaling.
    An empty matrix has determinant 1 (the Laplace base case)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    denom = 1
    m = []
    for row in rows:
        scale = lcm(*(c.denominator for c in row))
        denom *= scale
        m.append([int(c * scale) for c in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], denom)


@lru_cache(maxsize=None)
def mu(ctx: QContext, kind: int, m: int) -> Fraction:
    """Moment coefficients of the reciprocal generating scalar.

    Kinds 1 and 2 share
        mu_m = 2^-m prod_{j=1}^{m-1} (1 - q^(2a+1+2j)) / (1 - q^(2a+1+j)),
    the cancelled form of (q^(2a+1);q^2)_m / (2^m (q^(2a+1);q)_m).  Kind 3
    combines the reciprocal exp_q coefficients with the even q-Bessel
    series:
        mu_m = (-1)^m [m]_q! 2^-m sum_k q^(k(k+1/2)) (1-q)^(2k) c_(m-2k)
               / ((q^2;q^2)_k (q^(2a+2);q^2)_k).
    mu_0 = 1 for every kind.
    """
    require_exact_alpha(ctx)
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return Fraction(1)
    a = ctx.alpha
    if kind in (1, 2):
        num = Fraction(1)
        den = Fraction(1)
        for j in range(1, m):
            num *= 1 - ctx.q_pow(2 * a + 1 + 2 * j)
            den *= 1 - ctx.q_pow(2 * a + 1 + j)
        return Fraction(1, 2**m) * num / den
    if kind != 3:
        raise ValueError("kind must be 1, 2 or 3")
    c = expq_reciprocal_series(ctx, m).coeffs
    total = Fraction(0)
    pair = Fraction(1)
    for k in range(m // 2 + 1):
        if k > 0:
            pair *= (1 - ctx.q ** (2 * k)) * (1 - ctx.q_pow(2 * a + 2 * k))
        total += ctx.q_pow_quarters(4 * k * k + 2 * k) * (1 - ctx.q) ** (2 * k) * c[m - 2 * k] / pair
    return Fraction(-1) ** m * q_factorial(ctx, m) / 2**m * total


def row_weight(ctx: QContext, kind: int, j: int) -> Fraction:
    """Weight attached to z**j in the symbolic first row."""
    if kind == 1:
        return Fraction(1)
    if kind == 2:
        return ctx.q ** (j * (j - 1) // 2)
    if kind == 3:
        return ctx.q_pow_quarters(j * (j - 1))
    raise ValueError("kind must be 1, 2 or 3")


@dataclass(frozen=True)
class BernoulliMatrix:
    """(n+1)x(n+1) determinant data: symbolic first row plus scalar block.

    ``weights[j]`` is the coefficient of z**j in row 0; ``scalar_rows``
    holds rows 1..n, each of length n+1.
    """

    kind: int
    weights: tuple
    scalar_rows: tuple

    @property
    def n(self) -> int:
        return len(self.weights) - 1


def build_matrix(ctx: QContext, kind: int, n: int) -> BernoulliMatrix:
    """Assemble the representation matrix for degree n.

    Scalar entries are a_ij = [j choose i-1]_q mu(kind, j-i+1); entries
    with i-1 > j vanish through the binomial convention.
    """
    require_exact_alpha(ctx)
    if n < 0:
        raise ValueError("n must be >= 0")
    weights = tuple(row_weight(ctx, kind, j) for j in range(n + 1))
    rows = []
    for i in range(1, n + 1):
        rows.append(
            tuple(
                q_binomial(ctx, j, i - 1) * mu(ctx, kind, j - i + 1) if j - i + 1 >= 0 else Fraction(0)
                for j in range(n + 1)
            )
        )
    return BernoulliMatrix(kind=kind, weights=weights, scalar_rows=tuple(rows))


@lru_cache(maxsize=None)
def bernoulli_poly_det(ctx: QContext, kind: int, n: int) -> PolyZ:
    """Degree-n family member via the determinant representation.

    The z**j coefficient is (-1)^(n+j) w_j times the minor obtained by
    deleting the symbolic row and column j.
    """
    if n == 0:
        return PolyZ([1])
    matrix = build_matrix(ctx, kind, n)
    coeffs = []
    for j in range(n + 1):
        minor = [list(row[:j]) + list(row[j + 1 :]) for row in matrix.scalar_rows]
        coeffs.append(Fraction(-1) ** (n + j) * matrix.weights[j] * _bareiss_det(minor))
    return PolyZ(coeffs)


def bernoulli_number(ctx: QContext, kind: int, n: int) -> Fraction:
    """Value at z = 0: (-1)^n det of the n x n scalar moment matrix."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    require_exact_alpha(ctx)
    rows = [
        [
            q_binomial(ctx, j, i - 1) * mu(ctx, kind, j - i + 1) if j - i + 1 >= 0 else Fraction(0)
            for j in range(1, n + 1)
        ]
        for i in range(1, n + 1)
    ]
    return Fraction(-1) ** n * _bareiss_det(rows)


def bernoulli_poly_value(ctx: QContext, kind: int, n: int, z) -> Fraction:
    """Exact value at rational z via a single scalar determinant.

    Substitutes z into the symbolic row first, so large-n diagnostics
    avoid the n+1 minors of the full polynomial expansion.  Agrees with
    bernoulli_poly_det(...)(z) and, at z = 0, with bernoulli_number.
    """
    if n == 0:
        return Fraction(1)
    z = Fraction(z)
    matrix = build_matrix(ctx, kind, n)
    rows = [[matrix.weights[j] * z**j for j in range(n + 1)]]
    rows.extend(list(r) for r in matrix.scalar_rows)
    return Fraction(-1) ** n * _bareiss_det(rows)
