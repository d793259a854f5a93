"""Expansion of admissible entire functions in the type-2 polynomial basis.

A function f(z) = sum f_n z**n whose coefficients decay against the
comparison weights Psi_n = q^(n(n-1)/2) / [n]_q! expands as
f = sum L_n(f) B_n(z) / [n]_q!.  Writing g_k = f_k / Psi_k, the
coefficient functionals reduce to

    L_n(f) = sum_{k >= n} g_k mu_{k-n} / [k-n]_q!,

with mu the type-2 moment coefficients; this is the residue-free form of
the contour-integral definition and is the only computational path used
here.  Finite coefficient streams give exact rational L_n; streams with a
declared geometric bound on g_k are truncated with a certified error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .qcore import QBernError, QContext, q_factorial
from .detrep import bernoulli_poly_det, mu
from .qfun import to_mpf
from .series import PolyZ


@dataclass(frozen=True)
class CoefficientStream:
    """Exact coefficients f_0..f_M with a declared tail policy.

    "finite" promises every coefficient beyond M is zero.  A geometric
    tail with ratio rho promises |f_k / Psi_k| <= |f_M / Psi_M| * rho**(k-M)
    for k > M, i.e. the Borel-scaled coefficients keep decaying at least
    geometrically; that is the decay the expansion theory runs on.
    """

    coefficients: tuple
    tail_kind: str = "finite"
    tail_ratio: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", tuple(Fraction(c) for c in self.coefficients)
        )
        if self.tail_kind not in ("finite", "geometric"):
            raise ValueError("tail_kind must be 'finite' or 'geometric'")
        if self.tail_kind == "geometric":
            if self.tail_ratio is None:
                raise ValueError("a geometric tail needs a ratio")
            ratio = Fraction(self.tail_ratio)
            if ratio < 0:
                raise ValueError("a geometric tail needs a nonnegative ratio")
            object.__setattr__(self, "tail_ratio", ratio)

    @property
    def last_index(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def finite(cls, coefficients) -> "CoefficientStream":
        return cls(tuple(coefficients), "finite", None)

    @classmethod
    def from_json(cls, text: str) -> "CoefficientStream":
        data = json.loads(text)
        coeffs = [Fraction(s) for s in data["coefficients"]]
        tail = data.get("tail", "finite")
        if tail == "finite":
            return cls(tuple(coeffs), "finite", None)
        if isinstance(tail, dict) and "geometric" in tail:
            return cls(tuple(coeffs), "geometric", Fraction(tail["geometric"]))
        raise ValueError("tail must be 'finite' or {'geometric': 'ratio'}")

    def to_json(self) -> str:
        tail = "finite" if self.tail_kind == "finite" else {"geometric": str(self.tail_ratio)}
        return json.dumps(
            {"coefficients": [str(c) for c in self.coefficients], "tail": tail}
        )

    def as_polynomial(self) -> PolyZ:
        if self.tail_kind != "finite":
            raise ValueError("only finite streams are polynomials")
        return PolyZ(self.coefficients)


def psi(ctx: QContext, n: int) -> Fraction:
    """Comparison weight q^(n(n-1)/2) / [n]_q!."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return ctx.q ** (n * (n - 1) // 2) / q_factorial(ctx, n)


def scaled_coefficient(ctx: QContext, stream: CoefficientStream, k: int) -> Fraction:
    """g_k = f_k / Psi_k, the Borel-scaled coefficient."""
    return stream.coefficients[k] / psi(ctx, k)


def tau_estimate(ctx: QContext, stream: CoefficientStream, window) -> mpf:
    """max over the window of |g_n|**(1/n): a diagnostic stand-in for the
    growth type tau, not a certified limit."""
    ctx.require_numeric()
    with mp.workprec(ctx.float_precision_bits + 40):
        best = mpf(0)
        for n in window:
            if n < 1 or n > stream.last_index:
                continue
            g = scaled_coefficient(ctx, stream, n)
            if g == 0:
                continue
            best = max(best, mpmath.power(abs(to_mpf(g)), mpf(1) / n))
        return +best


@dataclass(frozen=True)
class GrowthVerdict:
    """Smallest K with |f_n| <= K q^((n-gamma)^2 / (2k)) over the stream,
    plus the advisory conclusion that bound licenses."""

    min_K: mpf
    order: Fraction
    type_gamma: Fraction
    advisory: str
    tau_bound: mpf | None = None


def growth_classify(ctx: QContext, stream: CoefficientStream, k, gamma) -> GrowthVerdict:
    """Measure the stream against the 1/q-exponential growth scale.

    Order k < 1 implies the tau estimate should tend to 0; order 1 and
    type gamma bound tau by q^(1/2-gamma) / (1-q).  Both are advisory
    diagnostics, never gates.
    """
    ctx.require_numeric()
    k = Fraction(k)
    gamma = Fraction(gamma)
    if k <= 0:
        raise ValueError("order k must be positive")
    with mp.workprec(ctx.float_precision_bits + 40):
        q = to_mpf(ctx.q)
        best = mpf(0)
        for n, f in enumerate(stream.coefficients):
            if f == 0:
                continue
            exponent = to_mpf((Fraction(n) - gamma) ** 2 / (2 * k))
            best = max(best, abs(to_mpf(f)) * mpmath.power(q, -exponent))
        if k < 1:
            return GrowthVerdict(
                min_K=+best,
                order=k,
                type_gamma=gamma,
                advisory="order below one: the tau estimate should tend to 0",
            )
        bound = mpmath.power(q, to_mpf(Fraction(1, 2) - gamma)) / (1 - q)
        return GrowthVerdict(
            min_K=+best,
            order=k,
            type_gamma=gamma,
            advisory="order one, type %s: tau should stay below q^(1/2-gamma)/(1-q)" % gamma,
            tau_bound=+bound,
        )


def _tail_geometry(ctx: QContext):
    """sigma with |mu_j / [j]_q!| <= d * sigma**j / (q;q)_inf-lower-bound.

    Each cancelled-ratio factor of mu_j is at most 1/(1 - q^(2a+2)), so
    |mu_j| <= 2^-j (1 - q^(2a+2))^(1-j) and 1/[j]_q! <= (1-q)^j / (q;q)_inf.
    """
    d = 1 - ctx.q_pow(2 * ctx.alpha + 2)
    sigma = (1 - ctx.q) / (2 * d)
    # rational lower bound for (q; q)_infinity
    m = 40
    qq = Fraction(1)
    p = ctx.q
    for _ in range(m):
        qq *= 1 - p
        p *= ctx.q
    rest = 1 - ctx.q ** (m + 1) / (1 - ctx.q)
    if rest <= 0:
        raise QBernError("cannot truncate")
    return d, sigma, qq * rest


def l_truncation_bound(ctx: QContext, stream: CoefficientStream, n: int) -> Fraction:
    """Certified bound on the part of L_n dropped beyond the stream.

    Zero for finite streams; geometric streams combine the declared decay
    of g_k with the geometric envelope of mu_j / [j]_q!.
    """
    if stream.tail_kind == "finite":
        return Fraction(0)
    M = stream.last_index
    if n > M:
        raise QBernError("cannot truncate")
    d, sigma, qq_lower = _tail_geometry(ctx)
    rho = stream.tail_ratio
    if rho * sigma >= 1:
        raise QBernError("cannot truncate")
    g_M = abs(scaled_coefficient(ctx, stream, M))
    return g_M * d / qq_lower * sigma ** (M - n) * (rho * sigma) / (1 - rho * sigma)


def l_coefficients(ctx: QContext, stream: CoefficientStream, N: int) -> list[Fraction]:
    """L_0..L_N as exact partial sums over the stream.

    Exact for finite streams.  For geometric streams the dropped tail is
    certified first (l_truncation_bound raises "cannot truncate" when the
    declared decay cannot beat the moment envelope), and the returned
    rationals carry that certified error.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    for n in range(N + 1):
        l_truncation_bound(ctx, stream, n)  # raises when not certifiable
    M = stream.last_index
    out = []
    for n in range(N + 1):
        total = Fraction(0)
        for k in range(n, M + 1):
            g = scaled_coefficient(ctx, stream, k)
            if g:
                total += g * mu(ctx, 2, k - n) / q_factorial(ctx, k - n)
        out.append(total)
    return out


def reconstruct_poly(ctx: QContext, stream: CoefficientStream, N: int) -> PolyZ:
    """Exact partial expansion sum_{n<=N} L_n B_n / [n]_q! as a PolyZ.

    For a finite stream with N at least its degree this reproduces the
    stream polynomial identically.
    """
    ls = l_coefficients(ctx, stream, N)
    total = PolyZ()
    for n in range(N + 1):
        if ls[n]:
            total = total + (ls[n] / q_factorial(ctx, n)) * bernoulli_poly_det(ctx, 2, n)
    return total


def reconstruct(ctx: QContext, stream: CoefficientStream, z, N: int) -> mpf:
    """Partial expansion evaluated at real z, in working precision."""
    ctx.require_numeric()
    ls = l_coefficients(ctx, stream, N)
    with mp.workprec(ctx.float_precision_bits + 40):
        z = to_mpf(z)
        total = mpf(0)
        for n in range(N + 1):
            if ls[n]:
                poly = bernoulli_poly_det(ctx, 2, n)
                total += to_mpf(ls[n] / q_factorial(ctx, n)) * poly(z)
        return +total


def _l_by_weights(ctx, stream, N, weight):
    """(o8)-shaped sum with a custom simplified weight W_j standing in for
    mu_j / (q;q)_j."""
    q = ctx.q
    M = stream.last_index
    out = []
    for n in range(N + 1):
        total = Fraction(0)
        for k in range(n, M + 1):
            f = stream.coefficients[k]
            if not f:
                continue
            j = k - n
            qq_k = q_factorial(ctx, k) * (1 - q) ** k
            total += f * q ** Fraction(-k * (k - 1), 2) * qq_k * weight(j)
        out.append(total * Fraction(1 - q) ** (-n))
    return out


def corollary_wrappers(ctx: QContext, stream: CoefficientStream, variant: str, N: int) -> list[Fraction]:
    """The alpha = +-1/2 specializations through their simplified weights.

    "bernoulli" fixes alpha = 1/2, where the moment ratio collapses to
    (-q; q)_j / (q^2; q)_j.  "euler" fixes alpha = -1/2; there the naive
    even/odd product split of the moment ratio double-counts the shared
    vanishing factor, and the correct limit weight is
    2^-j (-q; q)_(j-1) / (q; q)_j (j >= 1).  Both agree exactly with
    l_coefficients on the corresponding context.
    """
    if stream.tail_kind != "finite":
        raise QBernError("cannot truncate")
    q = ctx.q

    if variant == "bernoulli":
        def weight(j):
            num = Fraction(1)
            den = Fraction(1)
            for i in range(j):
                num *= 1 + q ** (1 + i)
                den *= 1 - q ** (2 + i)
            return Fraction(1, 2**j) * num / den
    elif variant == "euler":
        def weight(j):
            if j == 0:
                return Fraction(1)
            num = Fraction(1)
            den = Fraction(1)
            for i in range(j - 1):
                num *= 1 + q ** (1 + i)
            for i in range(j):
                den *= 1 - q ** (1 + i)
            return Fraction(1, 2**j) * num / den
    else:
        raise ValueError("variant must be 'bernoulli' or 'euler'")

    return _l_by_weights(ctx, stream, N, weight)
