"""Point evaluation of the q-special functions: the three q-exponentials,
their trigonometric pairs, the Jackson q-Bessel functions, terminating and
truncated basic hypergeometric sums, and the reciprocal coefficients of
exp_q.

Floating results are mpmath values computed at the context precision with
a certified truncation: each series is summed until an explicit term-ratio
bound shows the tail (plus accumulated rounding slack) is below the target.
Sign decisions near zeros therefore never rest on a bare float comparison;
the ``*_certified`` functions expose the (value, bound) pairs the
root-bracketing machinery consumes.
"""

from __future__ import annotations

import enum
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .qcore import (
    DomainError,
    QBernError,
    QContext,
    q_factorial,
)

GUARD_BITS = 40


def to_mpf(x):
    """Convert int/float/Fraction/mpf to mpf at the current precision."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / mpf(x.denominator)
    return mpf(x)


def certified_sum(first_term, step, workprec, tol=None, max_terms=200_000):
    """Sum a series with a self-certifying geometric tail.

    ``step(n, term)`` must return ``(next_term, ratio_bound)`` where
    ratio_bound >= |a_{m+1}/a_m| for every m >= n and is nonincreasing in
    n.  Returns ``(value, bound)`` with bound covering both the dropped
    tail and the accumulated rounding error at ``workprec`` bits.
    """
    with mp.workprec(workprec):
        if tol is None:
            tol = mpf(2) ** (-workprec + 10)
        total = mpf(first_term)
        abs_total = abs(total)
        term = total
        n = 0
        while True:
            term, ratio = step(n, term)
            n += 1
            total += term
            abs_total += abs(term)
            if ratio < mpf(0.97):
                tail = abs(term) * ratio / (1 - ratio)
                if tail < tol:
                    rounding = abs_total * (n + 4) * mpf(2) ** (2 - workprec)
                    return total, tail + rounding
            if n > max_terms:
                raise QBernError("series failed to certify within %d terms" % max_terms)


def _workprec(ctx: QContext, precision=None):
    return (ctx.float_precision_bits if precision is None else precision) + GUARD_BITS


def rounded_to_context(ctx: QContext, value) -> mpf:
    """Round a working-precision value to the context's stated precision."""
    with mp.workprec(ctx.float_precision_bits):
        return +value


# ---------------------------------------------------------------------------
# q-exponentials


def eval_eq(ctx: QContext, z) -> mpf:
    """e_q(z) = sum z^n (1-q)^n / (q;q)_n, valid for |z| < 1/(1-q)."""
    ctx.require_numeric()
    wp = _workprec(ctx)
    with mp.workprec(wp):
        q = to_mpf(ctx.q)
        z = to_mpf(z)
        if abs(z) * (1 - q) >= 1:
            raise DomainError("e_q is defined only for |z| < 1/(1-q)")
        x = z * (1 - q)

        def step(n, term):
            nxt = term * x / (1 - q ** (n + 1))
            return nxt, abs(x) / (1 - q ** (n + 1))

        value, _ = certified_sum(mpf(1), step, wp)
    return rounded_to_context(ctx, value)


def eval_Eq(ctx: QContext, z) -> mpf:
    """E_q(z) = sum q^(n(n-1)/2) z^n (1-q)^n / (q;q)_n; entire."""
    ctx.require_numeric()
    wp = _workprec(ctx)
    with mp.workprec(wp):
        q = to_mpf(ctx.q)
        x = to_mpf(z) * (1 - q)

        def step(n, term):
            nxt = term * q**n * x / (1 - q ** (n + 1))
            return nxt, abs(x) * q**n / (1 - q ** (n + 1))

        value, _ = certified_sum(mpf(1), step, wp)
    return rounded_to_context(ctx, value)


def eval_Eq_product(ctx: QContext, z) -> mpf:
    """E_q(z) through its product form (-z(1-q); q)_infinity."""
    ctx.require_numeric()
    wp = _workprec(ctx)
    with mp.workprec(wp):
        q = to_mpf(ctx.q)
        a = -to_mpf(z) * (1 - q)
        out = mpf(1)
        tol = mpf(2) ** (-wp + 6)
        while abs(a) > tol:
            out *= 1 - a
            a *= q
    return rounded_to_context(ctx, out)


def eval_expq(ctx: QContext, z) -> mpf:
    """exp_q(z) = sum q^(n(n-1)/4) z^n (1-q)^n / (q;q)_n; entire."""
    ctx.require_numeric()
    wp = _workprec(ctx)
    with mp.workprec(wp):
        q = to_mpf(ctx.q)
        sq = mpmath.sqrt(q)
        x = to_mpf(z) * (1 - q)

        def step(n, term):
            nxt = term * sq**n * x / (1 - q ** (n + 1))
            return nxt, abs(x) * sq**n / (1 - q ** (n + 1))

        value, _ = certified_sum(mpf(1), step, wp)
    return rounded_to_context(ctx, value)


# ---------------------------------------------------------------------------
# q-trigonometric pairs


class QTrigKind(enum.Enum):
    """The three sine/cosine pairs carved out of e_q, E_q and exp_q."""

    sin_q = "sin_q"
    cos_q = "cos_q"
    Sin_q = "Sin_q"
    Cos_q = "Cos_q"
    S_q = "S_q"
    C_q = "C_q"


_TRIG_FAMILY = {
    QTrigKind.sin_q: (1, 1),
    QTrigKind.cos_q: (1, 0),
    QTrigKind.Sin_q: (2, 1),
    QTrigKind.Cos_q: (2, 0),
    QTrigKind.S_q: (3, 1),
    QTrigKind.C_q: (3, 0),
}


def qtrig_certified(ctx: QContext, kind: QTrigKind, z, precision=None):
    """(value, bound) for a q-trig function at real z.

    The functions are the even/odd subseries of the matching q-exponential
    at imaginary argument, with the i-powers resolved to alternating real
    signs; no complex arithmetic is involved.
    """
    ctx.require_numeric()
    family, parity = _TRIG_FAMILY[kind]
    wp = _workprec(ctx, precision)
    with mp.workprec(wp):
        q = to_mpf(ctx.q)
        z = to_mpf(z)
        if z == 0:
            return mpf(1 - parity), mpf(0)
        if family == 1 and abs(z) * (1 - q) >= 1:
            raise DomainError("sin_q/cos_q are defined only for |z| < 1/(1-q)")
        x = z * (1 - q)
        # u(n+2)/u(n) for the exponential weight u: 1, q^(2n+1), q^((2n+1)/2)
        if family == 1:
            weight_step = lambda n: mpf(1)
        elif family == 2:
            weight_step = lambda n: q ** (2 * n + 1)
        else:
            sq = mpmath.sqrt(q)
            weight_step = lambda n: sq ** (2 * n + 1)
        first = x**parity
        for k in range(1, parity + 1):
            first /= 1 - q**k

        def step(m, term):
            n_cur = 2 * m + parity
            f = weight_step(n_cur) * x * x / ((1 - q ** (n_cur + 1)) * (1 - q ** (n_cur + 2)))
            return -term * f, f

        return certified_sum(first, step, wp)


def eval_qtrig(ctx: QContext, kind: QTrigKind, z) -> mpf:
    value, _ = qtrig_certified(ctx, kind, z)
    return rounded_to_context(ctx, value)


# ---------------------------------------------------------------------------
# Jackson q-Bessel functions


def modified_bessel_certified(ctx: QContext, kind: int, base_exponent: int, z, precision=None):
    """(value, bound) for the modified Jackson function of the given kind.

    The modified function drops the infinite-product prefactor and the
    power-of-z factor, so it equals 1 at z = 0.  Base q**base_exponent;
    kind 1 converges only for |z| < 2.
    """
    ctx.require_numeric()
    if kind not in (1, 2, 3):
        raise ValueError("kind must be 1, 2 or 3")
    if base_exponent not in (1, 2):
        raise ValueError("base_exponent must be 1 or 2")
    wp = _workprec(ctx, precision)
    with mp.workprec(wp):
        Q = to_mpf(ctx.q) ** base_exponent
        z = to_mpf(z)
        X = z if kind == 3 else z / 2
        if kind == 1 and abs(X) >= 1:
            raise DomainError("kind-1 q-Bessel series converges only for |z| < 2")
        alpha = to_mpf(ctx.alpha)
        Qa1 = mpmath.power(Q, alpha + 1)

        def step(n, term):
            if kind == 1:
                w = mpf(1)
            elif kind == 2:
                w = mpmath.power(Q, alpha + 2 * n + 1)
            else:
                w = Q ** (n + 1)
            f = w * X * X / ((1 - Q ** (n + 1)) * (1 - Qa1 * Q**n))
            return -term * f, f

        return certified_sum(mpf(1), step, wp)


def modified_bessel_derivative_certified(ctx: QContext, kind: int, z, precision=None):
    """(value, bound) of d/dz of the modified function, base q**2."""
    ctx.require_numeric()
    wp = _workprec(ctx, precision)
    with mp.workprec(wp):
        Q = to_mpf(ctx.q) ** 2
        z = to_mpf(z)
        X = z if kind == 3 else z / 2
        if kind == 1 and abs(X) >= 1:
            raise DomainError("kind-1 q-Bessel series converges only for |z| < 2")
        alpha = to_mpf(ctx.alpha)
        Qa1 = mpmath.power(Q, alpha + 1)
        if kind == 1:
            f0 = X * X / ((1 - Q) * (1 - Qa1))
        elif kind == 2:
            f0 = Qa1 * X * X / ((1 - Q) * (1 - Qa1))
        else:
            f0 = Q * X * X / ((1 - Q) * (1 - Qa1))
        first = -2 * f0 / z

        def step(m, term):
            n = m + 1  # current series index of `term` is n, producing n+1
            if kind == 1:
                w = mpf(1)
            elif kind == 2:
                w = mpmath.power(Q, alpha + 2 * n + 1)
            else:
                w = Q ** (n + 1)
            f = w * X * X / ((1 - Q ** (n + 1)) * (1 - Qa1 * Q**n))
            # term carries the 2n/z factor; the ratio picks up (n+1)/n
            ratio = f * mpf(n + 1) / n
            return -term * f * mpf(n + 1) / n, ratio

        return certified_sum(first, step, wp)


def qpochhammer_infinite(a, q, workprec) -> mpf:
    """(a; q)_infinity with a geometric tail bound below working precision."""
    with mp.workprec(workprec):
        a = to_mpf(a)
        q = to_mpf(q)
        out = mpf(1)
        tol = mpf(2) ** (-workprec + 6)
        while abs(a) > tol:
            out *= 1 - a
            a *= q
        return +out


def eval_modified_bessel(ctx: QContext, kind: int, base_exponent: int, z) -> mpf:
    value, _ = modified_bessel_certified(ctx, kind, base_exponent, z)
    return rounded_to_context(ctx, value)


def eval_bessel(ctx: QContext, kind: int, base_exponent: int, z) -> mpf:
    """Jackson q-Bessel with its prefactor and power-of-z factor (z > 0)."""
    ctx.require_numeric()
    wp = _workprec(ctx)
    with mp.workprec(wp):
        z = to_mpf(z)
        if z <= 0:
            raise DomainError("the unmodified q-Bessel evaluation needs z > 0")
        value, _ = modified_bessel_certified(ctx, kind, base_exponent, z)
        Q = to_mpf(ctx.q) ** base_exponent
        alpha = to_mpf(ctx.alpha)
        prefactor = qpochhammer_infinite(mpmath.power(Q, alpha + 1), Q, wp) / qpochhammer_infinite(
            Q, Q, wp
        )
        X = z if kind == 3 else z / 2
        full = prefactor * mpmath.power(X, alpha) * value
    return rounded_to_context(ctx, full)


# ---------------------------------------------------------------------------
# basic hypergeometric sums (exact)


def _phi_sum(ctx: QContext, uppers, lowers, arg, terms):
    q = ctx.q
    arg = Fraction(arg)
    uppers = [Fraction(u) for u in uppers]
    lowers = [Fraction(l) for l in lowers]
    total = Fraction(0)
    num = Fraction(1)
    den = Fraction(1)
    power = Fraction(1)
    qpoch = Fraction(1)
    m = 0
    while True:
        total += num / (den * qpoch) * power
        if terms is not None and m >= terms:
            return total
        for low in lowers:
            factor = 1 - low * q**m
            if factor == 0:
                raise QBernError("vanishing lower-parameter Pochhammer factor")
            den *= factor
        for u in uppers:
            num *= 1 - u * q**m
        if num == 0:
            # the sum terminates here; later terms all vanish
            return total
        qpoch *= 1 - q ** (m + 1)
        power *= arg
        m += 1
        if terms is None and m > 10_000:
            raise QBernError("hypergeometric sum did not terminate")


def phi21(ctx: QContext, a, b, c, arg, N: int) -> Fraction:
    """Exact partial sum (terms 0..N) of 2phi1(a, b; c; q, arg)."""
    return _phi_sum(ctx, (a, b), (c,), arg, N)


def phi32(ctx: QContext, a1, a2, a3, b1, b2, arg, terms: int | None = None) -> Fraction:
    """Exact 3phi2; with terms=None the sum must terminate (an upper
    parameter of the form q**-n), otherwise terms 0..terms are added."""
    return _phi_sum(ctx, (a1, a2, a3), (b1, b2), arg, terms)


# ---------------------------------------------------------------------------
# reciprocal of exp_q by composition sums


def _compositions(n: int):
    """All ordered tuples of positive integers summing to n."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def recip_expq_coeffs(ctx: QContext, N: int) -> list[Fraction]:
    """Coefficients c_0..c_N of 1/exp_q(z) by explicit composition sums.

    Each composition (s_1..s_k) of n contributes
    (-1)^k q^(sum s_i(s_i-1)/4) / prod [s_i]_q!.  Enumeration is 2**(n-1)
    compositions per n, fine for n up to ~20; the series-division route
    (:func:`qbernoulli.series.expq_reciprocal_series`) scales past that.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    part_weight = [
        ctx.q_pow_quarters(s * (s - 1)) / q_factorial(ctx, s) for s in range(N + 1)
    ]
    out = [Fraction(1)]
    for n in range(1, N + 1):
        total = Fraction(0)
        for comp in _compositions(n):
            prod = Fraction(1)
            for s in comp:
                prod *= part_weight[s]
            total += Fraction(-1) ** len(comp) * prod
        out.append(total)
    return out
