"""First positive zeros of the q-Bessel and q-trigonometric functions,
and the large-degree leading terms of the type-2 and type-3 families.

Zero location brackets the first certified sign change by geometric
stepping from the origin, then bisects; every sign decision uses the
tail-bounded evaluations from :mod:`qbernoulli.qfun`, escalating the
working precision when a value sits too close to zero to certify.

The leading term of the degree-n polynomial at real z is

    pref * (-1)^(floor(n/2)+1) * [n]_q! * T_n(z) / ((2c)^(n+1) * J'),

where c is the first Bessel zero scaled into the generating variable,
J' the derivative of the modified Bessel function at that zero, T_n the
parity-matched combination of the family's trigonometric pair at 2cz
and at c, and pref = 2/(1-q) for kind 2 or 4 q^(1/4)/(1-q) for kind 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .qcore import DomainError, QBernError, QContext, q_factorial
from .detrep import bernoulli_poly_value
from .qfun import (
    QTrigKind,
    modified_bessel_certified,
    modified_bessel_derivative_certified,
    qtrig_certified,
    rounded_to_context,
    to_mpf,
)


@dataclass(frozen=True)
class ZeroResult:
    """A located zero: where it is, a sign-change bracket, and how small
    the defining function is at the reported location."""

    location: mpf
    certified_interval: tuple
    residual: mpf


@dataclass(frozen=True)
class AsymptoticTerm:
    """One leading-term value together with the factors that built it."""

    value: mpf
    parity: str
    n: int
    components: dict


def _certified_sign(evaluate, x, precision):
    """Sign of evaluate(x, wp) with the certificate |value| > bound.

    Escalates working precision a few times; if the value stays
    indistinguishable from zero the point is reported as such (sign 0).
    """
    for wp in (precision + 40, precision * 2 + 40, precision * 4 + 80):
        value, bound = evaluate(x, wp)
        if abs(value) > bound:
            return 1 if value > 0 else -1
    return 0


def _resolve_sign(evaluate, x, step, precision):
    """Certified sign at x, nudging slightly right when x sits dead on a
    zero, so bracket endpoints always carry a provable sign."""
    sign = _certified_sign(evaluate, x, precision)
    attempt = 1
    while sign == 0 and attempt <= 50:
        x = x + step / 1024 * attempt
        sign = _certified_sign(evaluate, x, precision)
        attempt += 1
    if sign == 0:
        raise QBernError("could not certify a sign near %s" % x)
    return sign, x


def bracket_first_zero(evaluate, initial_step, precision, search_cap=None):
    """March from 0 with geometrically growing steps until the certified
    sign flips negative, returning the bracketing pair (lo, hi).

    With a search_cap (the kind-1 convergence throttle), the remaining
    stretch below the cap is swept on a fixed grid before reporting that
    no zero exists in range.
    """
    with mp.workprec(precision + 40):
        step = mpf(initial_step)
        lo = mpf(0)
        x = step
        for _ in range(400):
            if search_cap is not None and x >= search_cap:
                grid = 24
                for j in range(1, grid + 1):
                    probe = lo + (search_cap - lo) * j / grid
                    sign, probe = _resolve_sign(evaluate, probe, step, precision)
                    if sign < 0:
                        return lo, probe
                    lo = probe
                raise DomainError("no zero found in search range")
            sign, x = _resolve_sign(evaluate, x, step, precision)
            if sign < 0:
                return lo, x
            lo = x
            step *= mpf(1.5)
            x = lo + step
        raise DomainError("no zero found in search range")


def bisect_zero(evaluate, lo, hi, precision):
    """Shrink a certified (+, -) bracket until its width falls below
    2**-(precision+8); returns (lo, hi, location).

    Both returned endpoints keep certified signs.  When a midpoint sits
    so close to the zero that no affordable precision certifies its
    sign, that midpoint is already a better location than the target
    width asks for; it is returned with the current (certified) bracket.
    """
    with mp.workprec(precision + 40):
        lo = mpf(lo)
        hi = mpf(hi)
        target = mpf(2) ** (-(precision + 8)) * max(mpf(1), hi)
        while hi - lo > target:
            mid = (lo + hi) / 2
            sign = _certified_sign(evaluate, mid, precision)
            if sign == 0:
                return lo, hi, mid
            if sign > 0:
                lo = mid
            else:
                hi = mid
        return lo, hi, (lo + hi) / 2


_zero_cache: dict = {}


def smallest_zero(ctx: QContext, kind: int, precision: int | None = None) -> ZeroResult:
    """First positive zero of the modified q-Bessel function, base q**2.

    Kinds 2 and 3 are entire and always have one; kind 1 is searched only
    on (0, 2) and reports failure when no certified sign change exists
    there.  The result carries a bracket across which the sign provably
    changes and the residual at the reported location.
    """
    ctx.require_numeric()
    if kind not in (1, 2, 3):
        raise ValueError("kind must be 1, 2 or 3")
    precision = ctx.float_precision_bits if precision is None else precision
    key = (ctx.q, ctx.alpha, kind, precision)
    cached = _zero_cache.get(key)
    if cached is not None:
        return cached

    def evaluate(x, wp):
        return modified_bessel_certified(ctx, kind, 2, x, precision=wp - 40)

    with mp.workprec(precision + 40):
        initial = (1 - to_mpf(ctx.q)) / 2
        # the kind-1 series stops certifying as |z| -> 2; sweep up to the
        # throttle point and report absence beyond it
        cap = mpf("1.95") if kind == 1 else None
        if kind == 1:
            initial = min(initial, mpf(1) / 8)
        lo, hi = bracket_first_zero(evaluate, initial, precision, search_cap=cap)
        lo, hi, location = bisect_zero(evaluate, lo, hi, precision)
        value, bound = evaluate(location, precision + 40)
        result = ZeroResult(
            location=location,
            certified_interval=(lo, hi),
            residual=abs(value) + bound,
        )
    _zero_cache[key] = result
    return result


_NAMED = {
    # constant -> (bessel kind, alpha, trig kind, prescale the trig argument by sqrt(q))
    "Sin_q": (2, Fraction(1, 2), QTrigKind.Sin_q, False),
    "Cos_q": (2, Fraction(-1, 2), QTrigKind.Cos_q, False),
    "S_q": (3, Fraction(1, 2), QTrigKind.S_q, False),
    "C_q_scaled": (3, Fraction(-1, 2), QTrigKind.C_q, True),
}


def named_trig_zero(ctx: QContext, which: str, precision: int | None = None) -> ZeroResult:
    """Smallest positive zero of Sin_q, Cos_q, S_q, or z -> C_q(sqrt(q) z).

    Each is the alpha = +-1/2 reduction of a first q-Bessel zero: the
    kind-2 zeros scale by 1/(2(1-q)), the kind-3 zeros by q^(1/4)/(1-q).
    The reported residual is the q-trig function's own value at the
    location, an independent check of the reduction.
    """
    ctx.require_numeric()
    try:
        kind, alpha, trig, prescale = _NAMED[which]
    except KeyError:
        raise ValueError("which must be one of %s" % sorted(_NAMED)) from None
    precision = ctx.float_precision_bits if precision is None else precision
    reduced = ctx.with_alpha(alpha)
    bessel = smallest_zero(reduced, kind, precision)
    with mp.workprec(precision + 40):
        q = to_mpf(ctx.q)
        if kind == 2:
            scale = 1 / (2 * (1 - q))
        else:
            scale = mpmath.power(q, mpf(1) / 4) / (1 - q)
        location = bessel.location * scale
        interval = (bessel.certified_interval[0] * scale, bessel.certified_interval[1] * scale)
        argument = location * mpmath.sqrt(q) if prescale else location
        value, bound = qtrig_certified(reduced, trig, argument, precision=precision)
        return ZeroResult(location=location, certified_interval=interval, residual=abs(value) + bound)


def bessel_derivative_at(ctx: QContext, kind: int, x) -> mpf:
    """d/dz of the modified q-Bessel function (base q**2) at x > 0."""
    ctx.require_numeric()
    if not x > 0:
        raise ValueError("x must be positive")
    value, _ = modified_bessel_derivative_certified(ctx, kind, x)
    return rounded_to_context(ctx, value)


_TRIG_PAIR = {2: (QTrigKind.Cos_q, QTrigKind.Sin_q), 3: (QTrigKind.C_q, QTrigKind.S_q)}


def _frame(ctx: QContext, kind: int, precision: int):
    """Shared per-(q, alpha, kind) data for leading terms: the scaled
    singularity constant (with its location uncertainty), the Bessel
    derivative there, the trig pair at the constant (with series bounds),
    and the family prefactor."""
    key = (ctx.q, ctx.alpha, kind, precision, "frame")
    cached = _zero_cache.get(key)
    if cached is not None:
        return cached
    zero = smallest_zero(ctx, kind, precision)
    cos_kind, sin_kind = _TRIG_PAIR[kind]
    with mp.workprec(precision + 40):
        q = to_mpf(ctx.q)
        if kind == 2:
            scale = 1 / (2 * (1 - q))
            prefactor = 2 / (1 - q)
        else:
            scale = mpmath.power(q, mpf(1) / 4) / (1 - q)
            prefactor = 4 * mpmath.power(q, mpf(1) / 4) / (1 - q)
        constant = zero.location * scale
        lo, hi = zero.certified_interval
        constant_width = (hi - lo) * scale
        derivative, _ = modified_bessel_derivative_certified(
            ctx, kind, zero.location, precision=precision
        )
        cos_at_c, cos_bound = qtrig_certified(ctx, cos_kind, constant, precision=precision)
        sin_at_c, sin_bound = qtrig_certified(ctx, sin_kind, constant, precision=precision)
        frame = (
            constant,
            constant_width,
            prefactor,
            derivative,
            cos_at_c,
            cos_bound,
            sin_at_c,
            sin_bound,
        )
    _zero_cache[key] = frame
    return frame


def leading_term(ctx: QContext, kind: int, n: int, z) -> AsymptoticTerm:
    """Leading asymptotic term of the degree-n polynomial at real z.

    Even degrees pair the cosine-type combination, odd degrees the
    sine-type one; the two parities share the prefactor, the power
    (2c)^(n+1), and the Bessel-derivative denominator.
    """
    if kind not in (2, 3):
        raise ValueError("kind must be 2 or 3")
    if n < 1:
        raise ValueError("n must be >= 1")
    ctx.require_numeric()
    precision = ctx.float_precision_bits
    constant, constant_width, prefactor, derivative, cos_at_c, cos_bound, sin_at_c, sin_bound = (
        _frame(ctx, kind, precision)
    )
    cos_kind, sin_kind = _TRIG_PAIR[kind]
    with mp.workprec(precision + 40):
        z = to_mpf(z)
        cos_at_2cz, cos2_bound = qtrig_certified(ctx, cos_kind, 2 * constant * z, precision=precision)
        sin_at_2cz, sin2_bound = qtrig_certified(ctx, sin_kind, 2 * constant * z, precision=precision)
        if n % 2 == 0:
            parity = "even"
            combination = cos_at_2cz * cos_at_c + sin_at_2cz * sin_at_c
            sign = mpf(-1) ** (n // 2 + 1)
        else:
            parity = "odd"
            combination = sin_at_2cz * cos_at_c - cos_at_2cz * sin_at_c
            sign = mpf(-1) ** ((n - 1) // 2 + 1)
        # indeterminacy certificate for the combination: series bounds plus
        # the zero-location uncertainty times a crude Lipschitz allowance
        magnitudes = abs(cos_at_c) + abs(sin_at_c) + abs(cos_at_2cz) + abs(sin_at_2cz)
        noise = (
            cos_bound * abs(cos_at_2cz)
            + cos2_bound * abs(cos_at_c)
            + sin_bound * abs(sin_at_2cz)
            + sin2_bound * abs(sin_at_c)
            + constant_width * 4 * (1 + abs(z)) * (1 + magnitudes)
        )
        factorial = to_mpf(q_factorial(ctx, n))
        power = (2 * constant) ** (n + 1)
        value = prefactor * sign * factorial * combination / (power * derivative)
        components = {
            "prefactor": prefactor,
            "sign": sign,
            "factorial": factorial,
            "trig_combination": combination,
            "power": power,
            "bessel_derivative": derivative,
            "trig_combination_noise": noise,
        }
        return AsymptoticTerm(value=value, parity=parity, n=n, components=components)


@dataclass(frozen=True)
class RatioRow:
    """One diagnostic row: exact polynomial value against its leading term."""

    n: int
    exact_value: Fraction
    float_value: mpf
    leading: mpf
    abs_ratio_minus_1: mpf | None
    flag: str | None = None


def ratio_diagnostic(ctx: QContext, kind: int, z, n_list) -> list[RatioRow]:
    """|B_n(z)/leading_term - 1| over n_list, with B_n computed exactly.

    A leading term whose trig combination is indistinguishable from zero
    at this z (below its own noise certificate, as happens at the
    parities whose combination vanishes identically) makes the ratio
    meaningless; such rows are flagged "indeterminate" instead.
    """
    z = Fraction(z)
    precision = ctx.float_precision_bits
    rows = []
    for n in n_list:
        exact = bernoulli_poly_value(ctx, kind, n, z)
        term = leading_term(ctx, kind, n, z)
        with mp.workprec(precision + 40):
            float_value = to_mpf(exact)
            combination = term.components["trig_combination"]
            if abs(combination) <= term.components["trig_combination_noise"]:
                rows.append(
                    RatioRow(
                        n=n,
                        exact_value=exact,
                        float_value=float_value,
                        leading=term.value,
                        abs_ratio_minus_1=None,
                        flag="indeterminate",
                    )
                )
                continue
            ratio = abs(float_value / term.value - 1)
        rows.append(
            RatioRow(
                n=n,
                exact_value=exact,
                float_value=float_value,
                leading=term.value,
                abs_ratio_minus_1=ratio,
            )
        )
    return rows
