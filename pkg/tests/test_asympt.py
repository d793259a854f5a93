from fractions import Fraction

import pytest
from mpmath import mp, mpf

from qbernoulli import (
    DomainError,
    QContext,
    QTrigKind,
    bernoulli_number,
    bessel_derivative_at,
    eval_qtrig,
    leading_term,
    named_trig_zero,
    ratio_diagnostic,
    smallest_zero,
)
from qbernoulli.qfun import modified_bessel_certified, qtrig_certified, to_mpf

# independently frozen from a first run at elevated precision
J2_HALF_HALF = "4.69488616636404696074131131618"
LAMBDA_HALF = "3.0833415183152280211"
MU_HALF = "2.2048737403785302291"


def ctx_q(q, alpha="1/2", bits=128):
    return QContext.from_q(Fraction(q), Fraction(alpha), bits)


class TestSmallestZero:
    def test_kind2_location_and_residual(self):
        ctx = ctx_q("1/2")
        result = smallest_zero(ctx, 2)
        assert result.residual < mpf(2) ** -(128 - 8)
        with mp.workprec(200):
            assert abs(result.location - mpf(J2_HALF_HALF)) < mpf(10) ** -28

    def test_interval_brackets_sign_change(self):
        ctx = ctx_q("1/2")
        for kind in (2, 3):
            result = smallest_zero(ctx, kind)
            lo, hi = result.certified_interval
            assert lo < result.location < hi
            vlo, blo = modified_bessel_certified(ctx, kind, 2, lo, precision=192)
            vhi, bhi = modified_bessel_certified(ctx, kind, 2, hi, precision=192)
            assert vlo > blo and -vhi > bhi  # certified + at lo, - at hi

    def test_positive_before_first_zero(self):
        ctx = ctx_q("1/2")
        result = smallest_zero(ctx, 2)
        for i in range(1, 11):
            x = result.certified_interval[0] * i / mpf(10.5)
            value, bound = modified_bessel_certified(ctx, 2, 2, x)
            assert value > bound

    def test_kind1_reports_absence(self):
        with pytest.raises(DomainError, match="no zero found in search range"):
            smallest_zero(ctx_q("1/2"), 1)

    def test_precision_scaling(self):
        coarse = smallest_zero(ctx_q("1/2", bits=64), 2, precision=64)
        fine = smallest_zero(ctx_q("1/2", bits=160), 2, precision=160)
        with mp.workprec(220):
            assert abs(coarse.location - fine.location) < mpf(2) ** -60


class TestNamedTrigZeros:
    def test_sin_zero_satisfies_equation(self):
        ctx = ctx_q("1/2")
        result = named_trig_zero(ctx, "Sin_q")
        assert result.residual < mpf(2) ** -(128 - 16)
        assert abs(eval_qtrig(ctx, QTrigKind.Sin_q, result.location)) < mpf(2) ** -100

    def test_cos_zero_satisfies_equation(self):
        ctx = ctx_q("1/2")
        result = named_trig_zero(ctx, "Cos_q")
        assert result.residual < mpf(2) ** -(128 - 16)

    def test_reductions_from_bessel_zeros(self):
        ctx = ctx_q("1/2")
        with mp.workprec(180):
            sin_zero = named_trig_zero(ctx, "Sin_q")
            j = smallest_zero(ctx.with_alpha(Fraction(1, 2)), 2)
            assert sin_zero.location == j.location / (2 * (1 - mpf(0.5)))
            s_zero = named_trig_zero(ctx, "S_q")
            assert abs(s_zero.location - mpf(LAMBDA_HALF)) < mpf(10) ** -18

    def test_scaled_c_zero(self):
        # the fourth constant solves C_q(sqrt(q) z) = 0, not C_q(z) = 0
        ctx = ctx_q("1/2")
        result = named_trig_zero(ctx, "C_q_scaled")
        assert result.residual < mpf(2) ** -(128 - 16)
        with mp.workprec(180):
            assert abs(result.location - mpf(MU_HALF)) < mpf(10) ** -18
            unscaled = eval_qtrig(ctx, QTrigKind.C_q, result.location)
            assert abs(unscaled) > mpf(1) / 2  # location is nowhere near a C_q zero

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            named_trig_zero(ctx_q("1/2"), "Tan_q")


class TestBesselDerivative:
    def test_small_argument_behaves_linearly(self):
        ctx = ctx_q("1/2")
        tiny = bessel_derivative_at(ctx, 2, Fraction(1, 2**20))
        assert abs(tiny) < mpf(2) ** -19

    def test_nonzero_and_negative_at_first_zero(self):
        ctx = ctx_q("1/2")
        zero = smallest_zero(ctx, 2)
        derivative = bessel_derivative_at(ctx, 2, zero.location)
        assert derivative < 0
        assert abs(derivative) > mpf(1) / 10


class TestLeadingTerm:
    def test_sign_alternation_in_even_degrees(self):
        ctx = ctx_q("1/2")
        values = [leading_term(ctx, 2, n, Fraction(1, 4)).value for n in (4, 6, 8)]
        assert values[0] * values[1] < 0
        assert values[1] * values[2] < 0

    def test_component_product_is_bit_exact(self):
        ctx = ctx_q("1/2")
        term = leading_term(ctx, 2, 7, Fraction(1, 4))
        c = term.components
        with mp.workprec(128 + 40):
            product = (
                c["prefactor"]
                * c["sign"]
                * c["factorial"]
                * c["trig_combination"]
                / (c["power"] * c["bessel_derivative"])
            )
        assert product == term.value

    def test_zero_argument_reduces_to_number_corollary(self):
        # at z = 0 the even combination collapses to the cosine value at
        # the constant and the odd one to minus the sine value; rebuild
        # both from the components and compare bit-for-bit
        ctx = ctx_q("1/2")
        frame_even = leading_term(ctx, 2, 6, 0)
        frame_odd = leading_term(ctx, 2, 7, 0)
        cos_kind, sin_kind = QTrigKind.Cos_q, QTrigKind.Sin_q
        with mp.workprec(128 + 40):
            constant = smallest_zero(ctx, 2).location / (2 * (1 - mpf(0.5)))
            cos_at_c, _ = qtrig_certified(ctx, cos_kind, constant, precision=128)
            sin_at_c, _ = qtrig_certified(ctx, sin_kind, constant, precision=128)
            assert frame_even.components["trig_combination"] == cos_at_c
            assert frame_odd.components["trig_combination"] == 0 - sin_at_c

    def test_requires_positive_degree(self):
        with pytest.raises(ValueError):
            leading_term(ctx_q("1/2"), 2, 0, 0)


class TestRatioDiagnostic:
    def test_entries_decay_within_parity(self):
        ctx = ctx_q("1/2")
        rows = ratio_diagnostic(ctx, 2, Fraction(1, 4), range(4, 13))
        values = {row.n: row.abs_ratio_minus_1 for row in rows}
        for n in range(4, 11):
            assert values[n + 2] < values[n]

    def test_zero_point_matches_number_route(self):
        ctx = ctx_q("1/2")
        rows = ratio_diagnostic(ctx, 2, 0, [4, 5, 6])
        for row in rows:
            assert row.exact_value == bernoulli_number(ctx, 2, row.n)
            with mp.workprec(168):
                assert row.float_value == to_mpf(bernoulli_number(ctx, 2, row.n))

    def test_vanishing_combination_is_flagged(self):
        # at z = 0 and alpha = 1/2 the odd-degree combination is the sine
        # value at its own zero: the numbers vanish exactly, the computed
        # combination is pure location noise, and the row must say so
        ctx = ctx_q("1/2")
        rows = {row.n: row for row in ratio_diagnostic(ctx, 2, 0, [4, 5, 6, 7])}
        for n in (5, 7):
            assert bernoulli_number(ctx, 2, n) == 0
            assert rows[n].flag == "indeterminate"
            assert rows[n].abs_ratio_minus_1 is None
        for n in (4, 6):
            assert rows[n].flag is None
            assert rows[n].abs_ratio_minus_1 < 1
