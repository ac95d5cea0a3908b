"""Constructor validation, derived constants, physical parameter map, and the
reduction identities between generalized and standard families."""

import math

import numpy as np
import pytest

from anhosc.errors import InvalidParameterError
from anhosc.families import (
    PhysicalMorseParams,
    make_generalized_kratzer_fues,
    make_generalized_morse,
    make_harmonic,
    make_kratzer_fues,
    make_wei_hua,
    morse_dimensionless_from_physical,
)
from anhosc.models import (
    closed_form_potential,
    eval_superpotential,
    eval_superpotential_derivative,
)
from anhosc.states import ground_state


class TestHarmonic:
    def test_basic(self):
        m = make_harmonic()
        assert eval_superpotential(m, 0.0) == 0.0
        assert m.e0 == 0.5
        q = np.linspace(-5, 5, 41)
        np.testing.assert_allclose(closed_form_potential(m, q), 0.5 * (q**2 - 1))


class TestGeneralizedMorse:
    def test_derived_constants(self):
        m = make_generalized_morse(1.0, 0.5)
        assert m.params.c0 == 0.5
        assert m.params.c1 == 1.0

    def test_rejects_nonpositive_anharmonicity(self):
        with pytest.raises(InvalidParameterError):
            make_generalized_morse(1.0, 0.0)
        with pytest.raises(InvalidParameterError):
            make_generalized_morse(1.0, -0.5)

    def test_rejects_s_not_exceeding_xe(self):
        with pytest.raises(InvalidParameterError):
            make_generalized_morse(1.0, 2.0)
        with pytest.raises(InvalidParameterError):
            make_generalized_morse(0.5, 0.5)


class TestWeiHua:
    def test_derived_constants(self):
        m = make_wei_hua(0.2, 1.0, 0.5)
        p = m.params
        assert abs(p.w - 1.4) < 1e-15
        assert abs(p.b - 2.0 / 3.0) < 1e-15
        assert abs(p.big_c - 1.0 / 3.0) < 1e-15
        # c = C / (B/W - C) with B/W - C = 1/7.
        assert abs(p.c - 7.0 / 3.0) < 1e-14
        assert abs(p.q0 - math.log(1.0 / 7.0)) < 1e-14

    def test_domain_follows_pole(self):
        m = make_wei_hua(0.2, 1.0, 0.5)
        assert abs(m.q_lower - math.log(1.0 / 3.0)) < 1e-14
        assert m.q_upper == math.inf

    def test_rejects_degenerate_split(self):
        # B/W - C = 0 leaves q0 undefined.
        with pytest.raises(InvalidParameterError, match="B/W - C"):
            make_wei_hua(0.5, 1.0, 0.5)

    def test_rejects_bad_c2(self):
        with pytest.raises(InvalidParameterError):
            make_wei_hua(0.2, 1.0, 0.0)
        with pytest.raises(InvalidParameterError):
            make_wei_hua(0.2, 1.0, 1.0)

    def test_rejects_nonpositive_c1(self):
        with pytest.raises(InvalidParameterError):
            make_wei_hua(0.2, -1.0, 0.5)
        with pytest.raises(InvalidParameterError):
            make_wei_hua(0.2, 0.0, 0.5)

    def test_superpotential_matches_pole_split_form(self):
        # The stored (c, q0) split must reproduce x(q) written as
        # (c c1/c2) E/(1 - c E) - c0/c1 with E = exp(-c1 (q - q0)).
        m = make_wei_hua(0.2, 1.0, 0.5)
        p = m.params
        q = np.linspace(-1.0, 12.0, 301)
        e = np.exp(-p.c1 * (q - p.q0))
        split_form = (p.c * p.c1 / p.c2) * e / (1.0 - p.c * e) - p.c0 / p.c1
        np.testing.assert_allclose(eval_superpotential(m, q), split_form, atol=1e-12)

    def test_full_line_branch(self):
        # c2 < 0 gives c < 0 and no pole: the domain is the whole line and the
        # superpotential interpolates between two finite limits.
        m = make_wei_hua(1.0, 1.0, -0.5)
        assert m.q_lower == -math.inf
        assert m.params.c < 0.0
        x_left = eval_superpotential(m, -60.0)
        x_right = eval_superpotential(m, 60.0)
        # x(-inf) = -c1/c2 - c0/c1 = 1, x(+inf) = -c0/c1 = -1.
        assert abs(x_left - 1.0) < 1e-12
        assert abs(x_right - (-1.0)) < 1e-12


class TestKratzerFamilies:
    def test_generalized_constants(self):
        m = make_generalized_kratzer_fues(0.75, 0.5)
        assert abs(m.params.s - 0.0) < 1e-15
        assert abs(m.params.two_d - 3.0) < 1e-15
        assert abs(m.params.two_e0 - 0.75) < 1e-15
        assert abs(eval_superpotential(m, 0.0) - 0.5) < 1e-15

    def test_plain_delegates(self):
        m = make_kratzer_fues(0.5)
        assert abs(m.params.c0 - 0.75) < 1e-15
        assert abs(m.params.two_d - 3.0) < 1e-15

    def test_rejects_out_of_range_c1(self):
        with pytest.raises(InvalidParameterError):
            make_generalized_kratzer_fues(0.5, 1.2)
        with pytest.raises(InvalidParameterError):
            make_kratzer_fues(1.0)

    def test_rejects_nonpositive_c0(self):
        with pytest.raises(InvalidParameterError):
            make_generalized_kratzer_fues(0.0, 0.5)


class TestPhysicalMorseMap:
    def test_examples(self):
        x_e, omega_e = morse_dimensionless_from_physical(
            PhysicalMorseParams(d_e=8.0, a=1.0, m=1.0, hbar=1.0)
        )
        assert abs(omega_e - 4.0) < 1e-15
        assert abs(x_e - 0.125) < 1e-15
        x_e, omega_e = morse_dimensionless_from_physical(
            PhysicalMorseParams(d_e=8.0, a=2.0, m=1.0, hbar=1.0)
        )
        assert abs(omega_e - 8.0) < 1e-15
        assert abs(x_e - 0.25) < 1e-15

    def test_rejects_nonpositive(self):
        with pytest.raises(InvalidParameterError):
            PhysicalMorseParams(d_e=0.0, a=1.0, m=1.0)


class TestReductions:
    def test_standard_morse_limit(self):
        # s = 1 must reproduce the standard Morse forms, written here
        # independently: x = (e^{-c1 q} - (1 - x_e))/c1, c1 = sqrt(2 x_e),
        # V - E0 = ((1 - u)^2/(2 x_e) - 1 + x_e/2)/2,
        # psi0 = exp((1 - u)/(2 x_e) - ((1 - x_e)/c1) q).
        x_e = 0.5
        c1 = math.sqrt(2 * x_e)
        m = make_generalized_morse(1.0, x_e)
        q = np.linspace(-3.0, 20.0, 801)
        u = np.exp(-c1 * q)

        x_std = (u - (1 - x_e)) / c1
        v_std = 0.5 * ((1 - u) ** 2 / (2 * x_e) - 1 + 0.5 * x_e)
        psi_std = np.exp((1 - u) / (2 * x_e) - ((1 - x_e) / c1) * q)

        np.testing.assert_allclose(eval_superpotential(m, q), x_std, atol=1e-12)
        np.testing.assert_allclose(closed_form_potential(m, q), v_std, atol=1e-12)
        psi = ground_state(m).evaluator(q)
        np.testing.assert_allclose(psi.real, psi_std, atol=1e-12)

    def test_plain_kratzer_fues_limit(self):
        c1 = 0.5
        gen = make_generalized_kratzer_fues(1 - c1**2, c1)
        plain = make_kratzer_fues(c1)
        q = np.linspace(-1.9, 30.0, 801)
        np.testing.assert_allclose(
            eval_superpotential(gen, q), eval_superpotential(plain, q), atol=1e-12
        )
        np.testing.assert_allclose(
            eval_superpotential_derivative(gen, q),
            eval_superpotential_derivative(plain, q),
            atol=1e-12,
        )
        np.testing.assert_allclose(
            closed_form_potential(gen, q), closed_form_potential(plain, q), atol=1e-12
        )
        np.testing.assert_allclose(
            ground_state(gen).evaluator(q).real,
            ground_state(plain).evaluator(q).real,
            atol=1e-12,
        )


def test_constructor_determinism():
    a = make_wei_hua(0.2, 1.0, 0.5)
    b = make_wei_hua(0.2, 1.0, 0.5)
    assert a == b
    q = np.linspace(-1.0, 10.0, 97)
    np.testing.assert_array_equal(eval_superpotential(a, q), eval_superpotential(b, q))
