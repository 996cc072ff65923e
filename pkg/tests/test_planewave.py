import random
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from nfbridge.algebra import Matrix4, is_zero
from nfbridge.bridge import FRAMES, FieldQuad, frame
from nfbridge.errors import DegenerateInputError, InputError, PreconditionError, UnsupportedKindError
from nfbridge.planewave import (
    FORMS,
    PRINTED_SYSTEMS,
    PROFILES,
    SYSTEM_PATTERNS,
    PhysicalConstants,
    PlaneWaveState,
    apply_dirac,
    calibrate_kappa,
    current_correspondence,
    get_form,
    klein_gordon_check,
    massless_equivalence,
    per_axis_systems,
    random_complex_quad,
    random_massive_state,
    random_onshell_massive,
    random_onshell_massless,
    row_scale,
    solution_state,
    system_rows,
)

NATURAL = PROFILES["natural"]
RATIONAL = PROFILES["rational"]
positive = st.fractions(min_value=Fraction(1, 10), max_value=20, max_denominator=12)
any_rational = st.fractions(min_value=-20, max_value=20, max_denominator=12)

# kappa/(4 pi) per form against its own system, frozen from the row-by-row calibration
KAPPA = {
    ("natural", "2.13'"): Fraction(-1),
    ("natural", "2.13''"): Fraction(1),
    ("natural", "2.16"): Fraction(1),
    ("natural", "2.17"): Fraction(-1),
    ("rational", "2.13'"): Fraction(-1, 3),
    ("rational", "2.13''"): Fraction(1, 3),
    ("rational", "2.16"): Fraction(1, 3),
    ("rational", "2.17"): Fraction(-1, 3),
}


def test_constants_validation_and_compton():
    with pytest.raises(InputError):
        PhysicalConstants(c=0)
    with pytest.raises(PreconditionError):
        PhysicalConstants(1, 1, 0).compton_length
    for c in PROFILES.values():
        assert c.omega0 * c.compton_length == c.c


def test_form_aliases():
    assert get_form("1.1") is FORMS["2.13'"]
    assert get_form("1.2") is FORMS["2.17"]
    with pytest.raises(UnsupportedKindError):
        get_form("9.9")


def test_state_rejects_bad_sign():
    with pytest.raises(InputError):
        PlaneWaveState(FieldQuad(), 1, 1, "?")


@pytest.mark.parametrize("form", sorted(FORMS))
@given(q=st.builds(FieldQuad, any_rational, any_rational, any_rational, any_rational),
       w=any_rational, k=any_rational, sign=st.sampled_from("+-"))
@settings(max_examples=20, deadline=None)
def test_apply_dirac_matches_numpy_oracle(form, q, w, k, sign):
    consts = RATIONAL
    f = get_form(form)
    st_ = PlaneWaveState(q, w, k, sign)
    p = -float(k) if sign == "+" else float(k)  # p = -+ hbar k with hbar folded in below
    hbar = float(consts.hbar)
    ref = oracle.dirac_rows(
        f.p_sign, f.m_sign, hbar * float(w), hbar * p, float(consts.m), float(consts.c),
        tuple(float(v) for v in q), f.side,
    )
    got = np.array([complex(v) for v in apply_dirac(form, st_, consts)])
    np.testing.assert_allclose(got, ref, atol=1e-9)


def test_zero_amplitudes_give_zero_rows():
    st_ = PlaneWaveState(FieldQuad(), Fraction(3), Fraction(2))
    for form in FORMS:
        assert all(v == 0 for v in apply_dirac(form, st_, RATIONAL))


@given(w=any_rational, k=any_rational, sign=st.sampled_from("+-"))
@settings(max_examples=50, deadline=None)
def test_klein_gordon_identities(w, k, sign):
    r = klein_gordon_check(PlaneWaveState(FieldQuad(), w, k, sign), NATURAL.with_mass(0))
    assert r.holds
    assert r.alpha_p_square.is_zero


def test_klein_gordon_examples():
    c = PhysicalConstants(Fraction(1), Fraction(1), Fraction(0))
    r = klein_gordon_check(PlaneWaveState(FieldQuad(), Fraction(2), Fraction(1)), c)
    assert r.factored == Matrix4.identity().scale(3)
    on = klein_gordon_check(PlaneWaveState(FieldQuad(), Fraction(5), Fraction(5)), c)
    assert on.factored.is_zero


@pytest.mark.parametrize("form", ["2.10", "2.11"])
@pytest.mark.parametrize("sign", "+-")
@given(k=positive)
@settings(max_examples=10, deadline=None)
def test_massless_equivalence(form, sign, k):
    for consts in (NATURAL.with_mass(0), RATIONAL.with_mass(0)):
        on = massless_equivalence(consts.c * k, k, consts, sign, form)
        assert on.null_dim == 2 and on.rows_ok
        off = massless_equivalence(consts.c * k + Fraction(1, 3), k, consts, sign, form)
        assert off.null_dim == 0


def test_massless_equivalence_rejects_massive_form():
    with pytest.raises(InputError):
        massless_equivalence(1, 1, NATURAL, "+", "2.16")


def test_massless_polarizations():
    # '+' : H_z = E_x, H_x = -E_z ; '-' : H_z = -E_x, H_x = E_z
    rng = random.Random(2)
    for sign, sx, sz in (("+", 1, -1), ("-", -1, 1)):
        st_ = random_onshell_massless(rng, NATURAL.with_mass(0), sign)
        ex, ez, hx, hz = st_.amplitudes
        assert hz == sx * ex and hx == sz * ez
        assert all(is_zero(v, 0.0) for v in apply_dirac("2.11", st_, NATURAL.with_mass(0)))


def test_off_shell_massless_residual_nonzero():
    st_ = PlaneWaveState(FieldQuad(1, 0, 0, 1), Fraction(2), Fraction(1))
    assert any(v != 0 for v in apply_dirac("2.11", st_, NATURAL.with_mass(0)))


@pytest.mark.parametrize("profile", ["natural", "rational"])
@pytest.mark.parametrize("form", ["2.13'", "2.13''", "2.16", "2.17"])
def test_kappa_frozen_and_shared(profile, form):
    rng = random.Random(f"{profile}:{form}")
    base = PROFILES[profile]
    for _ in range(15):
        st_, consts = random_massive_state(rng, base)
        r = current_correspondence(form, st_, consts)
        assert r.all_match
        assert r.kappa_over_4pi == KAPPA[(profile, form)]
    assert calibrate_kappa(form, base) == KAPPA[(profile, form)]


def test_kappa_float_mode_agrees():
    rng = random.Random(9)
    st_, consts = random_massive_state(rng, RATIONAL)
    fst = replace(st_, amplitudes=st_.amplitudes.map(complex), omega=float(st_.omega), k=float(st_.k))
    r = current_correspondence("2.16", fst, consts.as_float())
    assert r.all_match
    assert complex(r.kappa_over_4pi).real == pytest.approx(1 / 3)
    assert r.kappa == pytest.approx(4 * np.pi / 3)


def test_hermitian_pair_opposite_currents():
    assert KAPPA[("natural", "2.13'")] == -KAPPA[("natural", "2.13''")]


@pytest.mark.parametrize(
    "form,system,expected", [("2.16", "2.14'", 1), ("2.13'", "2.18", -1), ("2.13''", "2.18*", 1), ("2.17", "2.14''", -1)]
)
def test_charge_conjugation_kappa(form, system, expected):
    rng = random.Random(4)
    for _ in range(10):
        st_, consts = random_massive_state(rng, NATURAL)
        r = current_correspondence(form, st_, consts, system, conjugate=True)
        assert r.all_match and r.kappa_over_4pi == expected


def test_massless_limit_has_no_kappa():
    rng = random.Random(1)
    st_ = PlaneWaveState(random_complex_quad(rng), Fraction(3), Fraction(2))
    r = current_correspondence("2.13'", st_, NATURAL.with_mass(0))
    assert r.kappa_over_4pi is None and r.kappa is None


def test_zero_state_is_degenerate():
    with pytest.raises(DegenerateInputError):
        current_correspondence("2.16", PlaneWaveState(FieldQuad(), Fraction(2), Fraction(1)), NATURAL)


def test_system_patterns_reproduce_printed_groups():
    for ax in "xyz":
        assert system_rows("2.18", frame(ax, "+")) == PRINTED_SYSTEMS[f"5.1{ax}"]
    assert system_rows("2.18", frame("y", "-")) == PRINTED_SYSTEMS["2.18"]
    assert system_rows("2.14'", frame("y", "-")) == PRINTED_SYSTEMS["2.14'"]
    assert system_rows("2.14''", frame("y", "-")) == PRINTED_SYSTEMS["2.14''"]


@pytest.mark.parametrize("key", sorted(FRAMES))
def test_per_axis_systems_match_dirac_rows(key):
    fr = FRAMES[key]
    rng = random.Random(7)
    form = get_form("2.16")
    for _ in range(5):
        st_, consts = random_massive_state(rng, RATIONAL)
        st_ = replace(st_, frame=fr)
        rows = per_axis_systems(fr.axis, fr.sign, st_, consts)
        dirac = apply_dirac(form, st_, consts)
        for (t, *_), r in zip(SYSTEM_PATTERNS["2.18"], rows):
            assert dirac[t] == row_scale(form, t, consts) * r
    zero = per_axis_systems("x", "+", PlaneWaveState(FieldQuad(), Fraction(2), Fraction(1)), NATURAL)
    assert all(v == 0 for v in zero)


def test_onshell_massive_solutions():
    rng = random.Random(3)
    for form in ("2.13'", "2.16"):
        st_, consts = random_onshell_massive(rng, RATIONAL, form)
        assert all(v == 0 for v in apply_dirac(form, st_, consts))
    with pytest.raises(DegenerateInputError):
        solution_state("2.16", Fraction(1), Fraction(5), NATURAL)
    with pytest.raises(InputError):
        solution_state("2.17", Fraction(1), Fraction(5), NATURAL)
