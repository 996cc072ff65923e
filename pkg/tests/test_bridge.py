from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from nfbridge.algebra import ENUMERATION, INV_SQRT2, S_CANONICAL, I, Matrix4, canonical_conjugate, dirac_matrix
from nfbridge.bridge import (
    FRAMES,
    Y_MINUS,
    Y_PLUS,
    Bispinor,
    FieldQuad,
    charge_conjugate,
    direction_frames,
    formal_adjoint,
    frame,
    from_bispinor,
    from_primed,
    hermitian_adjoint,
    poynting_bilinear,
    poynting_expected,
    sandwich,
    to_bispinor,
    to_primed,
    transported_adjoint,
)
from nfbridge.errors import InputError, PreconditionError

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
quads = st.builds(FieldQuad, fractions, fractions, fractions, fractions)


def test_to_bispinor_y_minus():
    psi = to_bispinor(FieldQuad(1, 2, 3, 4))
    assert psi.components == (1, 2, 3 * I, 4 * I)


def test_to_bispinor_zero():
    assert all(c == 0 for c in to_bispinor(FieldQuad()))


def test_to_bispinor_y_plus_layout():
    assert Y_PLUS.layout == ("Ez", "Ex", "Hz", "Hx")
    psi = to_bispinor(FieldQuad(1, 2, 3, 4), Y_PLUS)
    assert psi.components == (1, 2, 3 * I, 4 * I)


def test_formal_adjoint_flips_explicit_i_only():
    assert formal_adjoint(to_bispinor(FieldQuad(1, 2, 3, 4))) == (1, 2, -3 * I, -4 * I)
    assert all(c == 0 for c in formal_adjoint(to_bispinor(FieldQuad())))
    # complex amplitudes are not conjugated
    q = FieldQuad(1 + I, 0, 0, 0)
    assert formal_adjoint(to_bispinor(q))[0] == 1 + I
    assert hermitian_adjoint(to_bispinor(q))[0] == 1 - I


def test_charge_conjugate_rule():
    psi = to_bispinor(FieldQuad(1, 2, 3, 4))
    cpsi = charge_conjugate(psi)
    assert cpsi.components == (1, -2, 3 * I, -4 * I)
    assert cpsi.rep == "retarded-conjugated"
    assert charge_conjugate(cpsi).components == psi.components


@given(quads)
@settings(max_examples=50, deadline=None)
def test_bispinor_round_trip(q):
    assert from_bispinor(to_bispinor(q)) == q
    assert charge_conjugate(charge_conjugate(to_bispinor(q))).components == to_bispinor(q).components


def test_bispinor_validation():
    with pytest.raises(InputError):
        Bispinor((1, 2, 3))
    with pytest.raises(PreconditionError):
        Bispinor((1, 2, 3, 4), fields=FieldQuad(1, 2, 3, 4))


def test_to_primed_matches_printed_form():
    ex, ez, hx, hz = (Fraction(1, 2), Fraction(-3), Fraction(5, 7), Fraction(2))
    p = to_primed(to_bispinor(FieldQuad(ex, ez, hx, hz)))
    h = INV_SQRT2
    assert p.components == (h * (ex + I * hx), h * (ez + I * hz), h * (ez - I * hz), h * (-ex + I * hx))
    np.testing.assert_allclose(
        [complex(c) for c in p.components], oracle.S_CANONICAL.conj().T @ oracle.psi(ex, ez, hx, hz)
    )


def test_to_primed_identity():
    psi = to_bispinor(FieldQuad(1, 2, 3, 4))
    assert to_primed(psi, Matrix4.identity()).components == psi.components


def test_to_primed_rejects_non_unitary():
    with pytest.raises(PreconditionError):
        to_primed(to_bispinor(FieldQuad(1, 0, 0, 0)), Matrix4.identity().scale(2))


@given(quads)
@settings(max_examples=15, deadline=None)
def test_bilinears_invariant_under_transport(q):
    psi = to_bispinor(q)
    p = to_primed(psi)
    row_p = transported_adjoint(psi)
    for kind in ENUMERATION:
        m = dirac_matrix(kind)
        assert sandwich(row_p, canonical_conjugate(S_CANONICAL, m), p.components) == sandwich(
            formal_adjoint(psi), m, psi.components
        )
    assert from_primed(p).components == psi.components


def test_six_distinct_frames():
    frames = direction_frames()
    assert set(frames) == {"+", "-"}
    assert len({(f.axis, f.sign) for g in frames.values() for f in g}) == 6
    with pytest.raises(InputError):
        frame("w", "+")


def test_frame_matrix_groups():
    # alpha_2 always multiplies the derivative along the propagation axis
    def tags(axis):
        return {a: frame(axis, "-").matrix_for(a).tag for a in "xyz"}

    assert tags("y") == {"x": "alpha1", "y": "alpha2", "z": "alpha3"}
    assert tags("x") == {"x": "alpha2", "y": "alpha3", "z": "alpha1"}
    assert tags("z") == {"x": "alpha3", "y": "alpha1", "z": "alpha2"}
    for f in FRAMES.values():
        assert f.propagation_kind.tag == "alpha2"


def _cross(e, h):
    return np.cross([e[a] for a in "xyz"], [h[a] for a in "xyz"])


@pytest.mark.parametrize("key", sorted(FRAMES))
@given(q=quads)
@settings(max_examples=20, deadline=None)
def test_poynting_sign_per_frame(key, q):
    fr = FRAMES[key]
    e, h = fr.vectors_from_quad(q)
    s = _cross({k: float(v) for k, v in e.items()}, {k: float(v) for k, v in h.items()})["xyz".index(fr.axis)]
    expected = -2 * s if fr.sign == "-" else 2 * s
    got = poynting_bilinear(q, fr)
    assert got == poynting_expected(q, fr)
    assert complex(got) == pytest.approx(expected, abs=1e-9)


def test_quad_from_vectors_requires_transverse_fields():
    with pytest.raises(PreconditionError):
        Y_MINUS.quad_from_vectors({"x": 1, "y": 1, "z": 0}, {"x": 0, "y": 0, "z": 0})
    assert Y_MINUS.quad_from_vectors({"x": 1, "y": 0, "z": 2}, {"x": 3, "y": 0, "z": 4}) == FieldQuad(1, 2, 3, 4)
