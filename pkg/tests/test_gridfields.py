import math
import random
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nfbridge.bridge import FieldQuad
from nfbridge.errors import InputError, PreconditionError
from nfbridge.gridfields import (
    Grid1D,
    Grid3Spec,
    GridSpec,
    VectorGrid3,
    bilinear_routes,
    continuity_residual,
    convergence_study,
    curl,
    div,
    energy_density,
    grad,
    lagrangian_eval,
    lagrangian_grid,
    maxwell_residual,
    maxwell_rows,
    poynting_y,
    richardson_order,
    route_discrepancy,
    sample_fields,
    sample_planewave,
    sample_vector,
    traveling_wave,
)
from nfbridge.planewave import (
    PROFILES,
    PhysicalConstants,
    PlaneWaveState,
    random_massive_state,
    random_onshell_massive,
    random_onshell_massless,
)

TWO_PI = 2 * math.pi
MASSLESS = PhysicalConstants(1.0, 1.0, 0.0)


def _floatify(st_):
    return replace(st_, amplitudes=st_.amplitudes.map(complex), omega=float(st_.omega), k=float(st_.k))


def test_grid_spec_uniform():
    spec = GridSpec.uniform(0.25, 1.0, c=2.0, courant=0.5)
    assert (spec.nt, spec.ny) == (5, 5)
    assert spec.dy == 0.25 and spec.dt == pytest.approx(0.0625)
    with pytest.raises(InputError):
        GridSpec.uniform(0.0)
    with pytest.raises(InputError):
        GridSpec(0, 3, 0.1, 0.1)


def test_grid_values_are_read_only_and_shape_checked():
    spec = GridSpec.uniform(0.5)
    g = Grid1D(spec, np.zeros((4, spec.nt, spec.ny)))
    with pytest.raises(ValueError):
        g.values[0, 0, 0] = 1
    with pytest.raises(InputError):
        Grid1D(spec, np.zeros((3, spec.nt, spec.ny)))


def test_sample_planewave_origin():
    g = sample_planewave(PlaneWaveState(FieldQuad(1, 0, 0, 0), 1.0, 1.0), GridSpec.uniform(0.1))
    assert g.component("Ex")[0, 0] == 1


def test_sample_planewave_phase():
    spec = GridSpec.uniform(0.1)
    g = sample_planewave(PlaneWaveState(FieldQuad(1, 0, 0, 0), 2.0, 3.0, "-"), spec)
    t, y = spec.mesh()
    np.testing.assert_allclose(g.component("Ex"), np.exp(-1j * (2.0 * t - 3.0 * y)))


def test_stencil_precondition():
    spec = GridSpec(2, 5, 0.1, 0.1)
    with pytest.raises(PreconditionError):
        continuity_residual(Grid1D(spec, np.zeros((4, 2, 5))))


def test_unknown_system():
    spec = GridSpec.uniform(0.25)
    with pytest.raises(InputError):
        maxwell_residual("9.9", Grid1D(spec, np.zeros((4, spec.nt, spec.ny))))


@pytest.mark.parametrize("system", ["2.14'", "2.14''", "2.18", "2.18*"])
def test_zero_field_zero_residual(system):
    spec = GridSpec.uniform(1 / 16)
    r = maxwell_residual(system, Grid1D(spec, np.zeros((4, spec.nt, spec.ny))), PROFILES["natural"])
    assert r.sup_norm == 0.0 and r.l2_norm == 0.0


@pytest.mark.parametrize("sign", "+-")
def test_massless_second_order(sign):
    q = FieldQuad(1.0, 0.5, -0.5, 1.0) if sign == "+" else FieldQuad(1.0, 0.5, 0.5, -1.0)
    st_ = PlaneWaveState(q, TWO_PI, TWO_PI, sign)
    _, fine = convergence_study(lambda h: maxwell_residual("2.14'", sample_planewave(st_, GridSpec.uniform(h))), 1 / 32)
    assert fine.convergence_order == pytest.approx(2.0, abs=0.1)


def test_massive_second_order():
    st_, consts = random_onshell_massive(random.Random(11), PROFILES["rational"])
    fst = _floatify(st_)
    extent = 2 * math.pi / max(abs(fst.k), abs(fst.omega) / float(consts.c))

    def make(h):
        spec = GridSpec.uniform(h * extent, extent, float(consts.c))
        return maxwell_residual("2.14'", sample_planewave(fst, spec), consts.as_float())

    _, fine = convergence_study(make, 1 / 32)
    assert fine.convergence_order == pytest.approx(2.0, abs=0.1)


def test_off_shell_residual_bounded_away_from_zero():
    st_ = PlaneWaveState(FieldQuad(1.0, 0, 0, 1.0), 0.8 * TWO_PI, TWO_PI)
    sups = [maxwell_residual("2.14'", sample_planewave(st_, GridSpec.uniform(h))).sup_norm for h in (1 / 16, 1 / 32, 1 / 64)]
    analytic = 0.2 * TWO_PI
    for s in sups:
        assert s > 0.5 * analytic


def test_explicit_kappa_flips_currents():
    st_, consts = random_onshell_massive(random.Random(2), PROFILES["natural"])
    g = sample_planewave(_floatify(st_), GridSpec.uniform(1 / 16))
    lhs = maxwell_rows("2.14'", g, consts, 0)
    a = maxwell_rows("2.14'", g, consts, 1)
    b = maxwell_rows("2.14''", g, consts, 1)
    for x, y, l0 in zip(a, b, lhs):
        np.testing.assert_allclose(x - l0, -(y - l0), atol=1e-12)


def test_richardson_order_requires_pair():
    spec = GridSpec.uniform(1 / 8)
    r = maxwell_residual("2.14'", sample_planewave(PlaneWaveState(FieldQuad(1.0, 0, 0, 1.0), 1.0, 1.0), spec))
    with pytest.raises(InputError):
        richardson_order(r, r)


# --- conservation -------------------------------------------------------------
def test_traveling_wave_continuity_analytic_zero():
    # E_x = H_z = cos(phi) with phi = omega t + k y and omega = c k
    omega, k, c = 3.0, 3.0, 1.0
    t, y = np.meshgrid(np.linspace(0, 1, 7), np.linspace(0, 1, 7), indexing="ij")
    phi = omega * t + k * y
    du_dt = -2 * omega * np.cos(phi) * np.sin(phi) / (4 * math.pi)
    ds_dy = 2 * c * k * np.cos(phi) * np.sin(phi) / (4 * math.pi)
    assert np.max(np.abs(du_dt + ds_dy)) == 0.0


def test_continuity_second_order():
    fn = traveling_wave(TWO_PI, TWO_PI)
    coarse, fine = convergence_study(lambda h: continuity_residual(sample_fields(fn, GridSpec.uniform(h))), 1 / 32)
    assert fine.convergence_order == pytest.approx(2.0, abs=0.1)
    assert coarse.sup_norm > fine.sup_norm


def test_continuity_static_field_exact_zero():
    fn = lambda t, y: (0.3 + 0 * t, -1.2 + 0 * t, 0.7 + 0 * t, 2.0 + 0 * t)  # noqa: E731
    assert continuity_residual(sample_fields(fn, GridSpec.uniform(1 / 8))).sup_norm == 0.0


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
@settings(max_examples=30, deadline=None)
def test_bilinear_routes_equal_field_routes(ex, ez, hx, hz):
    g = sample_planewave(PlaneWaveState(FieldQuad(ex, ez, hx, hz), 2.0, 1.0), GridSpec.uniform(0.25))
    for c in (1.0, 3.0):
        u, s = bilinear_routes(g, c)
        np.testing.assert_allclose(u, energy_density(g), atol=1e-12)
        np.testing.assert_allclose(s, poynting_y(g, c), atol=1e-12)
        assert route_discrepancy(g, c) <= 1e-12


# --- Lagrangian ---------------------------------------------------------------
@pytest.mark.parametrize("profile", ["natural", "rational"])
def test_lagrangian_proportional_termwise(profile):
    rng = random.Random(profile)
    base = PROFILES[profile]
    for _ in range(20):
        st_, consts = random_massive_state(rng, base)
        r = lagrangian_eval(st_, consts)
        assert all(r.term_match)
        assert r.kappa_over_4pi == 1 / base.c
        for q, e in zip(r.quantum_terms, r.em_terms):
            assert q == e * r.kappa_over_4pi


def test_lagrangian_onshell_zero_exact():
    rng = random.Random(3)
    for _ in range(10):
        st_, consts = random_onshell_massive(rng, PROFILES["rational"])
        r = lagrangian_eval(st_, consts)
        assert r.quantum_total == 0
        assert sum(r.em_terms, 0 * r.kappa_over_4pi) == 0
        assert sum(r.em_current_terms, 0 * r.kappa_over_4pi) == 0
        m0 = PROFILES["natural"].with_mass(0)
        r0 = lagrangian_eval(random_onshell_massless(rng, m0, rng.choice("+-")), m0)
        assert r0.quantum_total == 0 and r0.em_total == 0


def test_lagrangian_onshell_zero_float():
    rng = random.Random(8)
    for _ in range(10):
        st_, consts = random_onshell_massive(rng, PROFILES["rational"])
        r = lagrangian_eval(_floatify(st_), consts.as_float())
        assert abs(r.quantum_total) < 1e-10 and abs(r.em_total) < 1e-10 and abs(r.em_current_total) < 1e-10


def test_lagrangian_zero_field():
    r = lagrangian_eval(PlaneWaveState(FieldQuad(), Fraction(2), Fraction(1)), PROFILES["natural"])
    assert r.quantum_total == 0 and r.em_total == 0


def test_lagrangian_grid_converges_at_second_order():
    # on shell both discretized Lagrangians and their mismatch are pure truncation error
    st_, consts = random_onshell_massive(random.Random(4), PROFILES["natural"])
    fst = _floatify(st_)
    extent = 2 * math.pi / abs(fst.omega)
    coarse, fine = (
        lagrangian_grid(sample_planewave(fst, GridSpec.uniform(extent / n, extent)), consts.as_float())
        for n in (64, 128)
    )
    scale = max(abs(t) for t in lagrangian_eval(fst, consts.as_float()).quantum_terms)
    assert fine["proportionality_sup"] < 1e-3 * scale
    for key in ("quantum_sup", "em_sup", "proportionality_sup"):
        assert math.log2(coarse[key] / fine[key]) == pytest.approx(2.0, abs=0.1)


# --- 3-D operators --------------------------------------------------------------
def test_grid3_validation():
    with pytest.raises(InputError):
        Grid3Spec(2, 0.1)
    spec = Grid3Spec.cube(0.5)
    with pytest.raises(InputError):
        VectorGrid3(spec, np.zeros((2, spec.n, spec.n, spec.n)))


def test_vector_calculus_identities():
    spec = Grid3Spec.cube(1 / 8)
    v = sample_vector(lambda x, y, z: (y * z, x * x, -x * y), spec)
    f = sample_vector(lambda x, y, z: (x, y, z), spec, lambda x, y, z: x * y * z).scalar
    # quadratics are differentiated exactly by central differences in the interior
    cv = curl(v.components, spec.h)
    x, y, z = spec.mesh()
    expected = np.stack([-x, 2 * y, 2 * x - z])
    np.testing.assert_allclose(cv[:, 1:-1, 1:-1, 1:-1], expected[:, 1:-1, 1:-1, 1:-1], atol=1e-12)
    np.testing.assert_allclose(div(cv, spec.h)[2:-2, 2:-2, 2:-2], 0.0, atol=1e-10)
    np.testing.assert_allclose(curl(grad(f, spec.h), spec.h)[:, 2:-2, 2:-2, 2:-2], 0.0, atol=1e-10)
