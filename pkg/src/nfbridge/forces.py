"""Force densities from the energy-momentum and spin tensors, ring balance, hydrodynamics.

Plane-wave evaluations keep the formal (unconjugated) product convention of
the bispinor adjoint: a product of two components carries the phase
``exp(-2i(omega t +- k y))``, so its derivatives are twice the single-field
factors, and values are reported at zero phase.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .algebra import I, Matrix4, MatrixKind, close, dirac_matrix, is_exact, is_zero
from .bilinears import TENSOR_ORDER, TENSOR_SIGN, bilinear
from .bridge import Y_MINUS, FieldQuad
from .errors import InputError, PreconditionError
from .gridfields import (
    COMPONENTS,
    Grid1D,
    Grid3Spec,
    ResidualReport,
    VectorGrid3,
    _interior,
    _report,
    _require_stencil,
    curl,
    d_dt,
    d_dy,
    grad,
    report3,
    sample_vector,
)
from .planewave import PhysicalConstants, PlaneWaveState

AXES4 = "xyzt"
SPIN_MODES = {"z": ("Ex", "Hz"), "x": ("Ez", "Hx")}


# ---------------------------------------------------------------------------
# Symmetric energy-momentum tensor
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class EMTensor:
    tau_ij: tuple[tuple, tuple, tuple]
    tau_i0: tuple
    tau_00: object

    def component(self, mu: int, nu: int):
        """``tau_{mu nu}`` with 0 the time index and 1..3 the spatial ones."""
        if mu == 0 and nu == 0:
            return self.tau_00
        if mu == 0:
            return self.tau_i0[nu - 1]
        if nu == 0:
            return self.tau_i0[mu - 1]
        return self.tau_ij[mu - 1][nu - 1]


def em_tensor(e: Mapping, h: Mapping) -> EMTensor:
    """``tau_ij = -(E_i E_j + H_i H_j) + delta_ij (E^2 + H^2)/2``, ``tau_i0 = E x H``, ``tau_00 = (E^2 + H^2)/2``.

    ``delta_ij`` is the ordinary Kronecker delta.
    """
    ev = [e[a] for a in "xyz"]
    hv = [h[a] for a in "xyz"]
    half = sum(v * v for v in ev + hv) / 2
    tij = tuple(
        tuple(-(ev[i] * ev[j] + hv[i] * hv[j]) + (half if i == j else 0) for j in range(3)) for i in range(3)
    )
    ti0 = (
        ev[1] * hv[2] - ev[2] * hv[1],
        ev[2] * hv[0] - ev[0] * hv[2],
        ev[0] * hv[1] - ev[1] * hv[0],
    )
    return EMTensor(tij, ti0, half)


def _require_y_ansatz(e: Mapping, h: Mapping) -> None:
    for name, v in (("E_y", e.get("y", 0)), ("H_y", h.get("y", 0))):
        if not np.all(np.asarray(v) == 0):
            raise PreconditionError(f"{name} must vanish for a wave along y")


@dataclass(frozen=True)
class ForceComponents:
    f_x: object
    f_y: object
    f_z: object
    f_0: object
    tensor: str

    def as_tuple(self) -> tuple:
        return (self.f_x, self.f_y, self.f_z, self.f_0)


def symmetric_force(e: Mapping, h: Mapping, dt: float, dy: float, c: float = 1.0) -> ForceComponents:
    """``f_mu = -(1/4 pi) (d_0 tau_mu0 + d_y tau_muy)`` with ``x_0 = c t``.

    Fields are arrays over a ``(t, y)`` lattice; results cover interior points.
    """
    _require_y_ansatz(e, h)
    full_e = {a: np.asarray(e.get(a, 0.0), dtype=float) for a in "xyz"}
    full_h = {a: np.asarray(h.get(a, 0.0), dtype=float) for a in "xyz"}
    shape = np.broadcast_shapes(*(v.shape for v in list(full_e.values()) + list(full_h.values())))
    if len(shape) != 2 or min(shape) < 3:
        raise PreconditionError("need a (t, y) lattice with at least 3 points per axis")
    tau = em_tensor({a: np.broadcast_to(v, shape) for a, v in full_e.items()},
                    {a: np.broadcast_to(v, shape) for a, v in full_h.items()})

    def force(mu: int) -> np.ndarray:
        d0 = np.gradient(np.broadcast_to(tau.component(mu, 0), shape), c * dt, axis=0)
        dyy = np.gradient(np.broadcast_to(tau.component(mu, 2), shape), dy, axis=1)
        return _interior(-(d0 + dyy) / (4 * math.pi))

    return ForceComponents(force(1), force(2), force(3), force(0), "symmetric")


def symmetric_force_closed(e: Mapping, h: Mapping, dt: float, dy: float, c: float = 1.0) -> ForceComponents:
    """``f_y = -(dg_y/dt + dU/dy)``, ``f_0 = -((1/c) dU/dt + c div g)``, ``f_x = f_z = 0``."""
    _require_y_ansatz(e, h)
    ex, ez = (np.asarray(e.get(a, 0.0), dtype=float) for a in "xz")
    hx, hz = (np.asarray(h.get(a, 0.0), dtype=float) for a in "xz")
    u = (ex * ex + ez * ez + hx * hx + hz * hz) / (8 * math.pi)
    g_y = (ez * hx - ex * hz) / (4 * math.pi * c)
    f_y = -(np.gradient(g_y, dt, axis=0) + np.gradient(u, dy, axis=1))
    f_0 = -(np.gradient(u, dt, axis=0) / c + c * np.gradient(g_y, dy, axis=1))
    zero = np.zeros_like(_interior(u))
    return ForceComponents(zero, _interior(f_y), zero, _interior(f_0), "symmetric")


def grid_fields(grid: Grid1D) -> tuple[dict, dict]:
    """Real ``E`` and ``H`` component arrays of a y-wave grid."""
    ex, ez, hx, hz = grid.values.real
    return {"x": ex, "y": 0.0, "z": ez}, {"x": hx, "y": 0.0, "z": hz}


def symmetric_force_planewave(state: PlaneWaveState, c=1) -> ForceComponents:
    """``4 pi f_mu`` of a plane wave at zero phase, exact when the inputs are."""
    ex, ez, hx, hz = state.amplitudes
    e = {"x": ex, "y": 0, "z": ez}
    h = {"x": hx, "y": 0, "z": hz}
    tau = em_tensor(e, h)
    d0 = 2 * state.dt_factor / c
    dy = 2 * state.dy_factor
    f = [-(d0 * tau.component(mu, 0) + dy * tau.component(mu, 2)) for mu in range(4)]
    return ForceComponents(f[1], f[2], f[3], f[0], "symmetric (times 4 pi)")


# ---------------------------------------------------------------------------
# Spin tensor
# ---------------------------------------------------------------------------
def spin_tensor(fields: FieldQuad) -> dict[tuple[str, str], object]:
    """Table components ``alpha_ab`` for ``a, b`` in ``x, y, z, t``."""
    out = {}
    for a, mu in zip(AXES4, TENSOR_ORDER):
        for b, nu in zip(AXES4, TENSOR_ORDER):
            val = 0 if mu == nu else TENSOR_SIGN[mu] * TENSOR_SIGN[nu] * bilinear(MatrixKind.tensor(mu, nu), fields)
            out[(a, b)] = val
    return out


@dataclass(frozen=True)
class SpinTensorField:
    """Spin-tensor components sampled on a ``(t, y)`` lattice."""

    spec: object
    components: dict

    @classmethod
    def from_grid(cls, grid: Grid1D) -> SpinTensorField:
        v = grid.values
        psi = np.stack([v[0], v[1], 1j * v[2], 1j * v[3]])
        row = psi * np.array([1, 1, -1, -1])[:, None, None]
        comps = {}
        for a, mu in zip(AXES4, TENSOR_ORDER):
            for b, nu in zip(AXES4, TENSOR_ORDER):
                m = dirac_matrix(MatrixKind.tensor(mu, nu)).to_numpy().astype(complex)
                val = np.einsum("i...,ij,j...->...", row, m, psi)
                comps[(a, b)] = TENSOR_SIGN[mu] * TENSOR_SIGN[nu] * val
        return cls(grid.spec, comps)

    def antisymmetry_defect(self) -> float:
        return max(float(np.max(np.abs(self.components[(a, b)] + self.components[(b, a)])))
                   for a in AXES4 for b in AXES4)

    def force(self, c: float = 1.0) -> ForceComponents:
        """``f_a = -(1/4 pi)(d_y alpha_ay + (1/c) d_t alpha_at)`` on interior points."""
        spec = self.spec
        _require_stencil(spec)

        def f(a: str) -> np.ndarray:
            r = d_dy(self.components[(a, "y")], spec) + d_dt(self.components[(a, "t")], spec) / c
            return _interior(-r / (4 * math.pi))

        return ForceComponents(f("x"), f("y"), f("z"), f("t"), "spin")


def _derivatives(state: PlaneWaveState, spin=None, mode: str | None = None):
    """Values and multiplicative ``d_t``, ``d_y`` images of the four components."""
    exact = is_exact(state.omega) and is_exact(state.k)
    vals = dict(zip(COMPONENTS, state.amplitudes))
    dt = {n: state.dt_factor * v for n, v in vals.items()}
    dy = {n: state.dy_factor * v for n, v in vals.items()}
    if spin is not None:
        if mode not in SPIN_MODES:
            raise InputError(f"spinning mode must be one of {sorted(SPIN_MODES)}, got {mode!r}")
        iw = I * spin if exact and is_exact(spin) else 1j * spin
        for n in SPIN_MODES[mode]:
            dt[n] = dt[n] + iw * vals[n]
    return vals, dt, dy


def bracket_fx(v, dt, dy, c):
    """``2 pi f_x`` as four free-Maxwell brackets."""
    return (
        v["Ex"] * (dt["Hz"] / c - dy["Ex"])
        + v["Hz"] * (dt["Ex"] / c - dy["Hz"])
        + v["Hx"] * (dt["Ez"] / c + dy["Hx"])
        + v["Ez"] * (dt["Hx"] / c + dy["Ez"])
    )


def bracket_fz(v, dt, dy, c):
    """``2 pi f_z`` from ``alpha_zy`` and ``alpha_zt`` as four free-Maxwell brackets."""
    return (
        v["Ex"] * (dt["Hx"] / c + dy["Ez"])
        + v["Hx"] * (dt["Ex"] / c - dy["Hz"])
        - v["Ez"] * (dt["Hz"] / c - dy["Ex"])
        - v["Hz"] * (dt["Ez"] / c + dy["Hx"])
    )


def printed_second_line(v, dt, dy, c):
    """The second bracket line as printed (uniform ``1/c`` on time derivatives)."""
    return (
        v["Ex"] * (dt["Hx"] / c - dy["Ez"])
        - v["Hz"] * (dt["Ez"] / c - dy["Hx"])
        + v["Hx"] * (dt["Ex"] / c + dy["Hz"])
        - v["Ez"] * (dt["Hz"] / c + dy["Ex"])
    )


def spinning_closed_form(mode: str, amplitudes: FieldQuad, omega, c=1):
    """``2 pi`` times the printed spinning-photon force of ``mode``."""
    ex, ez, hx, hz = amplitudes
    exact = all(is_exact(x) for x in (omega, c, *amplitudes))
    unit_i = I if exact else 1j
    if mode == "z":
        return unit_i * omega * ex * (ex + hz) / c
    if mode == "x":
        return -unit_i * omega * ez * (ez - hx) / c
    raise InputError(f"spinning mode must be 'z' or 'x', got {mode!r}")


@dataclass(frozen=True)
class SpinForce:
    """``2 pi f`` components of the spin-tensor force at zero phase.

    ``spinning_value`` is the bracket line that gains the substitution term
    for the chosen mode (the ``f_x`` line for both modes) and
    ``closed_form`` is the printed spinning expression it is compared with.
    """

    two_pi_f: tuple
    second_line_printed: object
    tensor_route: tuple | None = None
    mode: str | None = None
    spinning_value: object = None
    closed_form: object = None

    @property
    def f(self) -> tuple:
        return tuple(complex(v) / (2 * math.pi) for v in self.two_pi_f)

    @property
    def is_zero(self) -> bool:
        return all(is_zero(v) for v in self.two_pi_f)

    @property
    def closed_form_match(self) -> bool:
        return self.closed_form is not None and close(self.spinning_value, self.closed_form, rel=1e-9, abs_tol=1e-9)

    @property
    def second_line_discrepancy(self):
        """Printed second line minus the tensor-derived ``2 pi f_z``."""
        return self.second_line_printed - self.two_pi_f[2]


def spin_force(
    state: PlaneWaveState, constants: PhysicalConstants = PhysicalConstants(), spin=None, mode: str = "z"
) -> SpinForce:
    """Spin-tensor force of a y-wave, optionally with the spinning substitution.

    Without spinning the force is also computed directly from the tensor
    bilinears (``tensor_route``) as a cross-check of the bracket lines.
    """
    if state.frame != Y_MINUS:
        raise PreconditionError("the spin force is written for the y frame")
    c = constants.c
    v, dt, dy = _derivatives(state, spin, mode if spin is not None else None)
    fx = bracket_fx(v, dt, dy, c)
    fz = bracket_fz(v, dt, dy, c)
    line_b = printed_second_line(v, dt, dy, c)
    zero = 0 * fx
    if spin is None:
        alpha = spin_tensor(state.amplitudes)
        d_t, d_y = 2 * state.dt_factor, 2 * state.dy_factor
        route = tuple(-(d_y * alpha[(a, "y")] + d_t * alpha[(a, "t")] / c) / 2 for a in "xyzt")
        return SpinForce((fx, zero, fz, zero), line_b, route)
    closed = spinning_closed_form(mode, state.amplitudes, spin, c)
    return SpinForce((fx, zero, fz, zero), line_b, None, mode, fx, closed)


# ---------------------------------------------------------------------------
# Ring balance
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class RingConfig:
    rho_e: object
    j_tau: object
    E_p: object
    H_p: object
    r_p: object = None
    omega_p: object = None
    c: object = 1

    @classmethod
    def from_density(cls, rho_e, E_p, H_p, c=1, **kw) -> RingConfig:
        return cls(rho_e, rho_e * c, E_p, H_p, c=c, **kw)


def ring_force(cfg: RingConfig):
    """Radial force density ``rho_e E_p - (1/c) j_tau H_p = rho_e (E_p - H_p)``."""
    if not close(cfg.rho_e * cfg.c, cfg.j_tau):
        raise PreconditionError(f"ring needs rho_e c = j_tau, got {cfg.rho_e * cfg.c} vs {cfg.j_tau}")
    c = Fraction(cfg.c) if isinstance(cfg.c, Rational) else cfg.c
    return cfg.rho_e * cfg.E_p - cfg.j_tau * cfg.H_p / c


# ---------------------------------------------------------------------------
# Hydrodynamic form
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class LambGromeka:
    residual: np.ndarray
    lorentz: np.ndarray
    report: ResidualReport


def lamb_gromeka_residual(
    g: VectorGrid3, u: np.ndarray, v: VectorGrid3, dg_dt: np.ndarray | None = None
) -> LambGromeka:
    """``R = dg/dt + grad U - v x curl g`` and ``f_L = dg/dt + grad U``."""
    spec = g.spec
    if v.spec != spec or np.shape(u) != (spec.n,) * 3:
        raise InputError("g, U and v must share one grid")
    dgt = np.zeros_like(g.components) if dg_dt is None else np.asarray(dg_dt, dtype=float)
    if dgt.shape != g.components.shape:
        raise InputError("dg/dt must match g")
    f_l = dgt + grad(np.asarray(u, dtype=float), spec.h)
    r = f_l - np.cross(v.components, curl(g.components, spec.h), axis=0)
    return LambGromeka(r, f_l, report3(["x", "y", "z"], list(r), spec.h))


def rigid_rotation(spec: Grid3Spec, omega_p: float) -> VectorGrid3:
    """``v = (-omega_p y, omega_p x, 0)``."""
    return sample_vector(lambda x, y, z: (-omega_p * y, omega_p * x, 0.0 * z), spec)


def curl_check(spec: Grid3Spec, omega_p: float) -> ResidualReport:
    """Error of the finite-difference ``curl v`` against ``(0, 0, 2 omega_p)``."""
    v = rigid_rotation(spec, omega_p)
    err = curl(v.components, spec.h) - np.array([0.0, 0.0, 2 * omega_p])[:, None, None, None]
    return report3(["x", "y", "z"], list(err), spec.h)


def centripetal(v: VectorGrid3) -> np.ndarray:
    """``(1/2) v x curl v``."""
    return 0.5 * np.cross(v.components, curl(v.components, v.spec.h), axis=0)


def centripetal_expected(spec: Grid3Spec, omega_p: float) -> np.ndarray:
    """``(v^2 / r) r_hat`` for rigid rotation, i.e. ``omega_p^2 (x, y, 0)``."""
    x, y, z = spec.mesh()
    return np.stack([omega_p**2 * x, omega_p**2 * y, 0.0 * z])


@dataclass(frozen=True)
class RingFlow:
    """Steady rotating ring of matter with an analytic balance.

    ``g = rho v``, ``U = omega^2 r^2 rho`` with a Gaussian ring profile
    ``rho(r)`` uniform along the rotation axis; then ``grad U = v x curl g`` exactly and Newton's law holds
    with density ``rho_N = (1/r) d(r^2 rho)/dr``.
    """

    spec: Grid3Spec
    omega_p: float
    r0: float = 0.6
    width: float = 0.5

    def _r(self):
        x, y, z = self.spec.mesh()
        return x, y, z, np.hypot(x, y)

    def rho(self) -> np.ndarray:
        x, y, z, r = self._r()
        return np.exp(-(((r - self.r0) / self.width) ** 2))

    def velocity(self) -> VectorGrid3:
        return rigid_rotation(self.spec, self.omega_p)

    def momentum(self) -> VectorGrid3:
        return VectorGrid3(self.spec, self.rho() * self.velocity().components)

    def potential(self) -> np.ndarray:
        x, y, z, r = self._r()
        return self.omega_p**2 * r * r * self.rho()

    def newton_density(self) -> np.ndarray:
        x, y, z, r = self._r()
        rho = self.rho()
        drho = -2 * (r - self.r0) / self.width**2 * rho
        return 2 * rho + r * drho


def newton_balance(rho: np.ndarray, a_n: np.ndarray, f_l: np.ndarray, h: float) -> ResidualReport:
    """Residual ``rho a_n - f_L``."""
    rho = np.asarray(rho, dtype=float)
    if a_n.shape != f_l.shape or a_n.shape[1:] != rho.shape:
        raise InputError("density, acceleration and force grids must match")
    return report3(["x", "y", "z"], list(rho * a_n - f_l), h)


# ---------------------------------------------------------------------------
# Heisenberg rate
# ---------------------------------------------------------------------------
def plane_wave_hamiltonian(p: tuple, eps, constants: PhysicalConstants) -> Matrix4:
    """``-c alpha . P - beta m c^2 + eps`` for constant ``P`` and ``eps``."""
    if len(p) != 3:
        raise InputError("P has three components")
    c = constants.c
    h = Matrix4.identity().scale(eps) - dirac_matrix(MatrixKind.beta()).scale(constants.m * c * c)
    for k, pk in enumerate(p, start=1):
        h = h - dirac_matrix(MatrixKind.alpha(k)).scale(c * pk)
    return h


def heisenberg_rate(o: Matrix4, h: Matrix4, hbar=1) -> Matrix4:
    """``(O H - H O) / (i hbar)``."""
    exact = o.is_exact and h.is_exact and is_exact(hbar)
    factor = (I * hbar).inverse() if exact else 1 / (1j * complex(hbar))
    return (o @ h - h @ o).scale(factor)


__all__ = [
    "EMTensor", "em_tensor", "ForceComponents", "symmetric_force", "symmetric_force_closed",
    "symmetric_force_planewave", "grid_fields", "spin_tensor", "SpinTensorField", "SpinForce",
    "spin_force", "spinning_closed_form", "bracket_fx", "bracket_fz", "printed_second_line",
    "RingConfig", "ring_force", "LambGromeka", "lamb_gromeka_residual", "rigid_rotation",
    "curl_check", "centripetal", "centripetal_expected", "RingFlow", "newton_balance",
    "plane_wave_hamiltonian", "heisenberg_rate",
]
