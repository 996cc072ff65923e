"""Sampled fields, finite-difference residuals and the Lagrangian forms.

Grids hold complex samples of the four transverse components of a wave
along ``y`` (slot order ``E_x, E_z, H_x, H_z``). Derivatives are second-order
central differences; only interior points enter the norms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .algebra import I, MatrixKind, close, dirac_matrix, is_exact
from .planewave import (
    SYSTEM_PATTERNS,
    PhysicalConstants,
    PlaneWaveState,
    calibrate_kappa,
)
from .errors import InputError, PreconditionError

# Form whose rows each Maxwell system reproduces; used for the current calibration.
SYSTEM_FORM = {"2.14'": "2.13'", "2.14''": "2.13''", "2.18": "2.16", "2.18*": "2.17"}
COMPONENTS = ("Ex", "Ez", "Hx", "Hz")


@dataclass(frozen=True)
class GridSpec:
    nt: int
    ny: int
    dt: float
    dy: float
    t0: float = 0.0
    y0: float = 0.0

    def __post_init__(self):
        if self.nt < 1 or self.ny < 1:
            raise InputError("grid counts must be positive")
        if not (self.dt > 0 and self.dy > 0):
            raise InputError("grid spacings must be positive")

    @classmethod
    def uniform(cls, h: float, extent: float = 1.0, c: float = 1.0, courant: float = 0.5) -> GridSpec:
        """Square lattice in ``y`` with ``dt = courant * h / c``.

        ``courant = 1`` would make the time and space truncation errors of a
        massless wave cancel exactly, hiding the convergence order.
        """
        if h <= 0 or extent <= 0:
            raise InputError("h and extent must be positive")
        n = int(round(extent / h)) + 1
        return cls(n, n, courant * h / c, h)

    @property
    def t(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.nt)

    @property
    def y(self) -> np.ndarray:
        return self.y0 + self.dy * np.arange(self.ny)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.t, self.y, indexing="ij")


@dataclass(frozen=True)
class Grid1D:
    """Samples with shape ``(4, nt, ny)``: one (t, y) lattice per component."""

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != (4, self.spec.nt, self.spec.ny):
            raise InputError(f"values must have shape (4, {self.spec.nt}, {self.spec.ny}), got {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def component(self, name: str) -> np.ndarray:
        return self.values[COMPONENTS.index(name)]

    def real(self) -> Grid1D:
        return Grid1D(self.spec, self.values.real)


def sample_planewave(state: PlaneWaveState, spec: GridSpec) -> Grid1D:
    """Evaluate ``A exp(-i(omega t +- k y))`` at every lattice point."""
    t, y = spec.mesh()
    s = 1.0 if state.prop_sign == "+" else -1.0
    phase = np.exp(-1j * (float(state.omega) * t + s * float(state.k) * y))
    amps = [complex(a) for a in state.amplitudes]
    return Grid1D(spec, np.stack([a * phase for a in amps]))


def sample_fields(fn: Callable[[np.ndarray, np.ndarray], Sequence[np.ndarray]], spec: GridSpec) -> Grid1D:
    """Sample ``fn(t, y) -> (Ex, Ez, Hx, Hz)`` on the lattice."""
    t, y = spec.mesh()
    comps = [np.broadcast_to(np.asarray(v, dtype=complex), t.shape) for v in fn(t, y)]
    return Grid1D(spec, np.stack(comps))


def _require_stencil(spec: GridSpec) -> None:
    if spec.nt < 3 or spec.ny < 3:
        raise PreconditionError("central differences need at least 3 points per axis")


def _interior(a: np.ndarray) -> np.ndarray:
    return a[..., 1:-1, 1:-1]


def d_dt(a: np.ndarray, spec: GridSpec) -> np.ndarray:
    return np.gradient(a, spec.dt, axis=-2)


def d_dy(a: np.ndarray, spec: GridSpec) -> np.ndarray:
    return np.gradient(a, spec.dy, axis=-1)


@dataclass(frozen=True)
class ResidualReport:
    rows: tuple[str, ...]
    sup: tuple[float, ...]
    l2: tuple[float, ...]
    h: float
    convergence_order: float | None = None

    @property
    def sup_norm(self) -> float:
        return max(self.sup, default=0.0)

    @property
    def l2_norm(self) -> float:
        return math.sqrt(sum(v * v for v in self.l2))

    def to_dict(self) -> dict:
        return {
            "rows": list(self.rows),
            "sup": list(self.sup),
            "l2": list(self.l2),
            "h": self.h,
            "sup_norm": self.sup_norm,
            "convergence_order": self.convergence_order,
        }


def _report(names: Sequence[str], residuals: Sequence[np.ndarray], spec: GridSpec) -> ResidualReport:
    cell = spec.dt * spec.dy
    sup = tuple(float(np.max(np.abs(r), initial=0.0)) for r in residuals)
    l2 = tuple(float(np.sqrt(cell * np.sum(np.abs(r) ** 2))) for r in residuals)
    return ResidualReport(tuple(names), sup, l2, spec.dy)


def richardson_order(coarse: ResidualReport, fine: ResidualReport) -> float:
    """Observed order from sup norms at spacings ``h`` and ``h/2``."""
    if not math.isclose(coarse.h, 2 * fine.h, rel_tol=1e-9):
        raise InputError("a Richardson pair needs spacings h and h/2")
    if fine.sup_norm == 0 or coarse.sup_norm == 0:
        raise PreconditionError("order undefined for an exactly zero residual")
    return math.log2(coarse.sup_norm / fine.sup_norm)


def convergence_study(make: Callable[[float], ResidualReport], h: float) -> tuple[ResidualReport, ResidualReport]:
    """Run ``make`` at ``h`` and ``h/2``; the fine report carries the order."""
    coarse, fine = make(h), make(h / 2)
    return coarse, replace(fine, convergence_order=richardson_order(coarse, fine))


# ---------------------------------------------------------------------------
# Maxwell rows and continuity
# ---------------------------------------------------------------------------
def maxwell_rows(
    system: str, grid: Grid1D, constants: PhysicalConstants = PhysicalConstants(), kappa_over_4pi=None
) -> list[np.ndarray]:
    """``(1/c) d_t T + s d_y X - kappa~ sigma i omega0 C`` per row, interior points only.

    ``kappa~`` defaults to the plane-wave calibration of the matching form.
    """
    if system not in SYSTEM_PATTERNS:
        raise InputError(f"unknown Maxwell system {system!r}")
    spec = grid.spec
    _require_stencil(spec)
    c = float(constants.c)
    if constants.m and kappa_over_4pi is None:
        kappa_over_4pi = calibrate_kappa(SYSTEM_FORM[system], constants, system)
    kappa = complex(kappa_over_4pi or 0)
    iw = 1j * float(constants.omega0)
    v = grid.values
    return [
        _interior(d_dt(v[t], spec) / c + s * d_dy(v[x], spec) - kappa * sg * iw * v[cf])
        for t, s, x, cf, sg in SYSTEM_PATTERNS[system]
    ]


def maxwell_residual(
    system: str, grid: Grid1D, constants: PhysicalConstants = PhysicalConstants(), kappa_over_4pi=None
) -> ResidualReport:
    rows = maxwell_rows(system, grid, constants, kappa_over_4pi)
    names = [f"d_t {COMPONENTS[t]}" for t, *_ in SYSTEM_PATTERNS[system]]
    return _report(names, rows, grid.spec)


def energy_density(grid: Grid1D) -> np.ndarray:
    """``U = (E^2 + H^2) / 8 pi`` of the real fields."""
    v = grid.values.real
    return np.sum(v * v, axis=0) / (8 * math.pi)


def poynting_y(grid: Grid1D, c: float = 1.0) -> np.ndarray:
    """``S_y = c (E_z H_x - E_x H_z) / 4 pi`` of the real fields."""
    ex, ez, hx, hz = grid.values.real
    return c * (ez * hx - ex * hz) / (4 * math.pi)


def continuity_residual(grid: Grid1D, c: float = 1.0) -> ResidualReport:
    """``dU/dt + div S`` from the real parts of the samples."""
    spec = grid.spec
    _require_stencil(spec)
    r = d_dt(energy_density(grid), spec) + d_dy(poynting_y(grid, c), spec)
    return _report(["dU/dt + div S"], [_interior(r)], spec)


def bilinear_routes(grid: Grid1D, c: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """``U`` and ``S_y`` of the real fields from ``psi+ alpha0 psi / 8 pi`` and ``-c psi+ alpha2 psi / 8 pi``."""
    v = grid.values.real
    psi = np.stack([v[0], v[1], 1j * v[2], 1j * v[3]])
    row = psi * np.array([1, 1, -1, -1])[:, None, None]

    def sandwich(kind: MatrixKind) -> np.ndarray:
        m = dirac_matrix(kind).to_numpy().astype(complex)
        return np.einsum("i...,ij,j...->...", row, m, psi)

    u = sandwich(MatrixKind.alpha(0)) / (8 * math.pi)
    s = -c * sandwich(MatrixKind.alpha(2)) / (8 * math.pi)
    return u, s


def route_discrepancy(grid: Grid1D, c: float = 1.0) -> float:
    """Largest difference between the bilinear and field routes for ``U`` and ``S_y``."""
    u_b, s_b = bilinear_routes(grid, c)
    return float(max(np.max(np.abs(u_b - energy_density(grid))), np.max(np.abs(s_b - poynting_y(grid, c)))))


def traveling_wave(omega: float, k: float, amplitude: float = 1.0):
    """Real wave ``E_x = H_z = A cos(omega t + k y)`` moving toward ``-y``."""

    def fn(t, y):
        f = amplitude * np.cos(omega * t + k * y)
        return f, 0.0 * f, 0.0 * f, f

    return fn


# ---------------------------------------------------------------------------
# Lagrangian
# ---------------------------------------------------------------------------
LAGRANGIAN_TERMS = ("time", "divergence", "mass")


@dataclass(frozen=True)
class LagrangianResult:
    """Termwise quantum and electromagnetic Lagrangians.

    ``em_terms`` are the electromagnetic terms multiplied by ``4 pi`` so that
    exact arithmetic stays exact; ``em_current_terms`` uses the current form
    of the mass term. Each quantum term equals ``kappa_over_4pi`` times its
    ``4 pi``-scaled electromagnetic partner.
    """

    quantum_terms: tuple
    em_terms: tuple
    em_current_terms: tuple
    kappa_over_4pi: object
    term_match: tuple[bool, bool, bool]

    @property
    def quantum_total(self):
        return sum(self.quantum_terms, 0 * self.kappa_over_4pi)

    @property
    def em_total(self):
        """``L_DM`` itself (the ``4 pi`` removed), as a complex float."""
        return complex(sum(self.em_terms, 0 * self.kappa_over_4pi)) / (4 * math.pi)

    @property
    def em_current_total(self):
        return complex(sum(self.em_current_terms, 0 * self.kappa_over_4pi)) / (4 * math.pi)


def _formal_dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), 0 * a[0])


def lagrangian_eval(state: PlaneWaveState, constants: PhysicalConstants) -> LagrangianResult:
    """Evaluate the quantum and electromagnetic Lagrangians on a ``y`` plane wave.

    The formal adjoint carries the same phase as the column, so every
    quadratic expression oscillates as ``exp(-2i(omega t +- k y))``; values
    are reported at zero phase.
    """
    if state.frame.axis != "y":
        raise PreconditionError("the Lagrangian is written for the y frame")
    exact = is_exact(state.omega) and is_exact(state.k) and all(is_exact(a) for a in state.amplitudes)
    unit_i = I if exact else 1j
    ex, ez, hx, hz = (a if exact else complex(a) for a in state.amplitudes)
    psi = (ex, ez, unit_i * hx, unit_i * hz)
    row = (ex, ez, -unit_i * hx, -unit_i * hz)
    dt, dy = state.dt_factor, state.dy_factor
    if not exact:
        dt, dy = complex(dt), complex(dy)
    c, hbar, m = constants.c, constants.hbar, constants.m
    w0 = constants.omega0
    alpha2 = dirac_matrix(MatrixKind.alpha(2))
    beta = dirac_matrix(MatrixKind.beta())
    a2psi = alpha2 @ psi
    bpsi = beta @ psi
    q_time = dt * _formal_dot(row, psi) / c
    q_div = -dy * _formal_dot(row, a2psi)
    q_mass = -unit_i * (m * c / hbar) * _formal_dot(row, bpsi)

    # 4 pi times the electromagnetic terms; quadratic phases differentiate to 2x
    e2 = ex * ex + ez * ez
    h2 = hx * hx + hz * hz
    em_time = dt * (e2 + h2)  # 4 pi dU/dt = (1/2) d_t (E^2 + H^2)
    em_div = 2 * dy * c * (ez * hx - ex * hz)  # 4 pi div S = c d_y [E x H]_y
    em_mass = -unit_i * w0 * (e2 - h2)
    # current form: -(j^e . E - j^m . H) with j = i omega0 F / 4 pi
    je_e = unit_i * w0 * e2
    jm_h = unit_i * w0 * h2
    em_mass_current = -(je_e - jm_h)

    kappa = 1 / c if exact else 1 / float(c)
    quantum = (q_time, q_div, q_mass)
    em = (em_time, em_div, em_mass)
    match = tuple(close(q, kappa * e) for q, e in zip(quantum, em))
    return LagrangianResult(quantum, em, (em_time, em_div, em_mass_current), kappa, match)


def lagrangian_grid(grid: Grid1D, constants: PhysicalConstants = PhysicalConstants()) -> dict:
    """Finite-difference version of both Lagrangians on complex samples."""
    spec = grid.spec
    _require_stencil(spec)
    c, hbar, m = (float(v) for v in (constants.c, constants.hbar, constants.m))
    w0 = float(constants.omega0)
    ex, ez, hx, hz = grid.values
    psi = np.stack([ex, ez, 1j * hx, 1j * hz])
    row = psi * np.array([1, 1, -1, -1])[:, None, None]
    a2 = dirac_matrix(MatrixKind.alpha(2)).to_numpy().astype(complex)
    b = dirac_matrix(MatrixKind.beta()).to_numpy().astype(complex)
    quantum = (
        np.sum(row * d_dt(psi, spec), axis=0) / c
        - np.einsum("i...,ij,j...->...", row, a2, d_dy(psi, spec))
        - 1j * (m * c / hbar) * np.einsum("i...,ij,j...->...", row, b, psi)
    )
    e2 = ex * ex + ez * ez
    h2 = hx * hx + hz * hz
    em = (
        d_dt((e2 + h2) / (8 * math.pi), spec)
        + d_dy(c * (ez * hx - ex * hz) / (4 * math.pi), spec)
        - 1j * w0 / (4 * math.pi) * (e2 - h2)
    )
    q, e = _interior(quantum), _interior(em)
    return {
        "quantum_sup": float(np.max(np.abs(q))),
        "em_sup": float(np.max(np.abs(e))),
        "proportionality_sup": float(np.max(np.abs(q - (4 * math.pi / c) * e))),
    }


# ---------------------------------------------------------------------------
# Three-dimensional vector fields
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Grid3Spec:
    """Cube ``[-extent/2, extent/2]^3`` sampled with spacing ``h``."""

    n: int
    h: float

    def __post_init__(self):
        if self.n < 3:
            raise InputError("a 3-D grid needs at least 3 points per axis")
        if not self.h > 0:
            raise InputError("grid spacing must be positive")

    @classmethod
    def cube(cls, h: float, extent: float = 2.0) -> Grid3Spec:
        return cls(int(round(extent / h)) + 1, h)

    def mesh(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        a = self.h * (np.arange(self.n) - (self.n - 1) / 2)
        return np.meshgrid(a, a, a, indexing="ij")


@dataclass(frozen=True)
class VectorGrid3:
    spec: Grid3Spec
    components: np.ndarray  # shape (3, n, n, n)
    scalar: np.ndarray | None = None

    def __post_init__(self):
        shape = (self.spec.n,) * 3
        comp = np.array(self.components, dtype=float)
        if comp.shape != (3,) + shape:
            raise InputError(f"components must have shape {(3,) + shape}, got {comp.shape}")
        comp.setflags(write=False)
        object.__setattr__(self, "components", comp)
        if self.scalar is not None:
            sc = np.array(self.scalar, dtype=float)
            if sc.shape != shape:
                raise InputError(f"scalar must have shape {shape}, got {sc.shape}")
            sc.setflags(write=False)
            object.__setattr__(self, "scalar", sc)


def sample_vector(fn: Callable, spec: Grid3Spec, scalar_fn: Callable | None = None) -> VectorGrid3:
    """Sample ``fn(x, y, z) -> (vx, vy, vz)`` and an optional scalar companion."""
    x, y, z = spec.mesh()
    comps = np.stack([np.broadcast_to(np.asarray(c, dtype=float), x.shape) for c in fn(x, y, z)])
    scalar = None if scalar_fn is None else np.broadcast_to(np.asarray(scalar_fn(x, y, z), dtype=float), x.shape)
    return VectorGrid3(spec, comps, scalar)


def interior3(a: np.ndarray) -> np.ndarray:
    return a[..., 1:-1, 1:-1, 1:-1]


def grad(f: np.ndarray, h: float) -> np.ndarray:
    return np.stack(np.gradient(f, h))


def div(v: np.ndarray, h: float) -> np.ndarray:
    return sum(np.gradient(v[i], h, axis=i) for i in range(3))


def curl(v: np.ndarray, h: float) -> np.ndarray:
    d = [[np.gradient(v[i], h, axis=j) for j in range(3)] for i in range(3)]
    return np.stack([d[2][1] - d[1][2], d[0][2] - d[2][0], d[1][0] - d[0][1]])


def report3(names: Sequence[str], residuals: Sequence[np.ndarray], h: float) -> ResidualReport:
    """Norms over interior points of 3-D residual components."""
    inner = [interior3(r) for r in residuals]
    sup = tuple(float(np.max(np.abs(r), initial=0.0)) for r in inner)
    l2 = tuple(float(np.sqrt(h**3 * np.sum(r * r))) for r in inner)
    return ResidualReport(tuple(names), sup, l2, h)


__all__ = [
    "GridSpec", "Grid1D", "sample_planewave", "sample_fields", "ResidualReport", "richardson_order",
    "convergence_study", "maxwell_rows", "maxwell_residual", "continuity_residual", "energy_density", "poynting_y",
    "bilinear_routes", "route_discrepancy", "traveling_wave", "LagrangianResult", "lagrangian_eval",
    "lagrangian_grid", "d_dt", "d_dy", "Grid3Spec", "VectorGrid3", "sample_vector", "grad", "div",
    "curl", "interior3", "report3",
]
