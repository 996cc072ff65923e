"""Plane-wave operator calculus for the Dirac forms and their Maxwell systems.

Every field component carries the common factor ``exp(-i(omega t +- k y))``
so ``d/dt -> -i omega`` and ``d/dy -> -+ i k``. The energy and momentum
operators then act as the numbers ``hbar omega`` and ``-+ hbar k`` and each
Dirac form becomes a 4x4 matrix acting on the bispinor (column forms) or on
the formal adjoint row (row forms).

Maxwell systems are stored as rows over the frame slots
``(E_a, E_b, H_a, H_b)``::

    (1/c) d_t T  + s d_axis X  =  sigma * j(C)

A row is ``(T, s, X, C, sigma)`` with slot indices for ``T``, ``X``, ``C``.
"""
from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .algebra import (
    I,
    ONE,
    Matrix4,
    MatrixKind,
    _mat_close,
    close,
    dirac_matrix,
    is_exact,
    is_zero,
    null_space,
)
from .bridge import (
    FRAMES,
    Y_MINUS,
    DirectionFrame,
    FieldQuad,
    charge_conjugate,
    from_bispinor,
    frame as get_frame,
    formal_adjoint,
    to_bispinor,
)
from .errors import DegenerateInputError, InputError, PreconditionError, UnsupportedKindError

PROP_SIGNS = ("+", "-")


@dataclass(frozen=True)
class PhysicalConstants:
    c: object = 1
    hbar: object = 1
    m: object = 0

    def __post_init__(self):
        if self.c <= 0 or self.hbar <= 0 or self.m < 0:
            raise InputError("need c > 0, hbar > 0, m >= 0")

    @property
    def omega0(self):
        """Rest frequency ``m c^2 / hbar``."""
        return self.m * self.c * self.c / self.hbar

    @property
    def compton_length(self):
        if self.m == 0:
            raise PreconditionError("Compton length needs m > 0")
        return self.hbar / (self.m * self.c)

    def with_mass(self, m) -> PhysicalConstants:
        return replace(self, m=m)

    def as_float(self) -> PhysicalConstants:
        return PhysicalConstants(float(self.c), float(self.hbar), float(self.m))


PROFILES = {
    "natural": PhysicalConstants(Fraction(1), Fraction(1), Fraction(1)),
    "rational": PhysicalConstants(Fraction(3), Fraction(1, 7), Fraction(2, 5)),
}


def profile(name: str, m=None) -> PhysicalConstants:
    try:
        base = PROFILES[name]
    except KeyError:
        raise InputError(f"unknown constants profile {name!r}") from None
    return base if m is None else base.with_mass(m)


@dataclass(frozen=True)
class PlaneWaveState:
    """Common-phase amplitudes for ``exp(-i(omega t +- k x_axis))``."""

    amplitudes: FieldQuad
    omega: object
    k: object
    prop_sign: str = "+"
    frame: DirectionFrame = Y_MINUS

    def __post_init__(self):
        if self.prop_sign not in PROP_SIGNS:
            raise InputError(f"prop_sign must be '+' or '-', got {self.prop_sign!r}")

    @property
    def dt_factor(self):
        return -I * self.omega if self._exact else -1j * self.omega

    @property
    def dy_factor(self):
        """Multiplier of ``d/d(axis)``: ``-ik`` for ``+``, ``+ik`` for ``-``."""
        s = -1 if self.prop_sign == "+" else 1
        return (I * (s * self.k)) if self._exact else 1j * s * self.k

    @property
    def _exact(self) -> bool:
        return is_exact(self.omega) and is_exact(self.k)

    def bispinor(self):
        return to_bispinor(self.amplitudes, self.frame)

    def with_amplitudes(self, q: FieldQuad) -> PlaneWaveState:
        return replace(self, amplitudes=q)

    def conjugated(self) -> PlaneWaveState:
        """State whose bispinor is the charge conjugate of this one."""
        psi = charge_conjugate(self.bispinor())
        return self.with_amplitudes(from_bispinor(psi))


@dataclass(frozen=True)
class OperatorRep:
    energy_factor: object
    momentum_factor: object


def operator_rep(state: PlaneWaveState, constants: PhysicalConstants) -> OperatorRep:
    """``eps -> hbar omega`` and ``p -> -+ hbar k`` on the common phase."""
    s = -1 if state.prop_sign == "+" else 1
    return OperatorRep(constants.hbar * state.omega, s * constants.hbar * state.k)


# ---------------------------------------------------------------------------
# Equation forms
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Form:
    tag: str
    side: str  # "column" acts on psi, "row" on the formal adjoint
    p_sign: int
    m_sign: int
    system: str | None  # Maxwell system with the same rows
    massive: bool = True


FORMS: dict[str, Form] = {
    "2.10": Form("2.10", "row", -1, 0, "2.18", massive=False),
    "2.11": Form("2.11", "column", 1, 0, "2.14'", massive=False),
    "2.13'": Form("2.13'", "column", 1, 1, "2.14'"),
    "2.13''": Form("2.13''", "row", 1, 1, "2.14''"),
    "2.16": Form("2.16", "column", -1, -1, "2.18"),
    "2.17": Form("2.17", "row", -1, -1, "2.18*"),
}
FORM_ALIASES = {"1.1": "2.13'", "1.2": "2.17"}


def get_form(tag: str) -> Form:
    tag = FORM_ALIASES.get(tag, tag)
    try:
        return FORMS[tag]
    except KeyError:
        raise UnsupportedKindError(f"unknown equation form {tag!r}") from None


def planewave_matrix(form: str | Form, state: PlaneWaveState, constants: PhysicalConstants) -> Matrix4:
    """``eps I + s_p c alpha p + s_m beta m c^2`` in the multiplicative representation."""
    f = form if isinstance(form, Form) else get_form(form)
    rep = operator_rep(state, constants)
    a = dirac_matrix(state.frame.propagation_kind)
    b = dirac_matrix(MatrixKind.beta())
    m = Matrix4.identity().scale(rep.energy_factor) + a.scale(f.p_sign * constants.c * rep.momentum_factor)
    if f.m_sign:
        m = m + b.scale(f.m_sign * constants.m * constants.c * constants.c)
    return m


def apply_dirac(form: str | Form, state: PlaneWaveState, constants: PhysicalConstants) -> tuple:
    f = form if isinstance(form, Form) else get_form(form)
    m = planewave_matrix(f, state, constants)
    psi = state.bispinor()
    if f.side == "column":
        return m @ psi.components
    return m.left_apply(formal_adjoint(psi))


@dataclass(frozen=True)
class KleinGordonResult:
    alpha0_square: Matrix4  # (alpha0 eps)^2 - eps^2 I
    alpha_p_square: Matrix4  # c^2 ((alpha p)^2 - p^2 I)
    factored: Matrix4  # (alpha0 eps - c alpha p)(alpha0 eps + c alpha p)
    expected: Matrix4  # (eps^2 - c^2 p^2) I

    @property
    def holds(self) -> bool:
        return (
            self.alpha0_square.is_zero
            and self.alpha_p_square.is_zero
            and _mat_close(self.factored, self.expected)
        )


def klein_gordon_check(state: PlaneWaveState, constants: PhysicalConstants = PhysicalConstants()) -> KleinGordonResult:
    rep = operator_rep(state, constants)
    eye = Matrix4.identity()
    e = eye.scale(rep.energy_factor)
    ap = dirac_matrix(state.frame.propagation_kind).scale(rep.momentum_factor)
    c = constants.c
    eps2 = rep.energy_factor * rep.energy_factor
    p2 = rep.momentum_factor * rep.momentum_factor
    return KleinGordonResult(
        alpha0_square=e @ e - eye.scale(eps2),
        alpha_p_square=(ap @ ap - eye.scale(p2)).scale(c * c),
        factored=(e - ap.scale(c)) @ (e + ap.scale(c)),
        expected=eye.scale(eps2 - c * c * p2),
    )


# ---------------------------------------------------------------------------
# Maxwell systems
# ---------------------------------------------------------------------------
EA, EB, HA, HB = range(4)

# Slot patterns. "2.18*" is the row-form partner of "2.18" with reversed currents.
SYSTEM_PATTERNS: dict[str, tuple[tuple[int, int, int, int, int], ...]] = {
    "2.18": ((EA, 1, HB, EA, -1), (HB, 1, EA, HB, 1), (EB, -1, HA, EB, -1), (HA, -1, EB, HA, 1)),
    "2.14'": ((EA, -1, HB, EA, -1), (HB, -1, EA, HB, 1), (EB, 1, HA, EB, -1), (HA, 1, EB, HA, 1)),
}
SYSTEM_PATTERNS["2.14''"] = tuple((t, s, x, cf, -sg) for t, s, x, cf, sg in SYSTEM_PATTERNS["2.14'"])
SYSTEM_PATTERNS["2.18*"] = tuple((t, s, x, cf, -sg) for t, s, x, cf, sg in SYSTEM_PATTERNS["2.18"])

# The systems as printed, with physical component names:
# (time field, spatial sign, spatial field, derivative axis, current, current sign).
PRINTED_SYSTEMS: dict[str, tuple[tuple[str, int, str, str, str, int], ...]] = {
    "2.14'": (
        ("Ex", -1, "Hz", "y", "Ex", -1), ("Hz", -1, "Ex", "y", "Hz", 1),
        ("Ez", 1, "Hx", "y", "Ez", -1), ("Hx", 1, "Ez", "y", "Hx", 1),
    ),
    "2.14''": (
        ("Ex", -1, "Hz", "y", "Ex", 1), ("Hz", -1, "Ex", "y", "Hz", -1),
        ("Ez", 1, "Hx", "y", "Ez", 1), ("Hx", 1, "Ez", "y", "Hx", -1),
    ),
    "2.18": (
        ("Ex", 1, "Hz", "y", "Ex", -1), ("Hz", 1, "Ex", "y", "Hz", 1),
        ("Ez", -1, "Hx", "y", "Ez", -1), ("Hx", -1, "Ez", "y", "Hx", 1),
    ),
    # Positive-direction groups. The printed derivative is d/dx in all three;
    # the y and z groups are read with the derivative along their own axis.
    "5.1x": (
        ("Ey", 1, "Hz", "x", "Ey", -1), ("Hz", 1, "Ey", "x", "Hz", 1),
        ("Ez", -1, "Hy", "x", "Ez", -1), ("Hy", -1, "Ez", "x", "Hy", 1),
    ),
    "5.1y": (
        ("Ez", 1, "Hx", "y", "Ez", -1), ("Hx", 1, "Ez", "y", "Hx", 1),
        ("Ex", -1, "Hz", "y", "Ex", -1), ("Hz", -1, "Ex", "y", "Hz", 1),
    ),
    "5.1z": (
        ("Ex", 1, "Hy", "z", "Ex", -1), ("Hy", 1, "Ex", "z", "Hy", 1),
        ("Ey", -1, "Hx", "z", "Ey", -1), ("Hx", -1, "Ey", "z", "Hx", 1),
    ),
}


def system_rows(system: str, fr: DirectionFrame) -> tuple[tuple[str, int, str, str, str, int], ...]:
    """Relabel a slot pattern into physical component names for ``fr``."""
    try:
        pattern = SYSTEM_PATTERNS[system]
    except KeyError:
        raise UnsupportedKindError(f"unknown Maxwell system {system!r}") from None
    lay = fr.layout
    return tuple((lay[t], s, lay[x], fr.axis, lay[cf], sg) for t, s, x, cf, sg in pattern)


def maxwell_lhs(system: str, state: PlaneWaveState, constants: PhysicalConstants) -> tuple:
    """``(1/c) d_t T + s d_axis X`` for each row on the plane wave."""
    q = tuple(state.amplitudes)
    dt, dy = state.dt_factor, state.dy_factor
    c = constants.c
    return tuple(dt * q[t] / c + s * dy * q[x] for t, s, x, _, _ in SYSTEM_PATTERNS[system])


def maxwell_currents(system: str, state: PlaneWaveState, constants: PhysicalConstants) -> tuple:
    """``sigma * i omega0 * C`` per row: the printed current with ``4 pi`` removed."""
    q = tuple(state.amplitudes)
    iw = (I * constants.omega0) if is_exact(constants.omega0) else 1j * constants.omega0
    return tuple(sg * iw * q[cf] for _, _, _, cf, sg in SYSTEM_PATTERNS[system])


def _slot_coefficient(side: str, slot: int):
    """Factor between a field amplitude and its bispinor (or adjoint) slot."""
    if slot < 2:
        return ONE
    return I if side == "column" else -I


def row_scale(form: Form, slot: int, constants: PhysicalConstants):
    """``a_r`` in ``Dirac_r = a_r (LHS_r - kappa~ J_r)``: ``i hbar c`` times the slot factor."""
    return I * constants.hbar * constants.c * _slot_coefficient(form.side, slot)


@dataclass(frozen=True)
class CurrentCorrespondence:
    form: str
    system: str
    kappa_over_4pi: object  # None when m = 0
    per_row_match: tuple[bool, bool, bool, bool]
    row_kappas: tuple = field(default=())

    @property
    def kappa(self):
        """Shared constant multiplying the printed currents ``i omega0/(4 pi) F``."""
        if self.kappa_over_4pi is None:
            return None
        return 4 * math.pi * complex(self.kappa_over_4pi).real

    @property
    def all_match(self) -> bool:
        return all(self.per_row_match)


def current_correspondence(
    form: str,
    state: PlaneWaveState,
    constants: PhysicalConstants,
    system: str | None = None,
    conjugate: bool = False,
) -> CurrentCorrespondence:
    """Fit one constant ``kappa`` with ``Dirac_r = a_r (LHS_r - kappa/(4 pi) J_r)`` on every row.

    ``J_r`` is ``sigma_r * i omega0 * C_r``, so ``kappa`` multiplies the
    printed current ``i omega0/(4 pi) C``. With ``conjugate`` the Dirac form
    acts on the charge conjugate of the state while the Maxwell rows are
    written in the original fields.
    """
    f = get_form(form)
    system = system or f.system
    dirac = apply_dirac(f, state.conjugated() if conjugate else state, constants)
    lhs = maxwell_lhs(system, state, constants)
    cur = maxwell_currents(system, state, constants)
    pattern = SYSTEM_PATTERNS[system]
    scaled = []
    for t, *_ in pattern:
        a = row_scale(f, t, constants) * (-1 if conjugate and t in (EB, HB) else 1)
        scaled.append(dirac[t] * (ONE / a) if is_exact(dirac[t]) else dirac[t] / complex(a))
    if constants.m == 0:
        match = tuple(close(d, l) for d, l in zip(scaled, lhs))
        return CurrentCorrespondence(f.tag, system, None, match)
    row_kappas = []
    for d, l, j in zip(scaled, lhs, cur):
        row_kappas.append(None if is_zero(j, 0.0) else (l - d) / j)
    nonzero = [k for k in row_kappas if k is not None]
    if not nonzero:
        raise DegenerateInputError("all current terms vanish; kappa is undefined")
    kappa = nonzero[0]
    match = tuple(close(d, l - kappa * j) for d, l, j in zip(scaled, lhs, cur))
    if is_exact(kappa):
        kappa = _real_fraction(kappa)
    return CurrentCorrespondence(f.tag, system, kappa, match, tuple(row_kappas))


def _real_fraction(x):
    """Collapse an exact real rational value to a ``Fraction``."""
    if x.is_gaussian and x.is_real:
        return x.re_rat
    return x


@functools.lru_cache(maxsize=None)
def calibrate_kappa(form: str, constants: PhysicalConstants, system: str | None = None):
    """``kappa/(4 pi)`` from a fixed generic reference state."""
    ref = PlaneWaveState(FieldQuad(ONE, ONE * 2, ONE * 3, ONE * 5), Fraction(7, 3), Fraction(2), "+")
    return current_correspondence(form, ref, constants, system).kappa_over_4pi


def per_axis_systems(
    axis: str,
    sign: str,
    state: PlaneWaveState,
    constants: PhysicalConstants,
    system: str = "2.18",
) -> tuple:
    """Residuals ``LHS_r - kappa~ J_r`` of the frame-relabelled system.

    ``kappa~`` is the calibration of form "2.16" against ``system``; the
    result times ``row_scale`` equals the "2.16" rows in that frame.
    """
    fr = get_frame(axis, sign)
    st = replace(state, frame=fr)
    kappa = calibrate_kappa("2.16", constants, system) if constants.m else 0
    lhs = maxwell_lhs(system, st, constants)
    cur = maxwell_currents(system, st, constants)
    return tuple(l - kappa * j for l, j in zip(lhs, cur))


# ---------------------------------------------------------------------------
# Massless equivalence
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class MasslessEquivalence:
    null_dim: int
    fields: tuple[FieldQuad, ...]
    rows_ok: bool


def massless_equivalence(
    omega, k, constants: PhysicalConstants = PhysicalConstants(), prop_sign: str = "+", form: str = "2.11"
) -> MasslessEquivalence:
    """Null space of the massless plane-wave matrix and its decoded fields."""
    f = get_form(form)
    if f.massive:
        raise InputError(f"form {form} is massive")
    consts = constants.with_mass(0)
    zero_state = PlaneWaveState(FieldQuad(), omega, k, prop_sign)
    m = planewave_matrix(f, zero_state, consts)
    if f.side == "column":
        basis = null_space(m)
        decoded = tuple(from_bispinor(v) for v in basis)
    else:
        basis = null_space(m.transpose())
        # a row r = formal_adjoint(psi) has psi = (r1, r2, -r3, -r4)
        decoded = tuple(from_bispinor((v[0], v[1], -v[2], -v[3])) for v in basis)
    ok = True
    for q in decoded:
        st = zero_state.with_amplitudes(q)
        ok = ok and all(is_zero(v) for v in maxwell_lhs(f.system, st, consts))
    return MasslessEquivalence(len(basis), decoded, ok)


# ---------------------------------------------------------------------------
# Random states
# ---------------------------------------------------------------------------
def random_rational(rng: random.Random, span: int = 20, den: int = 12) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_quad(rng: random.Random, exact: bool = True) -> FieldQuad:
    if exact:
        return FieldQuad(*(random_rational(rng) for _ in range(4)))
    return FieldQuad(*(rng.gauss(0.0, 1.0) for _ in range(4)))


def random_complex_quad(rng: random.Random) -> FieldQuad:
    return FieldQuad(*(I * random_rational(rng) + random_rational(rng) for _ in range(4)))


def _nonzero_rational(rng: random.Random) -> Fraction:
    x = Fraction(0)
    while x == 0:
        x = random_rational(rng)
    return x


def random_massive_state(
    rng: random.Random, base: PhysicalConstants = PROFILES["natural"], prop_sign: str | None = None
) -> tuple[PlaneWaveState, PhysicalConstants]:
    """On-shell massive state: ``(ck, omega0, omega)`` from a rational Pythagorean triple."""
    t = Fraction(rng.randint(2, 9), rng.randint(1, 3)) + Fraction(1, 7)
    lam = Fraction(rng.randint(1, 5), rng.randint(1, 4))
    ck, w0, w = lam * (t * t - 1), lam * 2 * t, lam * (t * t + 1)
    consts = base.with_mass(base.hbar * w0 / (base.c * base.c))
    sign = prop_sign or rng.choice(PROP_SIGNS)
    return PlaneWaveState(random_complex_quad(rng), w, ck / base.c, sign), consts


def _realify(q: FieldQuad) -> FieldQuad:
    """Rotate a null vector by a phase so its amplitudes are real when possible."""
    if all(x.is_gaussian and x.re_rat == 0 for x in q):
        return q.map(lambda x: x * -I)
    return q


def random_onshell_massless(
    rng: random.Random, constants: PhysicalConstants = PROFILES["natural"], prop_sign: str = "+"
) -> PlaneWaveState:
    """Random combination of the two null vectors of form "2.11" on ``omega = ck``."""
    k = abs(_nonzero_rational(rng))
    omega = constants.c * k
    eq = massless_equivalence(omega, k, constants, prop_sign)
    u, v = (_realify(f) for f in eq.fields)
    a, b = random_rational(rng), random_rational(rng)
    q = FieldQuad(*(a * x + b * y for x, y in zip(u, v)))
    return PlaneWaveState(q, omega, k, prop_sign)


def solution_state(
    form: str, omega, k, constants: PhysicalConstants, coeffs=(1, 1), prop_sign: str = "+"
) -> PlaneWaveState:
    """Combination of the null vectors of a column form's plane-wave matrix."""
    f = get_form(form)
    if f.side != "column":
        raise InputError("solution_state takes a column form")
    probe = PlaneWaveState(FieldQuad(), omega, k, prop_sign)
    basis = null_space(planewave_matrix(f, probe, constants))
    if not basis:
        raise DegenerateInputError(f"(omega, k) = ({omega}, {k}) is off-shell for form {f.tag}")
    psi = [sum((a * v[i] for a, v in zip(coeffs, basis)), ONE * 0) for i in range(4)]
    return probe.with_amplitudes(from_bispinor(psi))


def random_onshell_massive(
    rng: random.Random, base: PhysicalConstants = PROFILES["natural"], form: str = "2.13'"
) -> tuple[PlaneWaveState, PhysicalConstants]:
    """Exact solution of a massive column form with random coefficients."""
    st, consts = random_massive_state(rng, base)
    coeffs = (random_rational(rng), random_rational(rng))
    return solution_state(form, st.omega, st.k, consts, coeffs, st.prop_sign), consts


__all__ = [
    "PhysicalConstants", "PROFILES", "profile", "PlaneWaveState", "OperatorRep", "operator_rep",
    "Form", "FORMS", "get_form", "planewave_matrix", "apply_dirac", "klein_gordon_check",
    "SYSTEM_PATTERNS", "PRINTED_SYSTEMS", "system_rows", "maxwell_lhs", "maxwell_currents",
    "row_scale", "CurrentCorrespondence", "current_correspondence", "calibrate_kappa",
    "per_axis_systems", "MasslessEquivalence", "massless_equivalence", "random_massive_state",
    "random_onshell_massless", "random_onshell_massive", "solution_state", "random_quad", "random_rational", "random_complex_quad", "FRAMES",
]
