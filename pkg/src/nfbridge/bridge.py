"""Dictionary between bispinors and transverse electromagnetic fields.

A wave travelling along one axis carries four transverse components. Each
:class:`DirectionFrame` fixes which physical components fill the four
bispinor slots; magnetic slots carry an explicit factor ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .algebra import (
    I,
    Matrix4,
    MatrixKind,
    S_CANONICAL,
    _conj,
    dirac_matrix,
    dot,
    is_zero,
    require_unitary,
)
from .errors import InputError, PreconditionError

AXES = ("x", "y", "z")
SIGNS = ("+", "-")
REPS = ("standard", "primed", "retarded-conjugated")


@dataclass(frozen=True)
class FieldQuad:
    """Two transverse electric and two transverse magnetic amplitudes.

    The slot order is the frame layout: for the (y, -) frame it reads
    ``(E_x, E_z, H_x, H_z)``.
    """

    e_a: object = 0
    e_b: object = 0
    h_a: object = 0
    h_b: object = 0

    def __iter__(self) -> Iterator:
        return iter((self.e_a, self.e_b, self.h_a, self.h_b))

    def map(self, fn) -> FieldQuad:
        return FieldQuad(*(fn(v) for v in self))

    def scale(self, s) -> FieldQuad:
        return self.map(lambda v: v * s)

    @property
    def is_zero(self) -> bool:
        return all(is_zero(v, 0.0) for v in self)


@dataclass(frozen=True)
class DirectionFrame:
    """Matrix triple and slot layout for one propagation axis and sign."""

    axis: str
    sign: str
    matrix_triple: tuple[tuple[str, MatrixKind], ...]
    layout: tuple[str, str, str, str]

    def __post_init__(self):
        if self.axis not in AXES or self.sign not in SIGNS:
            raise InputError(f"invalid frame ({self.axis!r}, {self.sign!r})")

    @property
    def name(self) -> str:
        return f"{self.axis}{self.sign}"

    def matrix_for(self, axis: str) -> MatrixKind:
        return dict(self.matrix_triple)[axis]

    @property
    def propagation_kind(self) -> MatrixKind:
        """The matrix multiplying the derivative along this frame's axis."""
        return self.matrix_for(self.axis)

    @property
    def transverse(self) -> tuple[str, str]:
        """Physical axes of the electric slots, in slot order."""
        return (self.layout[0][1], self.layout[1][1])

    def vectors_from_quad(self, q: FieldQuad) -> tuple[dict[str, object], dict[str, object]]:
        """Full E and H vectors, with the longitudinal components set to zero."""
        e = {a: 0 for a in AXES}
        h = {a: 0 for a in AXES}
        a, b = self.transverse
        e[a], e[b], h[a], h[b] = q.e_a, q.e_b, q.h_a, q.h_b
        return e, h

    def quad_from_vectors(self, e: dict, h: dict) -> FieldQuad:
        if not (is_zero(e.get(self.axis, 0), 0.0) and is_zero(h.get(self.axis, 0), 0.0)):
            raise PreconditionError(
                f"frame {self.name} is transverse: E_{self.axis} and H_{self.axis} must vanish"
            )
        a, b = self.transverse
        return FieldQuad(e.get(a, 0), e.get(b, 0), h.get(a, 0), h.get(b, 0))

    def __str__(self) -> str:
        return self.name


def _kind(n: int) -> MatrixKind:
    return MatrixKind.alpha(n)


# Matrix groups: each one assigns alpha_1..alpha_3 to the three axes with
# alpha_2 always on the propagation axis.
_TRIPLES = {
    "y": (("x", _kind(1)), ("y", _kind(2)), ("z", _kind(3))),
    "x": (("x", _kind(2)), ("y", _kind(3)), ("z", _kind(1))),
    "z": (("z", _kind(2)), ("y", _kind(1)), ("x", _kind(3))),
}

# Counterclockwise index transposition for waves along -axis, clockwise for +axis.
_LAYOUTS = {
    ("y", "-"): ("Ex", "Ez", "Hx", "Hz"),
    ("x", "-"): ("Ez", "Ey", "Hz", "Hy"),
    ("z", "-"): ("Ey", "Ex", "Hy", "Hx"),
    ("y", "+"): ("Ez", "Ex", "Hz", "Hx"),
    ("x", "+"): ("Ey", "Ez", "Hy", "Hz"),
    ("z", "+"): ("Ex", "Ey", "Hx", "Hy"),
}

FRAMES: dict[tuple[str, str], DirectionFrame] = {
    key: DirectionFrame(key[0], key[1], _TRIPLES[key[0]], layout) for key, layout in _LAYOUTS.items()
}
Y_MINUS = FRAMES[("y", "-")]
Y_PLUS = FRAMES[("y", "+")]


def frame(axis: str, sign: str) -> DirectionFrame:
    try:
        return FRAMES[(axis, sign)]
    except KeyError:
        raise InputError(f"no frame for axis {axis!r} sign {sign!r}") from None


def direction_frames() -> dict[str, tuple[DirectionFrame, ...]]:
    """The three frames for each propagation sign, keyed by sign."""
    return {s: tuple(FRAMES[(a, s)] for a in ("y", "x", "z")) for s in SIGNS}


@dataclass(frozen=True)
class Bispinor:
    components: tuple
    frame: DirectionFrame = Y_MINUS
    rep: str = "standard"
    fields: FieldQuad | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.components) != 4:
            raise InputError("a bispinor has four components")
        if self.rep not in REPS:
            raise InputError(f"unknown representation {self.rep!r}")
        if self.rep == "standard" and self.fields is not None:
            c = self.components
            q = self.fields
            if not (c[0] == q.e_a and c[1] == q.e_b and c[2] == I * q.h_a and c[3] == I * q.h_b):
                raise PreconditionError("standard bispinor must read (E_a, E_b, iH_a, iH_b)")

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]


def to_bispinor(fields: FieldQuad, frame: DirectionFrame = Y_MINUS) -> Bispinor:
    comps = (fields.e_a, fields.e_b, I * fields.h_a, I * fields.h_b)
    return Bispinor(comps, frame, "standard", fields)


def from_bispinor(psi: Bispinor | Sequence) -> FieldQuad:
    """Decode a standard-layout bispinor back to its field amplitudes."""
    c = tuple(psi)
    return FieldQuad(c[0], c[1], c[2] * -I, c[3] * -I)


def formal_adjoint(psi: Bispinor) -> tuple:
    """Row ``(c1, c2, -c3, -c4)``: flips the explicit ``i`` without conjugating amplitudes."""
    if psi.rep not in ("standard", "retarded-conjugated"):
        raise PreconditionError(f"formal adjoint is defined for standard layouts, not {psi.rep}")
    c = psi.components
    return (c[0], c[1], -c[2], -c[3])


def hermitian_adjoint(psi: Bispinor | Sequence) -> tuple:
    return tuple(_conj(c) for c in psi)


def charge_conjugate(psi: Bispinor) -> Bispinor:
    """Sign flip ``(c1, -c2, c3, -c4)``; swaps standard and retarded-conjugated."""
    if psi.rep == "primed":
        raise PreconditionError("charge conjugation acts on the standard layout")
    c = psi.components
    rep = "retarded-conjugated" if psi.rep == "standard" else "standard"
    return Bispinor((c[0], -c[1], c[2], -c[3]), psi.frame, rep)


def to_primed(psi: Bispinor, s: Matrix4 = S_CANONICAL) -> Bispinor:
    """``psi' = S^dagger psi``."""
    require_unitary(s)
    return Bispinor(s.adjoint() @ psi.components, psi.frame, "primed")


def from_primed(psi_p: Bispinor, s: Matrix4 = S_CANONICAL) -> Bispinor:
    require_unitary(s)
    return Bispinor(s @ psi_p.components, psi_p.frame, "standard")


def transported_adjoint(psi: Bispinor, s: Matrix4 = S_CANONICAL) -> tuple:
    """Row partner of ``to_primed(psi, s)``: ``formal_adjoint(psi) @ S``."""
    require_unitary(s)
    return s.left_apply(formal_adjoint(psi))


def sandwich(row: Sequence, m: Matrix4, col: Sequence):
    return dot(row, m @ tuple(col))


def cross(e: dict, h: dict) -> dict:
    return {
        "x": e["y"] * h["z"] - e["z"] * h["y"],
        "y": e["z"] * h["x"] - e["x"] * h["z"],
        "z": e["x"] * h["y"] - e["y"] * h["x"],
    }


def poynting_bilinear(fields: FieldQuad, fr: DirectionFrame):
    """``psi+ alpha psi`` with the frame's propagation matrix."""
    psi = to_bispinor(fields, fr)
    return sandwich(formal_adjoint(psi), dirac_matrix(fr.propagation_kind), psi.components)


def poynting_expected(fields: FieldQuad, fr: DirectionFrame):
    """``-2[E x H]_axis`` for sign ``-`` frames, ``+2[E x H]_axis`` for ``+``."""
    e, h = fr.vectors_from_quad(fields)
    s = cross(e, h)[fr.axis]
    return -2 * s if fr.sign == "-" else 2 * s


__all__ = [
    "AXES", "SIGNS", "FieldQuad", "DirectionFrame", "Bispinor", "FRAMES", "Y_MINUS", "Y_PLUS",
    "frame", "direction_frames", "to_bispinor", "from_bispinor", "formal_adjoint",
    "hermitian_adjoint", "charge_conjugate", "to_primed", "from_primed", "transported_adjoint",
    "sandwich", "cross", "poynting_bilinear", "poynting_expected",
]
