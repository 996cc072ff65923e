"""Bilinear forms ``psi+ A psi`` and their electromagnetic closed forms.

Closed forms are evaluated positionally on a :class:`FieldQuad`: the slots
``(e_a, e_b, h_a, h_b)`` play the roles of ``(E_x, E_z, H_x, H_z)``.

Tensor table convention
-----------------------
The printed tensor table carries no index labels. Rows and columns are read
here in the order ``(x, y, z, t)``, i.e. alpha indices ``(1, 2, 3, 0)``,
and the ``y`` row and column carry an extra minus sign relative to
``psi+ alpha_{mu nu} psi`` (the reference wave runs along ``-y``). Under
that reading eleven of the twelve off-diagonal printed entries agree with
the matrix computation. The printed ``(x, y)`` entry is not the negative
of the printed ``(y, x)`` entry, contradicting the antisymmetry stated
alongside the table; :func:`em_expected` therefore derives ``(x, y)`` from
``(y, x)`` and :func:`tensor_table_audit` reports the raw mismatch.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import I, MatrixKind, close, dirac_matrix
from .bridge import (
    Y_MINUS,
    DirectionFrame,
    FieldQuad,
    hermitian_adjoint,
    formal_adjoint,
    sandwich,
    to_bispinor,
)
from .errors import InputError, UnsupportedKindError

# printed row/column -> alpha index, and the sign attached to each slot
TENSOR_ORDER = (1, 2, 3, 0)
TENSOR_SIGN = {1: 1, 2: -1, 3: 1, 0: 1}
_SLOT = {mu: i for i, mu in enumerate(TENSOR_ORDER)}


def bilinear(kind: MatrixKind, fields: FieldQuad, frame: DirectionFrame = Y_MINUS, adjoint: str = "formal"):
    psi = to_bispinor(fields, frame)
    if adjoint == "formal":
        row = formal_adjoint(psi)
    elif adjoint == "hermitian":
        row = hermitian_adjoint(psi)
    else:
        raise InputError(f"adjoint must be 'formal' or 'hermitian', got {adjoint!r}")
    return sandwich(row, dirac_matrix(kind), psi.components)


def printed_tensor_table(fields: FieldQuad) -> tuple[tuple, ...]:
    """The 4x4 tensor table exactly as printed, unlabelled."""
    ex, ez, hx, hz = fields
    a = ex * ex - ez * ez + hx * hx - hz * hz
    b = ex * ex - ez * ez - hx * hx + hz * hz
    p = ex * hz + ez * hx
    q = ex * ez - hx * hz
    r = ex * hx - ez * hz
    return (
        (0, a, 0, -2 * p),
        (-b, 0, 2 * q, 0),
        (0, -2 * q, 0, -2 * r),
        (2 * p, 0, 2 * r, 0),
    )


def _tensor_expected(mu: int, nu: int, fields: FieldQuad):
    if mu == nu:
        return 0
    if (mu, nu) == (1, 2):
        # printed (x, y) entry breaks antisymmetry; use minus the (y, x) entry
        return -_tensor_expected(2, 1, fields)
    table = printed_tensor_table(fields)
    return TENSOR_SIGN[mu] * TENSOR_SIGN[nu] * table[_SLOT[mu]][_SLOT[nu]]


def em_expected(kind: MatrixKind, fields: FieldQuad):
    """Printed electromagnetic closed form for ``kind``."""
    ex, ez, hx, hz = fields
    tag = kind.tag
    if tag == "beta":
        return ex * ex + ez * ez - hx * hx - hz * hz
    if tag == "alpha0":
        return ex * ex + ez * ez + hx * hx + hz * hz
    if tag == "alpha2":
        # -2 [E x H]_y for the -y wave
        return -2 * (ez * hx - ex * hz)
    if tag == "alpha5" or (tag == "pseudovector" and kind.mu == 0):
        return 2 * (ex * hx + ez * hz)
    if tag == "pseudovector":
        if kind.mu == 1:
            return -2j * (ex * ez - hx * hz) if _is_float(fields) else (I * -2) * (ex * ez - hx * hz)
        if kind.mu == 2:
            return 0
        if kind.mu == 3:
            val = ex * ex - ez * ez - hx * hx + hz * hz
            return -1j * val if _is_float(fields) else -I * val
    if tag == "tensor":
        return _tensor_expected(kind.mu, kind.nu, fields)
    raise UnsupportedKindError(f"no printed closed form for {kind}")


def _is_float(fields: FieldQuad) -> bool:
    return any(isinstance(v, (float, complex)) for v in fields)


def tensor_table_audit(fields: FieldQuad) -> list[dict]:
    """Compare every raw printed entry with the matrix bilinear under the convention."""
    table = printed_tensor_table(fields)
    out = []
    for r, mu in enumerate(TENSOR_ORDER):
        for c, nu in enumerate(TENSOR_ORDER):
            if mu == nu:
                continue
            computed = TENSOR_SIGN[mu] * TENSOR_SIGN[nu] * bilinear(MatrixKind.tensor(mu, nu), fields)
            out.append({
                "row": "xyzt"[r],
                "col": "xyzt"[c],
                "printed": table[r][c],
                "computed": computed,
                "match": close(computed, table[r][c]),
            })
    return out


# Kinds with a printed closed form, plus the antisymmetric tensor partners.
TABLE_KINDS: tuple[MatrixKind, ...] = (
    (MatrixKind.beta(), MatrixKind.alpha(0), MatrixKind.alpha(2), MatrixKind.alpha5())
    + tuple(MatrixKind.pseudovector(m) for m in range(4))
    + tuple(MatrixKind.tensor(m, n) for m in range(4) for n in range(4) if m != n)
)

EQ_TAGS = {
    "beta": "Sec 3 item 1",
    "alpha0": "Sec 3 item 2",
    "alpha2": "Sec 3 item 2 / Sec 5",
    "alpha5": "Sec 3 item 3",
    "pseudovector": "Sec 3 item 4",
    "tensor": "Sec 3 item 5",
}


@dataclass(frozen=True)
class BilinearResult:
    kind: MatrixKind
    value: object
    em_expected: object
    match: bool


def verify_table(fields: FieldQuad, frame: DirectionFrame = Y_MINUS, adjoint: str = "formal") -> list[BilinearResult]:
    out = []
    for kind in TABLE_KINDS:
        v = bilinear(kind, fields, frame, adjoint)
        e = em_expected(kind, fields)
        out.append(BilinearResult(kind, v, e, close(v, e)))
    return out


@dataclass(frozen=True)
class EMQuantities:
    """Gaussian-unit field quantities for real field vectors."""

    lagrangian_invariant: float
    energy_density: float
    poynting: tuple[float, float, float]
    momentum_density: tuple[float, float, float]
    pseudoscalar: float
    second_invariant: float


def em_quantities(e: dict, h: dict, c: float = 1.0) -> EMQuantities:
    ev = [float(e[a]) for a in "xyz"]
    hv = [float(h[a]) for a in "xyz"]
    e2 = sum(v * v for v in ev)
    h2 = sum(v * v for v in hv)
    exh = (
        ev[1] * hv[2] - ev[2] * hv[1],
        ev[2] * hv[0] - ev[0] * hv[2],
        ev[0] * hv[1] - ev[1] * hv[0],
    )
    s = tuple(c * v / (4 * math.pi) for v in exh)
    g = tuple(v / (c * c) for v in s)
    edh = sum(a * b for a, b in zip(ev, hv))
    return EMQuantities(
        lagrangian_invariant=(e2 - h2) / (8 * math.pi),
        energy_density=(e2 + h2) / (8 * math.pi),
        poynting=s,
        momentum_density=g,
        pseudoscalar=edh,
        second_invariant=edh * edh,
    )
