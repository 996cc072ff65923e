"""Exact scalar arithmetic over Q(sqrt2, i) and the Dirac matrix apparatus.

Everything here is immutable. Scalars mix with ``int`` and ``Fraction``
exactly; mixing with ``float`` or ``complex`` falls back to Python complex
floats, the same way ``Fraction`` degrades when combined with a float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, PreconditionError

_SQRT2 = math.sqrt(2.0)


def _frac(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


class ExactComplex:
    """The number ``a + b*sqrt2 + i*(c + d*sqrt2)`` with rational a..d."""

    __slots__ = ("re_rat", "re_sqrt2", "im_rat", "im_sqrt2")

    def __init__(self, re_rat=0, re_sqrt2=0, im_rat=0, im_sqrt2=0):
        object.__setattr__(self, "re_rat", _frac(re_rat))
        object.__setattr__(self, "re_sqrt2", _frac(re_sqrt2))
        object.__setattr__(self, "im_rat", _frac(im_rat))
        object.__setattr__(self, "im_sqrt2", _frac(im_sqrt2))

    def __setattr__(self, name, value):
        raise AttributeError("ExactComplex is immutable")

    @classmethod
    def gaussian(cls, re=0, im=0) -> ExactComplex:
        return cls(re, 0, im, 0)

    @classmethod
    def lift(cls, x) -> ExactComplex:
        """Convert ``int``/``Fraction``/``ExactComplex`` exactly; reject floats."""
        if isinstance(x, ExactComplex):
            return x
        if isinstance(x, Rational):
            return cls(x)
        raise InputError(f"cannot represent {x!r} exactly")

    # -- structure -----------------------------------------------------
    @property
    def parts(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.re_rat, self.re_sqrt2, self.im_rat, self.im_sqrt2)

    @property
    def is_gaussian(self) -> bool:
        return not self.re_sqrt2 and not self.im_sqrt2

    @property
    def is_real(self) -> bool:
        return not self.im_rat and not self.im_sqrt2

    def as_gaussian(self) -> tuple[Fraction, Fraction]:
        if not self.is_gaussian:
            raise InputError(f"{self} has a sqrt2 component")
        return (self.re_rat, self.im_rat)

    def conjugate(self) -> ExactComplex:
        return ExactComplex(self.re_rat, self.re_sqrt2, -self.im_rat, -self.im_sqrt2)

    def __complex__(self) -> complex:
        return complex(
            float(self.re_rat) + float(self.re_sqrt2) * _SQRT2,
            float(self.im_rat) + float(self.im_sqrt2) * _SQRT2,
        )

    def __bool__(self) -> bool:
        return bool(self.re_rat or self.re_sqrt2 or self.im_rat or self.im_sqrt2)

    def __hash__(self) -> int:
        if self.is_real and not self.re_sqrt2:
            return hash(self.re_rat)
        return hash(self.parts)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactComplex):
            return self.parts == other.parts
        if isinstance(other, Rational):
            return self.is_real and not self.re_sqrt2 and self.re_rat == other
        if isinstance(other, (float, complex)):
            return complex(self) == complex(other)
        return NotImplemented

    # -- arithmetic ----------------------------------------------------
    def __neg__(self) -> ExactComplex:
        return ExactComplex(-self.re_rat, -self.re_sqrt2, -self.im_rat, -self.im_sqrt2)

    def __pos__(self) -> ExactComplex:
        return self

    def __add__(self, other):
        if isinstance(other, ExactComplex):
            return ExactComplex(
                self.re_rat + other.re_rat,
                self.re_sqrt2 + other.re_sqrt2,
                self.im_rat + other.im_rat,
                self.im_sqrt2 + other.im_sqrt2,
            )
        if isinstance(other, Rational):
            return ExactComplex(self.re_rat + other, self.re_sqrt2, self.im_rat, self.im_sqrt2)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (ExactComplex, Rational)):
            return self + (-other)
        if isinstance(other, (float, complex)):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ExactComplex):
            a0, a1, b0, b1 = self.re_rat, self.re_sqrt2, self.im_rat, self.im_sqrt2
            c0, c1, d0, d1 = other.re_rat, other.re_sqrt2, other.im_rat, other.im_sqrt2
            if not (a1 or b1 or c1 or d1):
                if not b0:
                    return ExactComplex(a0 * c0, 0, a0 * d0, 0)
                if not d0:
                    return ExactComplex(a0 * c0, 0, b0 * c0, 0)
                return ExactComplex(a0 * c0 - b0 * d0, 0, a0 * d0 + b0 * c0, 0)
            # (a + ib)(c + id) with a..d in Q(sqrt2)
            ac0, ac1 = a0 * c0 + 2 * a1 * c1, a0 * c1 + a1 * c0
            bd0, bd1 = b0 * d0 + 2 * b1 * d1, b0 * d1 + b1 * d0
            ad0, ad1 = a0 * d0 + 2 * a1 * d1, a0 * d1 + a1 * d0
            bc0, bc1 = b0 * c0 + 2 * b1 * c1, b0 * c1 + b1 * c0
            return ExactComplex(ac0 - bd0, ac1 - bd1, ad0 + bc0, ad1 + bc1)
        if isinstance(other, Rational):
            return ExactComplex(
                self.re_rat * other, self.re_sqrt2 * other, self.im_rat * other, self.im_sqrt2 * other
            )
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> ExactComplex:
        if not self:
            raise ZeroDivisionError("ExactComplex division by zero")
        a0, a1, b0, b1 = self.parts
        # |z|^2 = n0 + n1*sqrt2, then rationalise 1/(n0 + n1*sqrt2)
        n0 = a0 * a0 + 2 * a1 * a1 + b0 * b0 + 2 * b1 * b1
        n1 = 2 * (a0 * a1 + b0 * b1)
        den = n0 * n0 - 2 * n1 * n1
        inv = ExactComplex(n0 / den, -n1 / den)
        return self.conjugate() * inv

    def __truediv__(self, other):
        if isinstance(other, ExactComplex):
            return self * other.inverse()
        if isinstance(other, Rational):
            if other == 0:
                raise ZeroDivisionError("ExactComplex division by zero")
            return self * (Fraction(1) / other)
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Rational):
            return self.inverse() * other
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return NotImplemented

    def __pow__(self, n: int) -> ExactComplex:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- formatting ----------------------------------------------------
    @staticmethod
    def _fmt_qsqrt2(r: Fraction, s: Fraction) -> str:
        if not s:
            return str(r)
        sq = "sqrt2" if s == 1 else ("-sqrt2" if s == -1 else f"{s}*sqrt2")
        if not r:
            return sq
        return f"{r}{sq}" if sq.startswith("-") else f"{r}+{sq}"

    def __str__(self) -> str:
        re = self._fmt_qsqrt2(self.re_rat, self.re_sqrt2)
        if self.is_real:
            return re
        im = self._fmt_qsqrt2(self.im_rat, self.im_sqrt2)
        if self.im_sqrt2 and self.im_rat:
            im = f"({im})"
        imag = f"{im}i" if im not in ("1", "-1") else ("i" if im == "1" else "-i")
        if not (self.re_rat or self.re_sqrt2):
            return imag
        return f"{re}-{imag[1:]}" if imag.startswith("-") else f"{re}+{imag}"

    def __repr__(self) -> str:
        return f"ExactComplex({self})"


ZERO = ExactComplex()
ONE = ExactComplex(1)
I = ExactComplex(0, 0, 1, 0)
SQRT2 = ExactComplex(0, 1)
INV_SQRT2 = ExactComplex(0, Fraction(1, 2))


def to_exact(x) -> ExactComplex:
    """Exact conversion accepting ``complex`` values whose parts are integers."""
    if isinstance(x, complex):
        if x.real.is_integer() and x.imag.is_integer():
            return ExactComplex.gaussian(int(x.real), int(x.imag))
        raise InputError(f"cannot represent {x!r} exactly")
    return ExactComplex.lift(x)


def is_exact(x) -> bool:
    return isinstance(x, (ExactComplex, Rational))


def is_zero(x, tol: float = 1e-12) -> bool:
    if is_exact(x):
        return not x
    return abs(x) <= tol


def close(a, b, rel: float = 1e-12, abs_tol: float = 1e-12) -> bool:
    """Exact equality when both sides are exact, tolerance otherwise.

    The float test is symmetric: relative to the larger magnitude, with an
    absolute floor for values near zero.
    """
    if is_exact(a) and is_exact(b):
        return a == b
    a, b = complex(a), complex(b)
    return abs(a - b) <= max(rel * max(abs(a), abs(b)), abs_tol)


# ---------------------------------------------------------------------------
# 4x4 matrices
# ---------------------------------------------------------------------------
class Matrix4:
    """Immutable 4x4 matrix in row-major order.

    Entries are normally ``ExactComplex``; float entries are allowed so the
    same code paths serve the floating-point mode.
    """

    __slots__ = ("entries", "_nz")

    def __init__(self, entries: Iterable):
        ent = tuple(e if isinstance(e, (ExactComplex, float, complex)) else ExactComplex.lift(e)
                    for e in entries)
        if len(ent) != 16:
            raise InputError(f"Matrix4 needs 16 entries, got {len(ent)}")
        object.__setattr__(self, "entries", ent)
        nz = tuple(
            tuple((j, ent[4 * i + j]) for j in range(4) if not is_zero(ent[4 * i + j], 0.0))
            for i in range(4)
        )
        object.__setattr__(self, "_nz", nz)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix4 is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> Matrix4:
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise InputError("Matrix4.from_rows needs a 4x4 nested sequence")
        return cls(e for r in rows for e in r)

    @classmethod
    def identity(cls) -> Matrix4:
        return cls(ONE if i == j else ZERO for i in range(4) for j in range(4))

    @classmethod
    def zero(cls) -> Matrix4:
        return cls([ZERO] * 16)

    @classmethod
    def block(cls, a, b, c, d) -> Matrix4:
        """Assemble from four 2x2 blocks ``[[a, b], [c, d]]``."""
        rows = []
        for top, bottom in ((a, b), (c, d)):
            for r in range(2):
                rows.append(list(top[r]) + list(bottom[r]))
        return cls.from_rows(rows)

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.entries[4 * i + j]

    def rows(self) -> tuple[tuple, ...]:
        return tuple(self.entries[4 * i:4 * i + 4] for i in range(4))

    @property
    def is_exact(self) -> bool:
        return all(isinstance(e, ExactComplex) for e in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix4):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __add__(self, other: Matrix4) -> Matrix4:
        return Matrix4(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: Matrix4) -> Matrix4:
        return Matrix4(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> Matrix4:
        return Matrix4(-a for a in self.entries)

    def scale(self, s) -> Matrix4:
        return Matrix4(a * s for a in self.entries)

    def __mul__(self, s) -> Matrix4:
        if isinstance(s, Matrix4):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix4):
            out = []
            for i in range(4):
                row = self._nz[i]
                for j in range(4):
                    acc = ZERO
                    for k, a in row:
                        b = other.entries[4 * k + j]
                        if not is_zero(b, 0.0):
                            acc = acc + a * b
                    out.append(acc)
            return Matrix4(out)
        vec = tuple(other)
        if len(vec) != 4:
            raise InputError("Matrix4 acts on 4-component vectors")
        return tuple(sum((a * vec[j] for j, a in self._nz[i]), ZERO) for i in range(4))

    def left_apply(self, row: Sequence) -> tuple:
        """Row vector times matrix: ``row @ M``."""
        row = tuple(row)
        out = [ZERO] * 4
        for i in range(4):
            ri = row[i]
            if is_zero(ri, 0.0):
                continue
            for j, a in self._nz[i]:
                out[j] = out[j] + ri * a
        return tuple(out)

    def adjoint(self) -> Matrix4:
        return Matrix4(_conj(self.entries[4 * j + i]) for i in range(4) for j in range(4))

    def transpose(self) -> Matrix4:
        return Matrix4(self.entries[4 * j + i] for i in range(4) for j in range(4))

    def trace(self):
        return sum((self.entries[5 * i] for i in range(4)), ZERO)

    @property
    def is_zero(self) -> bool:
        return all(is_zero(e) for e in self.entries)

    def is_unitary(self) -> bool:
        ident = Matrix4.identity()
        return _mat_close(self @ self.adjoint(), ident) and _mat_close(self.adjoint() @ self, ident)

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(e) for e in self.entries], dtype=complex).reshape(4, 4)

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(e) for e in r) for r in self.rows()) + "]"

    def __repr__(self) -> str:
        return f"Matrix4({self})"


def _conj(x):
    return x.conjugate() if hasattr(x, "conjugate") else x


def _mat_close(a: Matrix4, b: Matrix4) -> bool:
    return all(close(x, y) for x, y in zip(a.entries, b.entries))


def dot(row: Sequence, col: Sequence):
    """Plain bilinear contraction ``sum(row[i] * col[i])`` (no conjugation)."""
    return sum((r * c for r, c in zip(row, col) if not is_zero(r, 0.0)), ZERO)


def anticommutator(a: Matrix4, b: Matrix4) -> Matrix4:
    return (a @ b) + (b @ a)


def commutator(a: Matrix4, b: Matrix4) -> Matrix4:
    return (a @ b) - (b @ a)


# ---------------------------------------------------------------------------
# Pauli and Dirac matrices
# ---------------------------------------------------------------------------
_PAULI = {
    0: ((ONE, ZERO), (ZERO, ONE)),
    1: ((ZERO, ONE), (ONE, ZERO)),
    2: ((ZERO, -I), (I, ZERO)),
    3: ((ONE, ZERO), (ZERO, -ONE)),
}
_Z2 = ((ZERO, ZERO), (ZERO, ZERO))


def pauli(index: int) -> tuple[tuple[ExactComplex, ExactComplex], tuple[ExactComplex, ExactComplex]]:
    """Pauli matrix sigma_index as a 2x2 nested tuple; index 0 is the identity."""
    if index not in _PAULI:
        raise InputError(f"Pauli index must be 0..3, got {index!r}")
    return _PAULI[index]


def _neg2(m):
    return tuple(tuple(-e for e in r) for r in m)


def _scale2(m, s):
    return tuple(tuple(e * s for e in r) for r in m)


_KIND_TAGS = ("alpha0", "alpha1", "alpha2", "alpha3", "beta", "alpha5", "pseudovector", "tensor")


@dataclass(frozen=True, order=True)
class MatrixKind:
    """Names one matrix of the enumeration, indexed mu = 0..4 with 4 the beta slot.

    ``pseudovector(mu)`` accepts mu in 0..4 (4 is the beta slot). Tensor
    indices are restricted to 0..3: those are the only pairs the printed
    tensor table covers.
    """

    tag: str
    mu: int | None = None
    nu: int | None = None

    def __post_init__(self):
        if self.tag not in _KIND_TAGS:
            raise InputError(f"unknown matrix kind {self.tag!r}")
        if self.tag == "pseudovector":
            if self.mu not in range(5) or self.nu is not None:
                raise InputError(f"pseudovector index must be 0..4, got {self.mu!r}")
        elif self.tag == "tensor":
            if self.mu not in range(4) or self.nu not in range(4):
                raise InputError(f"tensor indices must be 0..3, got ({self.mu!r}, {self.nu!r})")
        elif self.mu is not None or self.nu is not None:
            raise InputError(f"{self.tag} takes no indices")

    @classmethod
    def alpha(cls, mu: int) -> MatrixKind:
        if mu == 4:
            return cls("beta")
        if mu not in range(4):
            raise InputError(f"alpha index must be 0..4, got {mu!r}")
        return cls(f"alpha{mu}")

    @classmethod
    def beta(cls) -> MatrixKind:
        return cls("beta")

    @classmethod
    def alpha5(cls) -> MatrixKind:
        return cls("alpha5")

    @classmethod
    def pseudovector(cls, mu: int) -> MatrixKind:
        return cls("pseudovector", mu)

    @classmethod
    def tensor(cls, mu: int, nu: int) -> MatrixKind:
        return cls("tensor", mu, nu)

    @classmethod
    def parse(cls, text: str) -> MatrixKind:
        text = text.strip()
        if text.startswith("pseudovector(") and text.endswith(")"):
            return cls.pseudovector(int(text[13:-1]))
        if text.startswith("tensor(") and text.endswith(")"):
            mu, nu = (int(p) for p in text[7:-1].split(","))
            return cls.tensor(mu, nu)
        return cls(text)

    def __str__(self) -> str:
        if self.tag == "pseudovector":
            return f"pseudovector({self.mu})"
        if self.tag == "tensor":
            return f"tensor({self.mu},{self.nu})"
        return self.tag


def _alpha(mu: int) -> Matrix4:
    if mu == 0:
        return Matrix4.identity()
    if mu in (1, 2, 3):
        s = pauli(mu)
        return Matrix4.block(_Z2, s, s, _Z2)
    if mu == 4:
        return Matrix4.block(pauli(0), _Z2, _Z2, _neg2(pauli(0)))
    raise InputError(f"alpha index must be 0..4, got {mu!r}")


@lru_cache(maxsize=None)
def dirac_matrix(kind: MatrixKind) -> Matrix4:
    """The exact matrix for ``kind``, always built from its defining product."""
    tag = kind.tag
    if tag.startswith("alpha") and tag != "alpha5":
        return _alpha(int(tag[5]))
    if tag == "beta":
        return _alpha(4)
    if tag == "alpha5":
        return _alpha(1) @ _alpha(2) @ _alpha(3) @ _alpha(4)
    if tag == "pseudovector":
        return dirac_matrix(MatrixKind.alpha5()) @ _alpha(kind.mu)
    # tensor: i * alpha_nu * beta * alpha_mu off the diagonal, zero on it
    if kind.mu == kind.nu:
        return Matrix4.zero()
    return (_alpha(kind.nu) @ _alpha(4) @ _alpha(kind.mu)).scale(I)


def alpha_matrix(mu: int) -> Matrix4:
    return dirac_matrix(MatrixKind.alpha(mu))


BETA = MatrixKind.beta()
ALPHA5 = MatrixKind.alpha5()

# The sixteen matrices in enumeration order. pseudovector(0)
# coincides with alpha5 as a matrix; both are listed.
ENUMERATION: tuple[MatrixKind, ...] = (
    (BETA,)
    + tuple(MatrixKind.alpha(m) for m in range(4))
    + (ALPHA5,)
    + tuple(MatrixKind.pseudovector(m) for m in range(4))
    + tuple(MatrixKind.tensor(m, n) for m in range(4) for n in range(m + 1, 4))
)


def hermiticity(m: Matrix4) -> str:
    """'hermitian', 'anti-hermitian', 'zero' or 'neither'."""
    if m.is_zero:
        return "zero"
    adj = m.adjoint()
    if adj == m:
        return "hermitian"
    if adj == -m:
        return "anti-hermitian"
    return "neither"


def hermiticity_table() -> dict[str, str]:
    return {str(k): hermiticity(dirac_matrix(k)) for k in ENUMERATION}


# ---------------------------------------------------------------------------
# Canonical transformations
# ---------------------------------------------------------------------------
def _canonical_s() -> Matrix4:
    h = INV_SQRT2
    return Matrix4.from_rows([
        [h, ZERO, ZERO, -h],
        [ZERO, h, h, ZERO],
        [h, ZERO, ZERO, h],
        [ZERO, h, -h, ZERO],
    ])


S_CANONICAL: Matrix4 = _canonical_s()


def _primed_set() -> dict[int, Matrix4]:
    sx, sy, sz = pauli(1), pauli(2), pauli(3)
    return {
        1: Matrix4.block(sx, _Z2, _Z2, sx),
        2: Matrix4.block(sy, _Z2, _Z2, _neg2(sy)),
        3: Matrix4.block(sz, _Z2, _Z2, sz),
        4: Matrix4.block(_Z2, _scale2(sy, -I), _scale2(sy, I), _Z2),
    }


# The printed primed matrices, kept as data to compare against conjugation.
PRINTED_PRIMED: dict[int, Matrix4] = _primed_set()


def require_unitary(s: Matrix4) -> None:
    if not s.is_unitary():
        raise PreconditionError("transformation matrix is not unitary")


def canonical_conjugate(s: Matrix4, m: Matrix4) -> Matrix4:
    """Primed representation ``S^dagger M S`` of ``m``."""
    require_unitary(s)
    return s.adjoint() @ m @ s


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------
def null_space(m: Matrix4) -> list[tuple[ExactComplex, ...]]:
    """Exact basis of ``{v : M v = 0}`` by row reduction over Q(sqrt2, i)."""
    if not m.is_exact:
        raise InputError("null_space needs exact entries; use numpy for float mode")
    rows = [list(r) for r in m.rows()]
    pivots: list[int] = []
    r = 0
    for col in range(4):
        piv = next((i for i in range(r, 4) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(4):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == 4:
            break
    free = [c for c in range(4) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * 4
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(tuple(v))
    return basis


def rank(m: Matrix4) -> int:
    return 4 - len(null_space(m))
