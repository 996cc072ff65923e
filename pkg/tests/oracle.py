"""Independent numpy oracle: matrices, bispinors and closed forms built from scratch.

Nothing here imports the package, so agreement with it is a real cross-check.
"""
import numpy as np

S0 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
Z2 = np.zeros((2, 2), dtype=complex)


def block(a, b, c, d):
    return np.block([[a, b], [c, d]])


ALPHA = {
    0: block(S0, Z2, Z2, S0),
    1: block(Z2, SX, SX, Z2),
    2: block(Z2, SY, SY, Z2),
    3: block(Z2, SZ, SZ, Z2),
    4: block(S0, Z2, Z2, -S0),
}
BETA = ALPHA[4]
ALPHA5 = ALPHA[1] @ ALPHA[2] @ ALPHA[3] @ ALPHA[4]


def pseudovector(mu):
    return ALPHA5 @ ALPHA[mu]


def tensor(mu, nu):
    if mu == nu:
        return np.zeros((4, 4), dtype=complex)
    return 1j * ALPHA[nu] @ BETA @ ALPHA[mu]


def psi(ex, ez, hx, hz):
    return np.array([ex, ez, 1j * hx, 1j * hz], dtype=complex)


def row(ex, ez, hx, hz):
    return np.array([ex, ez, -1j * hx, -1j * hz], dtype=complex)


def sandwich(m, q):
    return row(*q) @ m @ psi(*q)


def printed_table(ex, ez, hx, hz):
    """The printed tensor table, rows and columns in the order (x, y, z, t)."""
    a = ex * ex - ez * ez + hx * hx - hz * hz
    b = ex * ex - ez * ez - hx * hx + hz * hz
    c = 2 * (ex * ez - hx * hz)
    d = 2 * (ex * hz + ez * hx)
    e = 2 * (ex * hx - ez * hz)
    return [
        [0, a, 0, -d],
        [-b, 0, c, 0],
        [0, -c, 0, -e],
        [d, 0, e, 0],
    ]


def closed_forms(ex, ez, hx, hz):
    """Printed closed forms for the (y, -) wave function."""
    return {
        "beta": ex * ex + ez * ez - hx * hx - hz * hz,
        "alpha0": ex * ex + ez * ez + hx * hx + hz * hz,
        "alpha2": -2 * (ez * hx - ex * hz),  # -2 [E x H]_y
        "alpha5": 2 * (ex * hx + ez * hz),
        "pv0": 2 * (ex * hx + ez * hz),
        "pv1": -2j * (ex * ez - hx * hz),
        "pv2": 0,
        "pv3": -1j * (ex * ex - ez * ez - hx * hx + hz * hz),
    }


S_CANONICAL = np.array([[1, 0, 0, -1], [0, 1, 1, 0], [1, 0, 0, 1], [0, 1, -1, 0]], dtype=complex) / np.sqrt(2)


def dirac_rows(form_p, form_m, eps, p, m, c, q, side="column"):
    """Plane-wave operator ``eps I + form_p c alpha_2 p + form_m beta m c^2`` on psi or its row."""
    mat = eps * np.eye(4) + form_p * c * p * ALPHA[2] + form_m * m * c * c * BETA
    if side == "column":
        return mat @ psi(*q)
    return row(*q) @ mat
