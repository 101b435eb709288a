"""Faddeev's noncompact quantum dilogarithm.

Defined inside the strip |Im z| < |Im c_b| by a contour integral over
the real line that circles the origin from above; continued outside by
the recurrence in steps of i*b.  For Im b^2 > 0 it factors as a ratio
of two compact quantum dilogarithm products, which serves as an
independent cross-check; for real b that product is invalid and the
integral is the primary evaluation path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .dilog import li2, psiq_numeric
from .errors import QuadratureFailure

_ARC_NODES, _ARC_WEIGHTS = np.polynomial.legendre.leggauss(64)


@dataclass(frozen=True)
class PhibParams:
    """Parameter b with its derived constants, recomputed on access."""

    b: complex

    def __post_init__(self):
        b = complex(self.b)
        if b.real == 0.0:
            raise ValueError("b must have nonzero real part")
        object.__setattr__(self, "b", b)

    @property
    def c_b(self) -> complex:
        return 0.5j * (self.b + 1.0 / self.b)

    @property
    def q(self) -> complex:
        return cmath.exp(1j * math.pi * self.b * self.b)

    @property
    def q_dual(self) -> complex:
        return cmath.exp(1j * math.pi / (self.b * self.b))

    @property
    def q_bar(self) -> complex:
        return cmath.exp(-1j * math.pi / (self.b * self.b))

    @property
    def hbar(self) -> complex:
        h = math.pi * self.b * self.b
        return h

    @property
    def strip_height(self) -> float:
        return abs(self.c_b.imag)


def _integrand_factor(x, z, b):
    """e^(-2 i z x) / (x sinh(x b) sinh(x / b)) for x on the contour."""
    return cmath.exp(-2j * z * x) / (x * cmath.sinh(x * b) * cmath.sinh(x / b))


def _log_phib_strip(z, p: PhibParams, tol: float):
    """-1/4 of the contour integral, for z strictly inside the strip."""
    b = p.b
    if b.real < 0:
        b = -b  # the integrand is even under b -> -b
    # keep the semicircle well below the first zeros of the sinh factors
    # on the imaginary axis (at pi*b*i*k and pi*i*k/b)
    r = min(1e-2 * (abs(b) + 1.0 / abs(b)),
            0.45 * math.pi * min(abs(b), 1.0 / abs(b)))
    # symmetrised tails: int_r^X of g(x)+g(-x) = -2i sin(2 z x)/(x sinh sinh)
    rate = (b + 1.0 / b).real - 2.0 * abs(complex(z).imag)
    if rate <= 0:
        raise QuadratureFailure(
            f"z={z} outside the integrable strip for b={b}")
    upper = max(60.0 / rate, r + 1.0)

    def sym(x):
        return -2j * cmath.sin(2 * z * x) / (x * cmath.sinh(x * b) * cmath.sinh(x / b))

    re, re_err = quad(lambda x: sym(x).real, r, upper, limit=400,
                      epsabs=1e-13, epsrel=1e-12)
    im, im_err = quad(lambda x: sym(x).imag, r, upper, limit=400,
                      epsabs=1e-13, epsrel=1e-12)
    tails = complex(re, im)
    achieved = re_err + im_err
    if achieved > 100 * tol:
        raise QuadratureFailure(
            f"tail quadrature error {achieved:.2e} above budget", achieved)
    # upper semicircle from -r to r, passing above the origin
    theta = 0.5 * math.pi * (_ARC_NODES + 1.0)
    arc = 0.0 + 0.0j
    for th, w in zip(theta, _ARC_WEIGHTS):
        x = r * cmath.exp(1j * th)
        arc += w * _integrand_factor(x, z, b) * x
    arc *= -1j * (0.5 * math.pi)
    return -0.25 * (tails + arc)


def phib(z, p: PhibParams, tol: float = 1e-8) -> complex:
    """Evaluate Phi_b(z), reducing into the strip by the recurrence
    Phi_b(w + i b) = (1 + q e^(2 pi b w)) Phi_b(w) when needed."""
    z = complex(z)
    b = p.b if p.b.real > 0 else -p.b
    q = p.q
    thresh = 0.5 * p.strip_height
    prefactor = 1.0 + 0.0j
    guard = 0
    while z.imag > thresh:
        z = z - 1j * b
        prefactor *= 1.0 + q * cmath.exp(2 * math.pi * b * z)
        guard += 1
        if guard > 500:
            raise QuadratureFailure("recurrence reduction did not terminate")
    while z.imag < -thresh:
        z = z + 1j * b
        prefactor /= 1.0 + cmath.exp(2 * math.pi * b * z) / q
        guard += 1
        if guard > 500:
            raise QuadratureFailure("recurrence reduction did not terminate")
    return prefactor * cmath.exp(_log_phib_strip(z, p, tol))


def log_phib(z, p: PhibParams, tol: float = 1e-8) -> complex:
    """log Phi_b(z) for z inside the strip (no recurrence reduction)."""
    if abs(complex(z).imag) >= 0.5 * p.strip_height:
        raise ValueError("log_phib requires z well inside the strip")
    return _log_phib_strip(complex(z), p, tol)


def unitarity_residual(z: float, p: PhibParams) -> float:
    """| |Phi_b(z)| - 1 | for real z; zero when b is real or |b| = 1."""
    return abs(abs(phib(z, p)) - 1.0)


def recurrence_residual(z, p: PhibParams, dual: bool = False) -> float:
    """Relative deviation of Phi_b(z + i s) / Phi_b(z) from
    1 + q_s e^(2 pi s z), with s = b (or 1/b in the dual direction)."""
    s = 1.0 / p.b if dual else p.b
    qs = p.q_dual if dual else p.q
    lhs = phib(z + 1j * s, p) / phib(z, p)
    rhs = 1.0 + qs * cmath.exp(2 * math.pi * s * z)
    return abs(lhs - rhs) / abs(rhs)


def check_duality(z, b) -> tuple:
    """Residuals |Phi_b(z) - Phi_{1/b}(z)| and |Phi_b(z) - Phi_{-b}(z)|."""
    base = phib(z, PhibParams(b))
    inv = phib(z, PhibParams(1.0 / complex(b)))
    neg = phib(z, PhibParams(-complex(b)))
    return abs(base - inv), abs(base - neg)


def phipsi_residual(z, p: PhibParams) -> float:
    """Deviation of the integral from the compact product ratio
    Psi_q(e^(2 pi b z)) / Psi_qbar(e^(2 pi z / b)); needs Im b^2 > 0."""
    if (p.b * p.b).imag <= 0:
        raise ValueError("the product ratio requires Im b^2 > 0")
    lhs = phib(z, p)
    num = psiq_numeric(cmath.exp(2 * math.pi * p.b * z), p.q)
    den = psiq_numeric(cmath.exp(2 * math.pi * z / p.b), p.q_bar)
    rhs = num / den
    return abs(lhs - rhs) / abs(rhs)


def check_phib_asymptotics(z: float, b_values) -> list:
    """Rows (b, |2 pi b^2 i log Phi_b(z / 2 pi b) + li2(-e^z)|): the
    defect of the leading small-b behavior, which decays as b -> 0."""
    rows = []
    target = li2(-math.exp(z))
    for b in b_values:
        p = PhibParams(b)
        val = 2j * math.pi * b * b * log_phib(z / (2 * math.pi * b), p) + target
        rows.append((b, abs(val)))
    return rows
