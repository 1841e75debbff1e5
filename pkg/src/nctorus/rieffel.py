"""Powers-Rieffel projections p = P^-1 rho(g) + rho(f) + rho(g) P.

Elements are stored as sums rho(c_a) P^a with coefficient functions on the
circle [0, 1).  Moving P^a past rho(h) uses P^a rho(h) = rho(h(. + s a theta)) P^a
with s = +1 for the rule that follows from PQ = exp(2 pi i theta) QP and
rho(exp(2 pi i x)) = Q.  s = -1 is the mirrored rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bialgebra import VerificationReport

__all__ = [
    "PROFILES",
    "BumpPair",
    "ProjectionElement",
    "build_bump",
    "projection",
    "unit_projection",
    "zero_projection",
    "idempotency_residual",
    "projection_trace",
    "chern_number",
    "chern_antiderivative",
    "rieffel_report",
]

DEFAULT_GRID = 2**14


def _flat_exp(t):
    """C-infinity step 0 -> 1 on [0, 1] with all derivatives vanishing at the ends."""
    t = np.clip(np.asarray(t, float), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        a = np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)
        b = np.where(t < 1, np.exp(-1.0 / np.where(t < 1, 1.0 - t, 1.0)), 0.0)
    return a / (a + b)


def _flat_exp_prime(t):
    t = np.asarray(t, float)
    inside = (t > 0) & (t < 1)
    tt = np.where(inside, t, 0.5)
    a, b = np.exp(-1.0 / tt), np.exp(-1.0 / (1.0 - tt))
    d = a * b * (1.0 / tt**2 + 1.0 / (1.0 - tt) ** 2) / (a + b) ** 2
    return np.where(inside, d, 0.0)


def _cosine(t):
    t = np.clip(np.asarray(t, float), 0.0, 1.0)
    return 0.5 - 0.5 * np.cos(math.pi * t)


def _cosine_prime(t):
    t = np.asarray(t, float)
    return np.where((t > 0) & (t < 1), 0.5 * math.pi * np.sin(math.pi * t), 0.0)


# cosine is only C^1 at the ends; it is kept to show the profile independence
PROFILES = {"flat-exp": (_flat_exp, _flat_exp_prime), "cosine": (_cosine, _cosine_prime)}


@dataclass(frozen=True)
class BumpPair:
    theta: float
    grid: int
    profile: str = "flat-exp"
    requested_theta: float | None = None

    @property
    def note(self) -> str | None:
        if self.requested_theta is None:
            return None
        return f"theta {self.requested_theta} mapped to 1 - theta = {self.theta}"

    def _step(self):
        return PROFILES[self.profile]

    def f(self, x):
        th = self.theta
        step, _ = self._step()
        x = np.mod(np.asarray(x, float), 1.0)
        w = 1.0 - th
        rise = step(x / w)
        fall = 1.0 - step((x - th) / w)
        return np.where(x <= w, rise, np.where(x >= th, fall, 1.0))

    def df(self, x):
        th = self.theta
        _, dstep = self._step()
        x = np.mod(np.asarray(x, float), 1.0)
        w = 1.0 - th
        return np.where(x <= w, dstep(x / w) / w, np.where(x >= th, -dstep((x - th) / w) / w, 0.0))

    def g(self, x):
        x = np.mod(np.asarray(x, float), 1.0)
        fx = self.f(x)
        return np.where(x >= self.theta, np.sqrt(np.clip(fx - fx * fx, 0.0, None)), 0.0)

    def points(self) -> np.ndarray:
        return np.arange(self.grid) / self.grid

    def relation_residual(self) -> float:
        """max |f(x) + f(x - theta) - 1| over grid points in [theta, 1]."""
        x = self.points()
        x = x[x >= self.theta]
        return float(np.abs(self.f(x) + self.f(x - self.theta) - 1.0).max(initial=0.0))


def build_bump(theta: float, grid: int = DEFAULT_GRID, profile: str = "flat-exp") -> BumpPair:
    theta = float(theta)
    if not 0.0 < theta < 1.0 or theta == 0.5:
        raise ValueError(f"theta must lie in (0, 1) and differ from 1/2, got {theta}")
    if grid < 2**10 or grid & (grid - 1):
        raise ValueError("grid must be a power of two >= 2^10")
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)}")
    if theta < 0.5:
        return BumpPair(1.0 - theta, grid, profile, requested_theta=theta)
    return BumpPair(theta, grid, profile)


@dataclass(frozen=True)
class ProjectionElement:
    """sum_a rho(coeffs[a]) P^a with a in {-1, 0, 1}."""

    theta: float
    coeffs: dict
    shift: int = 1
    grid: int = DEFAULT_GRID
    bump: BumpPair | None = None


def projection(b: BumpPair, shift: int = 1) -> ProjectionElement:
    """p = P^-1 rho(g) + rho(f) + rho(g) P, brought to the form sum rho(c_a) P^a."""
    th = b.theta
    coeffs = {-1: lambda x: b.g(np.asarray(x) - shift * th), 0: b.f, 1: b.g}
    return ProjectionElement(th, coeffs, shift, b.grid, b)


def unit_projection(theta: float = 0.7, grid: int = DEFAULT_GRID) -> ProjectionElement:
    return ProjectionElement(theta, {0: lambda x: np.ones_like(np.asarray(x, float))}, 1, grid)


def zero_projection(theta: float = 0.7, grid: int = DEFAULT_GRID) -> ProjectionElement:
    return ProjectionElement(theta, {}, 1, grid)


def _square_coeffs(p: ProjectionElement, x: np.ndarray) -> dict:
    """Coefficients of p^2: rho(a) P^i rho(b) P^j = rho(a(x) b(x + s i theta)) P^(i+j)."""
    out: dict = {}
    for i, ci in p.coeffs.items():
        for j, cj in p.coeffs.items():
            term = ci(x) * cj(x + p.shift * i * p.theta)
            out[i + j] = out.get(i + j, 0.0) + term
    return out


def idempotency_residual(p: ProjectionElement, grid: int | None = None) -> float:
    """max over the grid and over powers P^-2..P^2 of |coefficient of p^2 - p|."""
    x = np.arange(grid or p.grid) / (grid or p.grid)
    sq = _square_coeffs(p, x)
    worst = 0.0
    for k in range(-2, 3):
        c = sq.get(k, 0.0) - (p.coeffs[k](x) if k in p.coeffs else 0.0)
        worst = max(worst, float(np.max(np.abs(c), initial=0.0)))
    return worst


def projection_trace(p: ProjectionElement) -> float:
    """tau(p) = mean of the P^0 coefficient, by the periodic trapezoid rule."""
    if 0 not in p.coeffs:
        return 0.0
    x = np.arange(p.grid) / p.grid
    return float(np.mean(p.coeffs[0](x)))


def chern_number(p: ProjectionElement) -> float:
    """-6 int_0^1 g^2 f' dx."""
    if p.bump is None:
        return 0.0
    b = p.bump
    x = b.points()
    return float(-6.0 * np.mean(b.g(x) ** 2 * b.df(x)))


def chern_antiderivative(b: BumpPair) -> Fraction:
    """[f^2/2 - f^3/3] from f(theta) = 1 to f(1) = 0, exactly."""
    hi = Fraction(float(b.f(b.theta)))
    # f is periodic, so f(1) = f(0)
    lo = Fraction(float(b.f(0.0)))

    def prim(y):
        return y * y / 2 - y**3 / 3

    return prim(lo) - prim(hi)


def rieffel_report(theta, grid: int = DEFAULT_GRID, profile: str = "flat-exp") -> dict:
    b = build_bump(theta, grid, profile)
    p = projection(b, shift=1)
    mirrored = projection(b, shift=-1)
    tr = projection_trace(p)
    ch = chern_number(p)
    idem = idempotency_residual(p)
    idem_m = idempotency_residual(mirrored)
    x = b.points()
    integral = float(np.mean((b.f(x) - b.f(x) ** 2) * b.df(x) * (x >= b.theta)))
    checks = {
        "trace": VerificationReport.from_residuals("rieffel_trace", abs(tr - b.theta), 1e-6),
        "chern": VerificationReport.from_residuals("rieffel_chern", abs(ch - 1.0), 1e-6),
        "idempotency": VerificationReport.from_residuals(
            "rieffel_idempotency", idem, 1e-8, details={"shift_rule": "P rho(h) P^-1 = rho(h(. + theta))"}
        ),
        "relation": VerificationReport.from_residuals("rieffel_bump_relation", b.relation_residual(), 1e-14),
    }
    return {
        "theta": b.theta,
        "requested_theta": float(theta),
        "note": b.note,
        "grid": grid,
        "profile": profile,
        "trace": tr,
        "chern": ch,
        "idempotency_residual": idem,
        "idempotency_residual_mirrored_shift": idem_m,
        "antiderivative": str(chern_antiderivative(b)),
        "antiderivative_quadrature": integral,
        "checks": checks,
    }
