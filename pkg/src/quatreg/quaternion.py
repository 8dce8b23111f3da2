"""Quaternion arithmetic and the (t, r, alpha, beta) spherical chart.

A quaternion is written p = t + x*i + y*j + z*k.  Off the real axis it can
also be written p = t + r*iota, where r = |(x, y, z)| and iota is the unit
imaginary direction

    iota = (cos(alpha) sin(beta)) i + (sin(alpha) sin(beta)) j + cos(beta) k,

with alpha in [0, 2*pi) and beta in [0, pi].  All values here are immutable
and all operations pure, so concurrent evaluation is safe.

Components may be scalars or equally-shaped numpy arrays; in the latter case
one Quaternion instance represents a whole batch of points and every
operation broadcasts elementwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import OnRealAxis, ZeroDivisor

# Relative threshold deciding "numerically zero" for inverses and iota.
EPS = 1e-12

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class Quaternion:
    """Element t + x*i + y*j + z*k of the real quaternion algebra."""

    t: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    # -- algebra ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.t + other.t, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.t - other.t, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Quaternion(-self.t, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a, b = self, other
            # Hamilton product; i*j = k, j*k = i, k*i = j, i*i = -1.
            return Quaternion(
                a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z,
                a.t * b.x + a.x * b.t + a.y * b.z - a.z * b.y,
                a.t * b.y - a.x * b.z + a.y * b.t + a.z * b.x,
                a.t * b.z + a.x * b.y - a.y * b.x + a.z * b.t,
            )
        if isinstance(other, (int, float, np.ndarray, np.floating)):
            return Quaternion(self.t * other, self.x * other,
                              self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        # Real scalars commute, so scalar * q == q * scalar.
        if isinstance(other, (int, float, np.ndarray, np.floating)):
            return self.__mul__(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return self * other.inverse()
        if isinstance(other, (int, float, np.ndarray, np.floating)):
            return Quaternion(self.t / other, self.x / other,
                              self.y / other, self.z / other)
        return NotImplemented

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.t, -self.x, -self.y, -self.z)

    def norm_sq(self):
        return self.t * self.t + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self):
        return np.sqrt(self.norm_sq())

    def imag_norm(self):
        """Norm r of the imaginary part (x, y, z)."""
        return np.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def inverse(self) -> "Quaternion":
        """Multiplicative inverse, conjugate over squared norm."""
        n2 = self.norm_sq()
        scale = 1.0 + self.norm()
        if np.any(n2 <= (EPS * scale) ** 2):
            raise ZeroDivisor("quaternion norm below epsilon; not invertible")
        return self.conjugate() * (1.0 / n2)

    # -- conveniences ------------------------------------------------------

    def components(self):
        return (self.t, self.x, self.y, self.z)

    def is_batch(self) -> bool:
        return any(np.ndim(c) > 0 for c in self.components())

    def __getitem__(self, idx) -> "Quaternion":
        """Select points from a batched quaternion."""
        t, x, y, z = np.broadcast_arrays(*self.components())
        return Quaternion(t[idx], x[idx], y[idx], z[idx])

    def __repr__(self):
        if self.is_batch():
            return f"Quaternion(batch of {np.broadcast(*self.components()).size})"
        return (f"Quaternion({self.t:.12g}, {self.x:.12g}, "
                f"{self.y:.12g}, {self.z:.12g})")


def _coerce(value):
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float, np.floating)):
        return Quaternion(float(value))
    return None


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)
UNITS = (ONE, I, J, K)


def q_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    return a * b


def q_inv(a: Quaternion) -> Quaternion:
    return a.inverse()


def q_norm(a: Quaternion):
    return a.norm()


def iota_of(p: Quaternion, eps: float = EPS) -> Quaternion:
    """Unit imaginary direction (x*i + y*j + z*k) / r; satisfies iota**2 == -1."""
    r = p.imag_norm()
    scale = 1.0 + np.abs(p.t)
    if np.any(r <= eps * scale):
        raise OnRealAxis("imaginary part numerically zero; iota undefined")
    s = 1.0 / r
    return Quaternion(0.0 * r, p.x * s, p.y * s, p.z * s)


@dataclass(frozen=True)
class SphericalPoint:
    """Chart (t, r, alpha, beta) of a quaternion off the real axis."""

    t: float
    r: float
    alpha: float
    beta: float


def to_spherical(p: Quaternion, eps: float = EPS) -> SphericalPoint:
    """Chart coordinates of p.

    alpha is the principal two-argument arctangent of (y, x) folded into
    [0, 2*pi); beta = arccos(z / r) in [0, pi].  On the degenerate plane
    t + z*k (sin beta == 0) alpha is fixed to 0 by convention.  Points on
    the real axis are rejected.
    """
    r = p.imag_norm()
    scale = 1.0 + np.abs(p.t)
    if np.any(r <= eps * scale):
        raise OnRealAxis("point on the real axis has no spherical chart")
    beta = np.arccos(np.clip(p.z / r, -1.0, 1.0))
    alpha = np.mod(np.arctan2(p.y, p.x), _TWO_PI)
    # Degenerate slice t + z*k: alpha by convention.
    s = np.hypot(p.x, p.y)
    alpha = np.where(s <= eps * r, 0.0, alpha)
    if np.ndim(alpha) == 0:
        alpha = float(alpha)
    return SphericalPoint(p.t, r, alpha, beta)


def from_spherical(s: SphericalPoint) -> Quaternion:
    sb = np.sin(s.beta)
    return Quaternion(
        s.t,
        s.r * np.cos(s.alpha) * sb,
        s.r * np.sin(s.alpha) * sb,
        s.r * np.cos(s.beta),
    )


@dataclass(frozen=True)
class SampleDomain:
    """Rejection sampler for points off the real axis and chart singularities.

    Ranges are intersected under ``merge``, so catalog members can carry open
    constraints (infinite ranges) that become concrete only when combined
    with a suite's base domain.  ``exclusions`` are (label, predicate) pairs;
    a predicate maps a batched Quaternion to a boolean mask of points to
    reject (branch cuts and similar loci).
    """

    t_range: tuple = (-1.5, 1.5)
    r_range: tuple = (0.5, 2.0)
    s_min: float = 0.1
    p_norm_range: tuple = (0.0, math.inf)
    exclusions: tuple = field(default_factory=tuple)
    seed: int = 0

    def merge(self, other: "SampleDomain") -> "SampleDomain":
        return SampleDomain(
            t_range=(max(self.t_range[0], other.t_range[0]),
                     min(self.t_range[1], other.t_range[1])),
            r_range=(max(self.r_range[0], other.r_range[0]),
                     min(self.r_range[1], other.r_range[1])),
            s_min=max(self.s_min, other.s_min),
            p_norm_range=(max(self.p_norm_range[0], other.p_norm_range[0]),
                          min(self.p_norm_range[1], other.p_norm_range[1])),
            exclusions=self.exclusions + other.exclusions,
            seed=self.seed,
        )

    def with_seed(self, seed: int) -> "SampleDomain":
        return replace(self, seed=seed)

    def contains(self, p: Quaternion):
        """Boolean mask of points satisfying every constraint."""
        r = p.imag_norm()
        sb = np.where(r > 0, np.sqrt(np.maximum(r * r - p.z * p.z, 0.0)) / np.maximum(r, 1e-300), 0.0)
        ok = ((p.t >= self.t_range[0]) & (p.t <= self.t_range[1])
              & (r >= self.r_range[0]) & (r <= self.r_range[1])
              & (sb >= self.s_min))
        pn = p.norm()
        ok &= (pn >= self.p_norm_range[0]) & (pn <= self.p_norm_range[1])
        for _, pred in self.exclusions:
            ok &= ~np.asarray(pred(p))
        return ok

    def sample(self, n: int, seed: int | None = None) -> Quaternion:
        """Draw n admissible points as one batched Quaternion."""
        if not (self.t_range[0] <= self.t_range[1]
                and 0.0 < self.r_range[0] <= self.r_range[1]
                and 0.0 < self.s_min <= 1.0):
            raise ValueError(f"empty or invalid sample domain: {self}")
        rng = np.random.default_rng(self.seed if seed is None else seed)
        beta_lo = math.asin(min(self.s_min, 1.0))
        kept = []
        total = 0
        for _ in range(64):
            m = max(2 * (n - total), 16)
            t = rng.uniform(self.t_range[0], self.t_range[1], m)
            r = rng.uniform(self.r_range[0], self.r_range[1], m)
            alpha = rng.uniform(0.0, _TWO_PI, m)
            beta = rng.uniform(beta_lo, math.pi - beta_lo, m)
            p = from_spherical(SphericalPoint(t, r, alpha, beta))
            mask = self.contains(p)
            if np.any(mask):
                kept.append(p[mask])
                total += int(np.count_nonzero(mask))
            if total >= n:
                break
        else:
            raise ValueError("rejection sampling failed to fill the request; "
                             "domain too restrictive")
        t = np.concatenate([q.t for q in kept])[:n]
        x = np.concatenate([q.x for q in kept])[:n]
        y = np.concatenate([q.y for q in kept])[:n]
        z = np.concatenate([q.z for q in kept])[:n]
        return Quaternion(t, x, y, z)

    def describe(self) -> str:
        bits = [f"t in [{self.t_range[0]:g},{self.t_range[1]:g}]",
                f"r in [{self.r_range[0]:g},{self.r_range[1]:g}]",
                f"sin(beta) >= {self.s_min:g}"]
        if self.p_norm_range != (0.0, math.inf):
            bits.append(f"|p| in [{self.p_norm_range[0]:g},{self.p_norm_range[1]:g}]")
        for label, _ in self.exclusions:
            bits.append(f"excluding {label}")
        return "; ".join(bits)


#: Open domain carried by catalog members with no constraints of their own.
UNRESTRICTED = SampleDomain(t_range=(-math.inf, math.inf),
                            r_range=(1e-300, math.inf), s_min=1e-300)
