"""Differential operators on quaternionic functions, evaluated pointwise.

The left Fueter operator in Cartesian coordinates is

    D_l f = df/dt + i df/dx + j df/dy + k df/dz

with the units multiplying from the left.  Off the plane t + z*k it has the
spherical form

    D_l = d/dt + iota d/dr - (1/r) d/d_l(iota),

where the angular part is

    d/d_l(iota) = (iota_alpha)^-1 d/dalpha + (iota_beta)^-1 d/dbeta,

iota_alpha and iota_beta being the alpha- and beta-derivatives of iota and
the inverses full quaternionic inverses applied by left multiplication.
The Cullen operator d/dt + iota d/dr annihilates Cullen-regular functions.

Every operator takes a function exposing eval_jet/eval_point (see
catalog.QFunction) plus a point, which may be batched.  Two backends are
available: "jets" (exact truncated-Taylor propagation, the primary) and
"fd" (Richardson-refined central differences, the independent oracle).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateChart, OnRealAxis
from .jets import QJet, RJet
from .quaternion import (I, J, K, Quaternion, SphericalPoint, from_spherical,
                         iota_of, to_spherical)

#: Default guards below which the spherical chart is refused.
R_MIN = 1e-6
S_MIN = 1e-6

#: Central-difference base steps (first derivatives / second derivatives).
FD_STEP1 = 1e-5
FD_STEP2 = 1e-3

_E = {0: (1, 0, 0, 0), 1: (0, 1, 0, 0), 2: (0, 0, 1, 0), 3: (0, 0, 0, 1)}


@dataclass(frozen=True)
class OperatorResult:
    """One operator evaluation; backends agree on smooth functions."""

    value: Quaternion
    backend: str
    point: Quaternion


# -- chart frames ----------------------------------------------------------

def cartesian_seed(p: Quaternion, order: int) -> QJet:
    return QJet.seed_cartesian(p, order)


def iota_jet(seed: QJet) -> QJet:
    """iota = (x i + y j + z k)/r as a jet derived from a Cartesian seed."""
    r2 = seed.x * seed.x + seed.y * seed.y + seed.z * seed.z
    s = r2.sqrt().recip()
    return QJet(seed.x * 0.0, seed.x * s, seed.y * s, seed.z * s)


def radius_jet(seed: QJet) -> RJet:
    return (seed.x * seed.x + seed.y * seed.y + seed.z * seed.z).sqrt()


@dataclass(frozen=True)
class SphericalFrame:
    """Jets of the chart variables (t, r, alpha, beta) at a base point,
    with the Cartesian components and iota expressed through them."""

    point: Quaternion
    chart: SphericalPoint
    seed: QJet            # (t, x, y, z) as jets of the chart variables
    iota: QJet
    sin_beta: np.ndarray | float

    def iota_alpha(self) -> QJet:
        return self.iota.derivative(2)

    def iota_beta(self) -> QJet:
        return self.iota.derivative(3)


def spherical_frame(p: Quaternion, order: int,
                    r_min: float = R_MIN, s_min: float = S_MIN) -> SphericalFrame:
    sp = to_spherical(p)
    if np.any(sp.r <= r_min):
        raise OnRealAxis(f"imaginary radius below {r_min:g}")
    sin_beta = np.sin(sp.beta)
    if np.any(sin_beta <= s_min):
        raise DegenerateChart(
            f"sin(beta) below {s_min:g}; point too close to the plane t + z*k")
    jt = RJet.seed(sp.t, 0, order)
    jr = RJet.seed(sp.r, 1, order)
    ja = RJet.seed(sp.alpha, 2, order)
    jb = RJet.seed(sp.beta, 3, order)
    sa, ca = ja.sin(), ja.cos()
    sb, cb = jb.sin(), jb.cos()
    ix, iy, iz = ca * sb, sa * sb, cb
    seed = QJet(jt, jr * ix, jr * iy, jr * iz)
    iota = QJet(jt * 0.0, ix, iy, iz)
    return SphericalFrame(p, sp, seed, iota, sin_beta)


def angular_jet(frame: SphericalFrame, g: QJet) -> QJet:
    """d/d_l(iota) applied to a jet-valued quantity; drops one order."""
    ia_inv = frame.iota_alpha().inverse()
    ib_inv = frame.iota_beta().inverse()
    return ia_inv * g.derivative(2) + ib_inv * g.derivative(3)


def fueter_of_jet(g: QJet) -> Quaternion:
    """D_l from the first-order coefficients of a Cartesian-seeded jet."""
    return (g.partial(_E[0]) + I * g.partial(_E[1])
            + J * g.partial(_E[2]) + K * g.partial(_E[3]))


# -- finite-difference helpers --------------------------------------------

def _fd1(eval_at, h: float) -> Quaternion:
    def central(hh):
        return (eval_at(hh) - eval_at(-hh)) * (0.5 / hh)
    return (central(0.5 * h) * 4.0 - central(h)) * (1.0 / 3.0)


def _fd2(eval_at, f0: Quaternion, h: float) -> Quaternion:
    def second(hh):
        return (eval_at(hh) - f0 * 2.0 + eval_at(-hh)) * (1.0 / (hh * hh))
    return (second(0.5 * h) * 4.0 - second(h)) * (1.0 / 3.0)


def _shift_cart(p: Quaternion, var: int, d):
    comps = list(p.components())
    comps[var] = comps[var] + d
    return Quaternion(*comps)


def _shift_sph(sp: SphericalPoint, var: int, d) -> Quaternion:
    vals = [sp.t, sp.r, sp.alpha, sp.beta]
    vals[var] = vals[var] + d
    return from_spherical(SphericalPoint(*vals))


def _fd_cart_partial(f, p, var, h=FD_STEP1):
    return _fd1(lambda d: f.eval_point(_shift_cart(p, var, d)), h)


def _fd_sph_partial(f, sp, var, h=FD_STEP1):
    return _fd1(lambda d: f.eval_point(_shift_sph(sp, var, d)), h)


# -- the operators ---------------------------------------------------------

def fueter_left(f, p: Quaternion, backend: str = "jets") -> Quaternion:
    """Cartesian left-Fueter operator D_l f at p."""
    if backend == "jets":
        return fueter_of_jet(f.eval_jet(cartesian_seed(p, 1)))
    parts = [_fd_cart_partial(f, p, v) for v in range(4)]
    return parts[0] + I * parts[1] + J * parts[2] + K * parts[3]


def fueter_left_spherical(f, p: Quaternion, backend: str = "jets",
                          r_min: float = R_MIN, s_min: float = S_MIN) -> Quaternion:
    """Spherical form of D_l; matches fueter_left off the plane t + z*k."""
    frame = spherical_frame(p, 1, r_min, s_min)
    iota0 = iota_of(p)
    if backend == "jets":
        g = f.eval_jet(frame.seed)
        dt, dr = g.partial(_E[0]), g.partial(_E[1])
        ang = angular_jet(frame, g).value
    else:
        sp = frame.chart
        dt = _fd_sph_partial(f, sp, 0)
        dr = _fd_sph_partial(f, sp, 1)
        da = _fd_sph_partial(f, sp, 2)
        db = _fd_sph_partial(f, sp, 3)
        ang = (frame.iota_alpha().value.inverse() * da
               + frame.iota_beta().value.inverse() * db)
    return dt + iota0 * dr - ang * (1.0 / frame.chart.r)


def cullen_left(f, p: Quaternion, backend: str = "jets",
                r_min: float = R_MIN, s_min: float = S_MIN) -> Quaternion:
    """Cullen operator (d/dt + iota d/dr) f at p."""
    sp = to_spherical(p)
    if np.any(sp.r <= r_min):
        raise OnRealAxis(f"imaginary radius below {r_min:g}")
    iota0 = iota_of(p)
    if backend == "jets":
        frame = spherical_frame(p, 1, r_min, s_min)
        g = f.eval_jet(frame.seed)
        dt, dr = g.partial(_E[0]), g.partial(_E[1])
    else:
        dt = _fd_sph_partial(f, sp, 0)
        dr = _fd_sph_partial(f, sp, 1)
    return dt + iota0 * dr


def angular_derivative(f, p: Quaternion, backend: str = "jets",
                       r_min: float = R_MIN, s_min: float = S_MIN) -> Quaternion:
    """The angular operator d/d_l(iota) applied to f at p."""
    frame = spherical_frame(p, 1, r_min, s_min)
    if backend == "jets":
        return angular_jet(frame, f.eval_jet(frame.seed)).value
    sp = frame.chart
    da = _fd_sph_partial(f, sp, 2)
    db = _fd_sph_partial(f, sp, 3)
    return (frame.iota_alpha().value.inverse() * da
            + frame.iota_beta().value.inverse() * db)


def laplacian(f, p: Quaternion, backend: str = "jets") -> Quaternion:
    """Four-dimensional Laplacian of f at p."""
    if backend == "jets":
        g = f.eval_jet(cartesian_seed(p, 2))
        out = g.partial((2, 0, 0, 0))
        for m in ((0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)):
            out = out + g.partial(m)
        return out
    f0 = f.eval_point(p)
    out = None
    for v in range(4):
        term = _fd2(lambda d, v=v: f.eval_point(_shift_cart(p, v, d)), f0, FD_STEP2)
        out = term if out is None else out + term
    return out


def fueter_laplacian(f, p: Quaternion) -> Quaternion:
    """D_l applied to the Laplacian of f (order-3 jets; no FD backend)."""
    g = f.eval_jet(cartesian_seed(p, 3))
    lap = None
    for v in range(4):
        term = g.derivative(v).derivative(v)
        lap = term if lap is None else lap + term
    return fueter_of_jet(lap)


_OPERATORS = {
    "fueter_left": fueter_left,
    "fueter_left_spherical": fueter_left_spherical,
    "cullen_left": cullen_left,
    "angular_derivative": angular_derivative,
    "laplacian": laplacian,
}

#: Operators with both a jets and an fd backend, for cross-checking.
CROSS_CHECKED = tuple(_OPERATORS)


def evaluate_operator(name: str, f, p: Quaternion,
                      backend: str = "jets") -> OperatorResult:
    try:
        op = _OPERATORS[name]
    except KeyError:
        raise KeyError(f"unknown operator {name!r}; "
                       f"choose from {sorted(_OPERATORS)}") from None
    return OperatorResult(op(f, p, backend=backend), backend, p)
