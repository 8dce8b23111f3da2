"""Slice decomposition f = u + iota*v and the regularity residual checkers.

The decomposition uses the canonical choices

    u = (1/2) d/d_l(iota) (iota f),      v = (1/2) d/d_l(iota) (f),

which by the angular identity (lemma1_residual checks it)

    d/d_l(iota)(iota f) + iota d/d_l(iota)(f) = 2 f

reconstruct f for ANY function differentiable in alpha and beta, regular or
not.  For left-Cullen-regular f the four equivalent characterizations all
hold; theorem1_residuals evaluates their six residual norms at a point:

    item 1:   (d/dt + iota d/dr) f
    item 2:   D_l(iota f) + iota D_l f + 2 f / r
    item 3a:  D_l f + 2 v / r
    item 3b:  D_l(iota f) + 2 u / r
    item 4a:  D_l(f / r^2) + 2 iota u / r^3
    item 4b:  D_l(iota f / r^2) - 2 iota v / r^3

The sign in item 4b follows from item 3 by the product rule
D_l(g / r^2) = (D_l g) / r^2 - 2 iota g / r^3: substituting g = iota f
gives D_l(iota f / r^2) = +2 iota v / r^3.  (Check it on f = p, where
u = t and v = r: the left side is 2 iota / r^2.)

A single order-1 spherical-frame jet evaluation of f powers all six.  The
hyperholomorphy equations, componentwise as 4-vectors,

    (1)  dv/dalpha (sin beta)^-1 + du/dbeta = 0
    (2)  du/dalpha (sin beta)^-1 - dv/dbeta = 0

need one extra order since u and v are themselves first derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import iota_times, over_r2
from .jets import QJet, RJet
from .operators import (R_MIN, S_MIN, SphericalFrame, angular_derivative,
                        angular_jet, cullen_left, fueter_left, spherical_frame)
from .quaternion import Quaternion, SampleDomain, iota_of

ITEM_NAMES = ("item1", "item2", "item3a", "item3b", "item4a", "item4b")


@dataclass(frozen=True)
class SliceParts:
    u: Quaternion
    v: Quaternion
    reconstruction: Quaternion
    point: Quaternion


def _dl_sph(frame: SphericalFrame, h: QJet) -> Quaternion:
    """Spherical-form left Fueter value of a chart-frame jet (order >= 1)."""
    dt = h.derivative(0).value
    dr = h.derivative(1).value
    ang = angular_jet(frame, h).value
    return dt + frame.iota.value * dr - ang * (1.0 / frame.chart.r)


def slice_parts(f, p: Quaternion,
                r_min: float = R_MIN, s_min: float = S_MIN) -> SliceParts:
    frame = spherical_frame(p, 1, r_min, s_min)
    g = f.eval_jet(frame.seed)
    u = angular_jet(frame, frame.iota * g).value * 0.5
    v = angular_jet(frame, g).value * 0.5
    return SliceParts(u, v, u + frame.iota.value * v, p)


def lemma1_residual(f, p: Quaternion, r_min: float = R_MIN,
                    s_min: float = S_MIN, backend: str = "jets"):
    """Norm of d/d_l(iota)(iota f) + iota d/d_l(iota)(f) - 2 f(p)."""
    if backend == "fd":
        lhs = (angular_derivative(iota_times(f), p, backend="fd")
               + iota_of(p) * angular_derivative(f, p, backend="fd"))
        return (lhs - f.eval_point(p) * 2.0).norm()
    frame = spherical_frame(p, 1, r_min, s_min)
    g = f.eval_jet(frame.seed)
    lhs = (angular_jet(frame, frame.iota * g).value
           + frame.iota.value * angular_jet(frame, g).value)
    return (lhs - g.value * 2.0).norm()


@dataclass(frozen=True)
class TheoremOneReport:
    fid: str
    point: Quaternion
    item1: np.ndarray
    item2: np.ndarray
    item3a: np.ndarray
    item3b: np.ndarray
    item4a: np.ndarray
    item4b: np.ndarray
    value_norm: np.ndarray

    def items(self) -> dict:
        return {name: getattr(self, name) for name in ITEM_NAMES}

    def max_residual(self) -> float:
        return float(max(np.max(res) for res in self.items().values()))

    def passes(self, tol: float) -> bool:
        return self.max_residual() < tol


def theorem1_residuals(f, p: Quaternion, r_min: float = R_MIN,
                       s_min: float = S_MIN,
                       backend: str = "jets") -> TheoremOneReport:
    if backend == "fd":
        return _theorem1_residuals_fd(f, p)
    frame = spherical_frame(p, 1, r_min, s_min)
    g = f.eval_jet(frame.seed)
    ig = frame.iota * g
    r0 = frame.chart.r
    rj = RJet.seed(r0, 1, 1)
    r2_inv = (rj * rj).recip()
    iota0 = frame.iota.value
    fval = g.value
    u = angular_jet(frame, ig).value * 0.5
    v = angular_jet(frame, g).value * 0.5
    dlf = _dl_sph(frame, g)
    dlif = _dl_sph(frame, ig)
    item1 = (g.derivative(0).value + iota0 * g.derivative(1).value).norm()
    item2 = (dlif + iota0 * dlf + fval * (2.0 / r0)).norm()
    item3a = (dlf + v * (2.0 / r0)).norm()
    item3b = (dlif + u * (2.0 / r0)).norm()
    item4a = (_dl_sph(frame, g * r2_inv) + iota0 * u * (2.0 / r0 ** 3)).norm()
    item4b = (_dl_sph(frame, ig * r2_inv) - iota0 * v * (2.0 / r0 ** 3)).norm()
    return TheoremOneReport(getattr(f, "fid", "?"), p,
                            np.asarray(item1), np.asarray(item2),
                            np.asarray(item3a), np.asarray(item3b),
                            np.asarray(item4a), np.asarray(item4b),
                            np.asarray(fval.norm()))


def _theorem1_residuals_fd(f, p: Quaternion) -> TheoremOneReport:
    """Finite-difference oracle for the six residuals (independent path)."""
    g2 = iota_times(f)
    g3, g4 = over_r2(f), over_r2(g2)
    iota0 = iota_of(p)
    r0 = p.imag_norm()
    fval = f.eval_point(p)
    u = angular_derivative(g2, p, backend="fd") * 0.5
    v = angular_derivative(f, p, backend="fd") * 0.5
    dlf = fueter_left(f, p, backend="fd")
    dlif = fueter_left(g2, p, backend="fd")
    item1 = cullen_left(f, p, backend="fd").norm()
    item2 = (dlif + iota0 * dlf + fval * (2.0 / r0)).norm()
    item3a = (dlf + v * (2.0 / r0)).norm()
    item3b = (dlif + u * (2.0 / r0)).norm()
    item4a = (fueter_left(g3, p, backend="fd")
              + iota0 * u * (2.0 / r0 ** 3)).norm()
    item4b = (fueter_left(g4, p, backend="fd")
              - iota0 * v * (2.0 / r0 ** 3)).norm()
    return TheoremOneReport(getattr(f, "fid", "?"), p,
                            np.asarray(item1), np.asarray(item2),
                            np.asarray(item3a), np.asarray(item3b),
                            np.asarray(item4a), np.asarray(item4b),
                            np.asarray(fval.norm()))


@dataclass(frozen=True)
class HyperholoReport:
    fid: str
    point: Quaternion
    eq1: Quaternion
    eq2: Quaternion
    u: Quaternion
    v: Quaternion

    def max_residual(self) -> float:
        return float(max(np.max(self.eq1.norm()), np.max(self.eq2.norm())))

    def max_uv_imag(self) -> float:
        return float(max(np.max(self.u.imag_norm()), np.max(self.v.imag_norm())))


def hyperholomorphy_residuals(f, p: Quaternion, r_min: float = R_MIN,
                              s_min: float = S_MIN):
    """Componentwise residuals of equations (1) and (2) at p."""
    report = hyperholomorphy_report(f, p, r_min, s_min)
    return report.eq1, report.eq2


def hyperholomorphy_report(f, p: Quaternion, r_min: float = R_MIN,
                           s_min: float = S_MIN) -> HyperholoReport:
    frame = spherical_frame(p, 2, r_min, s_min)
    g = f.eval_jet(frame.seed)
    uj = angular_jet(frame, frame.iota * g) * 0.5
    vj = angular_jet(frame, g) * 0.5
    sb_inv = 1.0 / np.sin(frame.chart.beta)
    eq1 = vj.derivative(2).value * sb_inv + uj.derivative(3).value
    eq2 = uj.derivative(2).value * sb_inv - vj.derivative(3).value
    return HyperholoReport(getattr(f, "fid", "?"), p, eq1, eq2,
                           uj.value, vj.value)


# -- sample-sweep verdicts -------------------------------------------------

@dataclass(frozen=True)
class RegularityVerdict:
    fid: str
    tol: float
    n_samples: int
    item_max: dict
    item_mean: dict
    item_pass: dict
    regular: bool
    consistent: bool
    margin: float

    def summary(self) -> str:
        worst = max(self.item_max.values())
        state = "regular" if self.regular else "not-regular"
        cons = "consistent" if self.consistent else "INCONSISTENT"
        return (f"{self.fid}: {state} ({cons}) max_residual={worst:.3e} "
                f"tol={self.tol:g} n={self.n_samples}")


def regularity_verdict(f, sampler: SampleDomain, tol: float,
                       n: int = 200, seed: int | None = None) -> RegularityVerdict:
    """Aggregate Theorem 1 residuals over a seeded sample sweep.

    The verdict's consistency flag records whether all six items agree on
    pass/fail, which is the computable content of the items being
    equivalent characterizations.
    """
    domain = sampler.merge(f.domain)
    pts = domain.sample(n, seed=seed)
    rep = theorem1_residuals(f, pts)
    item_max = {k: float(np.max(vals)) for k, vals in rep.items().items()}
    item_mean = {k: float(np.mean(vals)) for k, vals in rep.items().items()}
    item_pass = {k: bool(item_max[k] < tol) for k in item_max}
    votes = set(item_pass.values())
    regular = votes == {True}
    worst = max(item_max.values())
    return RegularityVerdict(getattr(f, "fid", "?"), tol, n, item_max,
                             item_mean, item_pass, regular,
                             len(votes) == 1, tol - worst)


@dataclass(frozen=True)
class IotaComposeVerdict:
    fid: str
    tol: float
    max_f: float
    max_iota_f: float
    passes_f: bool
    passes_iota_f: bool

    @property
    def together(self) -> bool:
        return self.passes_f == self.passes_iota_f


def iota_compose_regularity(f, sampler: SampleDomain, tol: float,
                            n: int = 200, seed: int | None = None) -> IotaComposeVerdict:
    """Check that f and iota*f are Cullen-regular together or fail together."""
    domain = sampler.merge(f.domain)
    pts = domain.sample(n, seed=seed)
    frame = spherical_frame(pts, 1)
    g = f.eval_jet(frame.seed)
    ig = frame.iota * g
    iota0 = frame.iota.value

    def cullen_norm(h):
        return np.max((h.derivative(0).value
                       + iota0 * h.derivative(1).value).norm())

    mf, mif = float(cullen_norm(g)), float(cullen_norm(ig))
    return IotaComposeVerdict(getattr(f, "fid", "?"), tol, mf, mif,
                              mf < tol, mif < tol)
