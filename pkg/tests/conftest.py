"""Shared helpers for the test suite."""

import numpy as np

from quatreg.jets import QJet
from quatreg.quaternion import Quaternion, SampleDomain


class FnWrap:
    """Adapter giving a plain polymorphic callable the catalog interface.

    The callable must accept either a Quaternion or a QJet and build its
    result out of arithmetic on the argument, so the same expression works
    for point evaluation and jet evaluation.
    """

    def __init__(self, fn, fid="wrapped"):
        self._fn = fn
        self.fid = fid

    def eval_point(self, p):
        return self._fn(p)

    def eval_jet(self, seed):
        return self._fn(seed)

    def __call__(self, p):
        return self._fn(p)


def sample_points(n, seed=0, domain=None):
    """Generic off-axis, off-plane sample batch."""
    if domain is None:
        domain = SampleDomain()
    return domain.sample(n, seed=seed)


def q(t=0.0, x=0.0, y=0.0, z=0.0):
    return Quaternion(float(t), float(x), float(y), float(z))


def assert_close(a: Quaternion, b: Quaternion, tol=1e-12, msg=""):
    gap = float(np.max((a - b).norm()))
    assert gap < tol, f"{msg} gap={gap:.3e}"


class PolyField:
    """Random quaternion-coefficient polynomial of total degree <= 3."""

    def __init__(self, rng, n_terms=8):
        multis = [(a, b, c, d)
                  for a in range(4) for b in range(4)
                  for c in range(4) for d in range(4)
                  if a + b + c + d <= 3]
        picks = rng.choice(len(multis), size=n_terms, replace=False)
        self.terms = [(multis[i], rng.uniform(-1, 1, size=4))
                      for i in picks]

    @staticmethod
    def _mono(coords, multi):
        out = None
        for base, e in zip(coords, multi):
            for _ in range(e):
                out = base if out is None else out * base
        return out

    def _eval(self, coords, one, lift):
        total = None
        for multi, coeff in self.terms:
            mono = self._mono(coords, multi)
            mono = one if mono is None else mono
            term = lift(mono, coeff)
            total = term if total is None else total + term
        return total

    def eval_point(self, p):
        one = np.ones(np.shape(p.t))
        lift = lambda m, c: Quaternion(m * c[0], m * c[1], m * c[2],
                                       m * c[3])
        return self._eval((p.t, p.x, p.y, p.z), one, lift)

    def eval_jet(self, seed):
        one = seed.t * 0.0 + 1.0
        lift = lambda m, c: QJet(m * c[0], m * c[1], m * c[2], m * c[3])
        return self._eval((seed.t, seed.x, seed.y, seed.z), one, lift)
