"""Truncated Taylor expansions (jets) in 4 real variables, orders 0..3.

An RJet stores the coefficients of a real-valued Taylor polynomial about a
base point, indexed by 4-variable multi-indices of total degree <= order.
A QJet bundles four RJets, one per quaternion component.  Arithmetic
truncates at the jet order, so products of seeded jets carry exact partial
derivatives through every operation: the coefficient at multi-index m is
(d^m f) / m!.

Coefficient arrays may have leading batch dimensions, shape (..., N); every
operation broadcasts over them, which is what makes whole sample sweeps and
quadrature grids cheap.

Orders above 3 are rejected: third derivatives are the deepest anything
here needs (the Fueter operator applied to a Laplacian).
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import (BasisMismatch, DomainError, IndexTooDeep, OrderTooHigh,
                     ZeroDivisor)
from .quaternion import Quaternion

MAX_ORDER = 3
NVARS = 4


def _indices_for(order):
    out = []
    for total in range(order + 1):
        for combo in itertools.combinations_with_replacement(range(NVARS), total):
            m = [0, 0, 0, 0]
            for v in combo:
                m[v] += 1
            out.append(tuple(m))
    return tuple(out)


INDICES = {n: _indices_for(n) for n in range(MAX_ORDER + 1)}
_POS = {n: {m: i for i, m in enumerate(INDICES[n])} for n in range(MAX_ORDER + 1)}
_NCOEF = {n: len(INDICES[n]) for n in range(MAX_ORDER + 1)}   # 1, 5, 15, 35
_FACT = {n: np.array([math.prod(math.factorial(e) for e in m)
                      for m in INDICES[n]], dtype=float)
         for n in range(MAX_ORDER + 1)}


def _mul_scatter(order):
    """(IA, IB, S): product pairs plus the scatter matrix mapping pair
    products onto output coefficients."""
    idx = INDICES[order]
    pos = _POS[order]
    ia, ib, iout = [], [], []
    for i, ma in enumerate(idx):
        if sum(ma) > order:
            continue
        for j, mb in enumerate(idx):
            if sum(ma) + sum(mb) > order:
                continue
            ia.append(i)
            ib.append(j)
            iout.append(pos[tuple(a + b for a, b in zip(ma, mb))])
    scatter = np.zeros((len(ia), len(idx)))
    scatter[np.arange(len(ia)), iout] = 1.0
    return np.array(ia), np.array(ib), scatter


_MUL = {n: _mul_scatter(n) for n in range(MAX_ORDER + 1)}


def _deriv_map(order, var):
    """Positions/factors such that (df/dx_var) coefficients at order-1 are
    c[src] * fac."""
    src, fac = [], []
    for m in INDICES[order - 1]:
        shifted = list(m)
        shifted[var] += 1
        src.append(_POS[order][tuple(shifted)])
        fac.append(m[var] + 1.0)
    return np.array(src), np.array(fac)


_DERIV = {(n, v): _deriv_map(n, v)
          for n in range(1, MAX_ORDER + 1) for v in range(NVARS)}

_SCALARS = (int, float, np.floating, np.ndarray)


def _check_order(order):
    if not 0 <= order <= MAX_ORDER:
        raise OrderTooHigh(f"jet order {order} outside 0..{MAX_ORDER}")


class RJet:
    """Real-valued truncated Taylor expansion."""

    __slots__ = ("order", "c")

    def __init__(self, order: int, coeffs):
        _check_order(order)
        c = np.asarray(coeffs, dtype=float)
        if c.shape[-1] != _NCOEF[order]:
            raise BasisMismatch(
                f"expected {_NCOEF[order]} coefficients for order {order}, "
                f"got {c.shape[-1]}")
        self.order = order
        self.c = c

    @classmethod
    def constant(cls, value, order: int) -> "RJet":
        _check_order(order)
        value = np.asarray(value, dtype=float)
        c = np.zeros(value.shape + (_NCOEF[order],))
        c[..., 0] = value
        return cls(order, c)

    @classmethod
    def seed(cls, value, var: int | None, order: int) -> "RJet":
        """Constant `value` carrying a unit first-order coefficient in its
        own variable (none when var is None)."""
        jet = cls.constant(value, order)
        if var is not None and order >= 1:
            jet.c[..., _POS[order][_unit(var)]] = 1.0
        return jet

    # -- ring operations --------------------------------------------------

    def _binary_check(self, other):
        if other.order != self.order:
            raise BasisMismatch(
                f"jet orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, RJet):
            self._binary_check(other)
            return RJet(self.order, self.c + other.c)
        if isinstance(other, _SCALARS):
            c = np.broadcast_to(
                self.c, np.broadcast_shapes(np.shape(other) + (1,), self.c.shape)
            ).copy()
            c[..., 0] += other
            return RJet(self.order, c)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return RJet(self.order, -self.c)

    def __sub__(self, other):
        if isinstance(other, RJet):
            self._binary_check(other)
            return RJet(self.order, self.c - other.c)
        if isinstance(other, _SCALARS):
            return self.__add__(-np.asarray(other))
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, RJet):
            self._binary_check(other)
            a, b = self.c, other.c
            # Low orders are the bulk-quadrature hot path; write them out
            # with views instead of gather-and-scatter.  Term order is the
            # same as in the general branch, so the sums are bit-identical.
            if self.order == 0:
                return RJet(0, a * b)
            if self.order == 1:
                out = np.empty(np.broadcast_shapes(a.shape, b.shape))
                out[..., 0] = a[..., 0] * b[..., 0]
                out[..., 1:] = (a[..., :1] * b[..., 1:]
                                + a[..., 1:] * b[..., :1])
                return RJet(1, out)
            ia, ib, scatter = _MUL[self.order]
            return RJet(self.order, (a[..., ia] * b[..., ib]) @ scatter)
        if isinstance(other, _SCALARS):
            return RJet(self.order, self.c * np.asarray(other)[..., None])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RJet):
            return self * other.recip()
        if isinstance(other, _SCALARS):
            return self * (1.0 / np.asarray(other))
        return NotImplemented

    def __rtruediv__(self, other):
        return self.recip() * other

    # -- structure ---------------------------------------------------------

    @property
    def value(self):
        return self.c[..., 0]

    def partial(self, multi) -> np.ndarray | float:
        """Exact partial derivative d^multi f at the base point."""
        multi = tuple(multi)
        if len(multi) != NVARS:
            raise IndexTooDeep(f"multi-index must have {NVARS} entries")
        if sum(multi) > self.order:
            raise IndexTooDeep(
                f"|{multi}| exceeds jet order {self.order}")
        fac = math.prod(math.factorial(e) for e in multi)
        return self.c[..., _POS[self.order][multi]] * fac

    def derivative(self, var: int) -> "RJet":
        """d/dx_var as a jet of one order lower."""
        if self.order < 1:
            raise IndexTooDeep("cannot differentiate an order-0 jet")
        src, fac = _DERIV[(self.order, var)]
        return RJet(self.order - 1, self.c[..., src] * fac)

    # -- elementary functions ---------------------------------------------

    def _compose(self, derivs):
        """Taylor composition about the constant term: derivs[m] must hold
        g^(m)(value) for m = 0..order."""
        h = self.c.copy()
        h[..., 0] = 0.0
        h = RJet(self.order, h)
        out = RJet.constant(derivs[0], self.order)
        power = None
        fact = 1.0
        for m in range(1, self.order + 1):
            power = h if power is None else power * h
            fact *= m
            out = out + power * (np.asarray(derivs[m]) / fact)
        return out

    def sin(self):
        a = self.value
        return self._compose([np.sin(a), np.cos(a), -np.sin(a), -np.cos(a)][:self.order + 1])

    def cos(self):
        a = self.value
        return self._compose([np.cos(a), -np.sin(a), -np.cos(a), np.sin(a)][:self.order + 1])

    def sqrt(self):
        a = self.value
        if np.any(a <= 0.0):
            raise DomainError("sqrt needs a strictly positive constant term")
        s = np.sqrt(a)
        return self._compose([s, 0.5 / s, -0.25 / (s * a), 0.375 / (s * a * a)][:self.order + 1])

    def recip(self):
        a = self.value
        if np.any(a == 0.0) or np.any(np.abs(a) < 1e-280):
            raise DomainError("reciprocal needs a nonzero constant term")
        inv = 1.0 / a
        return self._compose([inv, -inv * inv, 2.0 * inv ** 3, -6.0 * inv ** 4][:self.order + 1])

    def atan(self):
        a = self.value
        d = 1.0 / (1.0 + a * a)
        return self._compose(
            [np.arctan(a), d, -2.0 * a * d * d, (6.0 * a * a - 2.0) * d ** 3][:self.order + 1])

    def atanh(self):
        a = self.value
        if np.any(np.abs(a) >= 1.0):
            raise DomainError("atanh needs |constant term| < 1")
        d = 1.0 / (1.0 - a * a)
        return self._compose(
            [np.arctanh(a), d, 2.0 * a * d * d, (2.0 + 6.0 * a * a) * d ** 3][:self.order + 1])

    def __repr__(self):
        return f"RJet(order={self.order}, c={self.c!r})"


def _unit(var):
    m = [0, 0, 0, 0]
    m[var] = 1
    return tuple(m)


# Dispatchers usable on jets, floats and numpy arrays alike; catalog bodies
# are written against these so one body serves point and jet evaluation.

def sin(a):
    return a.sin() if isinstance(a, RJet) else np.sin(a)


def cos(a):
    return a.cos() if isinstance(a, RJet) else np.cos(a)


def sqrt(a):
    if isinstance(a, RJet):
        return a.sqrt()
    if np.any(np.asarray(a) <= 0.0):
        raise DomainError("sqrt needs a strictly positive argument")
    return np.sqrt(a)


def recip(a):
    if isinstance(a, RJet):
        return a.recip()
    if np.any(np.asarray(a) == 0.0):
        raise DomainError("reciprocal of zero")
    return 1.0 / np.asarray(a)


def atan(a):
    return a.atan() if isinstance(a, RJet) else np.arctan(a)


def atanh(a):
    if isinstance(a, RJet):
        return a.atanh()
    if np.any(np.abs(np.asarray(a)) >= 1.0):
        raise DomainError("atanh needs |argument| < 1")
    return np.arctanh(a)


def atan2(y, x):
    """Two-argument arctangent.

    For jets: rotate (x, y) by the base-point angle so the rotated abscissa
    is positive, then fall back to the one-argument series; atan2 and that
    branch differ only by the constant.
    """
    if not isinstance(y, RJet) and not isinstance(x, RJet):
        return np.arctan2(y, x)
    if not isinstance(y, RJet):
        y = RJet.constant(y, x.order)
    if not isinstance(x, RJet):
        x = RJet.constant(x, y.order)
    x0, y0 = x.value, y.value
    s0 = np.hypot(x0, y0)
    if np.any(s0 == 0.0):
        raise DomainError("atan2 undefined at the origin")
    cw, sw = x0 / s0, y0 / s0
    xr = x * cw + y * sw          # constant term s0 > 0
    yr = y * cw - x * sw          # constant term 0
    out = (yr * xr.recip()).atan()
    out.c[..., 0] = np.arctan2(y0, x0)
    return out


_BY_NAME = {"sin": sin, "cos": cos, "sqrt": sqrt, "recip": recip,
            "atan": atan, "atanh": atanh, "atan2": atan2}


def elementary(name: str, *args):
    try:
        fn = _BY_NAME[name]
    except KeyError:
        raise DomainError(f"no elementary function named {name!r}") from None
    return fn(*args)


class QJet:
    """Quaternion-valued jet: four RJets sharing order and batch shape."""

    __slots__ = ("t", "x", "y", "z")

    def __init__(self, t, x, y, z):
        parts = [t, x, y, z]
        template = next((p for p in parts if isinstance(p, RJet)), None)
        if template is None:
            raise BasisMismatch("QJet needs at least one RJet component")
        for i, p in enumerate(parts):
            if not isinstance(p, RJet):
                parts[i] = RJet.constant(p, template.order)
            elif p.order != template.order:
                raise BasisMismatch("QJet components must share one order")
        self.t, self.x, self.y, self.z = parts

    @classmethod
    def from_quaternion(cls, q: Quaternion, order: int) -> "QJet":
        return cls(*(RJet.constant(comp, order) for comp in q.components()))

    @classmethod
    def seed_cartesian(cls, q: Quaternion, order: int) -> "QJet":
        """The identity function's jet: each component is its own variable."""
        return cls(*(RJet.seed(comp, var, order)
                     for var, comp in enumerate(q.components())))

    def components(self):
        return (self.t, self.x, self.y, self.z)

    # -- algebra (mirrors Quaternion, including operation order, so that
    #    order-0 jets reproduce quaternion arithmetic bit for bit) ---------

    def _promote(self, other):
        if isinstance(other, QJet):
            return other
        if isinstance(other, Quaternion):
            return QJet.from_quaternion(other, self.t.order)
        return None

    def __add__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return QJet(self.t + other.t, self.x + other.x,
                    self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return QJet(self.t - other.t, self.x - other.x,
                    self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return QJet(-self.t, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, (RJet,) + _SCALARS):
            return QJet(self.t * other, self.x * other,
                        self.y * other, self.z * other)
        other = self._promote(other)
        if other is None:
            return NotImplemented
        a, b = self, other
        return QJet(
            a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z,
            a.t * b.x + a.x * b.t + a.y * b.z - a.z * b.y,
            a.t * b.y - a.x * b.z + a.y * b.t + a.z * b.x,
            a.t * b.z + a.x * b.y - a.y * b.x + a.z * b.t,
        )

    def __rmul__(self, other):
        if isinstance(other, (RJet,) + _SCALARS):
            # Real scalars commute with quaternions.
            return self.__mul__(other)
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return other.__mul__(self)

    def conjugate(self) -> "QJet":
        return QJet(self.t, -self.x, -self.y, -self.z)

    def norm_sq(self) -> RJet:
        return self.t * self.t + self.x * self.x + self.y * self.y + self.z * self.z

    def inverse(self) -> "QJet":
        n2 = self.norm_sq()
        if np.any(n2.value <= 0.0):
            raise ZeroDivisor("jet with zero quaternion value; not invertible")
        return self.conjugate() * n2.recip()

    # -- structure ---------------------------------------------------------

    @property
    def value(self) -> Quaternion:
        return Quaternion(self.t.value, self.x.value, self.y.value, self.z.value)

    @property
    def order(self) -> int:
        return self.t.order

    def partial(self, multi) -> Quaternion:
        return Quaternion(*(comp.partial(multi) for comp in self.components()))

    def derivative(self, var: int) -> "QJet":
        return QJet(*(comp.derivative(var) for comp in self.components()))

    def __repr__(self):
        return f"QJet(order={self.order}, value={self.value!r})"
