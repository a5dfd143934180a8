"""Scalar and matrix interval arithmetic with outward rounding.

Bounds are ordinary binary64 floats.  Every arithmetic operation detects
whether its floating-point result is exact (error-free transformations:
Knuth two-sum, Dekker two-product) and widens an inexact bound by one unit
in the last place in the safe direction.  Exact results stay exact, so
integer and dyadic data round-trips bit-for-bit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

# Veltkamp splitter for binary64.
_SPLITTER = 134217729.0  # 2**27 + 1
# Outside this magnitude range the two-product error term may itself
# under/overflow; there we widen unconditionally instead of trusting it.
_SAFE_LO = 1e-290
_SAFE_HI = 1e290

_INF = float("inf")


class AsymmetricMatrixError(ValueError):
    """Raised when a symmetric view of an asymmetric interval matrix is requested."""


def _two_sum(a, b):
    """Rounded sum and its exact residual."""
    s = a + b
    t = s - a
    err = (a - (s - t)) + (b - t)
    return s, err


def _two_prod(a, b):
    """Rounded product and its exact residual (valid in the normal range)."""
    p = a * b
    ah = _SPLITTER * a
    ah = ah - (ah - a)
    al = a - ah
    bh = _SPLITTER * b
    bh = bh - (bh - b)
    bl = b - bh
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def _down_f(value: float, err: float) -> float:
    return value if err >= 0.0 else math.nextafter(value, -_INF)


def _up_f(value: float, err: float) -> float:
    return value if err <= 0.0 else math.nextafter(value, _INF)


def _prod_unsafe(a, b, p):
    return (np.abs(p) > _SAFE_HI) | ((np.abs(p) < _SAFE_LO) & (a != 0.0) & (b != 0.0))


@dataclass(frozen=True)
class Interval:
    """Closed real interval [inf, sup] with finite float bounds."""

    inf: float
    sup: float

    def __post_init__(self):
        lo = float(self.inf)
        hi = float(self.sup)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"interval bounds must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"lower bound {lo} exceeds upper bound {hi}")
        object.__setattr__(self, "inf", lo)
        object.__setattr__(self, "sup", hi)

    @classmethod
    def point(cls, value: float) -> "Interval":
        return cls(value, value)

    @property
    def mid(self) -> float:
        return 0.5 * self.inf + 0.5 * self.sup

    @property
    def rad(self) -> float:
        # Chosen so that [mid - rad, mid + rad] encloses [inf, sup] even
        # after the midpoint itself was rounded.
        m = self.mid
        left, e1 = _two_sum(m, -self.inf)
        right, e2 = _two_sum(self.sup, -m)
        return max(_up_f(left, e1), _up_f(right, e2), 0.0)

    @property
    def width(self) -> float:
        return self.sup - self.inf

    @property
    def is_degenerate(self) -> bool:
        return self.inf == self.sup

    def __contains__(self, x: float) -> bool:
        return self.inf <= x <= self.sup

    def __add__(self, other: "Interval") -> "Interval":
        return interval_add(self, other)

    def __mul__(self, other: "Interval") -> "Interval":
        return interval_mul(self, other)

    def __neg__(self) -> "Interval":
        return Interval(-self.sup, -self.inf)

    def __repr__(self) -> str:
        return f"[{self.inf!r}, {self.sup!r}]"


def interval_add(a: Interval, b: Interval, widen: bool = True) -> Interval:
    """Enclosure of {x + y : x in a, y in b}.

    With ``widen`` (the default) each inexact bound is moved outward by one
    ulp; set ``widen=False`` for fast non-rigorous arithmetic in heuristics.
    """
    lo, e_lo = _two_sum(a.inf, b.inf)
    hi, e_hi = _two_sum(a.sup, b.sup)
    if widen:
        return Interval(_down_f(lo, e_lo), _up_f(hi, e_hi))
    return Interval(lo, hi)


def interval_mul(a: Interval, b: Interval, widen: bool = True) -> Interval:
    """Enclosure of {x * y : x in a, y in b} via the four endpoint products."""
    lo = _INF
    hi = -_INF
    for x in (a.inf, a.sup):
        for y in (b.inf, b.sup):
            p, err = _two_prod(x, y)
            if widen:
                if _prod_unsafe(x, y, p):
                    lo = min(lo, math.nextafter(p, -_INF))
                    hi = max(hi, math.nextafter(p, _INF))
                else:
                    lo = min(lo, _down_f(p, err))
                    hi = max(hi, _up_f(p, err))
            else:
                lo = min(lo, p)
                hi = max(hi, p)
    return Interval(lo, hi)


@dataclass(frozen=True, eq=False)
class IntervalMatrix:
    """Rectangular matrix of intervals stored as paired bound arrays."""

    inf: np.ndarray
    sup: np.ndarray

    def __post_init__(self):
        lo = np.array(self.inf, dtype=float)
        hi = np.array(self.sup, dtype=float)
        if lo.ndim != 2 or lo.shape != hi.shape:
            raise ValueError(f"bound arrays must be 2-D with equal shapes, got {lo.shape} and {hi.shape}")
        if not (np.isfinite(lo).all() and np.isfinite(hi).all()):
            raise ValueError("interval matrix bounds must be finite")
        if (lo > hi).any():
            raise ValueError("lower bounds exceed upper bounds")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "inf", lo)
        object.__setattr__(self, "sup", hi)

    @classmethod
    def point(cls, m) -> "IntervalMatrix":
        m = np.asarray(m, dtype=float)
        return cls(m, m.copy())

    @property
    def rows(self) -> int:
        return self.inf.shape[0]

    @property
    def cols(self) -> int:
        return self.inf.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.inf.shape

    def entry(self, i: int, j: int) -> Interval:
        return Interval(self.inf[i, j], self.sup[i, j])

    def mid(self) -> np.ndarray:
        return 0.5 * self.inf + 0.5 * self.sup

    def rad(self) -> np.ndarray:
        """Entrywise radius, rounded up so mid +/- rad encloses the bounds."""
        m = self.mid()
        left, e1 = _two_sum(m, -self.inf)
        right, e2 = _two_sum(self.sup, -m)
        left = np.where(e1 > 0, np.nextafter(left, _INF), left)
        right = np.where(e2 > 0, np.nextafter(right, _INF), right)
        return np.maximum(np.maximum(left, right), 0.0)

    def max_abs(self) -> float:
        if self.inf.size == 0:
            return 0.0
        return float(max(np.abs(self.inf).max(), np.abs(self.sup).max()))

    def symmetric_parts(self, tol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Midpoint and radius of the symmetric view.

        Permitted only when both are symmetric within ``tol`` (default
        1e-12 times the largest entry magnitude); raises
        AsymmetricMatrixError otherwise.  The returned arrays are exactly
        symmetrized.
        """
        if self.rows != self.cols:
            raise AsymmetricMatrixError(f"matrix is {self.rows}x{self.cols}, not square")
        if tol is None:
            tol = 1e-12 * self.max_abs()
        mid = self.mid()
        rad = self.rad()
        skew = max(np.abs(mid - mid.T).max(), np.abs(rad - rad.T).max()) if self.rows else 0.0
        if skew > tol:
            raise AsymmetricMatrixError(f"midpoint/radius asymmetry {skew:g} exceeds tolerance {tol:g}")
        return 0.5 * (mid + mid.T), 0.5 * (rad + rad.T)

    def to_json(self) -> str:
        return json.dumps(
            {"rows": self.rows, "cols": self.cols, "inf": self.inf.tolist(), "sup": self.sup.tolist()}
        )

    @classmethod
    def from_json(cls, text: str | dict) -> "IntervalMatrix":
        doc = json.loads(text) if isinstance(text, str) else text
        m = cls(np.asarray(doc["inf"], dtype=float), np.asarray(doc["sup"], dtype=float))
        if m.shape != (doc["rows"], doc["cols"]):
            raise ValueError("declared shape does not match bound arrays")
        return m

    def __repr__(self) -> str:
        return f"IntervalMatrix({self.rows}x{self.cols})"


def zeros(rows: int, cols: int) -> IntervalMatrix:
    return IntervalMatrix(np.zeros((rows, cols)), np.zeros((rows, cols)))


def im_add(a: IntervalMatrix, b: IntervalMatrix, widen: bool = True) -> IntervalMatrix:
    """Entrywise interval sum of two conformable interval matrices."""
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    lo, e_lo = _two_sum(a.inf, b.inf)
    hi, e_hi = _two_sum(a.sup, b.sup)
    if widen:
        lo = np.where(e_lo < 0, np.nextafter(lo, -_INF), lo)
        hi = np.where(e_hi > 0, np.nextafter(hi, _INF), hi)
    return IntervalMatrix(lo, hi)


def scale(a, p: Interval, widen: bool = True) -> IntervalMatrix:
    """Interval matrix with entry (i, j) = [a_ij, a_ij] * p for a real matrix a."""
    a = np.asarray(getattr(a, "array", a), dtype=float)
    if a.ndim != 2:
        raise ValueError("expected a 2-D real matrix")
    p1, e1 = _two_prod(a, p.inf)
    p2, e2 = _two_prod(a, p.sup)
    if widen:
        u1 = _prod_unsafe(a, p.inf, p1)
        u2 = _prod_unsafe(a, p.sup, p2)
        lo1 = np.where(u1 | (e1 < 0), np.nextafter(p1, -_INF), p1)
        lo2 = np.where(u2 | (e2 < 0), np.nextafter(p2, -_INF), p2)
        hi1 = np.where(u1 | (e1 > 0), np.nextafter(p1, _INF), p1)
        hi2 = np.where(u2 | (e2 > 0), np.nextafter(p2, _INF), p2)
    else:
        lo1, lo2, hi1, hi2 = p1, p2, p1, p2
    return IntervalMatrix(np.minimum(lo1, lo2), np.maximum(hi1, hi2))


def contains(a: IntervalMatrix, m) -> bool:
    """Entrywise membership of a real matrix in an interval matrix."""
    m = np.asarray(getattr(m, "array", m), dtype=float)
    if m.shape != a.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {m.shape}")
    return bool((a.inf <= m).all() and (m <= a.sup).all())
