"""Scalar penalty functions and their closed-form threshold operators.

Three penalty families for sparse linear regression, each defined by a
level ``lam`` and (for the folded-concave families) a concavity knob ``a``:

* lasso: ``p(t) = lam * t``; convex, constant marginal penalty.
* scad:  linear up to ``lam``, quadratic blend up to ``a * lam``, then flat
  at ``(a + 1) * lam**2 / 2``; requires ``a > 2``.
* mcp:   quadratically tapering, ``lam * t - t**2 / (2 a)`` up to
  ``a * lam``, then flat at ``a * lam**2 / 2``; requires ``a > 1``.

Values are evaluated at ``t = |beta_j| >= 0``.  Each family has a scalar
threshold ``S(z) = argmin_b 0.5 * (z - b)**2 + p(|b|)`` in closed form,
which is the exact per-coordinate update used by the solver.  Beyond
``|z| >= a * lam`` the scad and mcp thresholds are the identity, so large
coefficients are left unshrunk.

The scalar kernels are numba-compiled and shared with the solver's inner
loop so that the library has a single implementation of each formula.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from numba import njit


class Family(enum.IntEnum):
    """Penalty family tag; integer-valued so it can cross into numba code."""

    LASSO = 0
    SCAD = 1
    MCP = 2

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, Family):
            return value
        if isinstance(value, str):
            try:
                return cls[value.strip().upper()]
            except KeyError:
                raise ValueError(
                    f"unknown penalty family {value!r}; expected one of "
                    f"{[f.name.lower() for f in cls]}"
                ) from None
        raise TypeError(f"cannot interpret {value!r} as a penalty family")


DEFAULT_A = {Family.LASSO: 0.0, Family.SCAD: 3.7, Family.MCP: 3.0}


@dataclass(frozen=True)
class PenaltySpec:
    """A penalty family with its tuning parameters.

    ``lam`` must be nonnegative.  ``a`` defaults to 3.7 for scad and 3.0
    for mcp and must satisfy ``a > 2`` (scad) or ``a > 1`` (mcp); it is
    ignored by lasso.
    """

    family: Family
    lam: float
    a: float | None = None

    def __post_init__(self):
        family = Family.parse(self.family)
        object.__setattr__(self, "family", family)

        lam = float(self.lam)
        if not math.isfinite(lam) or lam < 0:
            raise ValueError(f"lam must be finite and >= 0, got {self.lam!r}")
        object.__setattr__(self, "lam", lam)

        a = DEFAULT_A[family] if self.a is None else float(self.a)
        if family is not Family.LASSO and not math.isfinite(a):
            raise ValueError(f"a must be finite, got {self.a!r}")
        if family is Family.SCAD and a <= 2:
            raise ValueError(f"scad requires a > 2, got a={a}")
        if family is Family.MCP and a <= 1:
            raise ValueError(f"mcp requires a > 1, got a={a}")
        object.__setattr__(self, "a", a)


# ---------------------------------------------------------------------------
# numba scalar kernels (single source of truth for the formulas; the solver
# calls these from inside its compiled loop)
# ---------------------------------------------------------------------------

@njit(cache=True)
def _penalty_value(fam, t, lam, a):
    if fam == 0:  # lasso
        return lam * t
    if fam == 1:  # scad
        if t <= lam:
            return lam * t
        if t <= a * lam:
            return -(t * t - 2.0 * a * lam * t + lam * lam) / (2.0 * (a - 1.0))
        return (a + 1.0) * lam * lam / 2.0
    # mcp
    if t <= a * lam:
        return lam * t - t * t / (2.0 * a)
    return a * lam * lam / 2.0


@njit(cache=True)
def _penalty_derivative(fam, t, lam, a):
    if fam == 0:  # lasso
        return lam
    if fam == 1:  # scad
        if t <= lam:
            return lam
        r = a * lam - t
        return r / (a - 1.0) if r > 0.0 else 0.0
    # mcp
    r = lam - t / a
    return r if r > 0.0 else 0.0


@njit(cache=True)
def _threshold(fam, z, lam, a):
    az = abs(z)
    sgn = 1.0 if z >= 0.0 else -1.0
    if fam == 0:  # lasso: soft threshold
        d = az - lam
        return sgn * d if d > 0.0 else 0.0
    if fam == 1:  # scad
        # identity first so S(z) == z holds exactly on |z| >= a*lam
        if az >= a * lam:
            return z
        if az <= 2.0 * lam:
            d = az - lam
            return sgn * d if d > 0.0 else 0.0
        return sgn * ((a - 1.0) * az - a * lam) / (a - 2.0)
    # mcp
    if az >= a * lam:
        return z
    d = az - lam
    return sgn * d / (1.0 - 1.0 / a) if d > 0.0 else 0.0


@njit(cache=True)
def _penalty_sum(fam, beta, lam, a):
    s = 0.0
    for j in range(beta.shape[0]):
        s += _penalty_value(fam, abs(beta[j]), lam, a)
    return s


# ---------------------------------------------------------------------------
# public scalar API
# ---------------------------------------------------------------------------

def penalty_value(spec: PenaltySpec, t: float) -> float:
    """Penalty value p(t) at t = |beta_j| >= 0."""
    t = float(t)
    if not math.isfinite(t) or t < 0:
        raise ValueError(f"t must be finite and >= 0, got {t!r}")
    return _penalty_value(int(spec.family), t, spec.lam, spec.a)


def penalty_derivative(spec: PenaltySpec, t: float) -> float:
    """Marginal penalty p'(t) for t > 0; always lies in [0, lam].

    The derivative at 0 is not two-sided, so t <= 0 is rejected; the solver
    handles the origin through the threshold operator instead.
    """
    t = float(t)
    if not math.isfinite(t) or t <= 0:
        raise ValueError(f"t must be finite and > 0, got {t!r}")
    return _penalty_derivative(int(spec.family), t, spec.lam, spec.a)


def threshold(spec: PenaltySpec, z: float) -> float:
    """Closed-form minimizer of 0.5*(z - b)**2 + p(|b|) over b.

    Total in z; the output has the sign of z (or is 0) and never exceeds
    |z| in magnitude.  For scad and mcp it equals z exactly once
    |z| >= a * lam.
    """
    z = float(z)
    if not math.isfinite(z):
        raise ValueError(f"z must be finite, got {z!r}")
    return _threshold(int(spec.family), z, spec.lam, spec.a)
