import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sparsepen import Family, PenaltySpec, penalty_derivative, penalty_value, threshold

from ._oracles import grid_prox, near_value_knot

lams = st.floats(1e-3, 3.0)
scad_as = st.floats(2.01, 8.0)
mcp_as = st.floats(1.01, 8.0)
zs = st.floats(-12.0, 12.0)
ts = st.floats(0.0, 15.0)


@st.composite
def specs(draw):
    family = draw(st.sampled_from(list(Family)))
    lam = draw(lams)
    if family is Family.SCAD:
        return PenaltySpec(family, lam, draw(scad_as))
    if family is Family.MCP:
        return PenaltySpec(family, lam, draw(mcp_as))
    return PenaltySpec(family, lam)


# ---------------------------------------------------------------------------
# pinned values
# ---------------------------------------------------------------------------

def test_value_examples():
    assert penalty_value(PenaltySpec("lasso", 0.5), 0.0) == 0.0
    # scad first and second branch meet at t == lam
    assert penalty_value(PenaltySpec("scad", 1.0, 3.7), 1.0) == pytest.approx(1.0, abs=1e-12)
    # scad flat branch: (a + 1) * lam^2 / 2
    assert penalty_value(PenaltySpec("scad", 1.0, 3.7), 10.0) == pytest.approx(2.35, abs=1e-12)
    # scad middle branch at t=2: -(4 - 14.8 + 1) / 5.4 == 49/27
    assert penalty_value(PenaltySpec("scad", 1.0, 3.7), 2.0) == pytest.approx(49 / 27, rel=1e-12)
    # mcp flat branch: a * lam^2 / 2
    assert penalty_value(PenaltySpec("mcp", 1.0, 3.0), 5.0) == pytest.approx(1.5, abs=1e-12)
    # mcp taper at t=2: 2 - 4/6
    assert penalty_value(PenaltySpec("mcp", 1.0, 3.0), 2.0) == pytest.approx(4 / 3, rel=1e-12)


def test_derivative_examples():
    assert penalty_derivative(PenaltySpec("lasso", 0.3), 5.0) == 0.3
    assert penalty_derivative(PenaltySpec("scad", 1.0, 3.7), 10.0) == 0.0
    assert penalty_derivative(PenaltySpec("mcp", 1.0, 2.0), 1.0) == pytest.approx(0.5, abs=1e-15)
    # scad blend zone at t=2: (a*lam - t) / (a - 1) == 1.7/2.7
    assert penalty_derivative(PenaltySpec("scad", 1.0, 3.7), 2.0) == pytest.approx(1.7 / 2.7, rel=1e-12)


def test_threshold_examples():
    assert threshold(PenaltySpec("lasso", 0.5), 0.3) == 0.0
    assert threshold(PenaltySpec("lasso", 0.5), -2.0) == -1.5
    assert threshold(PenaltySpec("scad", 1.0, 3.7), 5.0) == 5.0
    # scad middle branch: ((a-1)|z| - a*lam) / (a-2) == 4.4/1.7
    assert threshold(PenaltySpec("scad", 1.0, 3.7), 3.0) == pytest.approx(4.4 / 1.7, rel=1e-12)
    # mcp expansion: (|z| - lam) / (1 - 1/a) == 1.5
    assert threshold(PenaltySpec("mcp", 1.0, 3.0), 2.0) == pytest.approx(1.5, rel=1e-12)


def test_threshold_examples_match_grid_prox():
    cases = [
        ("lasso", -2.0, 0.5, None),
        ("scad", 3.0, 1.0, 3.7),
        ("mcp", 2.0, 1.0, 3.0),
        ("scad", -1.4, 0.6, 4.2),
        ("mcp", 0.9, 0.4, 2.5),
    ]
    for family, z, lam, a in cases:
        got = threshold(PenaltySpec(family, lam, a), z)
        assert got == pytest.approx(grid_prox(family, z, lam, a), abs=2e-4)


# ---------------------------------------------------------------------------
# construction contracts
# ---------------------------------------------------------------------------

def test_spec_validation():
    with pytest.raises(ValueError):
        PenaltySpec("lasso", -0.1)
    with pytest.raises(ValueError):
        PenaltySpec("lasso", float("nan"))
    with pytest.raises(ValueError):
        PenaltySpec("scad", 1.0, 2.0)  # needs a > 2
    with pytest.raises(ValueError):
        PenaltySpec("mcp", 1.0, 1.0)  # needs a > 1
    with pytest.raises(ValueError):
        PenaltySpec("ridge", 1.0)
    assert PenaltySpec("scad", 1.0).a == 3.7
    assert PenaltySpec("mcp", 1.0).a == 3.0
    assert PenaltySpec("SCAD", 1.0).family is Family.SCAD


def test_lasso_ignores_a():
    base = PenaltySpec("lasso", 0.7)
    odd = PenaltySpec("lasso", 0.7, a=99.0)
    for z in (-3.0, -0.2, 0.0, 0.5, 4.0):
        assert threshold(base, z) == threshold(odd, z)
    assert penalty_value(base, 2.0) == penalty_value(odd, 2.0)


def test_domain_rejections():
    spec = PenaltySpec("scad", 1.0)
    with pytest.raises(ValueError):
        penalty_value(spec, -0.5)
    with pytest.raises(ValueError):
        penalty_derivative(spec, 0.0)
    with pytest.raises(ValueError):
        penalty_derivative(spec, -1.0)
    with pytest.raises(ValueError):
        threshold(spec, float("inf"))


# ---------------------------------------------------------------------------
# branch and knot behavior
# ---------------------------------------------------------------------------

def test_value_continuity_at_knots():
    lams_grid = np.geomspace(0.01, 3.0, 12)
    for lam in lams_grid:
        for a in (2.2, 2.9, 3.7, 5.5, 8.0):
            # scad: linear and blend branches at t = lam
            left = lam * lam
            right = -(lam ** 2 - 2 * a * lam * lam + lam ** 2) / (2 * (a - 1))
            assert abs(left - right) < 1e-12
            # scad: blend and flat branches at t = a*lam
            t = a * lam
            mid = -(t ** 2 - 2 * a * lam * t + lam ** 2) / (2 * (a - 1))
            flat = (a + 1) * lam ** 2 / 2
            assert abs(mid - flat) < 1e-12
            spec = PenaltySpec("scad", lam, a)
            assert penalty_value(spec, lam) == pytest.approx(left, abs=1e-12)
            assert penalty_value(spec, t) == pytest.approx(flat, abs=1e-12)
        for a in (1.2, 2.0, 3.0, 6.0):
            t = a * lam
            taper = lam * t - t ** 2 / (2 * a)
            flat = a * lam ** 2 / 2
            assert abs(taper - flat) < 1e-12
            spec = PenaltySpec("mcp", lam, a)
            assert penalty_value(spec, t) == pytest.approx(flat, abs=1e-12)


def test_threshold_branch_boundary_agreement():
    # where two branch conditions hold with equality the branches agree
    for lam in (0.2, 0.7, 1.3):
        for a in (2.5, 3.7, 6.0):
            z = a * lam
            middle = ((a - 1) * z - a * lam) / (a - 2)
            assert threshold(PenaltySpec("scad", lam, a), z) == pytest.approx(middle, rel=1e-12)
            z = 2 * lam
            soft = z - lam
            middle = ((a - 1) * z - a * lam) / (a - 2)
            assert abs(soft - middle) < 1e-12
            assert threshold(PenaltySpec("scad", lam, a), z) == pytest.approx(soft, rel=1e-12)
        for a in (1.5, 3.0, 4.0):
            z = a * lam
            expanded = (z - lam) / (1 - 1 / a)
            assert threshold(PenaltySpec("mcp", lam, a), z) == pytest.approx(expanded, rel=1e-12)


def test_derivative_matches_finite_differences():
    rng = np.random.default_rng(42)
    h = 1e-6
    for _ in range(200):
        family = rng.choice(["lasso", "scad", "mcp"])
        lam = float(rng.uniform(0.05, 3.0))
        a = {"lasso": None, "scad": float(rng.uniform(2.05, 8.0)),
             "mcp": float(rng.uniform(1.05, 8.0))}[family]
        t = float(rng.uniform(1e-3, 1.3 * (a or 2.0) * lam))
        if near_value_knot(family, t, lam, a):
            continue
        spec = PenaltySpec(family, lam, a)
        fd = (penalty_value(spec, t + h) - penalty_value(spec, t - h)) / (2 * h)
        assert abs(fd - penalty_derivative(spec, t)) < 1e-5


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

@settings(max_examples=300, derandomize=True)
@given(specs(), ts, ts)
def test_value_monotone_in_t(spec, t1, t2):
    lo, hi = sorted((t1, t2))
    assert penalty_value(spec, lo) <= penalty_value(spec, hi) + 1e-12


@settings(max_examples=300, derandomize=True)
@given(specs(), zs)
def test_threshold_odd_symmetry_and_shrinkage(spec, z):
    s = threshold(spec, z)
    assert threshold(spec, -z) == -s
    assert abs(s) <= abs(z) * (1 + 1e-12) + 1e-12
    assert s == 0.0 or math.copysign(1.0, s) == math.copysign(1.0, z)


@settings(max_examples=300, derandomize=True)
@given(specs(), st.floats(1e-6, 20.0))
def test_derivative_range(spec, t):
    d = penalty_derivative(spec, t)
    assert 0.0 <= d <= spec.lam * (1 + 1e-12) + 1e-15


@settings(max_examples=300, derandomize=True)
@given(st.sampled_from(["scad", "mcp"]), lams, st.floats(0.0, 5.0), st.booleans())
def test_identity_beyond_a_lam(family, lam, extra, negate):
    a = 3.7 if family == "scad" else 3.0
    z = a * lam + extra
    if negate:
        z = -z
    assert threshold(PenaltySpec(family, lam, a), z) == z


@settings(max_examples=150, derandomize=True)
@given(specs())
def test_value_zero_at_origin(spec):
    assert penalty_value(spec, 0.0) == 0.0


def test_threshold_kills_small_z():
    # |z| <= lam collapses to zero for every family
    for family, a in (("lasso", None), ("scad", 3.7), ("mcp", 3.0)):
        spec = PenaltySpec(family, 0.8, a)
        for z in (-0.8, -0.5, 0.0, 0.3, 0.8):
            assert threshold(spec, z) == 0.0
