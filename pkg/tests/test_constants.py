"""Frozen oracle values and cross-identities for the constant estimators.

Oracle provenance, all independent of the search engines:
  * hexagon values come from enumerating vertex-pair configurations by hand
    (the ratio objectives are jointly convex, so vertex pairs are enough);
  * lp values are closed forms checked against explicit witness vectors;
  * James values are cross-checked by a dense brute-force scan coded here.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import normconst as nc
from normconst.search import Grid2DStrategy, MultiStartStrategy

L1 = nc.lp_space(1, 2)
L2 = nc.lp_space(2, 2)
L3 = nc.lp_space(3, 2)
LINF = nc.lp_space(math.inf, 2)
HEX = nc.regular_polygon_space(6)

FAST = Grid2DStrategy(resolution=128, refine=10, radial=5)
# hexagon vertices sit on the angular grid only when 6 divides the resolution
HEXFAST = Grid2DStrategy(resolution=192, refine=10, radial=5)

ALPHAS = (0.0, 0.1, 0.25, 0.4, 0.5)
PS = (1.0, 2.0, 3.0)


# --------------------------------------------------------------- gamma family

def test_gamma_zero_value():
    for sp in (L1, L2, HEX):
        for p in PS:
            est = nc.gamma_p(sp, p=p, t=0.0, strategy=FAST)
            assert est.value == pytest.approx(2.0 ** (2.0 - p), abs=1e-9)


def test_gamma_hilbert_closed_form():
    for t in (0.0, 0.2, 0.5, 1.0):
        est = nc.gamma_p(L2, p=2.0, t=t, strategy=FAST)
        assert est.value == pytest.approx(1.0 + t * t, abs=1e-9)


def test_gamma_lq_closed_form_at_p_equal_q():
    for q in (2.0, 3.0, 4.0):
        sp = nc.lp_space(q, 2)
        for t in (0.25, 0.6, 1.0):
            want = ((1 + t) ** q + (1 - t) ** q) / 2.0 ** (q - 1.0)
            est = nc.gamma_p(sp, p=q, t=t)
            assert est.value == pytest.approx(want, abs=1e-6)


def test_gamma_hexagon_frozen():
    # vertex-pair enumeration: adjacent-vertex configurations dominate,
    # giving norms (1 + t/2 + t/2) and 1, hence ((1+t)^2 + 1)/2 at p = 2
    est = nc.gamma_p(HEX, p=2.0, t=0.2, strategy="exact")
    assert est.value == pytest.approx(1.22, abs=1e-12)
    est1 = nc.gamma_p(HEX, p=2.0, t=1.0, strategy="exact")
    assert est1.value == pytest.approx(2.5, abs=1e-12)
    for t in (0.0, 0.3, 0.7, 1.0):
        estp1 = nc.gamma_p(HEX, p=1.0, t=t, strategy="exact")
        assert estp1.value == pytest.approx(2.0 + t, abs=1e-12)


def test_gamma_vertex_and_grid_agree():
    for sp in (L1, LINF, HEX):
        for t in (0.2, 1.0):
            ex = nc.gamma_p(sp, p=2.0, t=t, strategy="exact")
            gr = nc.gamma_p(sp, p=2.0, t=t)
            assert gr.value == pytest.approx(ex.value, abs=1e-9)
            assert gr.value <= ex.value + 1e-12  # lower-bound semantics


# ------------------------------------------------------------------ cinj pair

def test_cinj_l1_linf_closed_form():
    for sp in (L1, LINF):
        for a in ALPHAS:
            for p in PS:
                want = 2.0 * (1.0 - a) ** p
                assert nc.cinj_iso(sp, alpha=a, p=p, strategy="exact"
                                   ).value == pytest.approx(want, abs=1e-12)


def test_cinj_lp_closed_form():
    for q in (2.0, 3.0, 4.0):
        sp = nc.lp_space(q, 2)
        for a in ALPHAS:
            want = (1.0 - a) ** q + a ** q
            est = nc.cinj_iso(sp, alpha=a, p=q)
            assert est.value == pytest.approx(want, abs=1e-6)


def test_cinj_alpha_half_universal():
    for sp in (L1, L2, L3, LINF, HEX):
        for p in PS:
            est = nc.cinj_iso(sp, alpha=0.5, p=p, strategy=FAST)
            assert est.value == pytest.approx(2.0 ** (1.0 - p), abs=1e-9)


def test_cinj_bounds_everywhere():
    for sp in (L1, L2, L3, LINF, HEX):
        for a in ALPHAS:
            for p in PS:
                v = nc.cinj_iso(sp, alpha=a, p=p, strategy=FAST).value
                lo = (1.0 - a) ** p + a ** p
                hi = 2.0 * (1.0 - a) ** p
                assert lo - 1e-9 <= v <= hi + 1e-9


def test_cinj_witness_is_isosceles_and_reproduces_value():
    est = nc.cinj_iso(HEX, alpha=0.3, p=2.0, strategy=FAST)
    x1, x2 = est.meta["iso_pair"]
    assert abs(nc.iso_defect(HEX, x1, x2)) < 1e-9
    s = nc.norm(HEX, tuple(a + b for a, b in zip(x1, x2)))
    na = nc.norm(HEX, tuple(0.3 * a + 0.7 * b for a, b in zip(x1, x2)))
    nb = nc.norm(HEX, tuple(0.7 * a + 0.3 * b for a, b in zip(x1, x2)))
    assert (na ** 2 + nb ** 2) / s ** 2 == pytest.approx(est.value, rel=1e-12)


def test_cinj_two_routes_agree():
    for sp in (L2, L3, HEX):
        for a in (0.0, 0.25, 0.4):
            for p in (1.0, 2.0):
                d = nc.cinj_iso(sp, alpha=a, p=p, strategy=FAST).value
                g = nc.cinj_via_gamma(sp, alpha=a, p=p, strategy=FAST).value
                assert d == pytest.approx(g, abs=2e-3)


def test_cinj_via_gamma_meta():
    est = nc.cinj_via_gamma(L1, alpha=0.2, p=2.0, strategy="exact")
    assert est.meta["route"] == "via_gamma"
    assert est.meta["t"] == pytest.approx(0.6)
    assert est.value == pytest.approx(2.0 * 0.8 ** 2, abs=1e-12)


# ------------------------------------------------------------------ cnj family

def test_cnj_polyhedral_frozen():
    for p in PS:
        for sp in (L1, LINF):
            est = nc.cnj_p(sp, p=p, strategy="exact")
            assert est.value == pytest.approx(2.0, abs=1e-9)


def test_cnj_hilbert_is_one():
    est = nc.cnj_p(L2, p=2.0, strategy=FAST)
    assert est.value == pytest.approx(1.0, abs=1e-9)


def test_cnj_tie_breaks_to_smallest_t():
    # on the cross-polytope at p = 1 the swept ratio is exactly 2 at every
    # dyadic grid point, so the reported maximizer is the smallest t
    est = nc.cnj_p(L1, p=1.0, strategy="exact")
    assert est.value == 2.0
    assert est.meta["t_star"] == 0.0


def test_cnj_l3_at_p3_is_one():
    # Clarkson equality case: the t-ratio climbs to 1 exactly at t = 1
    est = nc.cnj_p(L3, p=3.0)
    assert est.value == pytest.approx(1.0, abs=1e-6)
    assert est.meta["t_star"] == pytest.approx(1.0, abs=1e-3)


def test_cnj_modes_agree():
    for sp in (L1, HEX):
        a = nc.cnj_p(sp, p=2.0, strategy="exact", mode="gamma")
        b = nc.cnj_p(sp, p=2.0, strategy="exact", mode="cinj")
        assert a.value == pytest.approx(b.value, abs=1e-9)


def test_cnj_modified_hilbert():
    est = nc.cnj_modified_p(L2, p=2.0, strategy=FAST)
    assert est.value == pytest.approx(1.0, abs=1e-9)
    assert est.meta["definition"] == "inferred"
    est1 = nc.cnj_modified_p(L1, p=1.0, strategy="exact")
    # unit vectors (1,0), (0,1): (2 + 2)/2 = 2
    assert est1.value == pytest.approx(2.0, abs=1e-12)


# --------------------------------------------------- james / schaffer / rho

def _hex_norm_rows(V):
    return HEX.norm_rows(V)


def test_james_frozen_values():
    assert nc.james(L1, strategy=FAST).value == pytest.approx(2.0, abs=1e-6)
    assert nc.james(LINF, strategy=FAST).value == pytest.approx(2.0, abs=1e-6)
    assert nc.james(L2, strategy=FAST).value == pytest.approx(
        math.sqrt(2.0), abs=1e-6)
    assert nc.james(HEX, strategy=FAST).value == pytest.approx(1.5, abs=1e-6)


def test_james_brute_force_oracle():
    # independent dense scan of the min form over unit pairs
    th = np.linspace(0.0, 2 * math.pi, 720, endpoint=False)
    D = np.stack([np.cos(th), np.sin(th)], axis=1)
    U = D / _hex_norm_rows(D)[:, None]
    best = 0.0
    for i in range(0, 720, 3):
        S = U[i] + U
        Df = U[i] - U
        m = np.minimum(_hex_norm_rows(S), _hex_norm_rows(Df))
        best = max(best, float(m.max()))
    est = nc.james(HEX, strategy=FAST)
    assert est.value >= best - 1e-9      # engine beats the coarse scan
    assert est.value == pytest.approx(best, abs=5e-3)


def test_schaffer_and_product():
    for sp, jwant in ((L1, 2.0), (L2, math.sqrt(2.0)), (HEX, 1.5)):
        j = nc.james(sp, strategy=FAST).value
        s = nc.schaffer(sp, strategy=FAST).value
        assert j == pytest.approx(jwant, abs=1e-6)
        assert j * s == pytest.approx(2.0, abs=1e-4)
        assert 1.0 - 1e-9 <= s <= math.sqrt(2.0) + 1e-9


def test_rho_closed_forms():
    assert nc.rho(L2, t=1.0, strategy=FAST).value == pytest.approx(
        math.sqrt(2.0) - 1.0, abs=1e-9)
    assert nc.rho(L2, t=0.5, strategy=FAST).value == pytest.approx(
        math.sqrt(1.25) - 1.0, abs=1e-9)
    assert nc.rho(L1, t=0.7, strategy=FAST).value == pytest.approx(0.7,
                                                                   abs=1e-9)
    # rho is defined for t > 1 as well
    assert nc.rho(L1, t=2.0, strategy=FAST).value == pytest.approx(2.0,
                                                                   abs=1e-9)


def test_jxp_values():
    assert nc.jxp(L2, p=2.0, t=1.0, strategy=FAST).value == pytest.approx(
        math.sqrt(2.0), abs=1e-9)
    assert nc.jxp(L1, p=1.0, t=0.5, strategy=FAST).value == pytest.approx(
        1.5, abs=1e-9)
    # power identity against the gamma family
    for t in (0.3, 0.8):
        j = nc.jxp(HEX, p=3.0, t=t, strategy=FAST).value
        g = nc.gamma_p(HEX, p=3.0, t=t, strategy=FAST).value
        assert j ** 3 == pytest.approx(2.0 ** (3.0 - 2.0) * g, rel=1e-9)


def test_nu_values():
    assert nc.nu_p(L2, p=2.0, strategy=FAST).value == pytest.approx(2.0,
                                                                    abs=1e-6)
    assert nc.nu_p(L1, p=1.0, strategy=FAST).value == pytest.approx(2.0,
                                                                    abs=1e-6)
    # scaling relation to the t-swept constant
    nu = nc.nu_p(L1, p=2.0, strategy=FAST).value
    cnj = nc.cnj_p(L1, p=2.0, strategy="exact").value
    assert nu == pytest.approx(2.0 ** (2.0 - 1.0) * cnj, abs=1e-3)


def test_omega_values():
    assert nc.omega_prime(L2, strategy=FAST).value == pytest.approx(1.0,
                                                                    abs=1e-9)
    om = nc.omega_prime(HEX, strategy=HEXFAST)
    assert om.value == pytest.approx(1.25, abs=1e-9)
    assert om.value == pytest.approx(om.meta["gamma_identity"], abs=1e-6)
    assert nc.omega_prime(L1, strategy=FAST).value == pytest.approx(1.6,
                                                                    abs=1e-9)


def test_smoothness_quotient():
    assert nc.smoothness_quotient(L1, p=1.0, alpha=0.3,
                                  strategy=FAST) == pytest.approx(1.0,
                                                                  abs=1e-9)
    qs = [nc.smoothness_quotient(L2, p=2.0, alpha=a, strategy=FAST)
          for a in (0.45, 0.49, 0.499)]
    assert qs[0] > qs[1] > qs[2]
    assert qs[2] <= 0.01


# --------------------------------------------------------------- validation

def test_parameter_validation():
    with pytest.raises(ValueError):
        nc.gamma_p(L2, p=0.5, t=0.3)
    with pytest.raises(ValueError):
        nc.gamma_p(L2, p=2.0, t=1.5)
    with pytest.raises(ValueError):
        nc.cinj_iso(L2, alpha=0.6, p=2.0)
    with pytest.raises(ValueError):
        nc.cinj_iso(L2, alpha=-0.1, p=2.0)
    with pytest.raises(ValueError):
        nc.jxp(L2, p=2.0, t=0.0)  # strictly positive t
    with pytest.raises(ValueError):
        nc.rho(L2, t=-0.1)
    with pytest.raises(ValueError):
        nc.smoothness_quotient(L2, p=2.0, alpha=0.5)


def test_exact_strategy_rejections():
    with pytest.raises(nc.SpaceError):
        nc.cinj_iso(L2, alpha=0.25, p=2.0, strategy="exact")  # smooth ball
    with pytest.raises(ValueError):
        nc.nu_p(L1, p=2.0, strategy="exact")  # non-convex ratio
    with pytest.raises(ValueError):
        nc.james(L1, strategy="exact")  # min form


def test_resolve_strategy_defaults():
    s2 = nc.resolve_strategy(None, L2, seed=9)
    assert isinstance(s2, Grid2DStrategy)
    s3 = nc.resolve_strategy(None, nc.lp_space(2, 3), seed=9)
    assert isinstance(s3, MultiStartStrategy) and s3.seed == 9
    assert nc.resolve_strategy("grid2d:res=64", L2) == Grid2DStrategy(
        resolution=64)


# ------------------------------------------------------------ property tests

@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.0, max_value=0.5),
       st.floats(min_value=1.0, max_value=4.0))
def test_cinj_l1_exact_matches_closed_form_hypothesis(alpha, p):
    est = nc.cinj_iso(L1, alpha=alpha, p=p, strategy="exact")
    assert est.value == pytest.approx(2.0 * (1.0 - alpha) ** p, rel=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 31 - 1))
def test_multistart_seed_never_exceeds_exact(seed):
    est = nc.cinj_iso(L1, alpha=0.25, p=2.0,
                      strategy=MultiStartStrategy(starts=6, steps=80,
                                                  seed=seed))
    assert est.value <= 2.0 * 0.75 ** 2 + 1e-9


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-2.0, max_value=2.0),
       st.floats(min_value=-3.0, max_value=3.0),
       st.floats(min_value=-3.0, max_value=3.0),
       st.floats(min_value=-3.0, max_value=3.0),
       st.floats(min_value=-3.0, max_value=3.0))
def test_coefficient_sandwich_on_iso_pairs(a, u0, u1, v0, v1):
    # for x isosceles orthogonal to y and |a| <= 1:
    #   |a| * ||x +- y|| <= ||x + a y|| <= ||x +- y||, mirrored for |a| >= 1
    if abs(u0) + abs(u1) < 1e-3 or abs(v0) + abs(v1) < 1e-3:
        return
    for sp in (L3, HEX):
        w1 = nc.unit_vector(sp, (u0, u1))
        w2 = nc.unit_vector(sp, (v0, v1))
        x = (w1[0] + w2[0], w1[1] + w2[1])
        y = (w1[0] - w2[0], w1[1] - w2[1])
        assert abs(nc.iso_defect(sp, x, y)) < 1e-9
        plus = nc.norm(sp, (x[0] + y[0], x[1] + y[1]))
        minus = nc.norm(sp, (x[0] - y[0], x[1] - y[1]))
        mid = nc.norm(sp, (x[0] + a * y[0], x[1] + a * y[1]))
        for side in (plus, minus):
            if abs(a) <= 1.0:
                assert abs(a) * side <= mid + 1e-9
                assert mid <= side + 1e-9
            else:
                assert side <= mid + 1e-9
                assert mid <= abs(a) * side + 1e-9


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-2.0, max_value=2.0),
       st.floats(min_value=0.05, max_value=1.0),
       st.floats(min_value=-3.0, max_value=3.0),
       st.floats(min_value=-3.0, max_value=3.0),
       st.floats(min_value=-3.0, max_value=3.0),
       st.floats(min_value=-3.0, max_value=3.0))
def test_psi_even_bitwise_on_lp(r, t, x0, x1, y0, y1):
    # entrywise absolute values make the two evaluations identical floats
    sp = L3
    def psi(rr):
        v = (rr * x0 + t * y0, rr * x1 + t * y1)
        w = (rr * x0 - t * y0, rr * x1 - t * y1)
        return nc.norm(sp, v) ** 3 + nc.norm(sp, w) ** 3
    assert psi(r) == psi(-r)
