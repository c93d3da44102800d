"""Geometric constants of normed spaces, built on the search engines.

Each operation returns an :class:`~normconst.search.Estimate` (or a plain
float for the smoothness quotient) and accepts a strategy: ``None`` picks a
sensible default for the space (2D grid, or multi-start ascent above two
dimensions), a selector string is parsed, and a strategy object is used as
given.  ``exact`` is only valid on spaces with a finite extreme-point set.

The two NJ-type routes are deliberately independent: ``cinj_iso`` evaluates
the defining ratio on isosceles pairs sampled through the half-sum
parametrization, while ``cinj_via_gamma`` maximizes the two-sided norm
power mean and halves it.  Their agreement is a cross-check of the
underlying identity, not a shared code path.
"""

from __future__ import annotations

import math

import numpy as np

from .orthogonality import SUM_NORM_FLOOR, _iso_partner_rows
from .search import (DEFAULT_SEED, _GOLDEN_ITERS, Estimate, ExactStrategy,
                     Grid2DStrategy, MultiStartStrategy, Objective, Strategy,
                     _golden_max, _improves, batch_objective, parse_strategy,
                     sup_pairs_2d, sup_pairs_nd, sup_vertex_pairs, t_sweep)
from .spaces import (TWO_PI, NormedSpace, Region, SpaceError,
                     supports_extreme_points)

CONSTANT_IDS = (
    "gamma_p", "cinj_iso", "cinj_via_gamma", "cnj_p", "cnj_modified_p",
    "james", "schaffer", "rho", "jxp", "nu_p", "omega_prime",
    "smoothness_quotient",
)


def _check_p(p: float) -> float:
    p = float(p)
    if not math.isfinite(p) or p < 1.0:
        raise ValueError(f"exponent p must be a finite real >= 1, got {p}")
    return p


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 <= alpha <= 0.5):
        raise ValueError(f"alpha must lie in [0, 1/2], got {alpha}")
    return alpha


def _check_t(t: float, lo: float = 0.0, hi: float = 1.0, strict_lo: bool = False) -> float:
    t = float(t)
    if not math.isfinite(t) or t < lo or t > hi or (strict_lo and t == lo):
        bound = f"({lo}, {hi}]" if strict_lo else f"[{lo}, {hi}]"
        raise ValueError(f"t must lie in {bound}, got {t}")
    return t


def resolve_strategy(strategy, space: NormedSpace, seed: int = DEFAULT_SEED) -> Strategy:
    """Normalize a strategy argument (None, selector string, or instance)."""
    if strategy is None:
        strat: Strategy = Grid2DStrategy() if space.dim == 2 else MultiStartStrategy(seed=seed)
    elif isinstance(strategy, str):
        strat = parse_strategy(strategy)
    elif isinstance(strategy, (ExactStrategy, Grid2DStrategy, MultiStartStrategy)):
        strat = strategy
    else:
        raise ValueError(f"not a strategy: {strategy!r}")
    if isinstance(strat, ExactStrategy) and not supports_extreme_points(space):
        raise SpaceError("exact strategy needs a finite extreme-point set; "
                         "this space has none")
    return strat


def _run_sup(space: NormedSpace, obj: Objective, region, strat: Strategy) -> Estimate:
    if isinstance(strat, ExactStrategy):
        return sup_vertex_pairs(space, obj)
    if isinstance(strat, Grid2DStrategy):
        return sup_pairs_2d(space, obj, region, strat.resolution, strat.refine, strat.radial)
    return sup_pairs_nd(space, obj, region, strat.starts, strat.steps, strat.seed)


# ---------------------------------------------------------------------------
# objective builders


def gamma_objective(space: NormedSpace, p: float, t: float) -> Objective:
    """(||x1 + t x2||^p + ||x1 - t x2||^p) / 2^(p-1), jointly convex."""
    scale = 2.0 ** (p - 1.0)

    def evb(X1: np.ndarray, X2: np.ndarray) -> np.ndarray:
        na = space.norm_rows(X1 + t * X2)
        nb = space.norm_rows(X1 - t * X2)
        return (na ** p + nb ** p) / scale

    return batch_objective(evb, convex_flag=True, name=f"gamma_p(p={p},t={t})")


def _scaled(obj: Objective, factor: float, name: str) -> Objective:
    evb = obj.eval_batch

    def scaled(X1: np.ndarray, X2: np.ndarray) -> np.ndarray:
        return factor * evb(X1, X2)

    return batch_objective(scaled, convex_flag=obj.convex_flag, name=name)


def cinj_iso_objective(space: NormedSpace, alpha: float, p: float) -> Objective:
    """The NJ-type ratio on the isosceles pair spanned by two unit vectors.

    Arguments (u1, u2) are mapped to the pair (u1+u2, u1-u2) before the
    ratio is formed, with every norm evaluated directly.  On unit pairs the
    denominator ||sum|| is the constant 2, so the restriction coincides with
    a jointly convex function and vertex enumeration attains its supremum.
    """
    beta = 1.0 - alpha

    def evb(U1: np.ndarray, U2: np.ndarray) -> np.ndarray:
        X1 = U1 + U2
        X2 = U1 - U2
        s = space.norm_rows(X1 + X2)
        na = space.norm_rows(alpha * X1 + beta * X2)
        nb = space.norm_rows(beta * X1 + alpha * X2)
        out = np.full(s.shape, np.nan)
        ok = s > SUM_NORM_FLOOR
        out[ok] = (na[ok] ** p + nb[ok] ** p) / s[ok] ** p
        return out

    return batch_objective(evb, convex_flag=True, name=f"cinj_iso(alpha={alpha},p={p})")


def _min_form_objective(space: NormedSpace) -> Objective:
    def evb(X1: np.ndarray, X2: np.ndarray) -> np.ndarray:
        return np.minimum(space.norm_rows(X1 + X2), space.norm_rows(X1 - X2))

    return batch_objective(evb, convex_flag=False, name="james_min_form")


def _rho_objective(space: NormedSpace, t: float) -> Objective:
    def evb(X1: np.ndarray, X2: np.ndarray) -> np.ndarray:
        return (space.norm_rows(X1 + t * X2) + space.norm_rows(X1 - t * X2)) / 2.0 - 1.0

    return batch_objective(evb, convex_flag=True, name=f"rho(t={t})")


def _cnj_modified_objective(space: NormedSpace, p: float) -> Objective:
    scale = 2.0 ** p

    def evb(X1: np.ndarray, X2: np.ndarray) -> np.ndarray:
        return (space.norm_rows(X1 + X2) ** p + space.norm_rows(X1 - X2) ** p) / scale

    return batch_objective(evb, convex_flag=True, name=f"cnj_modified_p(p={p})")


def _jxp_objective(space: NormedSpace, p: float, t: float) -> Objective:
    inv_p = 1.0 / p

    def evb(X1: np.ndarray, X2: np.ndarray) -> np.ndarray:
        na = space.norm_rows(X1 + t * X2)
        nb = space.norm_rows(X1 - t * X2)
        # increasing transform of a convex objective; vertex enumeration stays exact
        return ((na ** p + nb ** p) / 2.0) ** inv_p

    return batch_objective(evb, convex_flag=True, name=f"jxp(p={p},t={t})")


def _nu_objective(space: NormedSpace, p: float) -> Objective:
    def evb(X1: np.ndarray, X2: np.ndarray) -> np.ndarray:
        den = space.norm_rows(X1) ** p + space.norm_rows(X2) ** p
        num = space.norm_rows(X1 + X2) ** p + space.norm_rows(X1 - X2) ** p
        out = np.full(den.shape, np.nan)
        ok = den > SUM_NORM_FLOOR
        out[ok] = num[ok] / den[ok]
        return out

    return batch_objective(evb, convex_flag=False, name=f"nu_p(p={p})")


def _omega_objective(space: NormedSpace) -> Objective:
    def evb(U1: np.ndarray, U2: np.ndarray) -> np.ndarray:
        X1 = U1 + U2
        X2 = U1 - U2
        s = space.norm_rows(X1 + X2)
        a = space.norm_rows(X1 + 2.0 * X2)
        b = space.norm_rows(2.0 * X1 + X2)
        out = np.full(s.shape, np.nan)
        ok = s > SUM_NORM_FLOOR
        out[ok] = (a[ok] ** 2 + b[ok] ** 2) / (5.0 * s[ok] ** 2)
        return out

    return batch_objective(evb, convex_flag=True, name="omega_prime")


# ---------------------------------------------------------------------------
# constants


def gamma_p(space: NormedSpace, p: float, t: float, strategy=None) -> Estimate:
    """Supremum of the normalized two-sided norm power mean at offset t."""
    p = _check_p(p)
    t = _check_t(t)
    strat = resolve_strategy(strategy, space)
    return _run_sup(space, gamma_objective(space, p, t), Region.SPHERE, strat)


def cinj_iso(space: NormedSpace, alpha: float, p: float, strategy=None) -> Estimate:
    """NJ-type constant for isosceles orthogonal pairs, direct supremum.

    Samples pairs exclusively through the half-sum parametrization of unit
    vector pairs, which covers every admissible pair up to joint scaling.
    """
    alpha = _check_alpha(alpha)
    p = _check_p(p)
    strat = resolve_strategy(strategy, space)
    est = _run_sup(space, cinj_iso_objective(space, alpha, p), Region.SPHERE, strat)
    u1, u2 = est.witness
    pair = (tuple(a + b for a, b in zip(u1, u2)), tuple(a - b for a, b in zip(u1, u2)))
    meta = dict(est.meta)
    meta["iso_pair"] = pair
    return Estimate(est.value, est.witness, est.strategy, est.exact, est.evaluations, meta)


def cinj_via_gamma(space: NormedSpace, alpha: float, p: float, strategy=None) -> Estimate:
    """Same constant through the identity route: half the power mean at t = 1-2*alpha."""
    alpha = _check_alpha(alpha)
    p = _check_p(p)
    t = 1.0 - 2.0 * alpha
    strat = resolve_strategy(strategy, space)
    obj = _scaled(gamma_objective(space, p, t), 0.5, name=f"cinj_via_gamma(alpha={alpha},p={p})")
    est = _run_sup(space, obj, Region.SPHERE, strat)
    meta = dict(est.meta)
    meta.update(route="via_gamma", t=t)
    return Estimate(est.value, est.witness, est.strategy, est.exact, est.evaluations, meta)


def cnj_p(space: NormedSpace, p: float, strategy=None, t_grid: int = 33,
          t_refine: int = 20, mode: str = "gamma") -> Estimate:
    """Generalized NJ constant via a sweep over the offset t in [0, 1].

    ``mode="gamma"`` maximizes gamma_p(t) / (1 + t^p); ``mode="cinj"`` is the
    cross-check form 2 * cinj_iso((1-t)/2) / (1 + t^p).  The reported witness
    is the inner witness at the best offset, recorded in ``meta['t_star']``.
    """
    p = _check_p(p)
    if mode not in ("gamma", "cinj"):
        raise ValueError(f"mode must be 'gamma' or 'cinj', got {mode!r}")
    strat = resolve_strategy(strategy, space)
    evals = [0]

    def inner(t: float) -> Estimate:
        if mode == "gamma":
            est = gamma_p(space, p, t, strat)
        else:
            est = cinj_iso(space, (1.0 - t) / 2.0, p, strat)
        evals[0] += est.evaluations
        return est

    def g(t: float) -> float:
        est = inner(t)
        num = est.value if mode == "gamma" else 2.0 * est.value
        return num / (1.0 + t ** p)

    t_star, value = t_sweep(g, 0.0, 1.0, grid=t_grid, refine_iters=t_refine)
    at_best = inner(t_star)
    meta = dict(at_best.meta)
    meta.update(t_star=t_star, mode=mode, inner_value=at_best.value)
    return Estimate(value, at_best.witness, at_best.strategy, False, evals[0], meta)


def cnj_modified_p(space: NormedSpace, p: float, strategy=None) -> Estimate:
    """Upper companion constant sup (||x1+x2||^p + ||x1-x2||^p) / 2^p on unit pairs.

    At p = 2 this is the classical quadratic-mean form.  For general p the
    definition is inferred by analogy and flagged as such in the metadata.
    """
    p = _check_p(p)
    strat = resolve_strategy(strategy, space)
    est = _run_sup(space, _cnj_modified_objective(space, p), Region.SPHERE, strat)
    meta = dict(est.meta)
    meta["definition"] = "inferred"
    return Estimate(est.value, est.witness, est.strategy, est.exact, est.evaluations, meta)


def rho(space: NormedSpace, t: float, strategy=None) -> Estimate:
    """Modulus of smoothness at t: sup of (||x1+t x2|| + ||x1-t x2||)/2 - 1."""
    t = _check_t(t, hi=math.inf)
    strat = resolve_strategy(strategy, space)
    return _run_sup(space, _rho_objective(space, t), Region.SPHERE, strat)


def jxp(space: NormedSpace, p: float, t: float, strategy=None) -> Estimate:
    """Power-mean smoothness profile ((||x1+t x2||^p + ||x1-t x2||^p)/2)^(1/p)."""
    p = _check_p(p)
    t = _check_t(t, strict_lo=True)
    strat = resolve_strategy(strategy, space)
    return _run_sup(space, _jxp_objective(space, p, t), Region.SPHERE, strat)


def nu_p(space: NormedSpace, p: float, strategy=None) -> Estimate:
    """sup (||x1+x2||^p + ||x1-x2||^p) / (||x1||^p + ||x2||^p) over nonzero pairs.

    The ratio is invariant under joint scaling and symmetric under swapping
    the pair, so the supremum is computed with x1 on the sphere and x2 in
    the ball; the swapped half of the domain contributes the same values.
    """
    p = _check_p(p)
    strat = resolve_strategy(strategy, space)
    if isinstance(strat, ExactStrategy):
        raise ValueError("nu_p is a non-convex ratio; exact enumeration is not available")
    est = _run_sup(space, _nu_objective(space, p), (Region.SPHERE, Region.BALL), strat)
    meta = dict(est.meta)
    meta["reduction"] = "x1 on sphere, x2 in ball, swap-symmetric"
    return Estimate(est.value, est.witness, est.strategy, est.exact, est.evaluations, meta)


def omega_prime(space: NormedSpace, strategy=None) -> Estimate:
    """Skewed quadratic ratio on isosceles pairs, via the half-sum parametrization."""
    strat = resolve_strategy(strategy, space)
    est = _run_sup(space, _omega_objective(space), Region.SPHERE, strat)
    gam = gamma_p(space, 2.0, 1.0 / 3.0, strat)
    meta = dict(est.meta)
    meta["gamma_identity"] = 0.9 * gam.value
    return Estimate(est.value, est.witness, est.strategy, est.exact,
                    est.evaluations + gam.evaluations, meta)


def smoothness_quotient(space: NormedSpace, p: float, alpha: float, strategy=None) -> float:
    """((2^(p-1) C(alpha))^(1/p) - 1) / (1 - 2 alpha); vanishing limit at
    alpha -> 1/2 characterizes uniform smoothness.  Rejects alpha = 1/2."""
    p = _check_p(p)
    alpha = _check_alpha(alpha)
    if alpha == 0.5:
        raise ValueError("smoothness_quotient is undefined at alpha = 1/2")
    c = cinj_via_gamma(space, alpha, p, strategy).value
    return ((2.0 ** (p - 1.0) * c) ** (1.0 / p) - 1.0) / (1.0 - 2.0 * alpha)


# ---------------------------------------------------------------------------
# constants constrained to unit-norm isosceles pairs


def _unit_iso_eval_rows(space: NormedSpace, Zraw: np.ndarray):
    """Map raw (n, 2, dim) parameters to unit isosceles pairs and their sum norms.

    Row layout: Zraw[:, 0] is the raw direction of x1, Zraw[:, 1] the raw
    arc direction; the partner is found by bisection along the great-circle
    arc between x1 and -x1.  Degenerate rows come back as NaN.
    """
    X1raw = Zraw[:, 0, :]
    Wraw = Zraw[:, 1, :]
    n1 = space.norm_rows(X1raw)
    e1 = np.sqrt((X1raw * X1raw).sum(axis=-1))
    ok = (n1 > 0.0) & (e1 > 0.0)
    safe_n1 = np.where(ok, n1, 1.0)
    X1 = X1raw / safe_n1[:, None]
    E = X1raw / np.where(ok, e1, 1.0)[:, None]
    Wc = Wraw - ((Wraw * E).sum(axis=-1))[:, None] * E
    wres = np.sqrt((Wc * Wc).sum(axis=-1))
    wref = np.sqrt((Wraw * Wraw).sum(axis=-1))
    ok = ok & (wres > 1e-12 * np.maximum(wref, 1.0))
    nw = space.norm_rows(Wc)
    W = Wc / np.where(ok & (nw > 0.0), nw, 1.0)[:, None]
    C = _iso_partner_rows(space, X1, W)
    vals = space.norm_rows(X1 + C)
    vals = np.where(ok, vals, np.nan)
    return vals, X1, C


def _unit_iso_extremum(space: NormedSpace, sense: str, strat: Strategy):
    """Extremum of ||x1 + x2|| over sampled unit-norm isosceles pairs.

    Returns (value, witness, evaluations).  ``sense`` is "sup" or "inf";
    infima run the negated objective, so the result is an upper bound of
    the true infimum (mirror image of the engines' lower-bound semantics).
    """
    sign = 1.0 if sense == "sup" else -1.0
    if isinstance(strat, ExactStrategy):
        raise ValueError("unit isosceles extrema need a search strategy (grid2d or multistart)")

    if isinstance(strat, Grid2DStrategy):
        if space.dim != 2:
            raise SpaceError("grid2d strategy needs a 2-dimensional space")
        res, refine = strat.resolution, strat.refine
        thetas = np.arange(res) * (TWO_PI / res)
        D = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
        X1 = D / space.norm_rows(D)[:, None]
        DW = np.stack([-np.sin(thetas), np.cos(thetas)], axis=1)
        W = DW / space.norm_rows(DW)[:, None]
        C = _iso_partner_rows(space, X1, W)
        vals = sign * space.norm_rows(X1 + C)
        evaluations = res
        best_v = None
        best_w = None
        best_theta = None
        for i in range(res):
            if not math.isfinite(vals[i]):
                continue
            w = (tuple(float(x) for x in X1[i]), tuple(float(x) for x in C[i]))
            if _improves(float(vals[i]), w, best_v, best_w):
                best_v, best_w, best_theta = float(vals[i]), w, float(thetas[i])
        if best_v is None:
            raise ValueError("no feasible isosceles pair found on the grid")

        def fun(theta: float):
            row = np.array([[math.cos(theta), math.sin(theta)]])
            x1 = row / space.norm_rows(row)[:, None]
            wrow = np.array([[-math.sin(theta), math.cos(theta)]])
            wrow = wrow / space.norm_rows(wrow)[:, None]
            c = _iso_partner_rows(space, x1, wrow)
            v = sign * float(space.norm_rows(x1 + c)[0])
            return v, (tuple(float(x) for x in x1[0]), tuple(float(x) for x in c[0]))

        cell = TWO_PI / res
        for rnd in range(refine):
            h = cell * (0.6 ** rnd)
            v, x, payload = _golden_max(fun, best_theta - h, best_theta + h, _GOLDEN_ITERS)
            evaluations += _GOLDEN_ITERS + 2
            if v is not None and _improves(v, payload, best_v, best_w):
                best_v, best_w, best_theta = v, payload, x
        return sign * best_v, best_w, evaluations

    starts, steps, seed = strat.starts, strat.steps, strat.seed
    d = space.dim
    children = np.random.SeedSequence(seed).spawn(starts)
    Z = np.empty((starts, 2, d))
    for i, ss in enumerate(children):
        rng = np.random.default_rng(ss)
        Z[i] = rng.standard_normal((2, d))
    vals, X1, C = _unit_iso_eval_rows(space, Z)
    vals = np.where(np.isfinite(vals), sign * vals, -np.inf)
    evaluations = starts
    h = np.full(starts, 0.5)
    stall = np.zeros(starts, dtype=int)
    ncoord = 2 * d
    bestX1, bestC = X1.copy(), C.copy()
    for it in range(steps):
        v, c = divmod(it % ncoord, d)
        improved = np.zeros(starts, dtype=bool)
        for sgn in (1.0, -1.0):
            cand = Z.copy()
            cand[:, v, c] += sgn * h
            cv, cX1, cC = _unit_iso_eval_rows(space, cand)
            evaluations += starts
            cv = np.where(np.isfinite(cv), sign * cv, -np.inf)
            adv = cv > vals
            if adv.any():
                Z[adv] = cand[adv]
                vals[adv] = cv[adv]
                bestX1[adv] = cX1[adv]
                bestC[adv] = cC[adv]
                improved |= adv
        stall = np.where(improved, 0, stall + 1)
        shrink = stall >= ncoord
        h = np.where(shrink, h * 0.6, h)
        stall = np.where(shrink, 0, stall)
    best_v = None
    best_w = None
    for i in range(starts):
        if not math.isfinite(vals[i]):
            continue
        w = (tuple(float(x) for x in bestX1[i]), tuple(float(x) for x in bestC[i]))
        if _improves(float(vals[i]), w, best_v, best_w):
            best_v, best_w = float(vals[i]), w
    if best_v is None:
        raise ValueError("no feasible isosceles pair found from any start")
    return sign * best_v, best_w, evaluations


def james(space: NormedSpace, strategy=None) -> Estimate:
    """Non-squareness constant: sup over unit pairs of min(||x1+x2||, ||x1-x2||).

    The equivalent form as sup of ||x1+x2|| over unit isosceles pairs is
    computed on sampled pairs and recorded in ``meta['iso_form_value']``;
    the two agree within the strategy tolerance.
    """
    strat = resolve_strategy(strategy, space)
    if isinstance(strat, ExactStrategy):
        raise ValueError("the min-form objective is not vertex-attaining; "
                         "use grid2d or multistart for james")
    est = _run_sup(space, _min_form_objective(space), Region.SPHERE, strat)
    iso_v, iso_w, ev2 = _unit_iso_extremum(space, "sup", strat)
    meta = dict(est.meta)
    meta.update(iso_form_value=iso_v, iso_form_witness=iso_w)
    return Estimate(est.value, est.witness, est.strategy, False,
                    est.evaluations + ev2, meta)


def schaffer(space: NormedSpace, strategy=None) -> Estimate:
    """Girth-type constant: inf of ||x1+x2|| over unit isosceles pairs.

    An infimum: the estimate is an upper bound of the true value (the
    mirror image of the suprema semantics).  ``meta['two_over_james']``
    records 2/J for the product identity J * S = 2.
    """
    strat = resolve_strategy(strategy, space)
    value, witness, evals = _unit_iso_extremum(space, "inf", strat)
    j = james(space, strat)
    meta = {"sense": "inf", "two_over_james": 2.0 / j.value}
    return Estimate(value, witness, j.strategy, False, evals + j.evaluations, meta)
