"""Deterministic supremum engines over pairs of vectors.

Three engines share one contract:

* every point they evaluate is feasible (on the requested sphere or ball),
  so a returned value is always a certified lower bound of the supremum
  (for infima, run the negated objective; the bound flips sides);
* identical inputs, including seeds, give bit-identical results;
* ties on the value are broken by the lexicographically smallest witness,
  so the reduction over candidates is order-independent.

``sup_vertex_pairs`` is exact: for an objective that attains its maximum at
extreme points of the ball (jointly convex in the pair, or a monotone
transform of such a function), enumerating extreme-point pairs computes the
supremum over the sphere and the ball alike.

Objectives may mark points as out of scope by returning NaN; engines skip
those.  Batch evaluation (``eval_batch`` on ``(n, dim)`` row arrays) is the
hot path; the scalar ``eval`` must agree with it on single rows.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .spaces import TWO_PI, NormedSpace, Region, SpaceError, Vector, extreme_points

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# Engine defaults; the strategy selector strings below override them.
DEFAULT_RESOLUTION = 1024
DEFAULT_REFINE = 40
DEFAULT_RADIAL = 9
DEFAULT_STARTS = 128
DEFAULT_STEPS = 400
DEFAULT_SEED = 7

# Golden-section iterations per refinement pass.
_GOLDEN_ITERS = 12


@dataclass(frozen=True)
class Objective:
    """A real objective on pairs of vectors.

    ``convex_flag`` asserts that enumerating extreme-point pairs attains the
    supremum over the ball (and the sphere): true for objectives jointly
    convex in the pair, and for monotone transforms of such objectives.
    ``eval_batch``, when given, takes two matching ``(n, dim)`` arrays and
    returns ``(n,)`` values; rows may be NaN to mark guarded points.
    """

    eval: Callable[[Vector, Vector], float]
    convex_flag: bool = False
    eval_batch: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None
    name: str = ""


def scalar_objective(fn: Callable[[Vector, Vector], float], convex_flag: bool = False,
                     name: str = "") -> Objective:
    """Wrap a plain python pair function, deriving a loop-based batch form."""

    def evb(X1: np.ndarray, X2: np.ndarray) -> np.ndarray:
        return np.array([fn(tuple(map(float, a)), tuple(map(float, b)))
                         for a, b in zip(X1, X2)], dtype=float)

    return Objective(eval=fn, convex_flag=convex_flag, eval_batch=evb, name=name)


def batch_objective(evb: Callable[[np.ndarray, np.ndarray], np.ndarray],
                    convex_flag: bool = False, name: str = "") -> Objective:
    """Build an Objective from a batch evaluator; the scalar form delegates."""

    def ev(x1: Sequence[float], x2: Sequence[float]) -> float:
        return float(evb(np.asarray([x1], dtype=float), np.asarray([x2], dtype=float))[0])

    return Objective(eval=ev, convex_flag=convex_flag, eval_batch=evb, name=name)


@dataclass(frozen=True)
class Estimate:
    """Result of one engine run.

    ``value`` equals the objective at ``witness``.  ``exact`` is true only
    for vertex enumeration; all other values are feasible-point bounds.
    """

    value: float
    witness: tuple[Vector, Vector]
    strategy: str          # "Grid2D" | "MultiStart" | "VertexExact"
    exact: bool
    evaluations: int
    meta: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# strategy selectors


@dataclass(frozen=True)
class ExactStrategy:
    pass


@dataclass(frozen=True)
class Grid2DStrategy:
    resolution: int = DEFAULT_RESOLUTION
    refine: int = DEFAULT_REFINE
    radial: int = DEFAULT_RADIAL


@dataclass(frozen=True)
class MultiStartStrategy:
    starts: int = DEFAULT_STARTS
    steps: int = DEFAULT_STEPS
    seed: int = DEFAULT_SEED


Strategy = ExactStrategy | Grid2DStrategy | MultiStartStrategy


def strategy_descriptor(strategy: Strategy) -> str:
    if isinstance(strategy, ExactStrategy):
        return "exact"
    if isinstance(strategy, Grid2DStrategy):
        return (f"grid2d:res={strategy.resolution},refine={strategy.refine},"
                f"radial={strategy.radial}")
    return f"multistart:starts={strategy.starts},steps={strategy.steps},seed={strategy.seed}"


def parse_strategy(text: str) -> Strategy:
    """Parse selector strings: ``exact``, ``grid2d:res=..,refine=..``,
    ``multistart:starts=..,steps=..,seed=..``.  Omitted fields keep defaults."""
    head, _, rest = text.strip().partition(":")
    fields: dict[str, int] = {}
    if rest:
        for item in rest.split(","):
            key, eq, val = item.partition("=")
            if not eq or not re.fullmatch(r"-?\d+", val.strip()):
                raise ValueError(f"invalid strategy parameter: {item!r}")
            fields[key.strip()] = int(val)
    if head == "exact":
        if fields:
            raise ValueError("exact strategy takes no parameters")
        return ExactStrategy()
    if head == "grid2d":
        unknown = set(fields) - {"res", "refine", "radial"}
        if unknown:
            raise ValueError(f"unknown grid2d parameter(s): {sorted(unknown)}")
        strat = Grid2DStrategy(resolution=fields.get("res", DEFAULT_RESOLUTION),
                               refine=fields.get("refine", DEFAULT_REFINE),
                               radial=fields.get("radial", DEFAULT_RADIAL))
        if strat.resolution < 8 or strat.refine < 0 or strat.radial < 2:
            raise ValueError(f"grid2d parameters out of range in {text!r}: "
                             "need res >= 8, refine >= 0, radial >= 2")
        return strat
    if head == "multistart":
        unknown = set(fields) - {"starts", "steps", "seed"}
        if unknown:
            raise ValueError(f"unknown multistart parameter(s): {sorted(unknown)}")
        strat = MultiStartStrategy(starts=fields.get("starts", DEFAULT_STARTS),
                                   steps=fields.get("steps", DEFAULT_STEPS),
                                   seed=fields.get("seed", DEFAULT_SEED))
        if strat.starts < 1 or strat.steps < 1:
            raise ValueError(f"multistart parameters out of range in {text!r}: "
                             "need starts >= 1, steps >= 1")
        return strat
    raise ValueError(f"unknown strategy: {text!r}")


# ---------------------------------------------------------------------------
# shared helpers


def _region_pair(region) -> tuple[Region, Region]:
    if isinstance(region, Region):
        return region, region
    r1, r2 = region
    if not (isinstance(r1, Region) and isinstance(r2, Region)):
        raise ValueError("region must be a Region or a pair of Regions")
    return r1, r2


def _batch(f: Objective) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    if f.eval_batch is not None:
        return f.eval_batch
    fn = f.eval

    def evb(X1: np.ndarray, X2: np.ndarray) -> np.ndarray:
        return np.array([fn(tuple(map(float, a)), tuple(map(float, b)))
                         for a, b in zip(X1, X2)], dtype=float)

    return evb


def _as_witness(x1: np.ndarray, x2: np.ndarray) -> tuple[Vector, Vector]:
    return tuple(float(t) for t in x1), tuple(float(t) for t in x2)


def _improves(value: float, witness, best_value, best_witness) -> bool:
    if best_value is None:
        return True
    if value != best_value:
        return value > best_value
    return witness < best_witness


def _golden_max(fun: Callable[[float], tuple[float, object]], lo: float, hi: float,
                iters: int):
    """Golden-section ascent on [lo, hi]; returns the best evaluated sample.

    ``fun`` maps a coordinate to (value, payload); NaN values are treated
    as minus infinity.  Only evaluated feasible samples are ever returned,
    which preserves the engines' lower-bound semantics.
    """
    best_v, best_x, best_p = None, None, None

    def probe(x: float):
        nonlocal best_v, best_x, best_p
        v, payload = fun(x)
        if not math.isfinite(v):
            return -math.inf
        if best_v is None or v > best_v or (v == best_v and x < best_x):
            best_v, best_x, best_p = v, x, payload
        return v

    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = probe(c), probe(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = probe(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = probe(d)
    return best_v, best_x, best_p


# ---------------------------------------------------------------------------
# 2D angular grid engine


def _grid_axes_2d(space: NormedSpace, region: Region, resolution: int, radial: int):
    thetas = np.arange(resolution) * (TWO_PI / resolution)
    D = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
    U = D / space.norm_rows(D)[:, None]
    if region is Region.SPHERE:
        params = thetas[:, None]
        return U, params
    radii = np.linspace(0.0, 1.0, radial)
    P = (radii[:, None, None] * U[None, :, :]).reshape(-1, 2)
    params = np.stack([np.tile(thetas, radial), np.repeat(radii, resolution)], axis=1)
    return P, params


def _point_2d(space: NormedSpace, region: Region, params: Sequence[float]) -> np.ndarray:
    theta = params[0]
    row = np.array([[math.cos(theta), math.sin(theta)]])
    row = row / space.norm_rows(row)[:, None]
    if region is Region.BALL:
        r = min(max(params[1], 0.0), 1.0)
        row = row * r
    return row[0]


def sup_pairs_2d(space: NormedSpace, f: Objective, region, resolution: int = DEFAULT_RESOLUTION,
                 refine_iters: int = DEFAULT_REFINE, radial: int = DEFAULT_RADIAL) -> Estimate:
    """Angular-grid scan over pairs, then coordinate-wise golden refinement.

    Sphere variables are parametrized by one angle, ball variables by an
    angle and a radius in [0, 1].  The scan reduces with the max-value /
    lexicographic-witness rule; refinement never accepts a worse sample, so
    the returned value dominates the raw grid maximum.
    """
    if space.dim != 2:
        raise SpaceError(f"sup_pairs_2d needs a 2-dimensional space, got dim={space.dim}")
    if resolution < 8:
        raise ValueError("resolution must be at least 8")
    if refine_iters < 0 or radial < 2:
        raise ValueError("refine_iters must be >= 0 and radial >= 2")
    reg1, reg2 = _region_pair(region)
    fb = _batch(f)
    P1, par1 = _grid_axes_2d(space, reg1, resolution, radial)
    P2, par2 = _grid_axes_2d(space, reg2, resolution, radial)

    evaluations = 0
    best_v = None
    best_w = None
    best_par = None
    for i in range(P1.shape[0]):
        X1 = np.broadcast_to(P1[i], P2.shape)
        vals = fb(X1, P2)
        evaluations += P2.shape[0]
        finite = np.isfinite(vals)
        if not finite.any():
            continue
        vmax = vals[finite].max()
        idxs = np.flatnonzero(finite & (vals == vmax))
        j = idxs[0] if idxs.size == 1 else min(idxs, key=lambda k: tuple(P2[k]))
        w = _as_witness(P1[i], P2[j])
        if _improves(float(vmax), w, best_v, best_w):
            best_v, best_w = float(vmax), w
            best_par = np.concatenate([par1[i], par2[j]])

    if best_v is None:
        raise ValueError("objective returned no finite value on the grid")

    k1 = par1.shape[1]
    cell = {0: TWO_PI / resolution}
    widths = []
    for reg in (reg1, reg2):
        widths.append(TWO_PI / resolution)
        if reg is Region.BALL:
            widths.append(1.0 / (radial - 1))

    params = best_par.astype(float).copy()

    def eval_params(p: np.ndarray):
        x1 = _point_2d(space, reg1, p[:k1])
        x2 = _point_2d(space, reg2, p[k1:])
        v = float(fb(x1[None, :], x2[None, :])[0])
        return v, _as_witness(x1, x2)

    for rnd in range(refine_iters):
        shrink = 0.6 ** rnd
        for ci in range(len(params)):
            h = widths[ci] * shrink

            def fun(x: float, ci=ci):
                trial = params.copy()
                trial[ci] = x
                return eval_params(trial)

            v, x, payload = _golden_max(fun, params[ci] - h, params[ci] + h, _GOLDEN_ITERS)
            evaluations += _GOLDEN_ITERS + 2
            if v is not None and _improves(v, payload, best_v, best_w):
                best_v, best_w = v, payload
                params[ci] = x

    return Estimate(value=best_v, witness=best_w, strategy="Grid2D", exact=False,
                    evaluations=evaluations)


# ---------------------------------------------------------------------------
# multi-start pattern ascent (any dimension)


def sup_pairs_nd(space: NormedSpace, f: Objective, region, starts: int = DEFAULT_STARTS,
                 steps: int = DEFAULT_STEPS, seed: int = DEFAULT_SEED) -> Estimate:
    """Seeded multi-start coordinate ascent with shrinking steps.

    Each start draws its own random pair from a per-start seed stream (so
    enlarging ``starts`` keeps earlier starts' trajectories unchanged), then
    repeatedly perturbs one coordinate of one variable, renormalizes to the
    region, and keeps strict improvements.  The step shrinks after a full
    stagnant sweep.  The final reduction over starts is max-value with the
    lexicographic witness tie-break, hence order-independent.
    """
    if starts < 1 or steps < 1:
        raise ValueError("starts and steps must be positive")
    d = space.dim
    reg1, reg2 = _region_pair(region)
    regs = (reg1, reg2)
    fb = _batch(f)

    children = np.random.SeedSequence(seed).spawn(starts)
    Z = np.empty((starts, 2, d))
    for i, ss in enumerate(children):
        rng = np.random.default_rng(ss)
        zi = rng.standard_normal((2, d))
        radii = rng.random(2)
        for v in range(2):
            nv = float(space.norm_rows(zi[v].reshape(1, -1))[0])
            if nv == 0.0:
                zi[v] = 0.0
                zi[v][0] = 1.0
                nv = float(space.norm_rows(zi[v].reshape(1, -1))[0])
            zi[v] /= nv
            if regs[v] is Region.BALL:
                zi[v] *= radii[v] ** (1.0 / d)
        Z[i] = zi

    vals = fb(Z[:, 0, :], Z[:, 1, :])
    evaluations = starts
    vals = np.where(np.isfinite(vals), vals, -np.inf)
    h = np.full(starts, 0.5)
    stall = np.zeros(starts, dtype=int)
    ncoord = 2 * d

    for it in range(steps):
        v, c = divmod(it % ncoord, d)
        improved = np.zeros(starts, dtype=bool)
        for sgn in (1.0, -1.0):
            cand = Z.copy()
            cand[:, v, c] += sgn * h
            Vv = cand[:, v, :]
            nv = space.norm_rows(Vv)
            if regs[v] is Region.SPHERE:
                ok = nv > 0.0
                safe = np.where(ok, nv, 1.0)
                cand[:, v, :] = Vv / safe[:, None]
            else:
                ok = np.ones(starts, dtype=bool)
                scale = np.maximum(nv, 1.0)
                cand[:, v, :] = Vv / scale[:, None]
            cv = fb(cand[:, 0, :], cand[:, 1, :])
            evaluations += starts
            cv = np.where(ok & np.isfinite(cv), cv, -np.inf)
            adv = cv > vals
            if adv.any():
                Z[adv] = cand[adv]
                vals[adv] = cv[adv]
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
        w = _as_witness(Z[i, 0], Z[i, 1])
        if _improves(float(vals[i]), w, best_v, best_w):
            best_v, best_w = float(vals[i]), w
    if best_v is None:
        raise ValueError("objective returned no finite value at any start")
    return Estimate(value=best_v, witness=best_w, strategy="MultiStart", exact=False,
                    evaluations=evaluations)


# ---------------------------------------------------------------------------
# exact vertex enumeration


def sup_vertex_pairs(space: NormedSpace, f: Objective) -> Estimate:
    """Exact maximum of the objective over ordered extreme-point pairs.

    Requires ``f.convex_flag`` (the supremum is attained at extreme points)
    and a space with a finite extreme set; the result is the exact supremum
    over sphere and ball pairs alike.
    """
    if not f.convex_flag:
        raise ValueError("objective is not declared vertex-attaining; cannot run exact enumeration")
    ext = extreme_points(space)
    E = np.asarray(ext, dtype=float)
    n = E.shape[0]
    X1 = np.repeat(E, n, axis=0)
    X2 = np.tile(E, (n, 1))
    vals = _batch(f)(X1, X2)
    finite = np.isfinite(vals)
    if not finite.any():
        raise ValueError("objective returned no finite value at extreme points")
    best_v = None
    best_w = None
    vmax = vals[finite].max()
    for k in np.flatnonzero(finite & (vals == vmax)):
        w = _as_witness(X1[k], X2[k])
        if _improves(float(vals[k]), w, best_v, best_w):
            best_v, best_w = float(vals[k]), w
    return Estimate(value=best_v, witness=best_w, strategy="VertexExact", exact=True,
                    evaluations=n * n)


# ---------------------------------------------------------------------------
# one-dimensional sweep


def t_sweep(g: Callable[[float], float], lo: float, hi: float, grid: int = 33,
            refine_iters: int = 20) -> tuple[float, float]:
    """Maximize a scalar function on [lo, hi]: grid scan plus golden refinement.

    Returns ``(t_star, value)``; ties prefer the smallest t, so a constant
    function reports its left endpoint.  Non-finite values raise.
    """
    if grid < 3:
        raise ValueError("grid must be at least 3")
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError("need finite lo < hi")
    ts = np.linspace(lo, hi, grid)
    best_t, best_v = None, None
    for t in ts:
        v = float(g(float(t)))
        if not math.isfinite(v):
            raise ValueError(f"sweep objective returned a non-finite value at t={t}")
        if best_v is None or v > best_v:
            best_t, best_v = float(t), v
    cell = (hi - lo) / (grid - 1)
    a = max(lo, best_t - cell)
    b = min(hi, best_t + cell)

    def fun(t: float):
        return float(g(t)), t

    v, x, _ = _golden_max(fun, a, b, refine_iters)
    if v is not None and (v > best_v or (v == best_v and x < best_t)):
        best_t, best_v = x, v
    return best_t, best_v
