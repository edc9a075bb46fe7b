"""SETAR(k) estimation and threshold nonlinearity testing.

Thresholds are searched over observed values of the delayed series
``y_{t-d}``. For a fixed delay the observations are sorted by the threshold
variable, so every regime is a contiguous block of the sorted sample and its
least-squares fit only needs the Gram matrix of that block. Gram matrices of
all blocks come from one prefix sum; residual sums of squares for every
nested AR order come from a batched sweep of each Gram matrix. The best
k-regime partition is then an exact dynamic program over block costs.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ar import fit_ar, information_criterion, ols, select_ar_order
from .errors import EstimationError, InvalidArgumentError
from .series import TimeSeries, lag_matrix

__all__ = [
    "Regime",
    "SetarModel",
    "ThresholdTestResult",
    "fit_setar_grid",
    "fit_setar_sequential",
    "hansen_test",
    "min_occupancy",
]

_CHUNK = 100_000
_PIVOT_TOL = 1e-10


@dataclass(frozen=True)
class Regime:
    intercept: float
    coefficients: np.ndarray
    std_errors: np.ndarray  # intercept first
    n_obs: int

    @property
    def order(self) -> int:
        return self.coefficients.size

    @property
    def t_stats(self) -> np.ndarray:
        return self.coefficients / self.std_errors[1:]


@dataclass(frozen=True)
class SetarModel:
    """A fitted k-regime self-exciting threshold autoregression.

    ``residuals`` are in time order over the effective sample
    ``t = start..T-1`` and already divided by the full-model residual
    standard deviation; ``raw_residuals`` keep data units.
    """

    k: int
    thresholds: np.ndarray
    delay: int
    regimes: tuple
    residuals: np.ndarray
    raw_residuals: np.ndarray
    rss: float
    regime_occupancy: tuple
    regime_index: np.ndarray
    start: int
    criterion: str = "bic"

    @property
    def effective_size(self) -> int:
        return self.raw_residuals.size

    @property
    def orders(self) -> tuple:
        return tuple(r.order for r in self.regimes)

    def regime_of(self, z) -> np.ndarray:
        """Regime index of threshold-variable values under ``r_{j-1} < z <= r_j``."""
        return np.searchsorted(self.thresholds, np.asarray(z, dtype=float), side="left")

    def summary(self) -> dict:
        return {
            "k": self.k,
            "delay": self.delay,
            "thresholds": [float(r) for r in self.thresholds],
            "rss": float(self.rss),
            "occupancy": [int(c) for c in self.regime_occupancy],
            "regimes": [
                {
                    "intercept": float(r.intercept),
                    "coefficients": [float(c) for c in r.coefficients],
                    "std_errors": [float(s) for s in r.std_errors],
                }
                for r in self.regimes
            ],
        }


@dataclass(frozen=True)
class ThresholdTestResult:
    statistic: float
    p_value: float
    bootstrap_reps: int
    null_regimes: int
    alt_regimes: int
    delay: int
    order: int


def min_occupancy(n: int, p: int) -> int:
    """Smallest admissible regime size: ``max(p + 2, ceil(0.1 n))``."""
    return max(p + 2, math.ceil(0.1 * n))


def _values(series) -> np.ndarray:
    if isinstance(series, TimeSeries):
        return series.values
    return np.asarray(series, dtype=float).ravel()


def _check_args(k: int, p_max: int, d_max: int) -> None:
    if k < 1:
        raise InvalidArgumentError("regime count must be at least 1")
    if p_max < 1 or d_max < 1:
        raise InvalidArgumentError("p_max and d_max must be positive")


def _nested_rss(gram: np.ndarray) -> np.ndarray:
    """RSS for every nested order from Gram matrices of ``[1, y_{t-1..t-p}, y_t]``.

    ``gram`` has shape (B, p+2, p+2). Column ``j`` of the result holds the
    residual sum of squares after regressing on the first ``j + 1``
    regressors (intercept plus ``j`` lags). Collinear columns are skipped.
    """
    m = np.array(gram, dtype=float, copy=True)
    batch, q1, _ = m.shape
    scale = np.diagonal(gram, axis1=1, axis2=2).copy()
    out = np.empty((batch, q1 - 1))
    for j in range(q1 - 1):
        piv = m[:, j, j]
        ok = piv > _PIVOT_TOL * np.maximum(scale[:, j], 1.0)
        f = np.where(ok, 1.0 / np.where(ok, piv, 1.0), 0.0)
        m -= m[:, :, j, None] * m[:, None, j, :] * f[:, None, None]
        out[:, j] = m[:, -1, -1]
    return np.maximum(out, 0.0)


class _DelayGrid:
    """Block costs for one delay on the common effective sample."""

    def __init__(self, x: np.ndarray, delay: int, p_max: int, start: int, criterion: str):
        self.delay = delay
        self.p_max = p_max
        self.criterion = criterion
        mu, sd = x.mean(), x.std()
        xs = (x - mu) / (sd if sd > 0 else 1.0)
        y, X = lag_matrix(xs, p_max, start)
        n = y.size
        self.n = n
        self.z = x[start - delay : x.size - delay]
        self.order = np.argsort(self.z, kind="stable")
        self.zs = self.z[self.order]
        w = np.column_stack([X, y])[self.order]
        prefix = np.zeros((n + 1, p_max + 2, p_max + 2))
        np.cumsum(w[:, :, None] * w[:, None, :], axis=0, out=prefix[1:])
        self.prefix = prefix
        self.m = min_occupancy(n, p_max)
        idx = np.arange(self.m, n - self.m + 1)
        idx = idx[(idx > 0) & (idx < n)]
        self.splits = idx[self.zs[idx - 1] < self.zs[idx]]

    def threshold_at(self, i: int) -> float:
        return float(self.zs[i - 1])

    def block_rss(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Nested-order RSS (orders 1..p_max) of sorted blocks ``[a, b)``."""
        a, b = np.asarray(a), np.asarray(b)
        out = np.empty((a.size, self.p_max))
        for s in range(0, a.size, _CHUNK):
            g = self.prefix[b[s : s + _CHUNK]] - self.prefix[a[s : s + _CHUNK]]
            out[s : s + _CHUNK] = _nested_rss(g)[:, 1:]
        return out

    def block_cost(self, a, b):
        """RSS and order of each block with the order chosen by the criterion."""
        rss = self.block_rss(a, b)
        size = (np.asarray(b) - np.asarray(a)).astype(float)
        p = np.arange(1, self.p_max + 1)
        # n log(rss/n) + pen(n) * (p + 1), computed per block size
        ic = size[:, None] * np.log(np.maximum(rss, np.finfo(float).tiny) / size[:, None])
        ic = ic + _penalty_vec(self.criterion, size)[:, None] * (p + 1)[None, :]
        best = np.argmin(ic, axis=1)
        rows = np.arange(rss.shape[0])
        return rss[rows, best], best + 1

    def cost_matrix(self):
        """Costs over node pairs; nodes are 0, admissible splits, and n."""
        nodes = np.concatenate([[0], self.splits, [self.n]])
        ia, ib = np.triu_indices(nodes.size, k=1)
        a, b = nodes[ia], nodes[ib]
        ok = (b - a) >= self.m
        cost = np.full((nodes.size, nodes.size), np.inf)
        order = np.zeros((nodes.size, nodes.size), dtype=int)
        if ok.any():
            rss, p = self.block_cost(a[ok], b[ok])
            cost[ia[ok], ib[ok]] = rss
            order[ia[ok], ib[ok]] = p
        return nodes, cost, order


def _penalty_vec(criterion: str, size: np.ndarray) -> np.ndarray:
    if criterion == "aic":
        return np.full_like(size, 2.0)
    if criterion == "bic":
        return np.log(size)
    if criterion == "hqic":
        return 2.0 * np.log(np.log(size))
    raise InvalidArgumentError(f"unknown criterion {criterion!r}")


def _best_partition(nodes, cost, order, k: int):
    """Exact minimum-RSS partition of the sorted sample into k blocks.

    Ties are broken by smaller total order, then smaller split index.
    Returns (rss, total order, split indices, per-block orders) or None.
    """
    n_nodes = nodes.size
    f = cost[0].copy()
    ptot = np.where(np.isfinite(f), order[0], 0)
    back = []
    for _ in range(1, k):
        total = f[:, None] + cost
        # the first node (0) is a start only; last node (n) is an end only
        total[0] = np.inf
        total[-1] = np.inf
        best = total.min(axis=0)
        cand = (total == best[None, :]) & np.isfinite(best)[None, :]
        pt = ptot[:, None] + order
        pt_masked = np.where(cand, pt, np.iinfo(np.int64).max)
        pbest = pt_masked.min(axis=0)
        cand &= pt == pbest[None, :]
        arg = np.argmax(cand, axis=0)
        back.append(arg)
        f = best
        ptot = np.where(np.isfinite(best), pbest, 0)
    end = n_nodes - 1
    if not np.isfinite(f[end]):
        return None
    cuts = []
    cur = end
    for arg in reversed(back):
        prev = int(arg[cur])
        cuts.append(prev)
        cur = prev
    cuts = cuts[::-1]
    bounds = [0] + cuts + [end]
    orders = [int(order[bounds[i], bounds[i + 1]]) for i in range(k)]
    return float(f[end]), int(ptot[end]), [int(nodes[c]) for c in cuts], orders


def _build_grids(x, p_max, d_max, start, criterion, n_jobs):
    delays = list(range(1, d_max + 1))

    def build(d):
        g = _DelayGrid(x, d, p_max, start, criterion)
        return g, g.cost_matrix()

    if n_jobs and n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            return list(pool.map(build, delays))
    return [build(d) for d in delays]


def _refit(x, grid: _DelayGrid, split_idx, orders, start, criterion) -> SetarModel:
    """Least-squares refit on data units for given sorted split indices."""
    thresholds = np.array([grid.threshold_at(i) for i in split_idx], dtype=float)
    p_max = grid.p_max
    y, X = lag_matrix(x, p_max, start)
    reg = np.searchsorted(thresholds, grid.z, side="left")
    resid = np.empty_like(y)
    regimes = []
    occupancy = []
    for j, p in enumerate(orders):
        rows = reg == j
        beta, r, _, se = ols(y[rows], X[rows, : p + 1])
        resid[rows] = r
        regimes.append(Regime(float(beta[0]), beta[1:], se, int(rows.sum())))
        occupancy.append(int(rows.sum()))
    rss = float(resid @ resid)
    scale = np.sqrt(rss / resid.size)
    std = resid / scale if scale > 0 else resid.copy()
    return SetarModel(
        k=len(orders),
        thresholds=thresholds,
        delay=grid.delay,
        regimes=tuple(regimes),
        residuals=std,
        raw_residuals=resid,
        rss=rss,
        regime_occupancy=tuple(occupancy),
        regime_index=reg,
        start=start,
        criterion=criterion,
    )


def _linear_model(x, p_max, criterion) -> SetarModel:
    p = select_ar_order(x, p_max, criterion)
    ar = fit_ar(x, p, criterion)
    rss = ar.rss
    scale = np.sqrt(rss / ar.residuals.size)
    return SetarModel(
        k=1,
        thresholds=np.empty(0),
        delay=1,
        regimes=(Regime(ar.intercept, ar.coefficients, ar.std_errors, ar.residuals.size),),
        residuals=ar.residuals / scale if scale > 0 else ar.residuals.copy(),
        raw_residuals=ar.residuals,
        rss=rss,
        regime_occupancy=(ar.residuals.size,),
        regime_index=np.zeros(ar.residuals.size, dtype=int),
        start=p,
        criterion=criterion,
    )


def _sorted_bounds(grid: _DelayGrid, model: SetarModel):
    """Sorted-sample block bounds of a fitted model on this grid's delay."""
    cuts = [int(np.searchsorted(grid.zs, r, side="right")) for r in model.thresholds]
    return [0] + cuts + [grid.n]


def _best_refinement(grids, parent: SetarModel):
    """Best split of one parent regime, children inheriting the parent's order.

    Such a model can never have a larger RSS than its parent, which makes the
    regime-count sequence of fits nested.
    """
    best = None
    for grid, _ in grids:
        if parent.k > 1 and grid.delay != parent.delay:
            continue
        bounds = _sorted_bounds(grid, parent)
        for j in range(parent.k):
            a, b = bounds[j], bounds[j + 1]
            p = parent.regimes[j].order
            cand = grid.splits[(grid.splits - a >= grid.m) & (b - grid.splits >= grid.m)]
            if cand.size == 0:
                continue
            left = grid.block_rss(np.full(cand.size, a), cand)[:, p - 1]
            right = grid.block_rss(cand, np.full(cand.size, b))[:, p - 1]
            tot = left + right
            i = int(np.argmin(tot))
            # rest of the parent's blocks contribute a constant; compare by gain
            pooled = grid.block_rss(np.array([a]), np.array([b]))[0, p - 1]
            gain = pooled - tot[i]
            key = (-gain, grid.delay)
            if best is None or key < best[0]:
                cuts = bounds[1:-1] + [int(cand[i])]
                orders = [r.order for r in parent.regimes]
                orders.insert(j + 1, p)
                best = (key, grid, sorted(cuts), orders)
    return best


def _grid_search(x, k, p_max, d_max, criterion, n_jobs):
    start = max(p_max, d_max)
    n_eff = x.size - start
    if n_eff < k * min_occupancy(max(n_eff, 1), p_max):
        raise EstimationError(
            f"effective sample of {n_eff} cannot hold {k} regimes of the minimum size"
        )
    grids = _build_grids(x, p_max, d_max, start, criterion, n_jobs)
    return grids, start


def fit_setar_grid(
    series,
    k: int = 3,
    p_max: int = 3,
    d_max: int = 3,
    criterion: str = "bic",
    n_jobs: Optional[int] = None,
) -> SetarModel:
    """Least-squares SETAR(k) fit by exhaustive threshold/delay search.

    Threshold candidates are observed values of ``y_{t-d}``; every regime
    must hold at least ``max(p_max + 2, ceil(0.1 n))`` observations, which
    confines thresholds to the central 80% of the delayed variable. For each
    candidate partition the order of each regime is chosen by ``criterion``
    on that regime's observations; the partition and delay with the smallest
    total RSS win. The fit for ``k`` also considers splitting one regime of
    the ``k - 1`` fit (orders inherited), so RSS never increases with ``k``.

    ``k = 1`` returns the linear AR with order chosen by ``criterion``.
    """
    _check_args(k, p_max, d_max)
    x = _values(series)
    if k == 1:
        return _linear_model(x, p_max, criterion)
    grids, start = _grid_search(x, k, p_max, d_max, criterion, n_jobs)
    model = _linear_model(x, p_max, criterion)
    for level in range(2, k + 1):
        model = _fit_level(x, grids, level, model, start, criterion)
    return model


def _fit_level(x, grids, k, parent, start, criterion) -> SetarModel:
    winner = None
    for grid, (nodes, cost, order) in grids:
        res = _best_partition(nodes, cost, order, k)
        if res is None:
            continue
        rss, ptot, cuts, orders = res
        key = (rss, grid.delay, ptot)
        if winner is None or key < winner[0]:
            winner = (key, grid, cuts, orders)
    if winner is None:
        raise EstimationError(f"no admissible {k}-regime threshold configuration")
    _, grid, cuts, orders = winner
    model = _refit(x, grid, cuts, orders, start, criterion)

    ref = _best_refinement(grids, parent)
    if ref is not None:
        _, rgrid, rcuts, rorders = ref
        alt = _refit(x, rgrid, rcuts, rorders, start, criterion)
        if alt.rss < model.rss:
            model = alt
    return model


def fit_setar_sequential(
    series,
    k_max: int = 3,
    p_max: int = 3,
    d_max: int = 3,
    criterion: str = "bic",
    n_jobs: Optional[int] = None,
) -> SetarModel:
    """Estimate thresholds one at a time (Gonzalo-Pitarakis style).

    A single threshold is accepted on a sample when it lowers the
    information criterion relative to the linear fit on that sample, the
    threshold itself counting as one parameter. Accepted thresholds split the
    sample and the search repeats on each piece until no piece accepts a new
    threshold or ``k_max`` regimes are reached. The delay is fixed by the
    first split.
    """
    _check_args(k_max, p_max, d_max)
    x = _values(series)
    if k_max == 1:
        return _linear_model(x, p_max, criterion)
    grids, start = _grid_search(x, 2, p_max, d_max, criterion, n_jobs)

    def best_split(grid, nodes, cost, order, ia, ib):
        # candidate split nodes strictly inside (ia, ib)
        mids = np.arange(ia + 1, ib)
        tot = cost[ia, mids] + cost[mids, ib]
        if mids.size == 0 or not np.isfinite(tot).any():
            return None
        size = nodes[ib] - nodes[ia]
        ic_lin = information_criterion(cost[ia, ib], size, order[ia, ib] + 1, criterion)
        n_par = order[ia, mids] + order[mids, ib] + 3
        ic_split = information_criterion(np.where(np.isfinite(tot), tot, 1.0), size, n_par, criterion)
        ic_split = np.where(np.isfinite(tot), ic_split, np.inf)
        i = int(np.argmin(ic_split))
        if not np.isfinite(cost[ia, ib]):
            return None
        return float(ic_lin - ic_split[i]), int(mids[i])

    # the first threshold fixes the delay
    first = None
    for grid, (nodes, cost, order) in grids:
        res = best_split(grid, nodes, cost, order, 0, nodes.size - 1)
        if res is None:
            continue
        gain, mid = res
        if first is None or gain > first[0]:
            first = (gain, grid, nodes, cost, order, mid)
    if first is None or first[0] <= 0:
        return _linear_model(x, p_max, criterion)

    _, grid, nodes, cost, order, mid = first
    cuts = [mid]
    while len(cuts) + 1 < k_max:
        bounds = [0] + sorted(cuts) + [nodes.size - 1]
        best = None
        for ia, ib in zip(bounds[:-1], bounds[1:]):
            res = best_split(grid, nodes, cost, order, ia, ib)
            if res is not None and res[0] > 0 and (best is None or res[0] > best[0]):
                best = res
        if best is None:
            break
        cuts.append(best[1])
    cuts = sorted(cuts)
    bounds = [0] + cuts + [nodes.size - 1]
    orders = [int(order[bounds[i], bounds[i + 1]]) for i in range(len(bounds) - 1)]
    return _refit(x, grid, [int(nodes[c]) for c in cuts], orders, start, criterion)


# --- threshold nonlinearity test -------------------------------------------------


class _FixedDesign:
    """Fixed regressors sorted by one delay's threshold variable, many responses."""

    def __init__(self, X: np.ndarray, z: np.ndarray, m: int):
        self.order = np.argsort(z, kind="stable")
        self.zs = z[self.order]
        self.X = X[self.order]
        n, q = X.shape
        self.n, self.q, self.m = n, q, m
        pxx = np.zeros((n + 1, q, q))
        np.cumsum(self.X[:, :, None] * self.X[:, None, :], axis=0, out=pxx[1:])
        self.pxx = pxx
        idx = np.arange(m, n - m + 1)
        idx = idx[(idx > 0) & (idx < n)]
        self.splits = idx[self.zs[idx - 1] < self.zs[idx]]

    def load(self, Y: np.ndarray) -> None:
        Ys = Y[self.order]
        n, B = Ys.shape
        self.pxy = np.zeros((n + 1, self.q, B))
        np.cumsum(self.X[:, :, None] * Ys[:, None, :], axis=0, out=self.pxy[1:])
        self.pyy = np.zeros((n + 1, B))
        np.cumsum(Ys * Ys, axis=0, out=self.pyy[1:])

    def rss(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """RSS of blocks ``[a_i, b_i)`` for every loaded response: (len(a), B)."""
        g = self.pxx[b] - self.pxx[a]
        v = self.pxy[b] - self.pxy[a]
        yy = self.pyy[b] - self.pyy[a]
        ginv = np.linalg.pinv(g, hermitian=True)
        fit = np.einsum("nqb,nqr,nrb->nb", v, ginv, v)
        return np.maximum(yy - fit, 0.0)

    def min_rss(self, k: int) -> np.ndarray:
        n, s = self.n, self.splits
        if k == 1:
            return self.rss(np.array([0]), np.array([n]))[0]
        if s.size == 0:
            return np.full(self.pyy.shape[1], np.inf)
        low = self.rss(np.zeros(s.size, dtype=int), s)
        high = self.rss(s, np.full(s.size, n))
        if k == 2:
            return (low + high).min(axis=0)
        if k == 3:
            best = np.full(self.pyy.shape[1], np.inf)
            for i, a in enumerate(s):
                b = s[s - a >= self.m]
                if b.size == 0:
                    continue
                mid = self.rss(np.full(b.size, a), b)
                j = np.searchsorted(s, b)
                tot = low[i][None, :] + mid + high[j]
                best = np.minimum(best, tot.min(axis=0))
            return best
        raise InvalidArgumentError("threshold test supports at most 3 regimes")


def _null_fit(X, designs, y, null_k):
    """Fitted values, residuals and delay of the common-order null model."""
    if null_k == 1:
        beta, *_ = np.linalg.lstsq(X, y, rcond=None)
        fitted = X @ beta
        return fitted, y - fitted, 1
    best = None
    for d, des in enumerate(designs, start=1):
        if des.splits.size == 0:
            continue
        des.load(y[:, None])
        low = des.rss(np.zeros(des.splits.size, dtype=int), des.splits)[:, 0]
        high = des.rss(des.splits, np.full(des.splits.size, des.n))[:, 0]
        i = int(np.argmin(low + high))
        if best is None or (low + high)[i] < best[0]:
            best = ((low + high)[i], d, des.splits[i])
    if best is None:
        raise EstimationError("no admissible threshold for the null model")
    _, d, split = best
    des = designs[d - 1]
    inv = np.argsort(des.order)
    in_low = inv < split
    fitted = np.empty_like(y)
    for rows in (in_low, ~in_low):
        beta, *_ = np.linalg.lstsq(X[rows], y[rows], rcond=None)
        fitted[rows] = X[rows] @ beta
    return fitted, y - fitted, d


def hansen_test(
    series,
    null_k: int = 1,
    alt_k: int = 2,
    bootstrap_reps: int = 500,
    seed: int = 0,
    p: Optional[int] = None,
    p_max: int = 12,
    d_max: int = 3,
    criterion: str = "bic",
) -> ThresholdTestResult:
    """Sup-F test of ``null_k`` against ``alt_k > null_k`` regimes (at most 3).

    Every regime uses the same AR order ``p`` (selected on the linear model
    when not given). The statistic is ``n (S_null - S_alt) / S_alt`` with both
    residual sums minimized over thresholds and delays. The p-value comes
    from a fixed-regressor residual bootstrap under the null: regressors and
    threshold variables stay at their observed values, responses are null
    fitted values plus resampled centered null residuals.
    """
    if null_k < 1 or alt_k <= null_k:
        raise InvalidArgumentError("need 1 <= null_k < alt_k")
    if alt_k > 3:
        raise InvalidArgumentError("threshold test supports at most 3 regimes")
    if bootstrap_reps < 100:
        raise InvalidArgumentError("bootstrap_reps must be at least 100")
    x = _values(series)
    if p is None:
        p = select_ar_order(x, min(p_max, max(1, x.size // 10)), criterion)
    start = max(p, d_max)
    y, X = lag_matrix(x, p, start)
    n = y.size
    m = min_occupancy(n, p)
    if n < alt_k * m:
        raise EstimationError(f"effective sample of {n} too small for {alt_k} regimes")
    designs = [_FixedDesign(X, x[start - d : x.size - d], m) for d in range(1, d_max + 1)]

    fitted, resid, null_delay = _null_fit(X, designs, y, null_k)
    resid = resid - resid.mean()
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, n, size=(n, bootstrap_reps))
    Y = np.column_stack([y, fitted[:, None] + resid[draws]])

    s_null = np.full(Y.shape[1], np.inf)
    s_alt = np.full(Y.shape[1], np.inf)
    for des in designs:
        des.load(Y)
        s_null = np.minimum(s_null, des.min_rss(null_k))
        s_alt = np.minimum(s_alt, des.min_rss(alt_k))
    with np.errstate(divide="ignore", invalid="ignore"):
        f = n * (s_null - s_alt) / s_alt
    f = np.where(np.isfinite(f), f, 0.0)
    stat, boot = float(f[0]), f[1:]
    p_value = (1.0 + np.count_nonzero(boot >= stat)) / (1.0 + bootstrap_reps)
    return ThresholdTestResult(
        statistic=stat,
        p_value=float(p_value),
        bootstrap_reps=bootstrap_reps,
        null_regimes=null_k,
        alt_regimes=alt_k,
        delay=null_delay,
        order=p,
    )
