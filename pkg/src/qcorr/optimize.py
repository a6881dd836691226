"""Derivative-free minimization used by the basis and unitary searches."""

import numpy as np


def nelder_mead_batch(fun, starts, step, xatol=1e-7, fatol=1e-10, max_iter=400,
                      alpha=1.0, gamma=2.0, beta=0.5, delta=0.5):
    """Run one Nelder-Mead simplex per start point, all in lockstep.

    ``fun`` maps an ``(m, n)`` array of points to ``m`` values, so every
    iteration costs a few batched calls regardless of the number of starts.
    ``step`` is the edge length (scalar or per-coordinate) of the initial
    axis-aligned simplices.

    Returns ``(x, f, converged)`` with one row per start.
    """
    starts = np.atleast_2d(np.asarray(starts, dtype=float))
    k, n = starts.shape
    sim = np.repeat(starts[:, None, :], n + 1, axis=1)
    sim[:, 1:, :] += np.diag(np.broadcast_to(np.asarray(step, dtype=float), (n,)))
    fsim = fun(sim.reshape(-1, n)).reshape(k, n + 1)
    active = np.ones(k, dtype=bool)
    rows = np.arange(k)

    for _ in range(max_iter):
        order = np.argsort(fsim, axis=1, kind="stable")
        sim = np.take_along_axis(sim, order[:, :, None], axis=1)
        fsim = np.take_along_axis(fsim, order, axis=1)

        spread_x = np.max(np.abs(sim[:, 1:] - sim[:, :1]), axis=(1, 2))
        spread_f = np.max(np.abs(fsim[:, 1:] - fsim[:, :1]), axis=1)
        active &= ~((spread_x <= xatol) & (spread_f <= fatol))
        if not active.any():
            break
        idx = rows[active]

        worst = sim[idx, -1]
        centroid = sim[idx, :-1].mean(axis=1)
        xr = centroid + alpha * (centroid - worst)
        fr = fun(xr)
        f_best, f_second, f_worst = fsim[idx, 0], fsim[idx, -2], fsim[idx, -1]

        expand = fr < f_best
        accept_r = (fr >= f_best) & (fr < f_second)
        outside = (fr >= f_second) & (fr < f_worst)
        inside = fr >= f_worst

        # second probe: expansion, outside or inside contraction
        probe = np.where(expand[:, None], centroid + gamma * (centroid - worst),
                         np.where(outside[:, None], centroid + beta * (xr - centroid),
                                  centroid - beta * (centroid - worst)))
        need = ~accept_r
        fp = np.full(len(idx), np.inf)
        if need.any():
            fp[need] = fun(probe[need])

        new_x = np.where(accept_r[:, None], xr, probe)
        new_f = np.where(accept_r, fr, fp)
        take_r = expand & (fr <= fp)
        new_x[take_r], new_f[take_r] = xr[take_r], fr[take_r]

        shrink = (outside & (fp > fr)) | (inside & (fp >= f_worst))
        keep = ~shrink
        sim[idx[keep], -1] = new_x[keep]
        fsim[idx[keep], -1] = new_f[keep]

        if shrink.any():
            sidx = idx[shrink]
            sim[sidx, 1:] = sim[sidx, :1] + delta * (sim[sidx, 1:] - sim[sidx, :1])
            fsim[sidx, 1:] = fun(sim[sidx, 1:].reshape(-1, n)).reshape(len(sidx), n)

    best = np.argmin(fsim, axis=1)
    return sim[rows, best], fsim[rows, best], ~active
