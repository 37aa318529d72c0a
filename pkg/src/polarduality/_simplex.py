"""Reflecting-simplex (Nelder-Mead) minimiser with an interior constraint."""
import numpy as np

REFLECT, EXPAND, CONTRACT, SHRINK = 1.0, 2.0, 0.5, 0.5


def _pull_back(x, centroid, feasible, max_halvings=60):
    # halve the step towards the centroid until the point is feasible
    for _ in range(max_halvings):
        if feasible(x):
            return x
        x = 0.5 * (x + centroid)
    return centroid


def minimize(f, x0, step, xtol=1e-6, ftol=1e-10, max_iter=4000, feasible=None):
    """Minimise ``f`` from ``x0``.

    Returns ``(x_best, f_best, converged)``.  Convergence requires the simplex
    diameter to fall under ``xtol`` and the spread of function values under
    ``ftol`` relative to the best value.
    """
    x0 = np.asarray(x0, dtype=float)
    n = x0.size
    feasible = feasible or (lambda z: True)

    simplex = [x0]
    for i in range(n):
        v = x0.copy()
        v[i] += step
        if not feasible(v):
            v[i] = x0[i] - step
        simplex.append(_pull_back(v, x0, feasible))
    simplex = np.array(simplex)
    values = np.array([f(v) for v in simplex])

    for _ in range(max_iter):
        order = np.argsort(values, kind="stable")
        simplex, values = simplex[order], values[order]
        diameter = np.abs(simplex[1:] - simplex[0]).max()
        spread = values[-1] - values[0]
        if diameter <= xtol and spread <= ftol * max(1.0, abs(values[0])):
            return simplex[0], values[0], True

        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        xr = _pull_back(centroid + REFLECT * (centroid - worst), centroid, feasible)
        fr = f(xr)
        if fr < values[0]:
            xe = _pull_back(centroid + EXPAND * (xr - centroid), centroid, feasible)
            fe = f(xe)
            simplex[-1], values[-1] = (xe, fe) if fe < fr else (xr, fr)
            continue
        if fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[-1]:
            xc = centroid + CONTRACT * (xr - centroid)
        else:
            xc = centroid + CONTRACT * (worst - centroid)
        fc = f(xc)
        if fc < min(fr, values[-1]):
            simplex[-1], values[-1] = xc, fc
            continue
        simplex[1:] = simplex[0] + SHRINK * (simplex[1:] - simplex[0])
        values[1:] = [f(v) for v in simplex[1:]]

    order = np.argsort(values, kind="stable")
    return simplex[order[0]], values[order[0]], False
