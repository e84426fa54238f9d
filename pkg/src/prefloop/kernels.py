"""Batch fitness kernels for the adaptation hot loop.

Evaluating a whole population against a fitness context is the inner loop of
every adaptation run, so it is compiled with numba when available. A pure
numpy implementation of the same arithmetic (same operation order, so results
agree to the last bit in practice) serves as the fallback and as the
benchmark baseline.

Backend selection: set PREFLOOP_BACKEND=numpy to force the fallback; any
other value (or unset) uses numba when it imports. ``backend_name()`` reports
the active choice. The kernels are pure, RNG-free functions: reproducibility
of the adaptation loop is unaffected by the backend.
"""

import math
import os

import numpy as np

from .fitness import EPS_OPT, KIND_PREF_ORDER, KIND_PREF_VALUE, KIND_SPECIFIC, FitnessContext


def _batch_fitness_loops(
    pop,
    route_u,
    complained,
    p_prev,
    prev_norm,
    kind,
    i0,
    i1,
    w_prev,
    b,
    w_opt,
    eps_opt,
    lam1,
    lam2,
    lam3,
    rho1,
    rho2,
):
    n_ind, n_attr = pop.shape
    n_routes = route_u.shape[0]
    out = np.empty(n_ind, dtype=np.float64)
    for i in range(n_ind):
        dot = 0.0
        ss = 0.0
        for j in range(n_attr):
            dot += pop[i, j] * p_prev[j]
            ss += pop[i, j] * pop[i, j]
        fit1 = dot / (math.sqrt(ss) * prev_norm)
        if fit1 > 1.0:
            fit1 = 1.0
        elif fit1 < 0.0:
            fit1 = 0.0

        best = 0
        best_u = -1.0
        for r in range(n_routes):
            u = 0.0
            for j in range(n_attr):
                u += pop[i, j] * route_u[r, j]
            if u > best_u:
                best_u = u
                best = r
        fit2 = rho1 if complained[best] else 0.0

        fit3 = 0.0
        if kind == 1:  # specific discontent: fuzzy ramp on the complained weight
            w = pop[i, i0]
            if b == 0.0:
                fit3 = 0.0 if w >= w_prev else rho2
            elif w <= w_prev:
                fit3 = rho2
            elif w <= w_prev + b:
                fit3 = rho2 * ((w_prev - w) / b + 1.0)
        elif kind == 2:  # preference order: i0 must not rank below i1
            if pop[i, i0] < pop[i, i1]:
                fit3 = rho2
        elif kind == 3:  # ideal weight for attribute i0
            if abs(pop[i, i0] - w_opt) > eps_opt:
                fit3 = rho2

        out[i] = lam1 * fit1 + lam2 * fit2 + lam3 * fit3
    return out


def _batch_fitness_numpy(
    pop,
    route_u,
    complained,
    p_prev,
    prev_norm,
    kind,
    i0,
    i1,
    w_prev,
    b,
    w_opt,
    eps_opt,
    lam1,
    lam2,
    lam3,
    rho1,
    rho2,
):
    # elementwise products summed over the short attribute axis keep the
    # accumulation order identical to the compiled loops
    dots = (pop * p_prev).sum(axis=1)
    norms = np.sqrt((pop * pop).sum(axis=1))
    fit1 = np.clip(dots / (norms * prev_norm), 0.0, 1.0)

    utilities = (pop[:, None, :] * route_u[None, :, :]).sum(axis=2)
    best = utilities.argmax(axis=1)  # first maximum, matching the loop tie-break
    fit2 = np.where(complained[best] != 0, rho1, 0.0)

    fit3 = np.zeros(len(pop))
    if kind == KIND_SPECIFIC:
        w = pop[:, i0]
        if b == 0.0:
            fit3 = np.where(w >= w_prev, 0.0, rho2)
        else:
            ramp = rho2 * ((w_prev - w) / b + 1.0)
            fit3 = np.where(w <= w_prev, rho2, np.where(w <= w_prev + b, ramp, 0.0))
    elif kind == KIND_PREF_ORDER:
        fit3 = np.where(pop[:, i0] < pop[:, i1], rho2, 0.0)
    elif kind == KIND_PREF_VALUE:
        fit3 = np.where(np.abs(pop[:, i0] - w_opt) > eps_opt, rho2, 0.0)

    return lam1 * fit1 + lam2 * fit2 + lam3 * fit3


def _pick_backend():
    if os.environ.get("PREFLOOP_BACKEND", "").lower() == "numpy":
        return "numpy", _batch_fitness_numpy
    try:
        from numba import njit
    except ImportError:
        return "numpy", _batch_fitness_numpy
    return "numba", njit(cache=True)(_batch_fitness_loops)


_BACKEND_NAME, _batch_fitness = _pick_backend()


def backend_name() -> str:
    return _BACKEND_NAME


def batch_fitness(pop: np.ndarray, ctx: FitnessContext) -> np.ndarray:
    """Fitness of every row of a (P, n) population matrix under ctx."""
    kind, i0, i1, w_prev, b, w_opt = ctx.complaint_encoding
    params = ctx.params
    return _batch_fitness(
        np.ascontiguousarray(pop),
        ctx.route_matrix,
        ctx.complained_mask,
        ctx.prev_array,
        ctx.prev_norm,
        kind,
        i0,
        i1,
        w_prev,
        b,
        w_opt,
        EPS_OPT,
        params.lambda1,
        params.lambda2,
        params.lambda3,
        params.rho1,
        params.rho2,
    )
