"""Batched adaptive Simpson quadrature.

All intervals of all integrals advance one bisection level per sweep, so
each sweep makes a single vectorised call to the integrand.  Integrands
here are piecewise smooth with kinks at zeros of a trigonometric
polynomial; bisection localises the kinks.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

MAX_DEPTH = 50
MIN_DEPTH = 2
MAX_INTERVALS = 1 << 20

Integrand = Callable[[np.ndarray, np.ndarray], np.ndarray]


def adaptive_simpson(
    func: Integrand,
    lo,
    hi,
    tol,
    panels: int = 1,
    max_depth: int = MAX_DEPTH,
    max_intervals: int = MAX_INTERVALS,
    min_depth: int = MIN_DEPTH,
) -> np.ndarray:
    """Integrate ``G`` functions ``x -> func(x, g)`` over ``[lo[g], hi[g]]``.

    Parameters
    ----------
    func : callable
        ``func(x, g)`` returns the integrand of group ``g[i]`` at ``x[i]``.
    lo, hi : array_like, shape (G,)
        Integration limits.
    tol : float or array_like
        Absolute tolerance per integral, spread over the initial panels in
        proportion to their width and halved on each bisection.
    panels : int
        Uniform initial panels per integral.
    max_depth, max_intervals : int
        Caps on bisection depth and on the number of intervals one integral
        may create; capped intervals are accepted with their Richardson
        estimate.
    min_depth : int
        Bisections every interval undergoes before it may be accepted,
        which guards against accidental agreement of the two estimates.
    """
    lo = np.atleast_1d(np.asarray(lo, dtype=np.float64))
    hi = np.atleast_1d(np.asarray(hi, dtype=np.float64))
    G = lo.size
    tol = np.broadcast_to(np.asarray(tol, dtype=np.float64), (G,))

    g = np.repeat(np.arange(G), panels)
    frac = np.tile(np.arange(panels), G)
    w = (hi - lo)[g] / panels
    a = lo[g] + frac * w
    b = a + w
    m = 0.5 * (a + b)
    t = tol[g] / panels
    fa, fm, fb = func(a, g), func(m, g), func(b, g)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    result = np.zeros(G)
    created = np.full(G, panels, dtype=np.int64)
    depth = 0
    while a.size:
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        vals = func(np.concatenate([lm, rm]), np.concatenate([g, g]))
        flm, frm = vals[: a.size], vals[a.size :]
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        done = (np.abs(delta) <= 15.0 * t) & (depth >= min_depth)
        if depth >= max_depth:
            done[:] = True
        else:
            done |= created[g] >= max_intervals
        np.add.at(result, g[done], (left + right + delta / 15.0)[done])
        keep = ~done
        if not keep.any():
            break
        created += np.bincount(g[keep], minlength=G)
        pa, pm, pb = a[keep], m[keep], b[keep]
        pfa, pfm, pfb = fa[keep], fm[keep], fb[keep]
        # children [a, m] and [m, b]
        a = np.concatenate([pa, pm])
        b = np.concatenate([pm, pb])
        m = 0.5 * (a + b)
        fa = np.concatenate([pfa, pfm])
        fb = np.concatenate([pfm, pfb])
        fm = np.concatenate([flm[keep], frm[keep]])
        whole = np.concatenate([left[keep], right[keep]])
        gk, tk = g[keep], t[keep] / 2.0
        g, t = np.concatenate([gk, gk]), np.concatenate([tk, tk])
        depth += 1
    return result


def integrate(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, tol: float,
              panels: int = 16) -> float:
    """Single-integral convenience wrapper around :func:`adaptive_simpson`."""
    return float(adaptive_simpson(lambda x, g: f(x), [a], [b], tol, panels=panels)[0])
