"""Simultaneous polynomial root finding (Aberth-Ehrlich) with multiple-root refinement.

Coefficient arrays follow the numpy convention: highest degree first.
"""

import numpy as np

from .errors import RootFindingDivergence

EPS = np.finfo(float).eps


def trim(coeffs, rtol=0.0):
    """Drop leading coefficients whose magnitude is at most ``rtol * max|c|``."""
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        return c[-1:]
    k = 0
    while k < c.size - 1 and abs(c[k]) <= rtol * scale:
        k += 1
    return c[k:]


def horner(c, z):
    """Evaluate the polynomial ``c`` at ``z`` (scalar or array)."""
    out = c[0] * np.ones_like(z)
    for ck in c[1:]:
        out = out * z + ck
    return out


def taylor_shift(c, s):
    """Coefficients of p(x + s) by repeated synthetic division."""
    q = [complex(x) for x in c]
    n = len(q) - 1
    for k in range(n):
        for j in range(1, n + 1 - k):
            q[j] += s * q[j - 1]
    return np.array(q)


def _initial_guesses(c):
    n = c.size - 1
    center = -c[1] / (n * c[0])
    # scale of the roots about their centroid
    shifted = taylor_shift(c, center)
    ratios = [abs(shifted[k] / shifted[0]) ** (1.0 / k) for k in range(1, n + 1)]
    radius = max(ratios)
    angles = 2.0 * np.pi * np.arange(n) / n + 0.4
    return center + radius * np.exp(1j * angles), radius


def aberth(coeffs, tol=1e-13, max_iter=200, init=None):
    """All roots of the polynomial with coefficients ``coeffs``.

    A root is frozen once its Aberth correction drops below ``tol`` (relative to
    max(1, |z|)) or its residual reaches the rounding floor of Horner evaluation.
    Raises RootFindingDivergence if some root is still moving after ``max_iter``
    sweeps. ``init`` overrides the default starting circle about the root centroid.
    """
    c = trim(coeffs)
    n = c.size - 1
    if n < 1:
        return np.empty(0, dtype=complex)
    if c[0] == 0:
        raise RootFindingDivergence("zero polynomial")
    if n == 1:
        return np.array([-c[1] / c[0]])

    z, radius = _initial_guesses(c)
    if radius == 0.0:
        return np.full(n, -c[1] / (n * c[0]))
    if init is not None:
        z = np.array(init, dtype=complex)

    if n <= 16:
        return np.array(_aberth_scalar(list(c), list(z), tol, max_iter))

    dc = np.polyder(c)
    absc = np.abs(c)
    active = np.ones(n, dtype=bool)
    for _ in range(max_iter):
        p = horner(c, z)
        dp = horner(dc, z)
        floor = 4.0 * n * EPS * horner(absc, np.abs(z))
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            repulsion = np.sum(1.0 / diff, axis=1)
            step = newton / (1.0 - newton * repulsion)
        bad = ~np.isfinite(step)
        step[bad] = np.where(np.isfinite(newton[bad]), newton[bad], 0.0)
        done = (np.abs(p) <= floor) | (np.abs(step) <= tol * np.maximum(1.0, np.abs(z)))
        z = np.where(active & ~(np.abs(p) <= floor), z - step, z)
        active &= ~done
        if not active.any():
            return z
    raise RootFindingDivergence(
        f"Aberth iteration did not converge for {int(active.sum())} of {n} roots "
        f"after {max_iter} sweeps"
    )


def _aberth_scalar(c, z, tol, max_iter):
    """Same iteration as :func:`aberth` on Python complex scalars; faster for small degree."""
    n = len(z)
    dc = [c[k] * (n - k) for k in range(n)]
    absc = [abs(x) for x in c]
    fl = 4.0 * n * EPS
    active = [True] * n
    for _ in range(max_iter):
        moved = False
        steps = [0j] * n
        for i in range(n):
            if not active[i]:
                continue
            zi = z[i]
            p, dp, bound = c[0], dc[0], absc[0]
            r = abs(zi)
            for k in range(1, n + 1):
                p = p * zi + c[k]
                bound = bound * r + absc[k]
                if k < n:
                    dp = dp * zi + dc[k]
            if abs(p) <= fl * bound:
                active[i] = False
                continue
            rep = 0j
            for j in range(n):
                if j != i:
                    d = zi - z[j]
                    if d != 0:
                        rep += 1.0 / d
            if dp == 0:
                step = 0j
            else:
                newton = p / dp
                den = 1.0 - newton * rep
                step = newton / den if den != 0 else newton
            steps[i] = step
            if abs(step) <= tol * max(1.0, r):
                active[i] = False
            moved = True
        for i in range(n):
            z[i] -= steps[i]
        if not moved or not any(active):
            return z
    raise RootFindingDivergence(
        f"Aberth iteration did not converge for {sum(active)} of {n} roots "
        f"after {max_iter} sweeps"
    )


def _clusters(points, radius):
    """Union-find grouping of points closer than ``radius``; returns index lists."""
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(points[i] - points[j]) <= radius * max(1.0, abs(points[i])):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def cluster(points, radius):
    """Group complex points by single linkage at distance ``radius``."""
    return _clusters(list(points), radius)


CLUSTER_RADII = (1e-6, 1e-4, 1e-3, 1e-2, 3e-2, 1e-1, 2e-1)


def _collapse(derivs, points, radius, rtol):
    m = len(points)
    target, slope = derivs[m - 1], derivs[m]
    start = sum(points) / m
    x = start
    for _ in range(30):
        d = horner(slope, x)
        if d == 0:
            break
        dx = horner(target, x) / d
        x -= dx
        if abs(dx) <= 4 * EPS * max(1.0, abs(x)):
            break
    if not abs(x - start) <= radius * max(1.0, abs(x)):
        return None
    for q in derivs[: m - 1]:
        if not abs(horner(q, x)) <= rtol * horner(np.abs(q), abs(x)):
            return None
    return x


def refine_multiple(coeffs, roots, radii=CLUSTER_RADII, rtol=1e-9):
    """Replace clusters of approximate roots by a single multiple root.

    A cluster of m approximations of an m-fold root is collapsed to its centroid
    and polished by Newton on the (m-1)-th derivative, where the root is simple.
    The collapse is kept only if the polynomial and its first m-2 derivatives
    vanish there to relative accuracy ``rtol``. Radii are tried in ascending
    order so tight clusters settle before wider merges are attempted.
    """
    c = trim(coeffs)
    roots = [complex(r) for r in roots]
    derivs = [c]
    for _ in range(len(roots)):
        derivs.append(np.polyder(derivs[-1]) if derivs[-1].size > 1 else np.zeros(1, dtype=complex))
    for radius in radii:
        for group in _clusters(roots, radius):
            if len(group) < 2 or all(roots[i] == roots[group[0]] for i in group):
                continue
            x = _collapse(derivs, [roots[i] for i in group], radius, rtol)
            if x is not None:
                for i in group:
                    roots[i] = x
    return np.array(roots)


def polyroots(coeffs, *, multiple=False, tol=1e-13, max_iter=200, init=None):
    """Roots of a polynomial; with ``multiple=True`` clustered roots are collapsed."""
    roots = aberth(coeffs, tol=tol, max_iter=max_iter, init=init)
    if multiple and roots.size > 1:
        roots = refine_multiple(coeffs, roots)
    return roots


def poly_from_factors(factors):
    """Coefficients of the product of linear factors given as (lead, const) pairs."""
    out = np.array([1.0 + 0j])
    for lead, const in factors:
        out = np.convolve(out, np.array([lead, const], dtype=complex))
    return out


