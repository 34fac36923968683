"""Hot inner loops with a numba path and a pure-numpy path.

Each kernel exists twice: ``*_nb`` (compiled loop) and ``*_np`` (vectorized
numpy, or a plain loop where the recurrence is sequential).  The unsuffixed
names dispatch according to :data:`ech_kit._jit.JIT_ENABLED`.
"""

import math

import numpy as np

from ._jit import JIT_ENABLED, njit

# ---------------------------------------------------------------------------
# angle unwrapping


def unwrap_total_np(angles, period):
    """Sum of consecutive angle jumps, each reduced into [-period/2, period/2).

    Returns ``(total, largest_jump)``.
    """
    angles = np.asarray(angles, dtype=np.float64)
    if angles.shape[0] < 2:
        return 0.0, 0.0
    d = np.diff(angles)
    half = 0.5 * period
    d = np.mod(d + half, period) - half
    return float(d.sum()), float(np.abs(d).max())


@njit(cache=True)
def unwrap_total_nb(angles, period):
    total = 0.0
    biggest = 0.0
    half = 0.5 * period
    for i in range(angles.shape[0] - 1):
        d = angles[i + 1] - angles[i] + half
        d = d - period * math.floor(d / period) - half
        total += d
        if abs(d) > biggest:
            biggest = abs(d)
    return total, biggest


# ---------------------------------------------------------------------------
# signed crossings of projected sheets


def _sign(v):
    return np.where(v > 0, 1, np.where(v < 0, -1, 0))


def pair_crossings_np(X, Y, keys, wrap_keys, tol):
    """Signed crossing counts between every pair of sheets.

    ``X`` and ``Y`` have shape (sheets, vertices) on a shared time grid.
    Where the projected separation ``X[a] - X[b]`` is exactly zero at a
    vertex, its sign is replaced by ``sign(keys[a] - keys[b])`` (a symbolic
    shear); at the final vertex ``wrap_keys`` is used instead so a closed
    braid stays consistent across the seam.

    Returns ``(counts, collided)``; ``counts[a, b]`` for ``a < b`` holds the
    signed count with counterclockwise relative rotation positive.
    """
    n_sheets, n_vert = X.shape
    counts = np.zeros((n_sheets, n_sheets), dtype=np.int64)
    collided = False
    for a in range(n_sheets):
        for b in range(a + 1, n_sheets):
            dx = X[a] - X[b]
            dy = Y[a] - Y[b]
            if np.any(np.hypot(dx, dy) <= tol):
                collided = True
            tie = np.full(n_vert, np.sign(keys[a] - keys[b]))
            tie[-1] = np.sign(wrap_keys[a] - wrap_keys[b])
            s = np.where(dx > 0, 1.0, np.where(dx < 0, -1.0, tie))
            flat = (dx[:-1] == 0) & (dx[1:] == 0)
            if np.any(flat & (dy[:-1] * dy[1:] <= 0)):
                collided = True
            idx = np.nonzero(s[:-1] != s[1:])[0]
            if idx.size == 0:
                continue
            dx0 = dx[idx]
            dx1 = dx[idx + 1]
            both = (dx0 != 0) & (dx1 != 0)
            denom = np.where(both, dx0 - dx1, 1.0)
            frac = np.where(both, dx0 / denom, np.where(dx0 == 0, np.where(dx1 == 0, 1.0, 0.0), 1.0))
            dy_star = dy[idx] + frac * (dy[idx + 1] - dy[idx])
            if np.any(np.abs(dy_star) <= tol):
                collided = True
            direction = np.sign(s[idx + 1] - s[idx])
            counts[a, b] = int(np.sum(-direction * _sign(dy_star)))
    return counts, collided


@njit(cache=True)
def pair_crossings_nb(X, Y, keys, wrap_keys, tol):
    n_sheets, n_vert = X.shape
    counts = np.zeros((n_sheets, n_sheets), dtype=np.int64)
    collided = False
    for a in range(n_sheets):
        for b in range(a + 1, n_sheets):
            k = keys[a] - keys[b]
            tie = 1.0 if k > 0 else (-1.0 if k < 0 else 0.0)
            kw = wrap_keys[a] - wrap_keys[b]
            tie_w = 1.0 if kw > 0 else (-1.0 if kw < 0 else 0.0)
            total = 0
            dx_prev = X[a, 0] - X[b, 0]
            dy_prev = Y[a, 0] - Y[b, 0]
            if math.hypot(dx_prev, dy_prev) <= tol:
                collided = True
            s_prev = 1.0 if dx_prev > 0 else (-1.0 if dx_prev < 0 else tie)
            for i in range(1, n_vert):
                dx = X[a, i] - X[b, i]
                dy = Y[a, i] - Y[b, i]
                if math.hypot(dx, dy) <= tol:
                    collided = True
                t = tie_w if i == n_vert - 1 else tie
                s = 1.0 if dx > 0 else (-1.0 if dx < 0 else t)
                if dx_prev == 0 and dx == 0 and dy_prev * dy <= 0:
                    collided = True
                if s != s_prev:
                    if dx_prev != 0 and dx != 0:
                        frac = dx_prev / (dx_prev - dx)
                    elif dx_prev == 0 and dx != 0:
                        frac = 0.0
                    else:
                        frac = 1.0
                    dy_star = dy_prev + frac * (dy - dy_prev)
                    if abs(dy_star) <= tol:
                        collided = True
                    direction = 1 if s > s_prev else -1
                    sy = 1 if dy_star > 0 else (-1 if dy_star < 0 else 0)
                    total -= direction * sy
                dx_prev = dx
                dy_prev = dy
                s_prev = s
            counts[a, b] = total
    return counts, collided


# ---------------------------------------------------------------------------
# RK4 transport of the x-axis under v' = J0 S(t) v


def transport_angles_np(s11, s12, s22):
    """Angles of the transported x-axis at the integer steps.

    The coefficient arrays are sampled on the half-step grid (length
    ``2n + 1`` for ``n`` RK4 steps over [0, 1]).
    """
    s11 = np.asarray(s11, dtype=np.float64)
    s12 = np.asarray(s12, dtype=np.float64)
    s22 = np.asarray(s22, dtype=np.float64)
    n = (s11.shape[0] - 1) // 2
    h = 1.0 / n
    out = np.empty(n + 1)
    x, y = 1.0, 0.0
    out[0] = 0.0
    a11, a12, a22 = s11.tolist(), s12.tolist(), s22.tolist()
    for i in range(n):
        j = 2 * i
        p, q, r = a11[j], a12[j], a22[j]
        k1x, k1y = -(q * x + r * y), p * x + q * y
        p, q, r = a11[j + 1], a12[j + 1], a22[j + 1]
        x2, y2 = x + 0.5 * h * k1x, y + 0.5 * h * k1y
        k2x, k2y = -(q * x2 + r * y2), p * x2 + q * y2
        x3, y3 = x + 0.5 * h * k2x, y + 0.5 * h * k2y
        k3x, k3y = -(q * x3 + r * y3), p * x3 + q * y3
        p, q, r = a11[j + 2], a12[j + 2], a22[j + 2]
        x4, y4 = x + h * k3x, y + h * k3y
        k4x, k4y = -(q * x4 + r * y4), p * x4 + q * y4
        x += h * (k1x + 2 * k2x + 2 * k3x + k4x) / 6.0
        y += h * (k1y + 2 * k2y + 2 * k3y + k4y) / 6.0
        norm = math.hypot(x, y)
        x /= norm
        y /= norm
        out[i + 1] = math.atan2(y, x)
    return out


@njit(cache=True)
def transport_angles_nb(s11, s12, s22):
    n = (s11.shape[0] - 1) // 2
    h = 1.0 / n
    out = np.empty(n + 1)
    x = 1.0
    y = 0.0
    out[0] = 0.0
    for i in range(n):
        j = 2 * i
        p = s11[j]
        q = s12[j]
        r = s22[j]
        k1x = -(q * x + r * y)
        k1y = p * x + q * y
        p = s11[j + 1]
        q = s12[j + 1]
        r = s22[j + 1]
        x2 = x + 0.5 * h * k1x
        y2 = y + 0.5 * h * k1y
        k2x = -(q * x2 + r * y2)
        k2y = p * x2 + q * y2
        x3 = x + 0.5 * h * k2x
        y3 = y + 0.5 * h * k2y
        k3x = -(q * x3 + r * y3)
        k3y = p * x3 + q * y3
        p = s11[j + 2]
        q = s12[j + 2]
        r = s22[j + 2]
        x4 = x + h * k3x
        y4 = y + h * k3y
        k4x = -(q * x4 + r * y4)
        k4y = p * x4 + q * y4
        x += h * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0
        y += h * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0
        norm = math.hypot(x, y)
        x /= norm
        y /= norm
        out[i + 1] = math.atan2(y, x)
    return out


if JIT_ENABLED:
    def unwrap_total(angles, period):
        t, b = unwrap_total_nb(np.ascontiguousarray(angles, dtype=np.float64), float(period))
        return float(t), float(b)

    def pair_crossings(X, Y, keys, wrap_keys, tol):
        return pair_crossings_nb(
            np.ascontiguousarray(X, dtype=np.float64),
            np.ascontiguousarray(Y, dtype=np.float64),
            np.ascontiguousarray(keys, dtype=np.float64),
            np.ascontiguousarray(wrap_keys, dtype=np.float64),
            float(tol),
        )

    def transport_angles(s11, s12, s22):
        return transport_angles_nb(
            np.ascontiguousarray(s11, dtype=np.float64),
            np.ascontiguousarray(s12, dtype=np.float64),
            np.ascontiguousarray(s22, dtype=np.float64),
        )
else:
    unwrap_total = unwrap_total_np
    pair_crossings = pair_crossings_np
    transport_angles = transport_angles_np
