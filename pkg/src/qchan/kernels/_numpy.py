"""Pure-numpy twins of the numba kernels.

Linear algebra goes through LAPACK (``numpy.linalg``); the optimizer loops
vectorize over the poll set or the grid instead of running scalar code.
"""
import numpy as np


def _order_desc(w, vecs):
    # numpy.linalg.eigh returns ascending order; flip to descending
    return w[..., ::-1].copy(), vecs[..., ::-1].copy()


def eigh_herm(a):
    w, vecs = np.linalg.eigh(np.asarray(a, dtype=np.complex128))
    w, vecs = _order_desc(w, vecs)
    return w, vecs, True


def eigh_herm_batch(a):
    w, vecs = np.linalg.eigh(np.asarray(a, dtype=np.complex128))
    w, vecs = _order_desc(w, vecs)
    return w, vecs, np.ones(w.shape[0], dtype=bool)


def svd3_batch(a):
    u, s, vt = np.linalg.svd(np.asarray(a, dtype=np.float64))
    return u, s, np.swapaxes(vt, -1, -2).copy()


def svd3(a):
    u, s, v = svd3_batch(np.asarray(a, dtype=np.float64)[None])
    return u[0], s[0], v[0]


def _h(r):
    r = np.minimum(np.abs(r), 1.0)
    a = 0.5 * (1.0 + r)
    b = 0.5 * (1.0 - r)
    with np.errstate(divide="ignore", invalid="ignore"):
        ea = np.where(a > 0.0, a * np.log(np.where(a > 0.0, a, 1.0)), 0.0)
        eb = np.where(b > 0.0, b * np.log(np.where(b > 0.0, b, 1.0)), 0.0)
    return -(ea + eb)


def chi_batch(t, T, X, k):
    """chi for every row of X, shape (m, 3k)."""
    X = np.atleast_2d(X)
    th = X[:, :k]
    ph = X[:, k:2 * k]
    y2 = X[:, 2 * k:3 * k] ** 2
    ysq = y2.sum(axis=1)
    safe = np.where(ysq == 0.0, 1.0, ysq)
    p = y2 / safe[:, None]
    s = np.sin(th)
    r = np.stack([s * np.cos(ph), s * np.sin(ph), np.cos(th)], axis=-1)
    o = t + r @ T.T
    mean = np.einsum("mj,mjc->mc", p, o)
    val = _h(np.linalg.norm(mean, axis=1)) - np.sum(p * _h(np.linalg.norm(o, axis=2)), axis=1)
    return np.where(ysq == 0.0, -1.0, val)


def chi(t, T, x, k):
    return float(chi_batch(t, T, np.asarray(x)[None, :], k)[0])


def compass_search(t, T, x0, k, step0, step_min, max_iter):
    x = np.array(x0, dtype=np.float64)
    n = x.shape[0]
    f = chi(t, T, x, k)
    # poll directions in the order +e_0, -e_0, +e_1, ...
    dirs = np.zeros((2 * n, n))
    dirs[0::2] = np.eye(n)
    dirs[1::2] = -np.eye(n)
    step = step0
    it = 0
    while step >= step_min and it < max_iter:
        it += 1
        vals = chi_batch(t, T, x + step * dirs, k)
        c = int(np.argmax(vals))
        if vals[c] > f:
            x = x + step * dirs[c]
            f = float(vals[c])
        else:
            step *= 0.5
    return x, f, it, step < step_min


def pair_scores(t, T, lattice, weights):
    m = lattice.shape[0]
    a, b = np.triu_indices(m, 1)
    rows = []
    for w in weights:
        X = np.column_stack([
            lattice[a, 0], lattice[b, 0], lattice[a, 1], lattice[b, 1],
            np.full(a.size, np.sqrt(w)), np.full(a.size, np.sqrt(1.0 - w)),
        ])
        rows.append(chi_batch(t, T, X, 2))
    return np.column_stack(rows)


def two_state_grid(t, T, n):
    th = 2.0 * np.pi * np.arange(n) / n
    p = np.arange(n) / (n - 1)
    r = np.stack([np.sin(th), np.zeros(n), np.cos(th)], axis=-1)
    o = t + r @ T.T
    ho = _h(np.linalg.norm(o, axis=1))
    # mean output over (i, j, l): p_l o_i + (1 - p_l) o_j
    mean = (p[None, None, :, None] * o[:, None, None, :]
            + (1.0 - p)[None, None, :, None] * o[None, :, None, :])
    val = (_h(np.linalg.norm(mean, axis=-1))
           - p[None, None, :] * ho[:, None, None]
           - (1.0 - p)[None, None, :] * ho[None, :, None])
    idx = np.unravel_index(int(np.argmax(val)), val.shape)
    return float(val[idx]), np.array([th[idx[0]], th[idx[1]], p[idx[2]]])
