"""numba-compiled hot loops.

Every function here has a twin of the same name and signature in
``_numpy.py``; the dispatcher in ``__init__`` picks one.  Status flags are
returned rather than raised because exceptions inside nopython code are
awkward to route.
"""
import math

import numpy as np
from numba import njit

MAX_SWEEPS = 50
OFF_REL = 1e-13


@njit(cache=True)
def _eigh4(a, w, vecs):
    n = a.shape[0]
    A = a.copy()
    V = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        V[i, i] = 1.0
    frob = 0.0
    for i in range(n):
        for j in range(n):
            frob += A[i, j].real ** 2 + A[i, j].imag ** 2
    frob = math.sqrt(frob)
    ok = frob == 0.0
    if not ok:
        for sweep in range(MAX_SWEEPS):
            off = 0.0
            for i in range(n):
                for j in range(n):
                    if i != j:
                        off += A[i, j].real ** 2 + A[i, j].imag ** 2
            if math.sqrt(off) <= OFF_REL * frob:
                ok = True
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    b = A[p, q]
                    mag = abs(b)
                    if mag == 0.0:
                        continue
                    ph = b / mag
                    tau = (A[q, q].real - A[p, p].real) / (2.0 * mag)
                    sgn = 1.0 if tau >= 0.0 else -1.0
                    t = sgn / (abs(tau) + math.sqrt(1.0 + tau * tau))
                    c = 1.0 / math.sqrt(1.0 + t * t)
                    s = t * c
                    phc = ph.conjugate()
                    # A <- A G with G = [[c, s], [-s conj(ph), c conj(ph)]] on (p, q)
                    for k in range(n):
                        akp = A[k, p]
                        akq = A[k, q]
                        A[k, p] = c * akp - s * phc * akq
                        A[k, q] = s * akp + c * phc * akq
                        vkp = V[k, p]
                        vkq = V[k, q]
                        V[k, p] = c * vkp - s * phc * vkq
                        V[k, q] = s * vkp + c * phc * vkq
                    # A <- G^dagger A
                    for k in range(n):
                        apk = A[p, k]
                        aqk = A[q, k]
                        A[p, k] = c * apk - s * ph * aqk
                        A[q, k] = s * apk + c * ph * aqk
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    A[p, p] = A[p, p].real
                    A[q, q] = A[q, q].real
    d = np.empty(n)
    for i in range(n):
        d[i] = A[i, i].real
    order = np.argsort(-d, kind="mergesort")
    for i in range(n):
        w[i] = d[order[i]]
        for k in range(n):
            vecs[k, i] = V[k, order[i]]
    return ok


@njit(cache=True)
def eigh_herm(a):
    """Eigen-decomposition of one Hermitian matrix, eigenvalues descending."""
    n = a.shape[0]
    w = np.empty(n)
    vecs = np.empty((n, n), dtype=np.complex128)
    ok = _eigh4(a, w, vecs)
    return w, vecs, ok


@njit(cache=True)
def eigh_herm_batch(a):
    m, n = a.shape[0], a.shape[1]
    w = np.empty((m, n))
    vecs = np.empty((m, n, n), dtype=np.complex128)
    ok = np.empty(m, dtype=np.bool_)
    for i in range(m):
        ok[i] = _eigh4(a[i], w[i], vecs[i])
    return w, vecs, ok


@njit(cache=True)
def _svd3(a, u, s, v):
    U = a.copy()
    V = np.eye(3)
    for sweep in range(60):
        rotated = False
        for i in range(2):
            for j in range(i + 1, 3):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for k in range(3):
                    alpha += U[k, i] * U[k, i]
                    beta += U[k, j] * U[k, j]
                    gamma += U[k, i] * U[k, j]
                if gamma == 0.0 or abs(gamma) <= 1e-15 * math.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                sgn = 1.0 if zeta >= 0.0 else -1.0
                t = sgn / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                sn = c * t
                for k in range(3):
                    ui = U[k, i]
                    uj = U[k, j]
                    U[k, i] = c * ui - sn * uj
                    U[k, j] = sn * ui + c * uj
                    vi = V[k, i]
                    vj = V[k, j]
                    V[k, i] = c * vi - sn * vj
                    V[k, j] = sn * vi + c * vj
        if not rotated:
            break
    norms = np.empty(3)
    for k in range(3):
        norms[k] = math.sqrt(U[0, k] ** 2 + U[1, k] ** 2 + U[2, k] ** 2)
    order = np.argsort(-norms, kind="mergesort")
    cutoff = 1e-14 * max(norms[order[0]], 1e-300)
    rank = 0
    for i in range(3):
        src = order[i]
        s[i] = norms[src]
        for k in range(3):
            v[k, i] = V[k, src]
        if norms[src] > cutoff:
            rank += 1
            for k in range(3):
                u[k, i] = U[k, src] / norms[src]
    # complete the left basis where the columns carry no information
    if rank == 0:
        for k in range(3):
            for i in range(3):
                u[k, i] = 1.0 if k == i else 0.0
    elif rank == 1:
        x0, x1, x2 = u[0, 0], u[1, 0], u[2, 0]
        # pick the coordinate axis least aligned with the first column
        if abs(x0) <= abs(x1) and abs(x0) <= abs(x2):
            e0, e1, e2 = 1.0, 0.0, 0.0
        elif abs(x1) <= abs(x2):
            e0, e1, e2 = 0.0, 1.0, 0.0
        else:
            e0, e1, e2 = 0.0, 0.0, 1.0
        y0, y1, y2 = x1 * e2 - x2 * e1, x2 * e0 - x0 * e2, x0 * e1 - x1 * e0
        ny = math.sqrt(y0 * y0 + y1 * y1 + y2 * y2)
        u[0, 1], u[1, 1], u[2, 1] = y0 / ny, y1 / ny, y2 / ny
    if rank <= 2 and rank >= 1:
        u[0, 2] = u[1, 0] * u[2, 1] - u[2, 0] * u[1, 1]
        u[1, 2] = u[2, 0] * u[0, 1] - u[0, 0] * u[2, 1]
        u[2, 2] = u[0, 0] * u[1, 1] - u[1, 0] * u[0, 1]


@njit(cache=True)
def svd3(a):
    """One-sided Jacobi SVD: a = u @ diag(s) @ v.T, s >= 0 descending."""
    u = np.empty((3, 3))
    s = np.empty(3)
    v = np.empty((3, 3))
    _svd3(a, u, s, v)
    return u, s, v


@njit(cache=True)
def svd3_batch(a):
    m = a.shape[0]
    u = np.empty((m, 3, 3))
    s = np.empty((m, 3))
    v = np.empty((m, 3, 3))
    for i in range(m):
        _svd3(a[i], u[i], s[i], v[i])
    return u, s, v


@njit(cache=True)
def _h(r):
    if r >= 1.0:
        return 0.0
    a = 0.5 * (1.0 + r)
    b = 0.5 * (1.0 - r)
    out = 0.0
    if a > 0.0:
        out -= a * math.log(a)
    if b > 0.0:
        out -= b * math.log(b)
    return out


@njit(cache=True)
def chi(t, T, x, k):
    """Holevo quantity of a k-state pure ensemble encoded as
    x = [theta_1..theta_k, phi_1..phi_k, y_1..y_k], p_j = y_j^2 / sum y^2."""
    ysq = 0.0
    for j in range(k):
        ysq += x[2 * k + j] ** 2
    if ysq == 0.0:
        return -1.0
    m0 = 0.0
    m1 = 0.0
    m2 = 0.0
    avg = 0.0
    for j in range(k):
        th = x[j]
        ph = x[k + j]
        p = x[2 * k + j] ** 2 / ysq
        r0 = math.sin(th) * math.cos(ph)
        r1 = math.sin(th) * math.sin(ph)
        r2 = math.cos(th)
        o0 = t[0] + T[0, 0] * r0 + T[0, 1] * r1 + T[0, 2] * r2
        o1 = t[1] + T[1, 0] * r0 + T[1, 1] * r1 + T[1, 2] * r2
        o2 = t[2] + T[2, 0] * r0 + T[2, 1] * r1 + T[2, 2] * r2
        m0 += p * o0
        m1 += p * o1
        m2 += p * o2
        avg += p * _h(math.sqrt(o0 * o0 + o1 * o1 + o2 * o2))
    return _h(math.sqrt(m0 * m0 + m1 * m1 + m2 * m2)) - avg


@njit(cache=True)
def compass_search(t, T, x0, k, step0, step_min, max_iter):
    """Best-of-poll compass search maximizing chi.

    Each iteration polls x +/- step*e_i in the order (+e_0, -e_0, +e_1, ...),
    moves to the best strict improvement, otherwise halves the step.
    Returns (x, value, iterations, converged).
    """
    n = x0.shape[0]
    x = x0.copy()
    f = chi(t, T, x, k)
    step = step0
    it = 0
    while step >= step_min and it < max_iter:
        it += 1
        best = f
        best_i = -1
        for c in range(2 * n):
            i = c // 2
            delta = step if c % 2 == 0 else -step
            old = x[i]
            x[i] = old + delta
            val = chi(t, T, x, k)
            x[i] = old
            if val > best:
                best = val
                best_i = c
        if best_i >= 0:
            x[best_i // 2] += step if best_i % 2 == 0 else -step
            f = best
        else:
            step *= 0.5
    return x, f, it, step < step_min


@njit(cache=True)
def pair_scores(t, T, lattice, weights):
    """chi of every two-point ensemble drawn from lattice (m, 3) angles
    (theta, phi) at each weight p for the first state."""
    m = lattice.shape[0]
    nw = weights.shape[0]
    out = np.empty((m * (m - 1) // 2, nw))
    x = np.empty(6)
    row = 0
    for a in range(m):
        for b in range(a + 1, m):
            for w in range(nw):
                x[0] = lattice[a, 0]
                x[1] = lattice[b, 0]
                x[2] = lattice[a, 1]
                x[3] = lattice[b, 1]
                x[4] = math.sqrt(weights[w])
                x[5] = math.sqrt(1.0 - weights[w])
                out[row, w] = chi(t, T, x, 2)
            row += 1
    return out


@njit(cache=True)
def two_state_grid(t, T, n):
    """Best chi over states (sin th, 0, cos th) on an n x n x n grid of
    (th_1, th_2, p), th in [0, 2 pi), p in [0, 1]."""
    best = -1.0
    arg = np.zeros(3)
    x = np.empty(6)
    x[2] = 0.0
    x[3] = 0.0
    for i in range(n):
        th1 = 2.0 * math.pi * i / n
        for j in range(n):
            th2 = 2.0 * math.pi * j / n
            for l in range(n):
                p = l / (n - 1)
                x[0] = th1
                x[1] = th2
                x[4] = math.sqrt(p)
                x[5] = math.sqrt(1.0 - p)
                val = chi(t, T, x, 2)
                if val > best:
                    best = val
                    arg[0] = th1
                    arg[1] = th2
                    arg[2] = p
    return best, arg
