"""Images of the Bloch sphere and the shapes of the extreme-point set.

In canonical form the image of the sphere is the ellipsoid
``sum_k ((x_k - t_k) / lam_k)^2 = 1``.  On the closure of the extreme points
(trig form, ``0 <= u <= v``) the preimages ``(+/-cos th, 0, sin th)`` with
``sin th = tan u / tan v`` land on ``(+/-cos om, 0, sin om)`` with
``sin om = sin u / sin v``, both on the unit sphere.
"""
from dataclasses import dataclass, field

import numpy as np

from ._config import CLASSIFY_TOL
from .cpcheck import r_phi
from .errors import EmptySection, NoSolution, NotExtremeForm, NotOnClosure, OutOfRange
from .extreme import TrigParams, trig_from_canonical

CONTACT_TOL = 1e-7


@dataclass(frozen=True)
class Ellipsoid:
    center: np.ndarray
    semi_axes: np.ndarray
    axes_frame: np.ndarray = field(default_factory=lambda: np.eye(3))

    def residual(self, x):
        """Deviation of points (rows of x) from the surface.

        Nonzero axes enter the quadric; a zero axis contributes the raw
        offset along it, since the ellipsoid is flat there.
        """
        y = (np.atleast_2d(x) - self.center) @ self.axes_frame
        live = self.semi_axes > 1e-12
        flat = np.abs(y[:, ~live]).sum(axis=1)
        q = np.sum((y[:, live] / self.semi_axes[live]) ** 2, axis=1)
        if np.all(live):
            return np.abs(q - 1)
        # a flattened ellipsoid is filled in by the image of the sphere
        return np.maximum(q - 1, 0.0) + flat

    @property
    def degenerate(self):
        return bool(np.any(self.semi_axes <= 1e-12))


@dataclass(frozen=True)
class SurfaceContact:
    points: np.ndarray
    preimages: np.ndarray
    merged: bool
    whole_sphere: bool = False
    detail: str = ""


def fibonacci_sphere(n):
    i = np.arange(n) + 0.5
    z = 1 - 2 * i / n
    r = np.sqrt(np.maximum(0.0, 1 - z * z))
    phi = np.pi * (3 - np.sqrt(5)) * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _image(cf, w):
    return cf.tvec + np.atleast_2d(w) * cf.lam


def image_ellipsoid(cf):
    return Ellipsoid(np.array(cf.tvec), np.abs(np.array(cf.lam)))


def _trig_form(cf, tol=CLASSIFY_TOL):
    try:
        return trig_from_canonical(cf, tol)
    except NotExtremeForm:
        return None


def _ascend(t, T, w, iters=5000):
    # w <- grad / |grad| never decreases the convex objective |t + T w|^2
    best = np.linalg.norm(t + T @ w)
    for _ in range(iters):
        g = T.T @ (t + T @ w)
        ng = np.linalg.norm(g)
        if ng == 0:
            break
        w_new = g / ng
        val = np.linalg.norm(t + T @ w_new)
        if val <= best + 1e-16:
            if val >= best:
                w = w_new
            break
        w, best = w_new, val
    return best, w


def max_image_point(cf, n_grid=2000):
    """(max |t + T w|, maximizer w) over unit w, by multi-start ascent."""
    t = np.array(cf.tvec)
    T = np.diag(cf.lam)
    grid = fibonacci_sphere(n_grid)
    vals = np.linalg.norm(t + grid @ T.T, axis=1)
    starts = list(grid[np.argsort(vals)[-8:]])
    starts += [np.eye(3)[k] * s for k in range(3) for s in (1, -1)]
    if np.linalg.norm(t) > 0:
        starts.append(t / np.linalg.norm(t))
    best, arg = -1.0, None
    for w0 in starts:
        val, w = _ascend(t, T, np.asarray(w0, dtype=float))
        if val > best:
            best, arg = val, w
    return max(best, float(vals.max())), arg


def max_image_norm(cf):
    """Largest Bloch radius in the image of the sphere.

    Trig-form maps reach the sphere, so 1 is returned exactly for them.
    """
    if _trig_form(cf) is not None:
        return 1.0
    return max_image_point(cf)[0]


def _dedupe(points, pre, tol=1e-6):
    keep_p, keep_w = [], []
    for p, w in zip(points, pre):
        if all(np.linalg.norm(p - q) > tol for q in keep_p):
            keep_p.append(p)
            keep_w.append(w)
    return np.array(keep_p), np.array(keep_w)


def sphere_contacts(cf, tol=CLASSIFY_TOL):
    lam = np.array(cf.lam)
    t = np.array(cf.tvec)
    a = np.abs(lam)
    rep = r_phi(cf)
    if rep.is_unitary:
        if np.all(np.abs(a - 1) <= tol):
            return SurfaceContact(np.zeros((0, 3)), np.zeros((0, 3)), False, True,
                                  "unitary channel: the image is the whole sphere")
        if np.linalg.norm(t) < tol and abs(a[0] - 1) <= tol:
            pre = np.array([[1.0, 0, 0], [-1.0, 0, 0]])
            return SurfaceContact(_image(cf, pre), pre, False, False,
                                  "quasi-extreme: the lambda1 axis is fixed")
        if a[1] <= tol and a[2] <= tol:
            if a[0] <= tol:
                pre = np.array([[0.0, 0, 1]])
                return SurfaceContact(_image(cf, pre), pre, True, False,
                                      "every input maps to the same pure state")
            pre = np.array([[1.0, 0, 0], [-1.0, 0, 0]])
            pts = _image(cf, pre)
            return SurfaceContact(pts, pre, False, False, "segment endpoints")
        p = _trig_form(cf)
        if p is not None and abs(a[0] - a[1]) <= tol:
            cand = np.array([[0.0, 0, 1], [0.0, 0, -1]])
            r = np.linalg.norm(_image(cf, cand), axis=1)
            pre = cand[[int(np.argmin(np.abs(r - 1)))]]
            return SurfaceContact(_image(cf, pre), pre, True, False, "merged contact at a pole")
        if p is not None:
            return _ia_contacts(cf, p)
    val, w = max_image_point(cf)
    if val < 1 - CONTACT_TOL:
        raise NotOnClosure(f"image stays inside the ball (max radius {val:.12g})")
    # collect every numerically distinct maximizer from the probe set
    grid = fibonacci_sphere(4000)
    vals = np.linalg.norm(_image(cf, grid), axis=1)
    pre = [w]
    for w0 in grid[np.argsort(vals)[-16:]]:
        v2, w2 = _ascend(t, np.diag(lam), w0)
        if v2 >= 1 - CONTACT_TOL:
            pre.append(w2)
    pts, pre = _dedupe(_image(cf, np.array(pre)), np.array(pre))
    return SurfaceContact(pts, pre, len(pts) == 1, False, "numerical contact search")


def _ia_contacts(cf, p):
    su, sv = np.sin(p.u), np.sin(p.v)
    sin_th = np.tan(p.u) / np.tan(p.v)
    sin_om = su / sv
    c_th = np.sqrt(max(0.0, 1 - sin_th ** 2))
    pre = np.array([[c_th, 0, sin_th], [-c_th, 0, sin_th]])
    pts = _image(cf, pre)
    r = np.linalg.norm(pts, axis=1)
    if np.abs(r - 1).max() > 1e-9:
        raise NotOnClosure(f"closed-form contacts off the sphere by {np.abs(r - 1).max():.3g}")
    c_om = np.sqrt(max(0.0, 1 - sin_om ** 2))
    detail = f"sin(theta) = {sin_th:.12g}, sin(omega) = {sin_om:.12g}"
    assert np.abs(np.abs(pts[:, 0]) - c_om).max() < 1e-9 and np.abs(pts[:, 2] - sin_om).max() < 1e-9
    return SurfaceContact(pts, pre, False, False, detail)


def solve_two_point_map(theta, omega):
    """Trig parameters of the extreme map sending (+/-cos om, 0, sin om) to (+/-cos th, 0, sin th).

    A map of this family pulls points towards the axis, so the image angle
    theta must exceed the preimage angle omega:
    ``cos u = cos th / cos om`` and ``sin v = sin u / sin th``.
    """
    if not (0 < omega < np.pi / 2 and 0 < theta < np.pi / 2):
        raise OutOfRange("angles must lie in (0, pi/2)")
    if abs(np.sin(theta)) <= abs(np.sin(omega)):
        raise NoSolution("needs |sin theta| > |sin omega|")
    u = float(np.arccos(np.cos(theta) / np.cos(omega)))
    v = float(np.arcsin(np.sin(u) / np.sin(theta)))
    return TrigParams(u, v)


def _check_t3(t3, n):
    if not 0 <= t3 < 1:
        raise OutOfRange(f"t3 must lie in [0, 1), got {t3}")
    if n < 2:
        raise OutOfRange(f"need at least 2 samples, got {n}")


def alpha_points(t3):
    a = np.sqrt(1 - t3)
    return np.array([[a, a, a * a], [-a, a, -a * a], [-a, -a, a * a], [a, -a, -a * a]])


def extreme_curve(t3, n):
    """The closed curve of extreme (lam1, lam2, lam3) at fixed t3, in four pieces.

    Each piece has n samples; consecutive pieces meet at the points
    ``(+/-a, +/-a, +/-a^2)`` with ``a^2 = 1 - t3``, which are the grid endpoints.
    """
    _check_t3(t3, n)
    ua = np.arcsin(np.sqrt(t3))
    s = np.linspace(ua, np.pi - ua, n)
    # at t3 = 0 the ratio is 0 everywhere, including the ends where sin s = 0
    ratio = np.divide(t3, np.sin(s), out=np.zeros_like(s), where=t3 != 0)
    other = np.arcsin(np.clip(ratio, -1.0, 1.0))
    cu, cv = np.cos(s), np.cos(other)
    piece_a = np.column_stack([cu, cv, cu * cv])
    piece_b = np.column_stack([cu, -cv, -cu * cv])
    # the curves with the roles of u and v swapped
    c1, c2 = np.cos(other), np.cos(s)
    piece_c = np.column_stack([c1, c2, c1 * c2])
    c1 = np.cos(np.pi - other)
    piece_d = np.column_stack([c1, c2, c1 * c2])
    return [piece_a, piece_b, piece_c, piece_d]


def extreme_curve_two_branch(t3, n):
    """The two-branch parametric form ``[cos u, +/-cos v, +/-cos u cos v]``,
    ``sin v = t3 / sin u``, ``u in [asin t3, pi - asin t3]``."""
    _check_t3(t3, n)
    u = np.linspace(np.arcsin(t3), np.pi - np.arcsin(t3), n)
    ratio = np.divide(t3, np.sin(u), out=np.zeros_like(u), where=t3 != 0)
    cv = np.cos(np.arcsin(np.clip(ratio, -1.0, 1.0)))
    cu = np.cos(u)
    return [np.column_stack([cu, cv, cu * cv]), np.column_stack([cu, -cv, -cu * cv])]


def rounded_segments(t3, n):
    """The two straight edges of the rounded tetrahedron (same sign of lam3)."""
    _check_t3(t3, n)
    p = alpha_points(t3)
    s = np.linspace(0.0, 1.0, n)[:, None]
    return [(1 - s) * p[0] + s * p[2], (1 - s) * p[1] + s * p[3]]


def tetrahedron_edges(n):
    v = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)
    s = np.linspace(0.0, 1.0, n)[:, None]
    return [(1 - s) * v[i] + s * v[j] for i in range(4) for j in range(i + 1, 4)]


@dataclass(frozen=True)
class CrossSection:
    half_plus: float   # bound on |lam1 + lam2|
    half_minus: float  # bound on |lam1 - lam2|

    def corners(self):
        """Rectangle corners in (lam1, lam2) coordinates."""
        p, m = self.half_plus, self.half_minus
        return np.array([[(p + m) / 2, (p - m) / 2], [(p - m) / 2, (p + m) / 2],
                         [-(p + m) / 2, -(p - m) / 2], [(m - p) / 2, -(p + m) / 2]])

    def contains(self, l1, l2, tol=0.0):
        return abs(l1 + l2) <= self.half_plus + tol and abs(l1 - l2) <= self.half_minus + tol


def cross_section(t3, lambda3):
    rp = (1 + lambda3) ** 2 - t3 ** 2
    rm = (1 - lambda3) ** 2 - t3 ** 2
    if rp < -1e-15 or rm < -1e-15:
        raise EmptySection(f"(1 +/- lambda3)^2 < t3^2 at t3 = {t3}, lambda3 = {lambda3}")
    return CrossSection(float(np.sqrt(max(rp, 0.0))), float(np.sqrt(max(rm, 0.0))))


def figure1_data(cf, n=361):
    """x-z cross section: unit circle, image ellipse and the contact markers."""
    phi = np.linspace(0, 2 * np.pi, n)
    circle = np.column_stack([np.cos(phi), np.sin(phi)])
    ellipse = np.column_stack([cf.tvec[0] + cf.lam[0] * np.cos(phi),
                               cf.tvec[2] + cf.lam[2] * np.sin(phi)])
    try:
        c = sphere_contacts(cf)
        marks = c.points[:, [0, 2]] if len(c.points) else np.zeros((0, 2))
    except NotOnClosure:
        marks = np.zeros((0, 2))
    return {"circle": circle, "ellipse": ellipse, "contacts": marks}
