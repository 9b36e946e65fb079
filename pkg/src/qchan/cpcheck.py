"""Complete positivity of canonical-form maps through the 2x2 contraction R_Phi.

With ``d1 = 1 + t3 + l3``, ``d2 = 1 + t3 - l3``, ``d3 = 1 - t3 - l3`` and
``d4 = 1 - t3 + l3``, beta of the adjoint has blocks ``A = diag(d1, d2) / 2``,
``B = diag(d3, d4) / 2`` and ``C = [[tau, l1 + l2], [l1 - l2, tau]] / 2`` where
``tau = t1 + i t2``.  The map is CP iff ``C = sqrt(A) R sqrt(B)`` for some
contraction R.  When some ``d_k`` vanishes (``|t3| + |l3| = 1``) the matching
row or column of C must vanish and R is taken as ``l1 / sqrt|l3| * sx``.

The array functions operate on stacks of tuples, shape ``(n, 3)``; the
scalar API is a thin wrapper over them.
"""
from dataclasses import dataclass

import numpy as np

from . import choi as _choi
from ._config import BOUNDARY_BAND, CLASSIFY_TOL, debug_enabled, resolve_tol
from .canonical import reduce
from .errors import SlotPositivityViolated
from .pauli import SX

INTERIOR = "interior"
BOUNDARY_SOLVABLE = "boundary_solvable"
BOUNDARY_UNSOLVABLE = "boundary_unsolvable"
SLOT_VIOLATED = "slot_violated"
_FLAGS = (INTERIOR, BOUNDARY_SOLVABLE, BOUNDARY_UNSOLVABLE, SLOT_VIOLATED)

# a d_k below this counts as zero inside the boundary band
ZERO_D = 2 * BOUNDARY_BAND


@dataclass(frozen=True)
class ContractionReport:
    r_phi: np.ndarray
    singular_values: tuple
    boundary_case: str
    is_contraction: bool
    is_unitary: bool


@dataclass(frozen=True)
class InequalityReport:
    diag_plus_lhs: float
    diag_plus_rhs: float
    diag_minus_lhs: float
    diag_minus_rhs: float
    det_lhs: float
    det_rhs: float
    af_plus: bool
    af_minus: bool
    all_satisfied: bool


def _split(lam, t):
    lam = np.atleast_2d(np.asarray(lam, dtype=np.float64))
    t = np.atleast_2d(np.asarray(t, dtype=np.float64))
    return lam[:, 0], lam[:, 1], lam[:, 2], t[:, 0], t[:, 1], t[:, 2]


def _ds(l3, t3):
    return 1 + t3 + l3, 1 + t3 - l3, 1 - t3 - l3, 1 - t3 + l3


def slot_sum(lam, t):
    _, _, l3, _, _, t3 = _split(lam, t)
    return np.abs(t3) + np.abs(l3)


def r_phi_arrays(lam, t):
    """R_Phi for a stack of canonical tuples.

    Returns ``(R, flag)`` with R of shape (n, 2, 2) and flag an index into
    (interior, boundary_solvable, boundary_unsolvable, slot_violated).
    Rows that are unsolvable or violated carry NaN entries in R.
    """
    l1, l2, l3, t1, t2, t3 = _split(lam, t)
    n = l1.size
    tau = t1 + 1j * t2
    d1, d2, d3, d4 = _ds(l3, t3)
    s = np.abs(t3) + np.abs(l3)
    flag = np.zeros(n, dtype=np.int8)
    R = np.full((n, 2, 2), np.nan + 0j)

    inner = s <= 1 - BOUNDARY_BAND
    with np.errstate(divide="ignore", invalid="ignore"):
        R[inner, 0, 0] = tau[inner] / np.sqrt(d1[inner] * d3[inner])
        R[inner, 0, 1] = (l1 + l2)[inner] / np.sqrt(d1[inner] * d4[inner])
        R[inner, 1, 0] = (l1 - l2)[inner] / np.sqrt(d2[inner] * d3[inner])
        R[inner, 1, 1] = tau[inner] / np.sqrt(d2[inner] * d4[inner])

    band = (~inner) & (s <= 1 + BOUNDARY_BAND)
    flag[s > 1 + BOUNDARY_BAND] = 3
    z1, z2, z3, z4 = (d < ZERO_D for d in (d1, d2, d3, d4))
    ok = np.abs(tau) <= BOUNDARY_BAND
    ok &= ~(z1 | z4) | (np.abs(l1 + l2) <= BOUNDARY_BAND)
    ok &= ~(z2 | z3) | (np.abs(l1 - l2) <= BOUNDARY_BAND)
    solvable = band & ok
    flag[band & ~ok] = 2
    flag[solvable] = 1
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(np.abs(l3) > BOUNDARY_BAND, l1 / np.sqrt(np.abs(l3)), 1.0)
    R[solvable] = scale[solvable, None, None] * SX
    return R, flag


def singular_values_2x2(R):
    """Closed-form singular values of a stack of 2x2 matrices, descending."""
    R = np.asarray(R)
    # eigenvalues of the Gram matrix R^dagger R; the discriminant is a sum
    # of squares so nothing cancels when R is close to unitary
    g11 = np.abs(R[..., 0, 0]) ** 2 + np.abs(R[..., 1, 0]) ** 2
    g22 = np.abs(R[..., 0, 1]) ** 2 + np.abs(R[..., 1, 1]) ** 2
    g12 = np.conj(R[..., 0, 0]) * R[..., 0, 1] + np.conj(R[..., 1, 0]) * R[..., 1, 1]
    mid = 0.5 * (g11 + g22)
    disc = np.sqrt((0.5 * (g11 - g22)) ** 2 + np.abs(g12) ** 2)
    smax2 = mid + disc
    smin2 = np.maximum(mid - disc, 0.0)
    return np.sqrt(smax2), np.sqrt(smin2)


def theorem1_arrays(lam, t, tol=None):
    """Boolean CP verdicts (and the largest singular value) for a stack."""
    tol = resolve_tol(tol)
    R, flag = r_phi_arrays(lam, t)
    smax, _ = singular_values_2x2(R)
    good = (flag <= 1) & (smax <= 1 + tol)
    return good, np.where(flag <= 1, smax, np.inf)


def r_phi(cf, tol=None, unitary_tol=CLASSIFY_TOL):
    R, flag = r_phi_arrays(cf.lam, cf.tvec)
    R = R[0]
    kind = _FLAGS[flag[0]]
    if kind == SLOT_VIOLATED:
        raise SlotPositivityViolated(
            f"|t3| + |lambda3| = {abs(cf.tvec[2]) + abs(cf.lam[2]):.12g} exceeds 1")
    if kind == BOUNDARY_UNSOLVABLE:
        return ContractionReport(None, (np.inf, np.inf), kind, False, False)
    smax, smin = (float(x[0]) for x in singular_values_2x2(R[None]))
    tol = resolve_tol(tol)
    R.setflags(write=False)
    return ContractionReport(
        R, (smax, smin), kind,
        smax <= 1 + tol,
        abs(smax - 1) <= unitary_tol and abs(smin - 1) <= unitary_tol,
    )


def is_cp_theorem1(cf, tol=None):
    try:
        return r_phi(cf, tol).is_contraction
    except SlotPositivityViolated:
        return False


def inequality_arrays(lam, t):
    """All inequality sides for a stack; each ``lhs <= rhs`` must hold.

    Returns a dict of arrays.  In the boundary band the tau terms are dropped
    when tau vanishes and the diagonal inequalities are marked failed
    otherwise, mirroring the solvability rule of the contraction test on the boundary.
    """
    l1, l2, l3, t1, t2, t3 = _split(lam, t)
    tau2 = t1 ** 2 + t2 ** 2
    d1, d2, d3, d4 = _ds(l3, t3)
    s = np.abs(t3) + np.abs(l3)
    band = s > 1 - BOUNDARY_BAND
    slot_ok = s <= 1 + BOUNDARY_BAND
    with np.errstate(divide="ignore", invalid="ignore"):
        # s = -1 uses d4/d3, s = +1 uses d1/d2 (and the mirror for diag_minus)
        plus_terms = np.stack([tau2 * d4 / d3, tau2 * d1 / d2])
        minus_terms = np.stack([tau2 * d3 / d4, tau2 * d2 / d1])
    drop = band & (np.sqrt(tau2) <= BOUNDARY_BAND)
    fail = band & ~drop
    plus_terms = np.where(drop, 0.0, plus_terms)
    minus_terms = np.where(drop, 0.0, minus_terms)
    plus_terms = np.where(fail, np.inf, plus_terms)
    minus_terms = np.where(fail, np.inf, minus_terms)

    dp_lhs = (l1 + l2) ** 2
    dm_lhs = (l1 - l2) ** 2
    dp_rhs = (1 + l3) ** 2 - t3 ** 2 - np.max(plus_terms, axis=0)
    dm_rhs = (1 - l3) ** 2 - t3 ** 2 - np.max(minus_terms, axis=0)
    sum_sq = l1 ** 2 + l2 ** 2 + l3 ** 2 + t1 ** 2 + t2 ** 2 + t3 ** 2
    det_rhs = (1 - sum_sq) ** 2
    det_lhs = 4 * (l1 ** 2 * (t1 ** 2 + l2 ** 2) + l2 ** 2 * (t2 ** 2 + l3 ** 2)
                   + l3 ** 2 * (t3 ** 2 + l1 ** 2) - 2 * l1 * l2 * l3)
    af_plus_lhs = dp_lhs
    af_plus_rhs = (1 + l3) ** 2 - t3 ** 2
    af_minus_lhs = dm_lhs
    af_minus_rhs = (1 - l3) ** 2 - t3 ** 2
    return dict(
        diag_plus_lhs=dp_lhs, diag_plus_rhs=dp_rhs,
        diag_minus_lhs=dm_lhs, diag_minus_rhs=dm_rhs,
        det_lhs=det_lhs, det_rhs=det_rhs,
        af_plus_lhs=af_plus_lhs, af_plus_rhs=af_plus_rhs,
        af_minus_lhs=af_minus_lhs, af_minus_rhs=af_minus_rhs,
        slot_ok=slot_ok, band=band,
    )


def _margins_ok(q, tol):
    """Compare each inequality on the scale of R_Phi.

    The polynomial forms carry factors ``(1 +/- l3)^2 - t3^2`` (and their
    product for the determinant); dividing them out makes ``tol`` mean the
    same thing as in the contraction test, which matters near the identity
    where one factor is tiny.  Inside the boundary band the raw forms are used.
    """
    ok = q["slot_ok"].copy()
    band = q["band"]
    wp = np.where(band, 1.0, q["af_plus_rhs"])
    wm = np.where(band, 1.0, q["af_minus_rhs"])
    for name, w in (("diag_plus", wp), ("diag_minus", wm), ("det", wp * wm)):
        with np.errstate(invalid="ignore"):
            margin = (q[name + "_rhs"] - q[name + "_lhs"]) / w
        ok &= margin >= -tol
    return ok


def inequality_verdicts(lam, t, tol=None):
    return _margins_ok(inequality_arrays(lam, t), resolve_tol(tol))


def inequality_report(cf, tol=None):
    tol = resolve_tol(tol)
    q = inequality_arrays(cf.lam, cf.tvec)
    ok = bool(_margins_ok(q, tol)[0])
    q = {k: v[0] for k, v in q.items()}
    return InequalityReport(
        float(q["diag_plus_lhs"]), float(q["diag_plus_rhs"]),
        float(q["diag_minus_lhs"]), float(q["diag_minus_rhs"]),
        float(q["det_lhs"]), float(q["det_rhs"]),
        bool(q["af_plus_lhs"] <= q["af_plus_rhs"] + tol),
        bool(q["af_minus_lhs"] <= q["af_minus_rhs"] + tol),
        ok,
    )


def af_general(lam, t):
    """One-sided Algoet-Fujiwara variants with the full |t|; diagnostics only.

    Returns ``((lhs_plus, rhs_plus), (lhs_minus, rhs_minus))`` for
    ``(l1 +/- l2)^2 <= (1 +/- l3)^2 - |t|^2``.
    """
    l1, l2, l3 = np.asarray(lam, dtype=np.float64)
    tn2 = float(np.sum(np.asarray(t, dtype=np.float64) ** 2))
    return ((l1 + l2) ** 2, (1 + l3) ** 2 - tn2), ((l1 - l2) ** 2, (1 - l3) ** 2 - tn2)


def is_cp(ch, tol=None):
    """Reduce to canonical form and apply the contraction test.

    With ``QCHAN_DEBUG=1`` the verdict is cross-checked against the Choi
    eigenvalue oracle whenever that oracle is not itself borderline.
    """
    cf = reduce(ch)
    verdict = is_cp_theorem1(cf, tol)
    if debug_enabled():
        mineig = _choi.min_eigenvalue(_choi.choi_of(ch))
        if abs(mineig) > 1e-7:
            assert verdict == (mineig > 0), (
                f"contraction test says {verdict}, Choi minimum eigenvalue {mineig:.3g}")
    return verdict
