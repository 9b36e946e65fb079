"""Every qubit channel is the midpoint of two generalized extreme points.

For a CP map in canonical form, beta of the adjoint is
``[[A, sqrt(A) R sqrt(B)], [sqrt(B) R^dagger sqrt(A), B]]`` with R = R_Phi a
contraction.  Writing ``R = (W1 + W2) / 2`` with unitaries W1, W2 and
replacing R by each W gives two rank-2 Choi matrices, hence two points of
the closure of the extreme points.  The reassembly is done on the Choi
matrices themselves; the split factors are not channel basis changes.
"""
from dataclasses import dataclass

import numpy as np

from ._config import resolve_tol
from .canonical import reduce, undo_basis_change
from .choi import U23, choi_of, choi_rank, min_eigenvalue, tmatrix_from_choi
from .cpcheck import r_phi, _ds
from .errors import DecompositionCheckFailed, NotAContraction, NotCP, SlotPositivityViolated
from .pauli import TMatrix


@dataclass(frozen=True)
class MidpointDecomposition:
    left: TMatrix
    right: TMatrix
    weight: float = 0.5
    residual: float = 0.0


def _fix_phases(V, W):
    # largest-magnitude entry of each column of V becomes real positive; the
    # matching column of W takes the same phase so V diag(s) W^dagger is unchanged
    V = V.copy()
    W = W.copy()
    for j in range(V.shape[1]):
        k = int(np.argmax(np.abs(V[:, j])))
        ph = V[k, j] / abs(V[k, j])
        V[:, j] /= ph
        W[:, j] /= ph
    return V, W


def split_contraction(R, tol=None):
    """Unitaries (W1, W2) with (W1 + W2) / 2 = R, for an operator-norm contraction R."""
    tol = resolve_tol(tol)
    R = np.asarray(R, dtype=np.complex128)
    V, s, Wh = np.linalg.svd(R)
    if s[0] > 1 + tol:
        raise NotAContraction(f"operator norm {s[0]:.12g} exceeds 1")
    V, W = _fix_phases(V, Wh.conj().T)
    theta = np.arccos(np.clip(s, 0.0, 1.0))
    w1 = V @ np.diag(np.exp(1j * theta)) @ W.conj().T
    w2 = V @ np.diag(np.exp(-1j * theta)) @ W.conj().T
    return w1, w2


def _beta_hat_blocks(cf):
    d1, d2, d3, d4 = (float(x[0]) for x in _ds(np.array([cf.lam[2]]), np.array([cf.tvec[2]])))
    sqA = np.diag(np.sqrt(np.maximum([0.5 * d1, 0.5 * d2], 0.0)))
    sqB = np.diag(np.sqrt(np.maximum([0.5 * d3, 0.5 * d4], 0.0)))
    return sqA, sqB


def _part(cf, sqA, sqB, W):
    A = sqA @ sqA
    B = sqB @ sqB
    C = sqA @ W @ sqB
    m_hat = np.block([[A, C], [C.conj().T, B]])
    beta = np.conj(U23 @ m_hat @ U23)
    return TMatrix(undo_basis_change(cf, tmatrix_from_choi(beta)))


def decompose_midpoint(ch, tol=None, check_tol=1e-9):
    cf = reduce(ch)
    try:
        rep = r_phi(cf, tol)
    except SlotPositivityViolated:
        raise NotCP("map is not completely positive") from None
    if not rep.is_contraction:
        raise NotCP("map is not completely positive")
    if choi_rank(choi_of(ch)) <= 2:
        return MidpointDecomposition(ch, ch, 0.5, 0.0)
    # on the boundary the returned R already satisfies C = sqrt(A) R sqrt(B);
    # its free entries multiply zero rows or columns, so no completion is needed
    w1, w2 = split_contraction(rep.r_phi, tol)
    sqA, sqB = _beta_hat_blocks(cf)
    left = _part(cf, sqA, sqB, w1)
    right = _part(cf, sqA, sqB, w2)
    residual = float(np.abs(0.5 * (left.matrix + right.matrix) - ch.matrix).max())
    problems = []
    if residual > check_tol:
        problems.append(f"midpoint residual {residual:.3g}")
    for name, part in (("left", left), ("right", right)):
        c = choi_of(part)
        if min_eigenvalue(c) < -check_tol:
            problems.append(f"{name} part has negative Choi eigenvalue {min_eigenvalue(c):.3g}")
        if choi_rank(c) > 2:
            problems.append(f"{name} part has Choi rank {choi_rank(c)}")
    if problems:
        raise DecompositionCheckFailed("; ".join(problems))
    return MidpointDecomposition(left, right, 0.5, residual)


def true_extreme_rate(channels):
    """Fraction of non-unital inputs whose two parts are both true extreme points.

    Returns ``(rate, counted)``; unital inputs are skipped.
    """
    from .extreme import classify

    hits = 0
    counted = 0
    for ch in channels:
        if np.linalg.norm(ch.t) < 1e-7:
            continue
        d = decompose_midpoint(ch)
        counted += 1
        if classify(d.left).kind.true_extreme and classify(d.right).kind.true_extreme:
            hits += 1
    return (hits / counted if counted else float("nan")), counted
