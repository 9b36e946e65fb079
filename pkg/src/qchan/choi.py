"""Choi picture: beta(Phi) = [Phi(E_jk)], its eigensystem, rank and Kraus extraction.

Index convention: ``beta[2j + a, 2k + b] = Phi(E_jk)[a, b]``, so the identity
channel gives ``2 |psi0><psi0|`` with eigenvalues (2, 0, 0, 0).
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._config import RANK_TOL, resolve_tol
from .errors import ConvergenceFailure, NotHermitian, NotPSD, InputError
from .pauli import KrausSet, PAULI, TMatrix, _frozen

E = np.zeros((2, 2, 2, 2), dtype=np.complex128)
for _j in range(2):
    for _k in range(2):
        E[_j, _k, _j, _k] = 1.0

PSI0 = np.array([1, 0, 0, 1], dtype=np.complex128) / np.sqrt(2)
B0 = np.outer(PSI0, PSI0.conj())

U23 = np.eye(4)[[0, 2, 1, 3]]
for _a in (E, PSI0, B0, U23):
    _a.setflags(write=False)


@dataclass(frozen=True)
class ChoiMatrix:
    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.complex128)
        if a.shape != (4, 4):
            raise InputError(f"Choi matrix must be 4x4, got {a.shape}")
        dev = np.abs(a - a.conj().T).max()
        if dev > 1e-12 * max(1.0, np.abs(a).max()):
            raise NotHermitian(f"Choi matrix deviates from Hermitian by {dev:.3g}")
        object.__setattr__(self, "entries", _frozen(0.5 * (a + a.conj().T), np.complex128))

    def block(self, j, k):
        return self.entries[2 * j:2 * j + 2, 2 * k:2 * k + 2]


@dataclass(frozen=True)
class EigenSystem:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns


def _choi_entries(m):
    """beta from a 4x4 Pauli matrix, vectorized over leading axes."""
    m = np.asarray(m, dtype=np.float64)
    # Phi(E_jk) = sum_mn m[n, p] coeff_p(E_jk) sigma_n, coeff_p = tr(sigma_p E_jk) / 2
    coeff = 0.5 * np.einsum("pkj->jkp", PAULI)  # tr(s_p E_jk) = (s_p)_kj
    out = np.einsum("...np,jkp,nab->...jakb", m.astype(np.complex128), coeff, PAULI)
    return out.reshape(m.shape[:-2] + (4, 4))


def choi_of(ch):
    return ChoiMatrix(_choi_entries(ch.matrix))


def choi_hat_of(ch):
    """beta of the adjoint map: conj(U23 beta U23)."""
    return ChoiMatrix(np.conj(U23 @ _choi_entries(ch.matrix) @ U23))


def tmatrix_from_choi(c):
    """Invert :func:`choi_of` (the real part is taken; beta of a real map is exact)."""
    beta = np.asarray(getattr(c, "entries", c))
    blocks = beta.reshape(beta.shape[:-2] + (2, 2, 2, 2))  # j a k b
    m = np.empty(beta.shape[:-2] + (4, 4))
    for col, s in enumerate(PAULI):
        img = np.einsum("jk,...jakb->...ab", s, blocks)
        for row, si in enumerate(PAULI):
            m[..., row, col] = 0.5 * np.einsum("ab,...ba->...", si, img).real
    return m


def eigensystem(c):
    a = np.asarray(getattr(c, "entries", c), dtype=np.complex128)
    w, v, ok = kernels.eigh_herm(np.ascontiguousarray(a))
    if not ok:
        raise ConvergenceFailure("Hermitian Jacobi iteration did not converge")
    return EigenSystem(_frozen(w, np.float64), _frozen(v, np.complex128))


def eigenvalues(c):
    return eigensystem(c).eigenvalues


def eigenvalues_batch(betas):
    w, _, ok = kernels.eigh_herm_batch(np.ascontiguousarray(betas, dtype=np.complex128))
    if not np.all(ok):
        raise ConvergenceFailure("Hermitian Jacobi iteration did not converge")
    return w


def min_eigenvalue(c):
    return float(eigenvalues(c)[-1])


def is_psd(c, tol=None):
    return min_eigenvalue(c) >= -resolve_tol(tol)


def choi_rank(c, tol=RANK_TOL):
    w = eigenvalues(c)
    top = w[0]
    if top <= 0:
        return 0
    return int(np.sum(w > tol * top))


def kraus_from_choi(c, tol=RANK_TOL, psd_tol=None):
    """Minimal Kraus set: one operator per eigenvalue above ``tol * max``.

    beta = sum_k v_k v_k^dagger with v_k = vec(conj(A_k)) in row-major order,
    hence ``A_k = conj(sqrt(lam_k) * x_k.reshape(2, 2))``.
    """
    es = eigensystem(c)
    w = es.eigenvalues
    if w[-1] < -8 * resolve_tol(psd_tol):
        raise NotPSD(f"Choi matrix has eigenvalue {w[-1]:.3g}")
    keep = w > tol * max(w[0], 0.0)
    ops = [np.conj(np.sqrt(lam) * es.eigenvectors[:, i].reshape(2, 2))
           for i, lam in enumerate(w) if keep[i]]
    return KrausSet(tuple(ops))


def channel_of_choi(c):
    return TMatrix(tmatrix_from_choi(c))
