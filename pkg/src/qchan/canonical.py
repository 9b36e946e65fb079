"""Reduction of a trace-preserving map to diagonal form by rotations.

Every T-matrix factors as ``M = M_U @ M_D @ M_V`` with
``M_D = [[1, 0], [t_D, diag(lam)]]`` and ``M_U``, ``M_V`` pure rotations.
In operator terms ``Phi(rho) = U Phi_D(V rho V^dagger) U^dagger``.  Only
proper rotations are allowed, so the sign of ``lam1 lam2 lam3`` equals the
sign of ``det T``.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NotARotation, InputError
from .pauli import I2, PAULI, SX, SY, SZ, TMatrix, _frozen

CLUSTER_TOL = 1e-10
SIGN_TOL = 1e-14


@dataclass(frozen=True)
class CanonicalForm:
    lam: np.ndarray
    tvec: np.ndarray
    U: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lam, dtype=np.float64)
        tvec = np.asarray(self.tvec, dtype=np.float64)
        if lam.shape != (3,) or tvec.shape != (3,):
            raise InputError("lambda and t must both have 3 components")
        object.__setattr__(self, "lam", _frozen(lam, np.float64))
        object.__setattr__(self, "tvec", _frozen(tvec, np.float64))
        object.__setattr__(self, "U", _frozen(self.U, np.complex128))
        object.__setattr__(self, "V", _frozen(self.V, np.complex128))

    @classmethod
    def diagonal(cls, lam, t=(0.0, 0.0, 0.0)):
        return cls(lam, t, I2, I2)

    @property
    def diagonal_map(self):
        return TMatrix.diagonal(self.lam, self.tvec)

    @property
    def R_U(self):
        return so3_from_su2(self.U)

    @property
    def R_V(self):
        return so3_from_su2(self.V)


def _check_rotation(R, tol=1e-9):
    R = np.asarray(R, dtype=np.float64)
    if R.shape != (3, 3):
        raise NotARotation(f"expected 3x3, got {R.shape}")
    if np.abs(R.T @ R - np.eye(3)).max() > tol or abs(np.linalg.det(R) - 1.0) > tol:
        raise NotARotation("matrix is not a proper rotation")
    return R


def quaternion_from_so3(R):
    """Unit quaternion (q0, q) with R = rotation by 2 acos(q0) about q."""
    R = _check_rotation(R)
    tr = np.trace(R)
    # Shepperd: branch on the largest diagonal combination for stability
    cand = np.array([1 + tr, 1 + 2 * R[0, 0] - tr, 1 + 2 * R[1, 1] - tr, 1 + 2 * R[2, 2] - tr])
    k = int(np.argmax(cand))
    q = np.empty(4)
    r = np.sqrt(max(cand[k], 0.0))
    q[k] = 0.5 * r
    f = 0.5 / r
    if k == 0:
        q[1] = (R[2, 1] - R[1, 2]) * f
        q[2] = (R[0, 2] - R[2, 0]) * f
        q[3] = (R[1, 0] - R[0, 1]) * f
    elif k == 1:
        q[0] = (R[2, 1] - R[1, 2]) * f
        q[2] = (R[0, 1] + R[1, 0]) * f
        q[3] = (R[0, 2] + R[2, 0]) * f
    elif k == 2:
        q[0] = (R[0, 2] - R[2, 0]) * f
        q[1] = (R[0, 1] + R[1, 0]) * f
        q[3] = (R[1, 2] + R[2, 1]) * f
    else:
        q[0] = (R[1, 0] - R[0, 1]) * f
        q[1] = (R[0, 2] + R[2, 0]) * f
        q[2] = (R[1, 2] + R[2, 1]) * f
    q /= np.linalg.norm(q)
    nz = np.flatnonzero(np.abs(q) > 1e-14)
    if q[nz[0]] < 0:
        q = -q
    return q


def su2_from_so3(R):
    """Lift R to U = q0 I - i q . sigma, so that U (w . sigma) U^dagger = (R w) . sigma.

    Phase convention: the first nonzero quaternion component is positive.
    """
    q = quaternion_from_so3(R)
    U = q[0] * I2 - 1j * (q[1] * SX + q[2] * SY + q[3] * SZ)
    return _frozen(U, np.complex128)


def so3_from_su2(U):
    U = np.asarray(U, dtype=np.complex128)
    R = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            R[i, j] = 0.5 * np.trace(PAULI[i + 1] @ U @ PAULI[j + 1] @ U.conj().T).real
    return R


def rotation_about(axis, angle):
    axis = np.asarray(axis, dtype=np.float64)
    axis = axis / np.linalg.norm(axis)
    K = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
    return np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * K @ K


def _align_to_last(s):
    """Rotation of len(s) dims (2 or 3) sending s to |s| e_last."""
    n = s.size
    r = np.linalg.norm(s)
    if r == 0.0:
        return np.eye(n)
    u = s / r
    if n == 2:
        # rows: rotate (u0, u1) onto (0, 1)
        return np.array([[u[1], -u[0]], [u[0], u[1]]])
    e = np.array([0.0, 0.0, 1.0])
    c = float(u @ e)
    axis = np.cross(u, e)
    sn = np.linalg.norm(axis)
    if sn < 1e-15:
        return np.eye(3) if c > 0 else np.diag([1.0, -1.0, -1.0])
    return rotation_about(axis, np.arctan2(sn, c))


def _signed_svd(T):
    u, s, v = kernels.svd3(np.ascontiguousarray(T, dtype=np.float64))
    u = np.array(u)
    v = np.array(v)
    s = np.array(s)
    if np.linalg.det(u) < 0:
        u[:, 2] *= -1
        s[2] *= -1
    if np.linalg.det(v) < 0:
        v[:, 2] *= -1
        s[2] *= -1
    order = np.argsort(-np.abs(s), kind="stable")
    return u[:, order], s[order], v[:, order]


def canonical_parts(ch, cluster_tol=CLUSTER_TOL):
    """(lam, t_D, R_U, R_V) with T = R_U diag(lam) R_V and t = R_U t_D."""
    T = ch.T
    t = ch.t
    O1, lam, O2 = _signed_svd(T)
    R_U = O1
    R_V = O2.T
    tD = R_U.T @ t
    # degenerate clusters: the rotation freedom inside one is used to put
    # the cluster's share of t onto its last axis, pointing positive
    i = 0
    while i < 3:
        j = i + 1
        while j < 3 and abs(lam[j] - lam[i]) <= cluster_tol:
            j += 1
        if j - i >= 2:
            idx = np.arange(i, j)
            Q = _align_to_last(tD[idx])
            P = np.eye(3)
            P[np.ix_(idx, idx)] = Q
            tD = P @ tD
            tD[idx[:-1]] = 0.0
            R_U = R_U @ P.T
            R_V = P @ R_V
        i = j
    # pi rotations about a coordinate axis commute with diag(lam); use them
    # to make t3 and then t2 non-negative so the form does not depend on the SVD
    for k, other in ((2, 0), (1, 0)):
        if tD[k] < -SIGN_TOL:
            D = np.ones(3)
            D[[k, other]] = -1.0
            tD = D * tD
            R_U = R_U * D
            R_V = D[:, None] * R_V
    return lam, tD + 0.0, R_U, R_V


def reduce(ch):
    lam, tD, R_U, R_V = canonical_parts(ch)
    return CanonicalForm(lam, tD, su2_from_so3(R_U), su2_from_so3(R_V))


def reconstruct(cf):
    MU = np.eye(4)
    MU[1:, 1:] = so3_from_su2(cf.U)
    MV = np.eye(4)
    MV[1:, 1:] = so3_from_su2(cf.V)
    return TMatrix(MU @ cf.diagonal_map.matrix @ MV)


def undo_basis_change(cf, m):
    """Express a 4x4 map given in the canonical frame of cf in the original frame."""
    MU = np.eye(4)
    MU[1:, 1:] = so3_from_su2(cf.U)
    MV = np.eye(4)
    MV[1:, 1:] = so3_from_su2(cf.V)
    return MU @ m @ MV


def basis_change_kron(U, V):
    """K with beta(Gamma_U o Phi o Gamma_V) = K beta(Phi) K^dagger.

    With the ``beta[2j + a, 2k + b]`` index layout the input index is the
    outer (block) one, so the transposed V sits in the first Kronecker slot.
    """
    return np.kron(np.asarray(V).T, np.asarray(U))
