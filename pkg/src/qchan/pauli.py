"""Pauli-basis picture of 2x2 matrices and of linear maps on them.

A self-adjoint 2x2 matrix is written ``M = w0 I + w . sigma``.  A linear map
acts as ``w0 I + w . sigma  ->  w0 I + (w0 t + T w) . sigma``, which is the
4x4 real matrix ``[[1, 0], [t, T]]`` for trace-preserving maps.

Kraus convention: ``Phi(rho) = sum_k A_k^dagger rho A_k`` with the dagger on
the *left*, trace preserving when ``sum_k A_k A_k^dagger = I``.  Many texts
use the opposite placement; swapping it silently transposes the T-matrix.
"""
from dataclasses import dataclass

import numpy as np

from ._config import resolve_tol
from .errors import NotSelfAdjoint, NotTracePreserving, InputError

I2 = np.eye(2, dtype=np.complex128)
SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI = np.stack([I2, SX, SY, SZ])
for _a in (I2, SX, SY, SZ, PAULI):
    _a.setflags(write=False)


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


def as_mat2(m):
    """Validate and return a read-only complex 2x2 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.shape != (2, 2):
        raise InputError(f"expected a 2x2 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    return _frozen(a, np.complex128)


@dataclass(frozen=True)
class PauliVec:
    w0: float
    w: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=np.float64)
        if w.shape != (3,):
            raise InputError(f"Bloch part must have 3 components, got {w.shape}")
        object.__setattr__(self, "w0", float(self.w0))
        object.__setattr__(self, "w", _frozen(w, np.float64))

    @classmethod
    def density(cls, bloch):
        """The state ``(I + r . sigma) / 2``."""
        return cls(0.5, 0.5 * np.asarray(bloch, dtype=np.float64))

    @property
    def bloch(self):
        """Bloch vector ``w / w0`` of a (rescaled) density matrix."""
        return self.w / self.w0

    def as_array(self):
        return np.concatenate([[self.w0], self.w])


@dataclass(frozen=True)
class TMatrix:
    """4x4 real matrix of a linear map in the basis {I, sx, sy, sz}.

    Trace-preserving maps have first row (1, 0, 0, 0); adjoints of those are
    unital instead, so the general 4x4 is stored.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.shape != (4, 4):
            raise InputError(f"T-matrix must be 4x4, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InputError("T-matrix has non-finite entries")
        object.__setattr__(self, "matrix", _frozen(m, np.float64))

    @classmethod
    def from_parts(cls, t, T):
        t = np.asarray(t, dtype=np.float64)
        T = np.asarray(T, dtype=np.float64)
        if t.shape != (3,) or T.shape != (3, 3):
            raise InputError("expected t of shape (3,) and T of shape (3, 3)")
        m = np.zeros((4, 4))
        m[0, 0] = 1.0
        m[1:, 0] = t
        m[1:, 1:] = T
        return cls(m)

    @classmethod
    def diagonal(cls, lam, t=(0.0, 0.0, 0.0)):
        return cls.from_parts(t, np.diag(np.asarray(lam, dtype=np.float64)))

    @classmethod
    def identity(cls):
        return cls(np.eye(4))

    @property
    def t(self):
        return self.matrix[1:, 0]

    @property
    def T(self):
        return self.matrix[1:, 1:]

    def is_trace_preserving(self, tol=None):
        tol = resolve_tol(tol)
        return bool(np.abs(self.matrix[0] - [1.0, 0.0, 0.0, 0.0]).max() <= tol)

    def soft_bounds_ok(self, tol=None):
        """Entry bounds every positivity-preserving map satisfies (a flag, not a check)."""
        tol = resolve_tol(tol)
        return bool(np.abs(self.T).max() <= 1 + tol and np.abs(self.t).max() <= 1 + tol)

    def __add__(self, other):
        return TMatrix(self.matrix + other.matrix)

    def scale(self, c):
        return TMatrix(c * self.matrix)


@dataclass(frozen=True)
class KrausSet:
    """One to four Kraus operators; trace preservation is checked on construction."""

    ops: tuple
    tol: float = None

    def __post_init__(self):
        ops = tuple(as_mat2(a) for a in self.ops)
        if not 1 <= len(ops) <= 4:
            raise InputError(f"a qubit Kraus set has 1 to 4 operators, got {len(ops)}")
        object.__setattr__(self, "ops", ops)
        err = completeness_error(ops)
        if err > 10 * resolve_tol(self.tol):
            raise NotTracePreserving(f"sum A A^dagger deviates from I by {err:.3g}")

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)


def completeness_error(ops):
    s = sum(a @ a.conj().T for a in ops)
    return float(np.abs(s - I2).max())


def mat2_to_pauli(m, tol=None):
    a = np.asarray(m, dtype=np.complex128)
    if a.shape != (2, 2):
        raise InputError(f"expected a 2x2 matrix, got shape {a.shape}")
    dev = np.abs(a - a.conj().T).max()
    if dev > resolve_tol(tol):
        raise NotSelfAdjoint(f"max|M - M^dagger| = {dev:.3g}")
    w0 = 0.5 * np.trace(a).real
    w = np.array([0.5 * np.trace(s @ a).real for s in (SX, SY, SZ)])
    return PauliVec(w0, w)


def pauli_to_mat2(p):
    return as_mat2(p.w0 * I2 + p.w[0] * SX + p.w[1] * SY + p.w[2] * SZ)


def apply_channel(ch, rho):
    """Apply the 4x4 map; the translation scales with w0 so the map is linear."""
    out = ch.matrix @ rho.as_array()
    return PauliVec(out[0], out[1:])


def apply_bloch(ch, r):
    """Bloch-vector action ``r -> t + T r`` on density matrices (rows of r)."""
    r = np.asarray(r, dtype=np.float64)
    return ch.t + r @ ch.T.T


def apply_matrix(ch, m):
    """Apply the map to an arbitrary complex 2x2 matrix by linearity."""
    a = np.asarray(m, dtype=np.complex128)
    coeff = np.array([0.5 * np.trace(s @ a) for s in PAULI])
    out = ch.matrix.astype(np.complex128) @ coeff
    return np.einsum("k,kab->ab", out, PAULI)


def kraus_apply(ops, m):
    return sum(a.conj().T @ m @ a for a in ops)


def tmatrix_of_linear_map(f):
    """4x4 Pauli matrix of an arbitrary linear map on 2x2 matrices."""
    m = np.empty((4, 4))
    for j, s in enumerate(PAULI):
        img = f(s)
        for i, si in enumerate(PAULI):
            m[i, j] = 0.5 * np.trace(si @ img).real
    return m


def channel_from_kraus(ks, tol=None):
    if not isinstance(ks, KrausSet):
        ks = KrausSet(tuple(ks), tol)
    err = completeness_error(ks.ops)
    if err > 10 * resolve_tol(tol):
        raise NotTracePreserving(f"sum A A^dagger deviates from I by {err:.3g}")
    return TMatrix(tmatrix_of_linear_map(lambda s: kraus_apply(ks.ops, s)))


def adjoint_channel(ch):
    return TMatrix(ch.matrix.T)


def compose(ch1, ch2):
    """``ch1 o ch2``: apply ch2 first."""
    return TMatrix(ch1.matrix @ ch2.matrix)


def rotation_channel(R):
    """The map ``w -> R w`` as a 4x4 T-matrix."""
    m = np.eye(4)
    m[1:, 1:] = R
    return TMatrix(m)


def unitary_channel(U):
    """``rho -> U rho U^dagger``, i.e. the single Kraus operator U^dagger."""
    U = np.asarray(U, dtype=np.complex128)
    return TMatrix(tmatrix_of_linear_map(lambda s: U @ s @ U.conj().T))
