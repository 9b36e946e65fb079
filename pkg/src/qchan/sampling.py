"""Seeded generators for test corpora.  All take a ``numpy.random.Generator``."""
import numpy as np

from .canonical import su2_from_so3
from .extreme import TrigParams, channel_from_trig
from .pauli import TMatrix, channel_from_kraus, compose, rotation_channel, unitary_channel


def random_rotation(rng):
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    w, x, y, z = q
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
        [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
        [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
    ])


def random_unitary(rng):
    """Haar-random element of SU(2)."""
    return np.array(su2_from_so3(random_rotation(rng)))


def random_kraus(rng, n_ops=None):
    """Random trace-preserving Kraus set: Gaussian operators whitened so sum A A^dagger = I."""
    if n_ops is None:
        n_ops = int(rng.integers(1, 5))
    X = rng.normal(size=(n_ops, 2, 2)) + 1j * rng.normal(size=(n_ops, 2, 2))
    S = sum(a @ a.conj().T for a in X)
    L = np.linalg.cholesky(S)
    Li = np.linalg.inv(L)
    return [Li @ a for a in X]


def random_cp_channel(rng, n_ops=None):
    return channel_from_kraus(random_kraus(rng, n_ops))


def random_tp_map(rng):
    """t and T uniform in [-1, 1]; usually not even positive."""
    return TMatrix.from_parts(rng.uniform(-1, 1, 3), rng.uniform(-1, 1, (3, 3)))


def random_extreme_channel(rng):
    """A trig-form channel dressed with random rotations on both sides."""
    p = TrigParams(float(rng.uniform(0, 2 * np.pi)), float(rng.uniform(0, np.pi)))
    ch = channel_from_trig(p)
    return compose(rotation_channel(random_rotation(rng)),
                   compose(ch, rotation_channel(random_rotation(rng))))


def dress(ch, rng):
    """Gamma_U o ch o Gamma_V for Haar-random U, V."""
    return compose(unitary_channel(random_unitary(rng)),
                   compose(ch, unitary_channel(random_unitary(rng))))
