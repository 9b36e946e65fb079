import numpy as np
import pytest

from qchan import kernels
from qchan.kernels import _numpy

backends = [pytest.param(_numpy, id="numpy")]
if kernels.numba_backend is not None:
    backends.append(pytest.param(kernels.numba_backend, id="numba"))


@pytest.fixture(params=backends)
def be(request):
    return request.param


def _herm(rng, n=4):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


def test_eigh(be, rng):
    for _ in range(20):
        a = _herm(rng)
        w, v, ok = be.eigh_herm(a)
        assert ok
        assert np.allclose(w, np.sort(np.linalg.eigvalsh(a))[::-1])
        assert np.allclose(v @ np.diag(w) @ v.conj().T, a)


def test_eigh_degenerate(be):
    a = np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex)
    w, v, ok = be.eigh_herm(a)
    assert ok and np.allclose(w, [1, 1, 0, 0])
    assert np.allclose(v.conj().T @ v, np.eye(4))


def test_eigh_batch(be, rng):
    a = np.stack([_herm(rng) for _ in range(5)])
    w, v, ok = be.eigh_herm_batch(a)
    assert np.all(ok)
    for i in range(5):
        assert np.allclose(w[i], np.sort(np.linalg.eigvalsh(a[i]))[::-1])


def test_svd3(be, rng):
    for a in [rng.normal(size=(3, 3)), np.diag([1.0, 0.0, 0.0]), np.zeros((3, 3))]:
        u, s, v = be.svd3(a)
        assert np.allclose(u @ np.diag(s) @ v.T, a)
        assert np.allclose(u.T @ u, np.eye(3)) and np.allclose(v.T @ v, np.eye(3))
        assert np.allclose(s, np.linalg.svd(a, compute_uv=False))


def test_backends_agree(rng):
    if kernels.numba_backend is None:
        pytest.skip("numba not installed")
    nb = kernels.numba_backend
    t = np.array([0.0, 0.0, 0.3])
    T = np.diag([0.9, 0.6, 0.55])
    x0 = rng.uniform(0, 3, 12)
    a = _numpy.compass_search(t, T, x0, 4, 0.5, 1e-7, 20000)
    b = nb.compass_search(t, T, x0, 4, 0.5, 1e-7, 20000)
    assert a[1] == pytest.approx(b[1], abs=1e-12)
    assert _numpy.chi(t, T, x0, 4) == pytest.approx(nb.chi(t, T, x0, 4), abs=1e-13)
    assert _numpy.two_state_grid(t, T, 20)[0] == pytest.approx(nb.two_state_grid(t, T, 20)[0], abs=1e-13)


def test_env_selection():
    import os
    import subprocess
    import sys
    code = "from qchan import kernels; print(kernels.backend_name())"
    out = subprocess.run([sys.executable, "-c", code], env={**os.environ, "QCHAN_JIT": "0"},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
