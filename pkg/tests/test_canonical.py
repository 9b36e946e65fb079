import numpy as np
import pytest
from hypothesis import given, strategies as st

from qchan.canonical import (CanonicalForm, basis_change_kron, quaternion_from_so3, reconstruct, reduce,
                             rotation_about, so3_from_su2, su2_from_so3)
from qchan.choi import choi_of
from qchan.errors import NotARotation
from qchan.pauli import TMatrix, compose, unitary_channel
from qchan.sampling import random_rotation, random_tp_map, random_unitary

seeds = st.integers(0, 2**32 - 1)


@given(seeds)
def test_reduce_reconstruct(seed):
    ch = random_tp_map(np.random.default_rng(seed))
    cf = reduce(ch)
    assert np.abs(reconstruct(cf).matrix - ch.matrix).max() < 1e-12
    assert np.sign(np.prod(cf.lam)) == np.sign(np.linalg.det(ch.T))
    mags = np.abs(cf.lam)
    assert cf.tvec[2] >= 0 and cf.tvec[1] >= 0
    assert np.all(np.diff(mags) <= 1e-15)


@given(seeds)
def test_su2_so3_consistent(seed):
    R = random_rotation(np.random.default_rng(seed))
    U = su2_from_so3(R)
    assert np.allclose(U @ U.conj().T, np.eye(2))
    assert abs(np.linalg.det(U) - 1) < 1e-12
    assert np.allclose(so3_from_su2(U), R)
    # unitary conjugation realizes the rotation on Bloch vectors
    assert np.allclose(unitary_channel(U).T, R) or np.allclose(unitary_channel(U).T.T, R)


def test_su2_sign_rule():
    U = su2_from_so3(rotation_about([0, 0, 1], np.pi))
    q = quaternion_from_so3(rotation_about([0, 0, 1], np.pi))
    first = q[np.argmax(np.abs(q) > 1e-14)]
    assert first > 0
    assert np.allclose(U @ U.conj().T, np.eye(2))


def test_not_a_rotation():
    with pytest.raises(NotARotation):
        su2_from_so3(np.diag([1.0, 1.0, -1.0]))


def test_canonical_form_diagonal_map():
    cf = CanonicalForm.diagonal([0.5, 0.25, -0.25], [0, 0, 0.1])
    assert np.allclose(cf.diagonal_map.matrix, TMatrix.diagonal([0.5, 0.25, -0.25], [0, 0, 0.1]).matrix)


def test_reduce_of_diagonal_is_itself():
    ch = TMatrix.diagonal([0.9, 0.6, 0.5], [0, 0, 0.3])
    cf = reduce(ch)
    assert np.allclose(cf.lam, [0.9, 0.6, 0.5])
    assert np.allclose(cf.tvec, [0, 0, 0.3])


def test_degenerate_cluster_translation_normalized():
    # equal lambdas: any rotation inside the cluster is free, t is put on its last axis
    ch = TMatrix.diagonal([0.5, 0.5, 0.5], [0.1, 0.2, 0.2])
    cf = reduce(ch)
    assert np.allclose(cf.tvec, [0, 0, 0.3])
    assert np.allclose(reconstruct(cf).matrix, ch.matrix)


def test_basis_change_covariance(rng):
    ch = random_tp_map(rng)
    U, V = random_unitary(rng), random_unitary(rng)
    # Gamma_U o ch o Gamma_V with Gamma_W(rho) = W rho W^dagger
    dressed = compose(unitary_channel(U), compose(ch, unitary_channel(V)))
    K = basis_change_kron(U, V)
    assert np.abs(choi_of(dressed).entries - K @ choi_of(ch).entries @ K.conj().T).max() < 1e-13


def test_spectrum_invariant_under_dressing(rng):
    ch = random_tp_map(rng)
    U, V = random_unitary(rng), random_unitary(rng)
    dressed = compose(unitary_channel(U), compose(ch, unitary_channel(V)))
    a = np.linalg.eigvalsh(choi_of(ch).entries)
    b = np.linalg.eigvalsh(choi_of(dressed).entries)
    assert np.allclose(a, b)
    assert np.allclose(reduce(ch).lam, reduce(dressed).lam)


def test_backends_give_same_form():
    import json
    import os
    import subprocess
    import sys
    code = ("import json, numpy as np; from qchan.canonical import reduce; from qchan.sampling import random_tp_map;"
            "rng = np.random.default_rng(5); from qchan.extreme import channel_from_trig, TrigParams;"
            "chs = [random_tp_map(rng) for _ in range(5)] + [channel_from_trig(TrigParams(0.6, 0.6))];"
            "print(json.dumps([reduce(c).tvec.tolist() + reduce(c).lam.tolist() for c in chs]))")
    outs = []
    for jit in ("0", "1"):
        p = subprocess.run([sys.executable, "-c", code], env={**os.environ, "QCHAN_JIT": jit},
                           capture_output=True, text=True, check=True)
        outs.append(np.array(json.loads(p.stdout)))
    assert np.allclose(outs[0], outs[1], atol=1e-12)
