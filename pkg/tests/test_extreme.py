import numpy as np
import pytest
from hypothesis import given, strategies as st

from qchan.canonical import CanonicalForm, reduce
from qchan.choi import choi_of, choi_rank, kraus_from_choi
from qchan.errors import NotCP, NotExtremeForm, TooManyOperators
from qchan.extreme import (Kind, TrigParams, channel_from_trig, classify, kraus_products_independent,
                           kraus_products_trig, kraus_trig, trig_from_canonical)
from qchan.pauli import I2, SX, SY, SZ, KrausSet, TMatrix, channel_from_kraus
from qchan.sampling import dress, random_kraus

us = st.floats(0, 2 * np.pi, exclude_max=True)
vs = st.floats(0, np.pi, exclude_max=True)


def test_trig_point_canonical_values():
    cf = reduce(channel_from_trig(TrigParams(0.4, 0.9)))
    assert np.allclose(cf.lam, [0.9210609940028851, 0.6216099682706644, 0.57254069525748])
    assert np.allclose(cf.tvec, [0, 0, 0.3050418666328927])
    assert choi_rank(choi_of(cf.diagonal_map)) == 2


@given(us, vs)
def test_trig_kraus_fidelity(u, v):
    p = TrigParams(u, v)
    assert np.abs(channel_from_kraus(kraus_trig(p)).matrix - channel_from_trig(p).matrix).max() < 1e-12


@given(us, vs)
def test_trig_products(u, v):
    ap, am = kraus_trig(TrigParams(u, v))
    c, s = np.cos(u) * np.cos(v), np.sin(u) * np.sin(v)
    assert np.allclose(2 * ap @ ap.conj().T, (1 + c) * I2 + s * SZ)
    assert np.allclose(2 * am @ am.conj().T, (1 - c) * I2 - s * SZ)
    assert np.allclose(2 * ap @ am.conj().T, np.sin(v) * SX + 1j * np.sin(u) * SY)
    assert np.allclose(2 * am @ ap.conj().T, np.sin(v) * SX - 1j * np.sin(u) * SY)
    for got, want in zip((2 * ap @ ap.conj().T, 2 * am @ am.conj().T, 2 * ap @ am.conj().T,
                          2 * am @ ap.conj().T), kraus_products_trig(TrigParams(u, v))):
        assert np.allclose(got, want)


@given(us, vs)
def test_trig_round_trip(u, v):
    p = TrigParams(u, v)
    q = trig_from_canonical(CanonicalForm.diagonal(*_parts(p)))
    assert np.allclose(channel_from_trig(q).matrix, channel_from_trig(p).matrix, atol=1e-9)


def _parts(p):
    ch = channel_from_trig(p)
    return np.diag(ch.T), ch.t


def test_trig_from_canonical_rejects():
    with pytest.raises(NotExtremeForm):
        trig_from_canonical(CanonicalForm.diagonal([0.5, 0.5, 0.5]))
    with pytest.raises(NotExtremeForm):
        trig_from_canonical(CanonicalForm.diagonal([1, -1, -1]))


@pytest.mark.parametrize("doc, kind", [
    (TMatrix.identity(), Kind.II),
    (TMatrix.diagonal([1, -1, -1]), Kind.II),
    (TMatrix.diagonal([1, 0.5, 0.5]), Kind.III),
    (TMatrix.diagonal([0.8, 0, 0], [0, 0, 0.6]), Kind.IC),
    (TMatrix.diagonal([0.8, 0.8, 0.64], [0, 0, 0.36]), Kind.IB),
    (channel_from_trig(TrigParams(0.4, 0.9)), Kind.IA),
    (TMatrix.diagonal([0.5, 0.5, 0.5]), Kind.NONE),
])
def test_classify_named(doc, kind):
    assert classify(doc).kind is kind


def test_classify_not_cp():
    with pytest.raises(NotCP):
        classify(TMatrix.diagonal([1, -1, 1]))


def test_classify_basis_invariant(rng):
    for _ in range(10):
        ch = channel_from_kraus(random_kraus(rng, int(rng.integers(1, 5))))
        assert classify(ch).kind is classify(dress(ch, rng)).kind


def test_kind_flags():
    assert Kind.II.true_extreme and Kind.IA.true_extreme
    assert not Kind.III.true_extreme and Kind.III.generalized
    assert not Kind.NONE.generalized


def test_product_independence():
    assert kraus_products_independent(kraus_trig(TrigParams(0.4, 0.9)))
    # quasi-extreme: lambda = (1, cos v, cos v), t = 0
    assert not kraus_products_independent(kraus_trig(TrigParams(0.0, 0.9)))
    with pytest.raises(TooManyOperators):
        kraus_products_independent(KrausSet(tuple([0.5 * I2] * 4)))


def test_binary_kraus_pair_fixture():
    # two minimal Kraus pairs of one segment channel
    x = 0.3
    c, s = np.cos(x), np.sin(x)
    a1 = np.array([[c, s], [c, s]]) / np.sqrt(2)
    a2 = np.array([[-c, s], [c, -s]]) / np.sqrt(2)
    ch = channel_from_kraus([a1, a2])
    trig = channel_from_trig(TrigParams(np.pi / 2 - 2 * x, np.pi / 2))
    assert np.allclose(ch.matrix, trig.matrix)
    assert classify(ch).kind is Kind.IC
    other = kraus_trig(TrigParams(np.pi / 2 - 2 * x, np.pi / 2))
    # not the same operators up to phase or ordering
    assert not any(np.allclose(abs(np.vdot(a, b)), 1) for a in (a1, a2) for b in other)
    assert len(kraus_from_choi(choi_of(ch))) == 2
