import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

import oracles
from qchan.canonical import CanonicalForm
from qchan.cpcheck import (BOUNDARY_SOLVABLE, BOUNDARY_UNSOLVABLE, INTERIOR, af_general, inequality_report,
                           inequality_verdicts, is_cp, is_cp_theorem1, r_phi, theorem1_arrays)
from qchan.errors import SlotPositivityViolated
from qchan.pauli import TMatrix, channel_from_kraus
from qchan.sampling import dress, random_kraus

coord = st.floats(-1, 1, allow_nan=False)


def cf(lam, t=(0, 0, 0)):
    return CanonicalForm.diagonal(lam, t)


def test_transpose_rejected():
    assert not is_cp_theorem1(cf([1, -1, 1]))
    assert not inequality_report(cf([1, -1, 1])).all_satisfied
    assert not is_cp(TMatrix.diagonal([1, -1, 1]))


@pytest.mark.parametrize("mu, ok", [(-1 / 3, True), (-0.34, False), (1.0, True), (0.0, True), (-0.3333, True)])
def test_depolarizing_bound(mu, ok):
    assert is_cp_theorem1(cf([mu] * 3)) is ok
    assert inequality_report(cf([mu] * 3)).all_satisfied is ok
    assert (oracles.choi_min_eig(oracles.tmatrix_map(oracles.diag_tmatrix([mu] * 3))) >= -1e-12) is ok


def test_amplitude_damping_is_boundary_solvable():
    g = 0.36
    lam = np.sqrt(1 - g)
    rep = r_phi(cf([lam, lam, 1 - g], [0, 0, g]))
    assert rep.boundary_case == BOUNDARY_SOLVABLE
    assert rep.is_contraction and rep.is_unitary


def test_boundary_unsolvable():
    # d3 = 0 but the lambda1 - lambda2 entry of C does not vanish
    rep = r_phi(cf([0.3, 0.1, 0.5], [0, 0, 0.5]))
    assert rep.boundary_case == BOUNDARY_UNSOLVABLE
    assert rep.r_phi is None and not rep.is_contraction


def test_slot_violation():
    with pytest.raises(SlotPositivityViolated):
        r_phi(cf([0.2, 0.1, 0.6], [0, 0, 0.5]))
    assert not is_cp_theorem1(cf([0.2, 0.1, 0.6], [0, 0, 0.5]))


def test_interior_identity_channel_unitary_r():
    rep = r_phi(cf([0.5, 0.5, 0.5]))
    assert rep.boundary_case == INTERIOR
    assert rep.is_contraction and not rep.is_unitary
    assert r_phi(cf([1, 1, 1])).is_unitary


@given(st.tuples(coord, coord, coord), st.tuples(coord, coord, coord))
def test_theorem1_agrees_with_choi(lam, t):
    lam, t = np.array(lam), np.array(t)
    mineig = np.linalg.eigvalsh(oracles.choi_batch_diag(lam[None], t[None])[0]).min()
    assume(abs(mineig) > 1e-7 and abs(abs(t[2]) + abs(lam[2]) - 1) > 1e-7)
    expect = bool(mineig > 0)
    assert is_cp_theorem1(cf(lam, t)) is expect
    assert inequality_report(cf(lam, t)).all_satisfied is expect


def test_batched_matches_scalar(rng):
    lam = rng.uniform(-1, 1, (500, 3))
    t = rng.uniform(-0.5, 0.5, (500, 3))
    ok, _ = theorem1_arrays(lam, t)
    ineq = inequality_verdicts(lam, t)
    for i in range(0, 500, 25):
        assert ok[i] == is_cp_theorem1(cf(lam[i], t[i]))
        assert ineq[i] == inequality_report(cf(lam[i], t[i])).all_satisfied


def test_is_cp_on_dressed_channels(rng):
    for _ in range(10):
        ch = dress(channel_from_kraus(random_kraus(rng)), rng)
        assert is_cp(ch)


def test_af_general_is_diagnostic_only():
    out = af_general([0.5, 0.4, 0.3], [0.1, 0.1, 0.1])
    assert len(out) == 2


def test_inequalities_near_identity():
    # (1 - l3)^2 - t3^2 is ~1e-6 here, so the raw polynomial margins are tiny
    lam = [0.99855625, 0.99866562, 0.99955359]
    t = [-0.00031653, 0.00097732, 0.00015959]
    assert oracles.choi_min_eig(oracles.tmatrix_map(oracles.diag_tmatrix(lam, t))) < -1e-5
    assert not is_cp_theorem1(cf(lam, t))
    assert not inequality_report(cf(lam, t)).all_satisfied
