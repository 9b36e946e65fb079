"""Holevo capacity of qubit channels.

``C = max [ S(Phi(sum p_j rho_j)) - sum p_j S(Phi(rho_j)) ]`` over pure-state
ensembles.  A qubit state of Bloch radius r has entropy h(r), so for inputs
r_j the objective is ``h(|sum p_j o_j|) - sum p_j h(|o_j|)`` with
``o_j = t + T r_j``.  Values are in nats unless bits are requested.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._config import CLASSIFY_TOL
from .canonical import reduce
from .cpcheck import is_cp_theorem1
from .errors import DomainError, NotCP, NotExtremeForm, NotTypeIA, NotTypeIC
from .extreme import trig_from_canonical
from .geometry import fibonacci_sphere
from .pauli import apply_channel

LOG2 = float(np.log(2.0))


def binary_entropy(t):
    """h(t) = -(1+t)/2 log((1+t)/2) - (1-t)/2 log((1-t)/2), with 0 log 0 = 0."""
    t = float(t)
    if not abs(t) <= 1 + 1e-12:
        raise DomainError(f"|t| must not exceed 1, got {t}")
    r = min(abs(t), 1.0)
    out = 0.0
    for q in (0.5 * (1 + r), 0.5 * (1 - r)):
        if q > 0:
            out -= q * np.log(q)
    return float(out)


def output_entropy(ch, rho):
    out = apply_channel(ch, rho)
    return binary_entropy(min(np.linalg.norm(out.w / out.w0), 1.0))


@dataclass(frozen=True)
class Ensemble:
    probs: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        s = np.atleast_2d(np.asarray(self.states, dtype=np.float64))
        if np.any(p < 0) or abs(p.sum() - 1) > 1e-12:
            raise DomainError("probabilities must be non-negative and sum to 1")
        if s.shape != (p.size, 3) or np.abs(np.linalg.norm(s, axis=1) - 1).max() > 1e-9:
            raise DomainError("states must be unit Bloch vectors, one per probability")
        p.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "states", s)


@dataclass(frozen=True)
class CapacityResult:
    value: float
    ensemble: Ensemble
    iterations: int
    converged: bool
    unit: str = "nats"


@dataclass(frozen=True)
class CapacityConfig:
    n_lattice: int = 24
    top_k: int = 4
    n_states: int = 4
    step0: float = 0.5
    step_min: float = 1e-7
    max_iter: int = 20000
    bits: bool = False


def holevo_chi(ch, ensemble):
    t, T = ch.t, ch.T
    out = t + ensemble.states @ T.T
    mean = ensemble.probs @ out
    return binary_entropy(min(np.linalg.norm(mean), 1.0)) - sum(
        p * binary_entropy(min(np.linalg.norm(o), 1.0)) for p, o in zip(ensemble.probs, out))


def _angles(points):
    return np.column_stack([np.arccos(np.clip(points[:, 2], -1, 1)),
                            np.arctan2(points[:, 1], points[:, 0])])


def _seeds(t, T, cfg):
    k = cfg.n_states
    lat = _angles(fibonacci_sphere(cfg.n_lattice))
    weights = np.array([0.5, 0.25, 0.75])
    scores = np.asarray(kernels.pair_scores(t, T, lat, weights))
    pairs = [(a, b) for a in range(len(lat)) for b in range(a + 1, len(lat))]
    flat = np.argsort(-scores, axis=None, kind="stable")
    seeds, used = [], set()
    for idx in flat:
        row, w = divmod(int(idx), len(weights))
        if row in used:
            continue
        used.add(row)
        a, b = pairs[row]
        x = np.zeros(3 * k)
        # two live states, the rest parked at their antipodes with zero weight
        th = [lat[a, 0], lat[b, 0]] + [np.pi - lat[a, 0], np.pi - lat[b, 0]][:k - 2]
        ph = [lat[a, 1], lat[b, 1]] + [lat[a, 1] + np.pi, lat[b, 1] + np.pi][:k - 2]
        x[:k] = th
        x[k:2 * k] = ph
        x[2 * k] = np.sqrt(weights[w])
        x[2 * k + 1] = np.sqrt(1 - weights[w])
        seeds.append(x)
        if len(seeds) == cfg.top_k:
            break
    if k == 4:
        tet = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / np.sqrt(3)
        ang = _angles(tet)
        seeds.append(np.concatenate([ang[:, 0], ang[:, 1], np.full(4, 0.5)]))
    return seeds


def _decode(x, k):
    th, ph, y = x[:k], x[k:2 * k], x[2 * k:3 * k]
    p = y ** 2 / np.sum(y ** 2)
    states = np.column_stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])
    keep = p > 1e-12
    states, p = states[keep], p[keep]
    # merge states that coincide
    merged_s, merged_p = [], []
    for s, q in zip(states, p):
        for i, ms in enumerate(merged_s):
            if np.linalg.norm(ms - s) < 1e-6:
                merged_p[i] += q
                break
        else:
            merged_s.append(s)
            merged_p.append(q)
    merged_p = np.array(merged_p)
    return Ensemble(merged_p / merged_p.sum(), np.array(merged_s))


def optimize_chi(ch, config=None):
    """Run the multi-start compass search without the CP gate."""
    cfg = config or CapacityConfig()
    t = np.ascontiguousarray(ch.t, dtype=np.float64)
    T = np.ascontiguousarray(ch.T, dtype=np.float64)
    k = cfg.n_states
    best = None
    total = 0
    for x0 in _seeds(t, T, cfg):
        x, f, it, conv = kernels.compass_search(t, T, x0, k, cfg.step0, cfg.step_min, cfg.max_iter)
        total += int(it)
        if best is None or f > best[1]:
            best = (np.array(x), float(f), bool(conv))
    x, f, conv = best
    value = min(max(f, 0.0), LOG2)
    unit = "nats"
    if cfg.bits:
        value /= LOG2
        unit = "bits"
    return CapacityResult(value, _decode(x, k), total, conv, unit)


def holevo_capacity(ch, config=None):
    if not is_cp_theorem1(reduce(ch)):
        raise NotCP("map is not completely positive")
    return optimize_chi(ch, config)


def two_state_grid(ch, n=40):
    """Brute-force lower bound: best two-state ensemble in the canonical x-z plane."""
    cf = reduce(ch)
    val, _ = kernels.two_state_grid(np.ascontiguousarray(cf.tvec), np.diag(cf.lam), n)
    return float(val)


def binary_channel_capacity(cf, tol=CLASSIFY_TOL):
    """Closed form for lam2 = lam3 = 0: h of the translation transverse to the lam1 axis."""
    if abs(cf.lam[1]) > tol or abs(cf.lam[2]) > tol:
        raise NotTypeIC(f"needs lambda2 = lambda3 = 0, got {cf.lam[1]:.3g}, {cf.lam[2]:.3g}")
    return binary_entropy(min(float(np.hypot(cf.tvec[1], cf.tvec[2])), 1.0))


def binary_capacity_check(ch, config=None, flag_tol=1e-4):
    """(closed form, optimizer value, disagreement flag) for a segment channel."""
    closed = binary_channel_capacity(reduce(ch))
    found = holevo_capacity(ch, config).value
    return closed, found, abs(closed - found) > flag_tol


def orthogonal_and_minentropy_baselines(cf):
    """Closed forms for the orthogonal pair along lam1 and for the two contact states."""
    try:
        p = trig_from_canonical(cf)
    except NotExtremeForm as exc:
        raise NotTypeIA(str(exc)) from None
    su, sv, cv = np.sin(p.u), np.sin(p.v), np.cos(p.v)
    if abs(sv) <= CLASSIFY_TOL:
        raise NotTypeIA("sin v = 0: no contact pair to compare against")
    orth = binary_entropy(su * sv) - binary_entropy(np.sqrt(max(0.0, 1 - su ** 2 * cv ** 2)))
    minent = binary_entropy(min(abs(su / sv), 1.0))
    return float(orth), float(minent)


def overlap(a, b):
    """|<psi_a|psi_b>|^2 = (1 + a . b) / 2 for pure states with Bloch vectors a, b."""
    return 0.5 * (1.0 + float(np.dot(a, b)))
