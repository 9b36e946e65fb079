"""Extreme points: classification, trigonometric form and its Kraus pair.

A CP map is in the closure of the extreme points exactly when its R_Phi is
unitary, equivalently when its Choi rank is at most 2.  On the closure the
canonical data take the form

    lam = (cos u, cos v, cos u cos v),   t = (0, 0, sin u sin v),

with ``u in [0, 2 pi)`` and ``v in [0, pi)``.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._config import CLASSIFY_TOL, RANK_TOL
from .canonical import reduce
from .choi import choi_of, choi_rank
from .cpcheck import is_cp_theorem1, r_phi
from .errors import NotCP, NotExtremeForm, TooManyOperators
from .pauli import I2, KrausSet, SX, SY, SZ, TMatrix


class Kind(str, Enum):
    IA = "TrueExtremeNonUnital_IA"
    IB = "TrueExtremeMergedContact_IB"
    IC = "TrueExtremeDegenerate_IC"
    II = "UnitaryExtreme_II"
    III = "QuasiExtreme_III"
    NONE = "NotGeneralizedExtreme"

    @property
    def generalized(self):
        return self is not Kind.NONE

    @property
    def true_extreme(self):
        """Unitary channels (II) are true extreme points as well."""
        return self in (Kind.IA, Kind.IB, Kind.IC, Kind.II)


@dataclass(frozen=True)
class ExtremalClass:
    kind: Kind
    detail: str = ""


@dataclass(frozen=True)
class TrigParams:
    u: float
    v: float


def _subclass(lam, t, tol):
    a = np.abs(lam)
    tn = float(np.linalg.norm(t))
    if np.all(np.abs(a - 1) <= tol):
        return Kind.II, "all |lambda| = 1: a unitary channel"
    if tn < tol and abs(a[0] - 1) <= tol and a[2] < 1 - tol:
        return Kind.III, "t = 0, |lambda1| = 1, |lambda3| < 1: quasi-extreme only"
    if a[1] <= tol and a[2] <= tol and tn > tol:
        return Kind.IC, "lambda2 = lambda3 = 0: image is a segment with both ends on the sphere"
    if abs(a[0] - a[1]) <= tol and tol < a[0] < 1 - tol:
        return Kind.IB, "|lambda1| = |lambda2|: the two contact points merge at a pole"
    if abs(t[2]) > tol:
        return Kind.IA, "non-unital, two distinct contact points"
    return Kind.IA, "generalized extreme point with no distinguished sub-type"


def classify(ch, tol=CLASSIFY_TOL, rank_tol=RANK_TOL):
    cf = reduce(ch)
    if not is_cp_theorem1(cf):
        raise NotCP("map is not completely positive")
    unitary = r_phi(cf).is_unitary
    rank = choi_rank(choi_of(ch), rank_tol)
    generalized = rank <= 2
    note = ""
    if unitary != generalized:
        # borderline under the two tolerances; the Choi rank is the oracle
        note = f" (R_Phi unitarity {unitary} disagrees with Choi rank {rank} at this tolerance)"
    if not generalized:
        return ExtremalClass(Kind.NONE, f"Choi rank {rank} > 2" + note)
    kind, detail = _subclass(cf.lam, cf.tvec, tol)
    return ExtremalClass(kind, detail + note)


def channel_from_trig(p):
    u, v = p.u, p.v
    return TMatrix.diagonal([np.cos(u), np.cos(v), np.cos(u) * np.cos(v)],
                            [0.0, 0.0, np.sin(u) * np.sin(v)])


def trig_from_canonical(cf, tol=CLASSIFY_TOL):
    l1, l2, l3 = (float(x) for x in cf.lam)
    t1, t2, t3 = (float(x) for x in cf.tvec)
    if abs(t1) > tol or abs(t2) > tol:
        raise NotExtremeForm(f"t1, t2 must vanish, got ({t1:.3g}, {t2:.3g})")
    if abs(l3 - l1 * l2) > tol:
        raise NotExtremeForm(f"lambda3 = {l3:.12g} differs from lambda1 lambda2 = {l1 * l2:.12g}")
    gap = t3 ** 2 - (1 - l1 ** 2) * (1 - l2 ** 2)
    if abs(gap) > tol:
        raise NotExtremeForm(f"t3^2 - (1 - lambda1^2)(1 - lambda2^2) = {gap:.3g}")
    if l2 < -1 + tol and abs(l2 + 1) <= tol:
        raise NotExtremeForm("lambda2 = -1 needs v = pi, outside [0, pi); conjugate by a Pauli matrix first")
    v = float(np.arccos(np.clip(l2, -1.0, 1.0)))
    a = float(np.arccos(np.clip(l1, -1.0, 1.0)))
    u = a if t3 >= 0 else 2 * np.pi - a
    if u >= 2 * np.pi:
        u -= 2 * np.pi
    return TrigParams(u, v)


def kraus_trig(p):
    cu, su = np.cos(p.u / 2), np.sin(p.u / 2)
    cv, sv = np.cos(p.v / 2), np.sin(p.v / 2)
    a_plus = cv * cu * I2 + sv * su * SZ
    a_minus = sv * cu * SX - 1j * cv * su * SY
    return KrausSet((a_plus, a_minus))


def kraus_products_trig(p):
    """Closed forms of 2 A_+ A_+^dagger, 2 A_- A_-^dagger, 2 A_+ A_-^dagger, 2 A_- A_+^dagger."""
    u, v = p.u, p.v
    c, s = np.cos(u) * np.cos(v), np.sin(u) * np.sin(v)
    return ((1 + c) * I2 + s * SZ, (1 - c) * I2 - s * SZ,
            np.sin(v) * SX + 1j * np.sin(u) * SY, np.sin(v) * SX - 1j * np.sin(u) * SY)


def product_gram(ks):
    ops = list(ks)
    prods = [a @ b.conj().T for a in ops for b in ops]
    return np.array([[np.trace(x.conj().T @ y) for y in prods] for x in prods])


def kraus_products_independent(ks, tol=1e-10):
    """Linear independence of {A_j A_k^dagger} through its Hilbert-Schmidt Gram matrix."""
    if len(ks) > 2:
        raise TooManyOperators(f"{len(ks)} operators; at most 2 are supported")
    g = product_gram(ks)
    return bool(np.linalg.eigvalsh(g).min() > tol)
