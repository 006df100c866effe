"""Explicit witness representations for every non-empty component.

Non-exceptional components are glued along the fixed pants decomposition
(see ``surface.decomposition``): every decomposition curve is sent to a
hyperbolic element of trace ``tau``, each pants is realised from its character
with ``fricke_pair`` and each one-holed torus from a commutator with prescribed
lift.  Exceptional components use the explicit abelian and totally
non-hyperbolic families.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .components import is_exceptional, is_nonempty, satisfies_mw, violated_bound
from .mobius import (
    ElementClass,
    Mat2,
    PSL2Element,
    Scalar,
    canonical_sign,
    classify,
    commutator,
    conjugate,
    _frame_hyperbolic,
    conjugator_matching,
    inverse,
    is_exact,
    kappa,
    mul,
    parabolic_sign,
    psl,
)
from .surface import (
    Representation,
    SurfaceSig,
    boundary_of_signs,
    p_plus,
    pgl_flip,
)
from .ucover import (
    Hyp,
    LiftedElement,
    LiftedKind,
    classify_lifted,
    ev_commutator,
    ev_product,
    trace_lifted,
)


class InfeasibleComponentError(ValueError):
    """The requested component is empty."""


class ConstructionError(RuntimeError):
    """A constructor could not realise its target."""


@dataclass(frozen=True)
class ComponentSpec:
    sig: SurfaceSig
    n: int
    s: tuple
    tau: float = 3.0
    leaf_trace: float = 4.0  # trace used for hyperbolic peripherals

    @property
    def boundary(self):
        return boundary_of_signs(self.s)


@dataclass
class EulerAllocation:
    pants: list = field(default_factory=list)
    tori: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.pants) + sum(self.tori)

    def to_json(self) -> list:
        return ([{"piece": f"P{i + 1}", "euler": m} for i, m in enumerate(self.pants)]
                + [{"piece": f"T{j + 1}", "euler": t} for j, t in enumerate(self.tori)])


# ---------------------------------------------------------------------------
# small matrix helpers


def _sqrt(x: Scalar) -> Scalar:
    """Exact square root when ``x`` is a rational square, float otherwise."""
    if is_exact(x) and x >= 0:
        x = Fraction(x)
        rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if rn * rn == x.numerator and rd * rd == x.denominator:
            return Fraction(rn, rd)
    return math.sqrt(float(x))


def _elem(m: Mat2) -> PSL2Element:
    return PSL2Element(canonical_sign(m))


def _flip_mat(m: Mat2) -> Mat2:
    return Mat2(m.d, m.c, m.b, m.a)


def _arr(g: PSL2Element) -> np.ndarray:
    return np.array(g.m.to_float(), dtype=float).reshape(2, 2)


def _adj(A: np.ndarray) -> np.ndarray:
    """Inverse of a unit-determinant 2x2 array."""
    return np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]])


def _balanced_twist(left: np.ndarray, right: np.ndarray) -> float:
    """Log-scale ``u`` minimising the Frobenius norm of ``left D_u right``,
    ``D_u = diag(e^(u/2), e^(-u/2))``: the norm is ``A e^u + B e^-u``."""
    A = float(np.sum(np.outer(left[:, 0], right[0]) ** 2))
    B = float(np.sum(np.outer(left[:, 1], right[1]) ** 2))
    return 0.5 * math.log(B / A)


_DET_FORM = np.array([[0.0, 0.0, 0.5], [0.0, -1.0, 0.0], [0.5, 0.0, 0.0]])


def balancing_conjugator(mats: Sequence[np.ndarray]) -> np.ndarray:
    """Positive symmetric ``B`` (det 1) minimising the total Frobenius norm of
    ``B X B^-1``.  With ``S = B^T B = [[e, f], [f, g]]`` the objective
    ``tr(S X S^-1 X^T)`` is a quadratic form in ``(e, f, g)`` restricted to
    ``eg - f^2 = 1``, so the minimiser is a generalised eigenvector.
    """
    basis = [np.array([[1.0, 0.0], [0.0, 0.0]]), np.array([[0.0, 1.0], [1.0, 0.0]]),
             np.array([[0.0, 0.0], [0.0, 1.0]])]
    adjs = [np.array([[0.0, 0.0], [0.0, 1.0]]), np.array([[0.0, -1.0], [-1.0, 0.0]]),
            np.array([[1.0, 0.0], [0.0, 0.0]])]
    X = np.asarray(mats, dtype=float)
    M = np.einsum("iab,nbc,jcd,nad->ij", np.asarray(basis), X, np.asarray(adjs), X)
    M = (M + M.T) / 2
    vals, vecs = np.linalg.eig(np.linalg.solve(_DET_FORM, M))
    best, best_f = None, math.inf
    for k in range(3):
        if abs(vals[k].imag) > 1e-9:
            continue
        v = vecs[:, k].real
        q = v @ _DET_FORM @ v
        if q <= 0:
            continue
        v = v / math.sqrt(q)
        if v[0] < 0:
            v = -v
        f = v @ M @ v
        if f < best_f:
            best, best_f = v, f
    if best is None:
        return np.eye(2)
    S = np.array([[best[0], best[1]], [best[1], best[2]]])
    return (S + np.eye(2)) / math.sqrt(np.trace(S) + 2)


def random_sl2(rng: np.random.Generator, log_stretch: float = 0.5) -> PSL2Element:
    """Random ``R(t1) diag(e^r, e^-r) R(t2)`` with ``|r| <= log_stretch``.

    Entries stay within ``e^log_stretch`` (< 4 by default) and the condition
    number within ``e^(2 log_stretch)``, which bounds float growth.
    """
    t1, t2 = rng.uniform(0, math.pi, 2)
    r = rng.uniform(-log_stretch, log_stretch)

    def rot(t):
        return np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])

    h = rot(t1) @ np.diag([math.exp(r), math.exp(-r)]) @ rot(t2)
    return _elem(Mat2(*(float(v) for v in h.ravel())))


# ---------------------------------------------------------------------------
# Fricke pairs


def fricke_pair(x: Scalar, y: Scalar, z: Scalar) -> tuple[Mat2, Mat2]:
    """SL(2,R) pair with ``(tr A, tr B, tr AB) = (x, y, z)``.

    For ``|z| >= 2``: ``A = [[x,-1],[1,0]]``, ``B = [[0,zeta],[-1/zeta,y]]`` with
    ``zeta + 1/zeta = z``.  Otherwise ``B = [[p,q],[r,y-p]]`` with the free
    entry ``r`` chosen to make the remaining quadratic solvable.
    """
    A = Mat2(x, -1, 1, 0)
    if abs(z) >= 2:
        root = _sqrt(z * z - 4)
        zeta = (z + root) / 2 if z > 0 else (z - root) / 2
        return A, Mat2(0, zeta, -1 / zeta, y)
    # p^2 - p (y + x r) + (r^2 + z r + 1) = 0, discriminant D(r)
    qa, qb, qc = x * x - 4, 2 * x * y - 4 * z, y * y - 4
    if qc >= 0:
        r = 0
    elif qa > 0:
        r = (abs(qb) + _sqrt(qb * qb - 4 * qa * qc)) / (2 * qa) + 1
        r = r if qb >= 0 else -r
    elif qa == 0:
        if qb == 0:
            raise ConstructionError(f"no real pair with character {(x, y, z)}")
        r = -2 * qc / qb
    else:
        r = -qb / (2 * qa)
    disc = qa * r * r + qb * r + qc
    if disc < 0:
        if disc > -1e-12:
            disc = 0
        else:
            raise ConstructionError(f"no real pair with character {(x, y, z)} (kappa = {kappa(x, y, z)})")
    p = ((y + x * r) + _sqrt(disc)) / 2
    q = z - x * p + r
    return A, Mat2(p, q, r, y - p)


# ---------------------------------------------------------------------------
# pants and tori with prescribed boundary lifts


def _pants_signs(x1: PSL2Element, x2: PSL2Element) -> tuple[int, int]:
    out = []
    for g in (x1, x2):
        k = classify(g)
        out.append(0 if k is ElementClass.HYPERBOLIC else parabolic_sign(g.m))
    return tuple(out)


@functools.lru_cache(maxsize=4096)
def pants_pair_from_traces(t1: Scalar, s1: int, t2: Scalar, s2: int, m: int, t3: Scalar
                           ) -> tuple[PSL2Element, PSL2Element]:
    """(X1, X2) of classes s1, s2 with canonical-lift traces t1, t2 and
    ``ev_product(X1, X2)`` in Hyp_m with trace ``(-1)^m t3``."""
    z = t3 if m % 2 == 0 else -t3
    A, B = fricke_pair(t1, t2, z)
    for M1, M2 in ((A, B), (_flip_mat(A), _flip_mat(B))):
        x1, x2 = _elem(M1), _elem(M2)
        got = classify_lifted(ev_product(x1, x2))
        if got == Hyp(m) and _pants_signs(x1, x2) == (s1, s2):
            return x1, x2
    raise ConstructionError(f"no pants pair with signs {(s1, s2)} and Euler class {m}")


def _admissible_pants(signs: Sequence[int]) -> list[int]:
    """Euler classes allowed for a pants with at least one hyperbolic boundary."""
    nz = [x for x in signs if x != 0]
    if len(nz) == 3:
        raise ValueError("pants with three parabolic boundaries")
    if len(nz) == 2:
        return [(nz[0] + nz[1]) // 2]
    if len(nz) == 1:
        return sorted({0, nz[0]})
    return [-1, 0, 1]


def pants_rep_with_boundary(s1: int, s2: int, m: int, target: LiftedElement) -> Representation:
    """Three-holed sphere rep with signs (s1, s2, 0) and ``c~1 c~2 = target``.

    Built from explicit one-parameter families whose product trace is monotone
    in the parameter, then conjugated so the product equals the target.
    """
    if m not in _admissible_pants((s1, s2, 0)):
        raise ConstructionError(f"Euler class {m} is not admissible for signs {(s1, s2, 0)}")
    cls = classify_lifted(target)
    if cls != Hyp(m):
        raise ConstructionError(f"target lies in {cls}, expected Hyp_{m}")
    T = float(trace_lifted(target))
    if s1 != 0 and s2 != 0:
        lam = math.sqrt((2 - T) / (s1 * s2))
        L = Mat2(1.0, 0.0, lam, 1.0)
        g1 = Mat2(1.0, float(s1), 0.0, 1.0)
        g2 = L @ Mat2(1.0, float(s2), 0.0, 1.0) @ L.inv()
    elif s1 != 0 or s2 != 0:
        s = s1 or s2
        u = (-T + math.sqrt(T * T + 12)) / 2  # e^lambda solving 3/u - u = T
        M = Mat2(1.0, 0.0, 2.0 * s, 1.0)
        par = M @ Mat2(1.0, float(s), 0.0, 1.0) @ M.inv()
        hyp = Mat2(u, 0.0, 0.0, 1 / u)
        # (hyp, par) ordering keeps the product: (par hyp par^-1) par = par hyp
        g1, g2 = (par, hyp) if s1 != 0 else (par @ hyp @ par.inv(), par)
    else:
        if m == 0:
            lam = 0.5 * math.acosh(T / 2)
            g1 = g2 = Mat2(math.exp(lam), 0.0, 0.0, math.exp(-lam))
        else:
            lam = m * 0.5 * math.acosh((4 - T) / 2)
            N = Mat2(-1.0, 1.0, -2.0, 1.0)
            g1 = Mat2(math.exp(lam), 0.0, 0.0, math.exp(-lam))
            g2 = N @ g1 @ N.inv()
    x1, x2 = _elem(g1), _elem(g2)
    got = classify_lifted(ev_product(x1, x2))
    if got != Hyp(m):
        raise ConstructionError(f"family landed in {got}, expected Hyp_{m}")
    k = conjugator_matching(mul(x1, x2), target.base)
    x1, x2 = conjugate(x1, k), conjugate(x2, k)
    return Representation(SurfaceSig(0, 3), (), (), (x1, x2, inverse(mul(x1, x2))))


def _solve_w(kappa_target: float) -> float:
    # kappa(w, w, w) = 3w^2 - w^3 - 2 decreases on w > 2 from 2 to -inf
    return brentq(lambda w: 3 * w * w - w ** 3 - 2 - kappa_target, 2.0, 2.0 + 10 + abs(kappa_target))


@functools.lru_cache(maxsize=256)
def torus_pair_from_trace(m: int, tau: float) -> tuple[PSL2Element, PSL2Element]:
    """Pair whose lifted commutator lies in Hyp_m with |trace| tau, up to conjugation."""
    if m == 0:
        A, B = fricke_pair(0.0, 0.0, math.sqrt(tau + 2))
    elif m in (-1, 1):
        w = _solve_w(-tau)
        A, B = fricke_pair(w, w, w)
    else:
        raise ConstructionError(f"lifted commutators only reach Hyp_n for |n| <= 1, not {m}")
    a, b = _elem(A), _elem(B)
    if classify_lifted(ev_commutator(a, b)) != Hyp(m):
        a, b = b, a
    if classify_lifted(ev_commutator(a, b)) != Hyp(m):
        raise ConstructionError(f"commutator failed to reach Hyp_{m}")
    return a, b


def torus_pair_with_commutator(target: LiftedElement, m: int | None = None) -> tuple[PSL2Element, PSL2Element]:
    cls = classify_lifted(target)
    if cls.kind is not LiftedKind.HYP or abs(cls.level) > 1:
        raise ConstructionError(f"target {cls} is not a hyperbolic class reached by commutators")
    if m is not None and cls.level != m:
        raise ConstructionError(f"target lies in {cls}, expected Hyp_{m}")
    a, b = torus_pair_from_trace(cls.level, abs(float(trace_lifted(target))))
    k = conjugator_matching(commutator(a, b), target.base)
    return conjugate(a, k), conjugate(b, k)


# ---------------------------------------------------------------------------
# allocation


@dataclass(frozen=True)
class _Slot:
    """A leaf of the decomposition: a torus boundary [a_j,b_j] or a puncture c_i."""

    kind: str  # "K" or "c"
    index: int  # 1-based
    sign: int


def _leaves(sig: SurfaceSig, s: Sequence[int]) -> list[_Slot]:
    return ([_Slot("K", j, 0) for j in range(1, sig.g + 1)]
            + [_Slot("c", i, s[i - 1]) for i in range(1, sig.p + 1)])


def _pants_leaf_signs(sig: SurfaceSig, s: Sequence[int]) -> list[tuple]:
    leaves = _leaves(sig, s)
    m = len(leaves)
    if m == 3:
        return [tuple(x.sign for x in leaves)]
    out = [(leaves[0].sign, leaves[1].sign, 0)]
    out += [(0, leaves[i].sign, 0) for i in range(2, m - 2)]
    out.append((0, leaves[m - 2].sign, leaves[m - 1].sign))
    return out


def allocate(sig: SurfaceSig, s: Sequence[int], n: int) -> EulerAllocation:
    """Greedy split of n over the pieces: start at every minimum, then raise.

    Pants with a single negative parabolic are raised first (towards 0), then
    the remaining pants in path order, tori last.
    """
    signs = _pants_leaf_signs(sig, s)
    sets = [_admissible_pants(x) for x in signs]
    alloc = EulerAllocation([min(a) for a in sets], [-1] * sig.g)
    need = n - alloc.total
    if need < 0:
        raise InfeasibleComponentError(f"n = {n} below the minimum {alloc.total}")
    order = sorted(range(len(sets)), key=lambda i: 0 if sets[i] == [-1, 0] else 1)
    for i in order:
        step = min(need, max(sets[i]) - alloc.pants[i])
        alloc.pants[i] += step
        need -= step
    for j in range(sig.g):
        step = min(need, 2)
        alloc.tori[j] += step
        need -= step
    if need:
        raise InfeasibleComponentError(f"n = {n} above the maximum {n - need}")
    return alloc


# ---------------------------------------------------------------------------
# exceptional and explicit families


def abelian_exceptional(sig: SurfaceSig, lone_index: int = 1, lone_sign: int = 1) -> Representation:
    """All peripherals in one parabolic subgroup: one of sign ``lone_sign``."""
    if sig.g != 0:
        raise ValueError("abelian exceptional components live on spheres")
    p = sig.p
    c = [psl(1, -1, 0, 1)] * p
    c[lone_index - 1] = psl(1, p - 1, 0, 1)
    rep = Representation(sig, (), (), tuple(c), {"construction": "abelian-exceptional"})
    return rep if lone_sign > 0 else pgl_flip(rep)


PANTS_POS = (psl(-1, 2, -2, 3), psl(1, 2, 0, 1))  # Euler class 1, signs +++
PANTS_NEG = (psl(3, -2, 2, -1), psl(1, 0, 2, 1))  # Euler class -1, signs ---


def tnh_exceptional(sig: SurfaceSig, sign: int = 1, deformed: bool = True) -> Representation:
    """Type-preserving witness with all signs ``sign`` and Euler class ``sign``.

    ``deformed=False`` returns the rational family with c_1, c_2 as printed and
    c_i = [[1,1],[0,1]] otherwise; its decomposition curves are parabolic.  The
    default moves c_p along a path of positive parabolics until every
    decomposition curve is elliptic, and re-glues the first pants to match.
    """
    if sig.g != 0:
        raise ValueError("totally non-hyperbolic exceptional components live on spheres")
    p = sig.p
    if p == 3:
        x, y = PANTS_POS
        rep = Representation(sig, (), (), (x, y, inverse(mul(x, y))), {"construction": "chi-1-explicit"})
        return rep if sign > 0 else pgl_flip(rep)
    par = psl(1, 1, 0, 1)
    if not deformed:
        q = Fraction(4, 2 - p)
        c = (psl(3, p - 2, q, -1), psl(1, 0, q, 1)) + (par,) * (p - 2)
    else:
        r = math.sqrt(p - 3)
        cp = _elem(Mat2(1 - 1 / r, 1.0, -1 / (p - 3), 1 + 1 / r))
        tail = (par,) * (p - 3) + (cp,)
        d1 = _elem(Mat2(1, 0, 0, 1))
        for x in tail:
            d1 = mul(d1, x)
        # first pants: positive parabolics with product trace -1, glued to d1^-1
        A, B = fricke_pair(2, 2, -1)
        x1, x2 = _elem(A), _elem(B)
        if _pants_signs(x1, x2) != (1, 1):
            x1, x2 = _elem(_flip_mat(A)), _elem(_flip_mat(B))
        k = conjugator_matching(mul(x1, x2), inverse(d1))
        c = (conjugate(x1, k), conjugate(x2, k)) + tail
    rep = Representation(sig, (), (), tuple(c), {"construction": "tnh-exceptional"})
    return rep if sign > 0 else pgl_flip(rep)


D_HALF = psl(2, 0, 0, Fraction(1, 2))
A_FIVE_THIRDS = psl(Fraction(5, 3), Fraction(4, 3), Fraction(4, 3), Fraction(5, 3))
P_POS = psl(1, 1, 0, 1)

# one-holed torus pairs with parabolic boundary, keyed by (n, s)
TORUS_PARABOLIC = {
    (-1, -1): (A_FIVE_THIRDS, D_HALF),
    (0, -1): (D_HALF, P_POS),
    (0, 1): (P_POS, D_HALF),
    (1, 1): (D_HALF, A_FIVE_THIRDS),
}


def _torus_rep(a: PSL2Element, b: PSL2Element, construction: str) -> Representation:
    return Representation(SurfaceSig(1, 1), (a,), (b,), (inverse(commutator(a, b)),),
                          {"construction": construction})


# ---------------------------------------------------------------------------
# gluing


def _glue(spec: ComponentSpec, rng: np.random.Generator | None, amplitude: float) -> Representation:
    sig, s, n, tau = spec.sig, tuple(spec.s), spec.n, spec.tau
    alloc = allocate(sig, s, n)
    leaves = _leaves(sig, s)
    m = len(leaves)

    def trace_of(slot: _Slot):
        if slot.kind == "K":
            return tau
        return 2.0 if slot.sign else spec.leaf_trace

    # every value is kept as (K, x): the element K x K^-1 with x a small
    # normal-form matrix, so conjugators are only ever computed between small
    # matrices and the growing part is a plain product
    def attach(g, target):
        """Accumulated conjugator sending g to the target."""
        K, t0 = target
        ks = _arr(conjugator_matching(g, t0))
        F0 = _arr(t0)
        if np.trace(F0) < 0:
            F0 = -F0
        F0 = np.array(_frame_hyperbolic(Mat2(*F0.ravel())), dtype=float).reshape(2, 2)
        # choose the twist along the target that keeps the conjugator smallest
        u = _balanced_twist(K @ F0, _adj(F0) @ ks)
        if rng is not None:
            u += amplitude * rng.uniform(-1, 1)
        c0 = F0 @ np.diag([math.exp(u / 2), math.exp(-u / 2)]) @ _adj(F0)
        return K @ c0 @ ks

    value: dict = {}
    eye = np.eye(2)
    if m == 3:
        # one pants: rotate so that the determined slot is hyperbolic
        r = next(i for i in range(3) if leaves[(i + 2) % 3].sign == 0)
        l1, l2, l3 = leaves[r], leaves[(r + 1) % 3], leaves[(r + 2) % 3]
        x1, x2 = pants_pair_from_traces(trace_of(l1), l1.sign, trace_of(l2), l2.sign,
                                        alloc.pants[0], trace_of(l3))
        value[l1], value[l2], value[l3] = (eye, x1), (eye, x2), (eye, inverse(mul(x1, x2)))
    else:
        l0, l1 = leaves[0], leaves[1]
        x1, x2 = pants_pair_from_traces(trace_of(l0), l0.sign, trace_of(l1), l1.sign, alloc.pants[0], tau)
        value[l0], value[l1] = (eye, x1), (eye, x2)
        d = (eye, inverse(mul(x1, x2)))
        for i in range(2, m - 2):
            leaf = leaves[i]
            x1, x2 = pants_pair_from_traces(trace_of(leaf), leaf.sign, tau, 0, alloc.pants[i - 1], tau)
            K = attach(inverse(mul(x1, x2)), (d[0], inverse(d[1])))
            value[leaf] = (K, x1)
            d = (K, x2)
        la, lb = leaves[m - 2], leaves[m - 1]
        x1, x2 = pants_pair_from_traces(trace_of(la), la.sign, trace_of(lb), lb.sign, alloc.pants[-1], tau)
        K = attach(inverse(mul(x1, x2)), (d[0], inverse(d[1])))
        value[la], value[lb] = (K, x1), (K, x2)

    a_list, b_list = [], []
    for j in range(1, sig.g + 1):
        a, b = torus_pair_from_trace(alloc.tori[j - 1], tau)
        K = attach(commutator(a, b), value[_Slot("K", j, 0)])
        a_list.append((K, a))
        b_list.append((K, b))
    c_list = [value[_Slot("c", i, s[i - 1])] for i in range(1, sig.p + 1)]

    def materialize(pairs, B):
        out = []
        for K, x in pairs:
            BK = B @ K
            out.append(_elem(Mat2(*(float(v) for v in (BK @ _arr(x) @ _adj(BK)).ravel()))))
        return tuple(out)

    raw = [K @ _arr(x) @ _adj(K) for K, x in (*a_list, *b_list, *c_list)]
    B = balancing_conjugator(raw)
    prov = {"construction": "glued", "allocation": alloc.to_json(), "tau": tau}
    return Representation(sig, materialize(a_list, B), materialize(b_list, B), materialize(c_list, B), prov)


def _construct(spec: ComponentSpec, rng: np.random.Generator | None, amplitude: float,
               prefer_exact: bool = False) -> Representation:
    sig, n, s = spec.sig, spec.n, tuple(spec.s)
    if len(s) != sig.p:
        raise ValueError(f"sign vector of length {len(s)} on {sig}")
    if not is_nonempty(sig, n, s):
        raise InfeasibleComponentError(f"component (n={n}, s={s}) of {sig} is empty: {violated_bound(sig, n, s)}")
    if is_exceptional(sig, n, s) and not satisfies_mw(sig, n, s):
        if n == 0:
            lone_sign = 1 if p_plus(s) == 1 else -1
            lone = next(i for i, x in enumerate(s, 1) if x == lone_sign)
            return abelian_exceptional(sig, lone, lone_sign)
        return tnh_exceptional(sig, n, deformed=not prefer_exact)
    if sig == SurfaceSig(1, 1):
        if s[0] != 0:
            a, b = TORUS_PARABOLIC[(n, s[0])]
            return _torus_rep(a, b, "chi-1-explicit")
        a, b = torus_pair_from_trace(n, spec.leaf_trace)
        return _torus_rep(a, b, "glued")
    return _glue(spec, rng, amplitude)


def _with_provenance(rep: Representation, spec: ComponentSpec) -> Representation:
    prov = dict(rep.provenance or {})
    prov["component"] = {"g": spec.sig.g, "p": spec.sig.p, "n": spec.n, "s": list(spec.s),
                         "boundary": spec.boundary.value}
    prov.setdefault("allocation", [])
    return Representation(rep.sig, rep.a, rep.b, rep.c, prov)


def representative(spec: ComponentSpec, prefer_exact: bool = False) -> Representation:
    """Witness in the component; ``prefer_exact`` picks rational families where one exists."""
    return _with_provenance(_construct(spec, None, 0.0, prefer_exact), spec)


def random_rep_in_component(spec: ComponentSpec, seed: int, amplitude: float = 0.5) -> Representation:
    """Representative deformed by random twists along gluing curves and a random conjugation."""
    if amplitude == 0:
        return representative(spec)
    rng = np.random.default_rng(seed)
    rep = _construct(spec, rng, amplitude)
    h = random_sl2(rng)
    rep = rep.map(lambda g: conjugate(g, h))
    return _with_provenance(rep, spec)


def spec_for(g: int, p: int, n: int, s: Sequence[int], tau: float = 3.0) -> ComponentSpec:
    return ComponentSpec(SurfaceSig(g, p), n, tuple(s), tau)
