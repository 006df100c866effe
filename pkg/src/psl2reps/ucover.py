"""The universal cover of PSL(2,R) as lifts of the boundary circle action.

An element is a pair (g, f) with f: R -> R the increasing lift of the action of
g on RP^1 = R / pi Z.  Such an f is determined by f(0), and f(0) is congruent
mod pi to the angle alpha of the direction g.e1.  We therefore store only the
integer ``k`` with ``f(0) = k*pi + alpha``; every group operation then reduces
to orientation tests between direction vectors, which are exact for rational
entries.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .mobius import (
    EPS,
    ElementClass,
    Mat2,
    PSL2Element,
    PSL_IDENTITY,
    Scalar,
    canonical_sign,
    classify,
    inverse,
    mul,
    normalize_direction,
)


class ClassificationError(ValueError):
    """The element is not in the class the operation requires."""


class AmbiguousClassificationError(ClassificationError):
    """Float rounding does not decide the component."""


class StepSizeError(RuntimeError):
    """Path continuation could not keep angle increments below pi/4."""


def _cross(v, w):
    return v[0] * w[1] - v[1] * w[0]


def _first_column(g: PSL2Element) -> tuple:
    return normalize_direction((g.m.a, g.m.c))


def _near_tie(v, w) -> bool:
    """``v`` and ``w`` are numerically parallel (never for exact vectors)."""
    if isinstance(v[0], float) or isinstance(w[0], float):
        scale = (abs(v[0]) + abs(v[1])) * (abs(w[0]) + abs(w[1]))
        return abs(_cross(v, w)) <= 1e-13 * scale
    return False


def _alpha(v) -> float:
    """Angle of a normalized direction, taken in [0, pi].

    Lines just below e1 have angle pi - tiny, which rounds to pi; keeping pi
    (rather than wrapping to 0) keeps theta0 continuous there.
    """
    return math.atan2(-float(v[1]), float(v[0])) if v[1] != 0 else 0.0


def _angle_less(v, w) -> bool:
    """angle(v) < angle(w) for normalized directions."""
    return _cross(v, w) < 0


class LiftedElement(NamedTuple):
    base: PSL2Element
    k: int

    @property
    def alpha(self) -> float:
        return _alpha(_first_column(self.base))

    @property
    def theta0(self) -> float:
        """f(0) for the lifted circle map."""
        return self.k * math.pi + self.alpha

    @classmethod
    def from_theta0(cls, base: PSL2Element, theta0: float) -> "LiftedElement":
        alpha = _alpha(_first_column(base))
        return cls(base, int(round((theta0 - alpha) / math.pi)))

    def __matmul__(self, other: "LiftedElement") -> "LiftedElement":
        return mul_lifted(self, other)


class LiftedKind(enum.Enum):
    CENTRAL = "Central"
    HYP = "Hyp"
    PAR_POS = "ParPos"
    PAR_NEG = "ParNeg"
    ELL = "Ell"


@dataclass(frozen=True)
class LiftedClass:
    kind: LiftedKind
    level: int

    def __str__(self) -> str:
        return f"{self.kind.value}_{self.level}"

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "level": self.level}


def Central(n: int) -> LiftedClass:
    return LiftedClass(LiftedKind.CENTRAL, n)


def Hyp(n: int) -> LiftedClass:
    return LiftedClass(LiftedKind.HYP, n)


def ParPos(n: int) -> LiftedClass:
    return LiftedClass(LiftedKind.PAR_POS, n)


def ParNeg(n: int) -> LiftedClass:
    return LiftedClass(LiftedKind.PAR_NEG, n)


def Ell(n: int) -> LiftedClass:
    return LiftedClass(LiftedKind.ELL, n)


LIFTED_IDENTITY = LiftedElement(PSL_IDENTITY, 0)


def z_power(n: int) -> LiftedElement:
    return LiftedElement(PSL_IDENTITY, n)


def mul_lifted(u: LiftedElement, v: LiftedElement) -> LiftedElement:
    wu = _first_column(u.base)
    wv = _first_column(v.base)
    gamma = normalize_direction(u.base.m.apply(wv))
    base = mul(u.base, v.base)
    if base.exact():
        wrap = 1 if _angle_less(gamma, wu) else 0
        return LiftedElement(base, u.k + v.k + wrap)
    # f_u maps [0, pi] onto [theta0(u), theta0(u) + pi]; place f_u(alpha_v) in
    # that window, settling near-ties by which end alpha_v is near
    delta = (_alpha(gamma) - _alpha(wu)) % math.pi
    if _near_tie(gamma, wu):
        if delta > math.pi / 2:
            delta -= math.pi
        if _alpha(wv) > math.pi / 2:
            delta += math.pi
    return LiftedElement.from_theta0(base, v.k * math.pi + u.theta0 + delta)


def inv_lifted(u: LiftedElement) -> LiftedElement:
    base = inverse(u.base)
    wu = _first_column(u.base)
    e1 = (1, 0)
    if _near_tie(wu, e1):
        # f(0) is within rounding of a multiple of pi; f^-1(0) is near its negative
        target = -round(u.theta0 / math.pi) * math.pi
        return LiftedElement.from_theta0(base, target)
    shift = 0 if wu[1] == 0 else 1
    return LiftedElement(base, -u.k - shift)


def conjugate_lifted(u: LiftedElement, h: LiftedElement) -> LiftedElement:
    return mul_lifted(mul_lifted(h, u), inv_lifted(h))


def sl2_projection(u: LiftedElement) -> Mat2:
    """Image in SL(2,R): the representative sending e1 into the direction f(0)."""
    m = u.base.m
    col = (m.a, m.c)
    flipped = normalize_direction(col) != col
    sign = -1 if (u.k % 2 == 1) != flipped else 1
    return m if sign == 1 else -m


def trace_lifted(u: LiftedElement) -> Scalar:
    return sl2_projection(u).tr()


def classify_lifted(u: LiftedElement, eps: float = EPS) -> LiftedClass:
    cls = classify(u.base, eps)
    if cls is ElementClass.IDENTITY:
        return Central(int(round(u.theta0 / math.pi)))
    if cls is ElementClass.ELLIPTIC:
        w = _first_column(u.base)
        if not u.base.exact():
            a = u.alpha
            if min(a, math.pi - a) < eps:
                raise AmbiguousClassificationError(
                    f"elliptic base {u.base.m} with f(0) within {eps} of a multiple of pi")
        elif w[1] == 0:
            raise AmbiguousClassificationError("elliptic base fixing a direction")
        n = u.k + 1 if u.k >= 0 else u.k
        return Ell(n)
    # hyperbolic / parabolic: f(x*) - x* is n*pi with n in {k, k+1}; the trace
    # sign of the SL(2) projection is (-1)^n, which picks one
    w = _first_column(u.base)
    if w[1] == 0:
        n = u.k
    else:
        odd = sl2_projection(u).tr() < 0
        n = u.k if (u.k % 2 == 1) == odd else u.k + 1
    if cls is ElementClass.HYPERBOLIC:
        return Hyp(n)
    return ParPos(n) if cls is ElementClass.PARABOLIC_POS else ParNeg(n)


def lift_any(g: PSL2Element) -> LiftedElement:
    """Some lift of ``g`` (the one with f(0) in [0, pi))."""
    return LiftedElement(g, 0)


def lift_canonical_hyp0(g: PSL2Element, eps: float = EPS) -> LiftedElement:
    cls = classify(g, eps)
    if cls is ElementClass.ELLIPTIC:
        raise ClassificationError("an elliptic element has no lift in the closure of Hyp_0")
    u = LiftedElement(g, 0)
    return LiftedElement(g, -classify_lifted(u, eps).level)


def lift_canonical_ell1(g: PSL2Element, eps: float = EPS) -> LiftedElement:
    if classify(g, eps) is not ElementClass.ELLIPTIC:
        raise ClassificationError("lift into Ell_1 requires an elliptic element")
    return LiftedElement(g, 0)


class LiftRule(enum.Enum):
    HYP0 = "Hyp0"
    HYP0_OR_ELL1 = "Hyp0OrEll1"


def canonical_lift(g: PSL2Element, rule: LiftRule = LiftRule.HYP0, eps: float = EPS) -> LiftedElement:
    cls = classify(g, eps)
    if cls is ElementClass.ELLIPTIC:
        if rule is LiftRule.HYP0:
            raise ClassificationError("elliptic input under the Hyp0 lift rule")
        return lift_canonical_ell1(g, eps)
    return lift_canonical_hyp0(g, eps)


def ev_product(g1: PSL2Element, g2: PSL2Element, rule: LiftRule = LiftRule.HYP0,
               eps: float = EPS) -> LiftedElement:
    return mul_lifted(canonical_lift(g1, rule, eps), canonical_lift(g2, rule, eps))


def ev_commutator(g1: PSL2Element, g2: PSL2Element) -> LiftedElement:
    a, b = lift_any(g1), lift_any(g2)
    return mul_lifted(mul_lifted(a, b), mul_lifted(inv_lifted(a), inv_lifted(b)))


IMAGE_COMMUTATOR = frozenset({
    Central(0), Hyp(0), ParPos(0), ParNeg(0), Ell(-1), Ell(1),
    ParPos(-1), ParNeg(1), Hyp(-1), Hyp(1),
})


def lifted_to_json(u: LiftedElement) -> dict:
    from .mobius import mat_to_json
    return {"matrix": mat_to_json(u.base.m), "theta0": u.theta0}


# ---------------------------------------------------------------------------
# numeric path continuation (independent of the multiplication rule above)


def one_parameter_path(g: PSL2Element, t: np.ndarray, rule: LiftRule | None = None) -> np.ndarray:
    """SL(2) matrices ``exp(t X)`` (shape (len(t), 2, 2)) with ``exp(X) = ±g``.

    Non-elliptic elements use the trace >= 2 representative.  Elliptic ones use
    the representative with positive upper-right entry, i.e. a positive
    rotation by an angle in (0, pi).  ``rule`` only validates the input.
    """
    m = g.m.to_float()
    t = np.asarray(t, dtype=float)
    cls = classify(g)
    if rule is LiftRule.HYP0 and cls is ElementClass.ELLIPTIC:
        raise ClassificationError("elliptic input under the Hyp0 lift rule")
    out = np.empty((t.size, 2, 2))
    if cls is ElementClass.IDENTITY:
        out[:] = np.eye(2)
        return out
    if cls is ElementClass.ELLIPTIC:
        if m.b < 0:
            m = -m
        th = math.acos(max(-1.0, min(1.0, m.tr() / 2)))
        c0 = np.cos(t * th)
        c1 = np.sin(t * th) / math.sin(th)
        cos_th = math.cos(th)
    else:
        if m.tr() < 0:
            m = -m
        tr = m.tr()
        if tr <= 2.0:
            c0 = np.ones_like(t)
            c1 = t
            cos_th = 1.0
        else:
            th = math.acosh(tr / 2)
            c0 = np.cosh(t * th)
            c1 = np.sinh(t * th) / math.sinh(th)
            cos_th = math.cosh(th)
    n = np.array([[m.a - cos_th, m.b], [m.c, m.d - cos_th]])
    out[:, 0, 0] = c0
    out[:, 1, 1] = c0
    out[:, 0, 1] = 0.0
    out[:, 1, 0] = 0.0
    out += c1[:, None, None] * n[None, :, :]
    return out


def continue_angle(path: np.ndarray) -> tuple[float, float]:
    """Continuously follow the direction of ``path[t] e1`` from angle 0.

    Returns (final lifted angle, largest per-step increment).
    """
    ang = np.arctan2(-path[:, 1, 0], path[:, 0, 0])
    d = np.diff(ang)
    d = (d + math.pi / 2) % math.pi - math.pi / 2
    start = ang[0] % math.pi
    if start > math.pi / 2:
        start -= math.pi
    return float(start + d.sum()), float(np.abs(d).max(initial=0.0))


def continue_path(build, steps: int, max_steps: int = 2**22) -> tuple[float, np.ndarray]:
    """Run ``build(t)`` on a uniform grid, refining until increments are < pi/4."""
    if steps < 64:
        raise ValueError("steps must be at least 64")
    n = steps
    while True:
        t = np.linspace(0.0, 1.0, n + 1)
        path = build(t)
        theta, worst = continue_angle(path)
        if worst < math.pi / 4:
            return theta, path[-1]
        if n >= max_steps:
            raise StepSizeError(f"angle increment {worst:.3g} >= pi/4 at {n} steps")
        n *= 2


def _psl_from_array(m: np.ndarray) -> PSL2Element:
    return PSL2Element(canonical_sign(Mat2(*(float(x) for x in m.ravel()))))


def path_lift_product_oracle(g1: PSL2Element, g2: PSL2Element, rule: LiftRule = LiftRule.HYP0,
                             steps: int = 2**14) -> LiftedElement:
    def build(t):
        return one_parameter_path(g1, t, rule) @ one_parameter_path(g2, t, rule)

    theta, end = continue_path(build, steps)
    return LiftedElement.from_theta0(_psl_from_array(end), theta)


def path_lift_commutator_oracle(g1: PSL2Element, g2: PSL2Element, steps: int = 2**14) -> LiftedElement:
    def build(t):
        A = one_parameter_path(g1, t)
        B = one_parameter_path(g2, t)
        return A @ B @ np.linalg.inv(A) @ np.linalg.inv(B)

    theta, end = continue_path(build, steps)
    return LiftedElement.from_theta0(_psl_from_array(end), theta)


def orientation_self_test() -> None:
    """Positive parabolic products must pass Par+_0 -> Ell_1 -> Par-_1 -> Hyp_1."""
    from fractions import Fraction
    g1 = PSL2Element.of(1, 1, 0, 1)
    expected = [(0, ParPos(0)), (1, Ell(1)), (2, ParNeg(1)), (3, Hyp(1))]
    for lam, want in expected:
        lam = Fraction(lam)
        L = Mat2(1, 0, lam, 1)
        g2 = PSL2Element.of(L @ Mat2(1, 1, 0, 1) @ L.inv())
        got = classify_lifted(ev_product(g1, g2))
        if got != want:
            raise AssertionError(f"orientation calibration failed at lambda={lam}: {got} != {want}")
