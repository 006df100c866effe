"""2x2 unit-determinant matrices, PSL(2,R) elements and their boundary action.

Entries are either exact (``int`` / ``fractions.Fraction``) or ``float``.  Every
comparison that would be an equality test in exact arithmetic goes through a
tolerance that is zero for exact entries and ``eps`` (relative once magnitudes
exceed 1) for floats.

Directions in R^2 are parametrised by an angle x in [0, pi) through the vector
``(cos x, -sin x)``.  With this orientation the rotation subgroup
``exp(t [[0,1],[-1,0]])`` and positive parabolics both move angles forward, so
the deck generator of the universal cover is a +pi shift.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Union

Scalar = Union[int, Fraction, float]

EPS = 1e-9


class InvalidElementError(ValueError):
    """Matrix entries are not finite or the determinant is not 1."""


class CentralElementError(ValueError):
    """Raised where a non-central element is required (every direction is fixed)."""


class NoConjugatorError(ValueError):
    """Two elements are not conjugate in PSL(2,R)."""


_EXACT_TYPES = (int, Fraction)


def is_exact(*xs: Scalar) -> bool:
    for x in xs:
        if type(x) is float:
            return False
        if not isinstance(x, _EXACT_TYPES) and not isinstance(x, Rational):
            return False
    return True


def to_scalar(x, exact: bool = True) -> Scalar:
    """Parse ``x`` (number or "p/q" string) into the requested backend."""
    if exact:
        if isinstance(x, float):
            return Fraction(x).limit_denominator(10**12)
        return Fraction(x)
    return float(Fraction(x)) if isinstance(x, str) else float(x)


def _tol(eps: float, *xs: Scalar) -> float:
    if is_exact(*xs):
        return 0
    scale = max((abs(x) for x in xs), default=1.0)
    return eps * max(1.0, scale)


def _sgn(x: Scalar, tol: float = 0) -> int:
    if x > tol:
        return 1
    if x < -tol:
        return -1
    return 0


class Mat2(NamedTuple):
    """Row-major 2x2 matrix ``[[a, b], [c, d]]``."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    def __matmul__(self, o: "Mat2") -> "Mat2":
        a, b, c, d = self
        e, f, g, h = o
        return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def inv(self) -> "Mat2":
        """Inverse assuming unit determinant."""
        return Mat2(self.d, -self.b, -self.c, self.a)

    def det(self) -> Scalar:
        return self.a * self.d - self.b * self.c

    def tr(self) -> Scalar:
        return self.a + self.d

    def apply(self, v: tuple) -> tuple:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def to_float(self) -> "Mat2":
        return Mat2(*(float(x) for x in self))

    def exact(self) -> bool:
        return is_exact(*self)


IDENTITY = Mat2(1, 0, 0, 1)


def check_mat(m: Mat2, eps: float = EPS) -> Mat2:
    for x in m:
        if isinstance(x, float) and not math.isfinite(x):
            raise InvalidElementError(f"non-finite entry in {m}")
    det = m.det()
    if abs(det - 1) > _tol(eps, *m):
        raise InvalidElementError(f"determinant {det} != 1 for {m}")
    return m


def canonical_sign(m: Mat2, eps: float = EPS) -> Mat2:
    """Representative of ``±m`` whose first entry that is nonzero beyond eps is positive."""
    tol = _tol(eps, *m)
    for x in m:
        if x > tol:
            return m
        if x < -tol:
            return -m
    return m


class PSL2Element(NamedTuple):
    """An element ``±m`` of PSL(2,R), stored in canonical sign."""

    m: Mat2

    @classmethod
    def of(cls, a, b=None, c=None, d=None, eps: float = EPS, check: bool = True) -> "PSL2Element":
        m = a if b is None else Mat2(a, b, c, d)
        if not isinstance(m, Mat2):
            m = Mat2(*m)
        if check:
            check_mat(m, eps)
        return cls(canonical_sign(m, eps))

    def __matmul__(self, o: "PSL2Element") -> "PSL2Element":
        return mul(self, o)

    def tr(self) -> Scalar:
        return self.m.tr()

    def exact(self) -> bool:
        return self.m.exact()


PSL_IDENTITY = PSL2Element(IDENTITY)


def mul(g: PSL2Element, h: PSL2Element) -> PSL2Element:
    return PSL2Element(canonical_sign(g.m @ h.m))


def inverse(g: PSL2Element) -> PSL2Element:
    return PSL2Element(canonical_sign(g.m.inv()))


def conjugate(g: PSL2Element, h: PSL2Element) -> PSL2Element:
    """``h g h^-1``."""
    return PSL2Element(canonical_sign(h.m @ g.m @ h.m.inv()))


def commutator(g: PSL2Element, h: PSL2Element) -> PSL2Element:
    return PSL2Element(canonical_sign(g.m @ h.m @ g.m.inv() @ h.m.inv()))


def distance_to_identity(g: PSL2Element) -> float:
    """Max-entry deviation of ``±g`` from ``±I``."""
    a, b, c, d = g.m
    return float(min(max(abs(a - 1), abs(b), abs(c), abs(d - 1)),
                     max(abs(a + 1), abs(b), abs(c), abs(d + 1))))


def is_identity(g: PSL2Element, eps: float = EPS) -> bool:
    a, b, c, d = g.m
    if g.exact():
        return b == 0 and c == 0 and a == d and a * a == 1
    return distance_to_identity(g) <= _tol(eps, *g.m)


def close(g: PSL2Element, h: PSL2Element, tol: float = 1e-8) -> bool:
    return distance_to_identity(mul(g, inverse(h))) <= tol


class ElementClass(enum.Enum):
    IDENTITY = "Identity"
    HYPERBOLIC = "Hyperbolic"
    PARABOLIC_POS = "ParabolicPos"
    PARABOLIC_NEG = "ParabolicNeg"
    ELLIPTIC = "Elliptic"

    @property
    def parabolic(self) -> bool:
        return self in (ElementClass.PARABOLIC_POS, ElementClass.PARABOLIC_NEG)


def trace_gap(g: PSL2Element) -> float:
    """``|tr| - 2``; small values mean the float classification is fragile."""
    return float(abs(g.tr())) - 2.0


def near_parabolic(g: PSL2Element, eps: float = EPS) -> bool:
    """Inside the float warning band ``||tr| - 2| < 10 eps`` (never true when exact)."""
    return not g.exact() and abs(trace_gap(g)) < 10 * eps


def parabolic_sign(m: Mat2, eps: float = EPS) -> int:
    """Sign of a parabolic: read off the trace(+2) representative."""
    if m.tr() < 0:
        m = -m
    tol = _tol(eps, *m)
    s = _sgn(m.b, tol)
    return s if s else -_sgn(m.c, tol)


def classify(g: PSL2Element, eps: float = EPS) -> ElementClass:
    m = g.m
    for x in m:
        if isinstance(x, float) and not math.isfinite(x):
            raise InvalidElementError(f"non-finite entry in {m}")
    t = abs(m.tr())
    tol = _tol(eps, *m)
    if t > 2 + tol:
        return ElementClass.HYPERBOLIC
    if t < 2 - tol:
        return ElementClass.ELLIPTIC
    if is_identity(g, eps):
        return ElementClass.IDENTITY
    s = parabolic_sign(m, eps)
    return ElementClass.PARABOLIC_POS if s > 0 else ElementClass.PARABOLIC_NEG


# ---------------------------------------------------------------------------
# boundary action on RP^1


def direction_vector(x: float) -> tuple[float, float]:
    return (math.cos(x), -math.sin(x))


def normalize_direction(v: tuple) -> tuple:
    """Representative of the line through ``v`` with angle in [0, pi)."""
    x, y = v
    if y > 0 or (y == 0 and x < 0):
        return (-x, -y)
    return (x, y)


def direction_angle(v: tuple) -> float:
    """Angle in [0, pi) of the line spanned by ``v``."""
    y = math.atan2(-float(v[1]), float(v[0]))
    if y < 0:
        y += math.pi
    if y >= math.pi:
        y -= math.pi
    return y


def angle_action(g: PSL2Element, x: float) -> float:
    m = g.m.to_float()
    return direction_angle(m.apply(direction_vector(x)))


def _eigvec(m: Mat2, lam) -> tuple:
    a, b, c, d = m
    v1 = (b, lam - a)
    v2 = (lam - d, c)
    n1 = abs(v1[0]) + abs(v1[1])
    n2 = abs(v2[0]) + abs(v2[1])
    return v1 if n1 >= n2 else v2


def fixed_vectors(g: PSL2Element, eps: float = EPS) -> list[tuple]:
    """Eigenvectors of ``g`` (exact for parabolics with exact entries)."""
    cls = classify(g, eps)
    if cls is ElementClass.IDENTITY:
        raise CentralElementError("every direction is fixed by ±I")
    if cls is ElementClass.ELLIPTIC:
        return []
    m = g.m
    if m.tr() < 0:
        m = -m
    if cls.parabolic:
        return [_eigvec(m, 1)]
    m = m.to_float()
    t = m.tr()
    r = math.sqrt(t * t - 4)
    return [_eigvec(m, (t + r) / 2), _eigvec(m, (t - r) / 2)]


def fixed_directions(g: PSL2Element, eps: float = EPS) -> list[float]:
    return sorted(direction_angle(v) for v in fixed_vectors(g, eps))


# ---------------------------------------------------------------------------
# traces and characters


def kappa(x: Scalar, y: Scalar, z: Scalar) -> Scalar:
    return x * x + y * y + z * z - x * y * z - 2


def char_of_pair(A: Mat2, B: Mat2) -> tuple[Scalar, Scalar, Scalar]:
    return (A.tr(), B.tr(), (A @ B).tr())


def is_reducible_pair(A: Mat2, B: Mat2, eps: float = EPS) -> bool:
    """Whether ``A`` and ``B`` share an invariant real direction."""
    gA, gB = PSL2Element.of(A, eps=eps, check=False), PSL2Element.of(B, eps=eps, check=False)
    cA, cB = classify(gA, eps), classify(gB, eps)
    if ElementClass.IDENTITY in (cA, cB):
        return True
    if ElementClass.ELLIPTIC not in (cA, cB):
        k = kappa(*char_of_pair(A, B))
        return abs(k - 2) <= _tol(eps, *A, *B) * 10
    # an elliptic has no real eigenvector
    return False


def _frame_parabolic(m: Mat2) -> Mat2:
    """P in SL(2) with P^-1 m P = [[1, ±1], [0, 1]] for a trace-2 parabolic m."""
    m = m.to_float()
    u = _eigvec(m, 1.0)
    nu = math.hypot(*u)
    u = (u[0] / nu, u[1] / nu)
    v = (-u[1], u[0])  # det [u v] = 1
    P = Mat2(u[0], v[0], u[1], v[1])
    mu = (P.inv() @ m @ P).b
    s = math.sqrt(abs(mu))
    return P @ Mat2(s, 0.0, 0.0, 1.0 / s)


def _frame_hyperbolic(m: Mat2) -> Mat2:
    """P in SL(2) with P^-1 m P diagonal, larger eigenvalue first (trace > 2)."""
    m = m.to_float()
    t = m.tr()
    r = math.sqrt(t * t - 4)
    u = _eigvec(m, (t + r) / 2)
    w = _eigvec(m, (t - r) / 2)
    nu, nw = math.hypot(*u), math.hypot(*w)
    u = (u[0] / nu, u[1] / nu)
    w = (w[0] / nw, w[1] / nw)
    det = u[0] * w[1] - w[0] * u[1]
    return Mat2(u[0], w[0] / det, u[1], w[1] / det)


def _frame_elliptic(m: Mat2) -> tuple[Mat2, float]:
    """P in SL(2) and theta in (0, pi) with P^-1 (±m) P the rotation by theta.

    The sign of ``m`` is chosen with positive upper-right entry; the rotation
    is ``[[cos, sin], [-sin, cos]]``.
    """
    m = m.to_float()
    if m.b < 0:
        m = -m
    a, b, c, d = m
    t = a + d
    im = math.sqrt(max(4 - t * t, 0.0)) / (2 * abs(c))
    re = (a - d) / (2 * c)
    # fixed point re + i*im in the upper half plane, moved to i by P^-1
    sy = math.sqrt(im)
    P = Mat2(sy, re / sy, 0.0, 1 / sy)
    R = P.inv() @ m @ P
    theta = math.atan2(R.b, R.a)
    if theta <= 0:  # the rotation turns the other way: conjugate by an orientation flip is not allowed
        raise NoConjugatorError("unexpected rotation sense")
    return P, theta


def conjugator_matching(g: PSL2Element, h: PSL2Element, eps: float = EPS, tol: float = 1e-7) -> PSL2Element:
    """Some ``k`` with ``k g k^-1 = h``."""
    cg, ch = classify(g, eps), classify(h, eps)
    if cg is not ch or cg is ElementClass.IDENTITY:
        raise NoConjugatorError(f"classes differ or are central: {cg.value} vs {ch.value}")
    tg, th = abs(float(g.tr())), abs(float(h.tr()))
    if abs(tg - th) > tol * max(1.0, tg):
        raise NoConjugatorError(f"|tr| mismatch: {tg} vs {th}")
    mg, mh = g.m, h.m
    if cg is ElementClass.ELLIPTIC:
        Pg, thg = _frame_elliptic(mg)
        Ph, thh = _frame_elliptic(mh)
        if abs(thg - thh) > 1e-6:
            raise NoConjugatorError("opposite rotation sense")
        K = Ph @ Pg.inv()
    else:
        if mg.tr() < 0:
            mg = -mg
        if mh.tr() < 0:
            mh = -mh
        frame = _frame_parabolic if cg.parabolic else _frame_hyperbolic
        K = frame(mh) @ frame(mg).inv()
    return PSL2Element.of(K, check=False)


# ---------------------------------------------------------------------------
# serialization


def scalar_to_json(x: Scalar):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, int):
        return str(x)
    return float(x)


def mat_to_json(m: Mat2) -> list:
    return [[scalar_to_json(m.a), scalar_to_json(m.b)], [scalar_to_json(m.c), scalar_to_json(m.d)]]


def mat_from_json(rows, exact: bool) -> Mat2:
    (a, b), (c, d) = rows
    return Mat2(*(to_scalar(x, exact) for x in (a, b, c, d)))


# frequently used elements
J_FLIP = Mat2(0, 1, 1, 0)


def psl(a, b, c, d) -> PSL2Element:
    """Exact element from entries given as ints, Fractions or "p/q" strings."""
    return PSL2Element.of(*(Fraction(x) for x in (a, b, c, d)))
