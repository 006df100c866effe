"""Surface groups, representations, relative Euler class and decompositions.

The fundamental group of the genus-g surface with p punctures is presented as
``<a_1, b_1, ..., a_g, b_g, c_1, ..., c_p | [a_1,b_1]...[a_g,b_g] c_1...c_p>``.

Decomposition.  Write L_1..L_m (m = g + p) for the "leaves"
``[a_1,b_1], ..., [a_g,b_g], c_1, ..., c_p``; the relator is L_1...L_m.  The
pants form a path:

    P_1     = (L_1, L_2, d_1)                  d_1 = (L_1 L_2)^-1
    P_i     = (d_{i-1}^-1, L_{i+1}, d_i)       d_i = (d_{i-1}^-1 L_{i+1})^-1
    P_{m-2} = (d_{m-3}^-1, L_{m-1}, L_m)

and the torus T_j has generators a_j, b_j and boundary d'_j^-1 with
``d'_j = [a_j, b_j]``.  Each piece's boundary words multiply to 1 in the
surface group, so each restriction is again a representation in the same
presentation convention.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

from . import ucover
from .mobius import (
    EPS,
    ElementClass,
    Mat2,
    PSL2Element,
    canonical_sign,
    classify,
    commutator,
    conjugate,
    distance_to_identity,
    is_identity,
    mat_from_json,
    mat_to_json,
)
from .ucover import (
    classify_lifted,
    inv_lifted,
    lift_any,
    lift_canonical_hyp0,
    mul_lifted,
    sl2_projection,
)


class RepresentationError(ValueError):
    """The data does not define a representation with admissible boundary."""


class RestrictionError(RepresentationError):
    """A piece boundary is elliptic or trivial, so its Euler class is undefined."""


@dataclass(frozen=True)
class SurfaceSig:
    g: int
    p: int

    def __post_init__(self):
        if self.g < 0 or self.p < 1:
            raise ValueError(f"need g >= 0 and p >= 1, got {self}")
        if self.chi > -1:
            raise ValueError(f"need Euler characteristic <= -1, got {self.chi}")

    @property
    def chi(self) -> int:
        return 2 - 2 * self.g - self.p

    def __str__(self) -> str:
        return f"S_{self.g},{self.p}"


class BoundaryType(enum.Enum):
    TYPE_PRESERVING = "TypePreserving"
    HYPERBOLIC = "HyperbolicBoundary"
    MIXED = "Mixed"
    INVALID = "Invalid"


SignVector = tuple  # entries in {-1, 0, +1}


def p_plus(s: Sequence[int]) -> int:
    return sum(1 for x in s if x > 0)


def p_minus(s: Sequence[int]) -> int:
    return sum(1 for x in s if x < 0)


def p_zero(s: Sequence[int]) -> int:
    return sum(1 for x in s if x == 0)


def boundary_of_signs(s: Sequence[int]) -> BoundaryType:
    z = p_zero(s)
    if z == 0:
        return BoundaryType.TYPE_PRESERVING
    if z == len(s):
        return BoundaryType.HYPERBOLIC
    return BoundaryType.MIXED


def format_signs(s: Sequence[int]) -> str:
    return "".join({1: "+", -1: "-", 0: "0"}[x] for x in s)


def parse_signs(text: str) -> tuple:
    table = {"+": 1, "-": -1, "0": 0}
    try:
        return tuple(table[ch] for ch in text)
    except KeyError as exc:
        raise ValueError(f"sign string may only contain '+', '-', '0': {text!r}") from exc


@dataclass(frozen=True)
class ComponentIndex:
    n: int
    s: tuple
    boundary: BoundaryType

    def to_json(self) -> dict:
        return {"n": self.n, "s": list(self.s), "boundary": self.boundary.value}


# ---------------------------------------------------------------------------
# words

Letter = tuple  # (generator name 'a'|'b'|'c', index from 1, exponent +-1)
Word = tuple


def gen(name: str, i: int) -> Word:
    return ((name, i, 1),)


def word_inv(w: Word) -> Word:
    return tuple((n, i, -e) for n, i, e in reversed(w))


def word_mul(*ws: Word) -> Word:
    out: list = []
    for w in ws:
        for letter in w:
            if out and out[-1][:2] == letter[:2] and out[-1][2] == -letter[2]:
                out.pop()
            else:
                out.append(letter)
    return tuple(out)


def comm_word(j: int) -> Word:
    a, b = gen("a", j), gen("b", j)
    return word_mul(a, b, word_inv(a), word_inv(b))


def relator_word(sig: SurfaceSig) -> Word:
    return word_mul(*(comm_word(j) for j in range(1, sig.g + 1)),
                    *(gen("c", i) for i in range(1, sig.p + 1)))


def word_str(w: Word) -> str:
    if not w:
        return "1"
    return " ".join(f"{n}{i}" + ("^-1" if e < 0 else "") for n, i, e in w)


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class Representation:
    sig: SurfaceSig
    a: tuple
    b: tuple
    c: tuple
    provenance: dict | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if len(self.a) != self.sig.g or len(self.b) != self.sig.g or len(self.c) != self.sig.p:
            raise RepresentationError(
                f"{self.sig} needs {self.sig.g} a/b images and {self.sig.p} c images")

    @property
    def exact(self) -> bool:
        return all(x.exact() for x in (*self.a, *self.b, *self.c))

    def image(self, name: str, i: int) -> PSL2Element:
        try:
            return {"a": self.a, "b": self.b, "c": self.c}[name][i - 1]
        except (KeyError, IndexError) as exc:
            raise IndexError(f"no generator {name}{i} on {self.sig}") from exc

    def map(self, f) -> "Representation":
        return Representation(self.sig, tuple(map(f, self.a)), tuple(map(f, self.b)),
                              tuple(map(f, self.c)), self.provenance)


def evaluate_word(rep: Representation, w: Word) -> PSL2Element:
    m = Mat2(1, 0, 0, 1)
    for n, i, e in w:
        x = rep.image(n, i).m
        m = m @ (x if e > 0 else x.inv())
    return PSL2Element(canonical_sign(m))


def relation_residual(rep: Representation) -> float:
    return distance_to_identity(evaluate_word(rep, relator_word(rep.sig)))


def check_relator(rep: Representation, tol: float = 1e-9) -> None:
    r = relation_residual(rep)
    if (rep.exact and r != 0) or r > tol:
        raise RepresentationError(f"relator residual {r:.3g} exceeds tolerance")


def peripheral_classes(rep: Representation, eps: float = EPS) -> list[ElementClass]:
    return [classify(c, eps) for c in rep.c]


def boundary_type(rep: Representation, eps: float = EPS) -> BoundaryType:
    kinds = peripheral_classes(rep, eps)
    if any(k in (ElementClass.ELLIPTIC, ElementClass.IDENTITY) for k in kinds):
        return BoundaryType.INVALID
    hyp = sum(k is ElementClass.HYPERBOLIC for k in kinds)
    if hyp == 0:
        return BoundaryType.TYPE_PRESERVING
    if hyp == len(kinds):
        return BoundaryType.HYPERBOLIC
    return BoundaryType.MIXED


def _sign_of(k: ElementClass) -> int:
    return {ElementClass.PARABOLIC_POS: 1, ElementClass.PARABOLIC_NEG: -1}.get(k, 0)


def sign_vector(rep: Representation, eps: float = EPS) -> tuple:
    if boundary_type(rep, eps) is BoundaryType.INVALID:
        raise RepresentationError("a peripheral image is elliptic or trivial")
    return tuple(_sign_of(k) for k in peripheral_classes(rep, eps))


def lifted_relator(rep: Representation, eps: float = EPS) -> ucover.LiftedElement:
    """Commutators of arbitrary lifts times the canonical lifts of the c_i."""
    u = ucover.LIFTED_IDENTITY
    for x, y in zip(rep.a, rep.b):
        ax, by = lift_any(x), lift_any(y)
        u = mul_lifted(u, mul_lifted(mul_lifted(ax, by), mul_lifted(inv_lifted(ax), inv_lifted(by))))
    for c in rep.c:
        u = mul_lifted(u, lift_canonical_hyp0(c, eps))
    return u


# Float products of elements fixing the base direction e1 sit on a branch cut
# of the lift; the class is conjugation invariant, so measure in generic frames.
_GENERIC_ANGLES = (0.6180339887498949, 1.9021130325903071, 2.718281828459045)


def _rotation(theta: float) -> PSL2Element:
    c, s = math.cos(theta), math.sin(theta)
    return PSL2Element(canonical_sign(Mat2(c, -s, s, c)))


def _float_euler(rep: Representation, eps: float, tol: float) -> int:
    u = lifted_relator(rep, eps)
    d = distance_to_identity(u.base)
    scale = max(1.0, *(abs(float(x)) for g in (*rep.a, *rep.b, *rep.c) for x in g.m))
    if d > tol * scale:
        raise RepresentationError(f"lifted relator is {d:.3g} away from the centre")
    return int(round(u.theta0 / math.pi))


def relative_euler_class(rep: Representation, eps: float = EPS, tol: float = 1e-6) -> int:
    if boundary_type(rep, eps) is BoundaryType.INVALID:
        raise RepresentationError("relative Euler class needs hyperbolic or parabolic peripherals")
    if rep.exact:
        u = lifted_relator(rep, eps)
        if not is_identity(u.base):
            raise RepresentationError("relator does not evaluate to the identity")
        return classify_lifted(u).level
    votes = []
    for theta in _GENERIC_ANGLES:
        votes.append(_float_euler(conjugate_rep(rep, _rotation(theta)), eps, tol))
        if len(votes) >= 2 and votes[-1] == votes[-2]:
            return votes[-1]
    return max(set(votes), key=votes.count)


def component_of(rep: Representation, eps: float = EPS) -> ComponentIndex:
    s = sign_vector(rep, eps)
    return ComponentIndex(relative_euler_class(rep, eps), s, boundary_of_signs(s))


def pgl_flip(rep: Representation) -> Representation:
    """Conjugate every image by the orientation-reversing ±[[0,1],[1,0]]."""

    def flip(g: PSL2Element) -> PSL2Element:
        a, b, c, d = g.m
        return PSL2Element(canonical_sign(Mat2(d, c, b, a)))

    return rep.map(flip)


def conjugate_rep(rep: Representation, h: PSL2Element) -> Representation:
    return rep.map(lambda g: conjugate(g, h))


# ---------------------------------------------------------------------------
# decompositions


class PieceKind(enum.Enum):
    PANTS = "Pants"
    TORUS = "OneHoleTorus"


@dataclass(frozen=True)
class Piece:
    """A pants (three boundary words, product 1) or a one-holed torus.

    For a torus, ``generators`` holds the words of a_j, b_j and ``boundary``
    the single word ``[a_j, b_j]^-1``.
    """

    kind: PieceKind
    boundary: tuple
    generators: tuple = ()
    label: str = ""

    @property
    def sig(self) -> SurfaceSig:
        return SurfaceSig(0, 3) if self.kind is PieceKind.PANTS else SurfaceSig(1, 1)


@dataclass(frozen=True)
class Decomposition:
    sig: SurfaceSig
    pieces: tuple
    d_words: tuple
    dprime_words: tuple

    @property
    def pants(self) -> tuple:
        return tuple(p for p in self.pieces if p.kind is PieceKind.PANTS)

    @property
    def tori(self) -> tuple:
        return tuple(p for p in self.pieces if p.kind is PieceKind.TORUS)

    @property
    def curve_words(self) -> tuple:
        return self.d_words + self.dprime_words


def leaf_words(sig: SurfaceSig) -> list:
    return [comm_word(j) for j in range(1, sig.g + 1)] + [gen("c", i) for i in range(1, sig.p + 1)]


def decomposition(sig: SurfaceSig) -> Decomposition:
    leaves = leaf_words(sig)
    m = len(leaves)
    dprime = tuple(comm_word(j) for j in range(1, sig.g + 1))
    tori = tuple(
        Piece(PieceKind.TORUS, (word_inv(dprime[j - 1]),), (gen("a", j), gen("b", j)), f"T{j}")
        for j in range(1, sig.g + 1)
    )
    if m == 2:  # the one-holed torus itself
        return Decomposition(sig, (Piece(PieceKind.TORUS, (gen("c", 1),), (gen("a", 1), gen("b", 1)), "T1"),),
                             (), ())
    d: list = []
    pants: list = []
    if m == 3:
        pants.append(Piece(PieceKind.PANTS, tuple(leaves), label="P1"))
    else:
        d.append(word_inv(word_mul(leaves[0], leaves[1])))
        pants.append(Piece(PieceKind.PANTS, (leaves[0], leaves[1], d[0]), label="P1"))
        for i in range(2, m - 2):
            d.append(word_inv(word_mul(word_inv(d[-1]), leaves[i])))
            pants.append(Piece(PieceKind.PANTS, (word_inv(d[-2]), leaves[i], d[-1]), label=f"P{i}"))
        pants.append(Piece(PieceKind.PANTS, (word_inv(d[-1]), leaves[m - 2], leaves[m - 1]), label=f"P{m - 2}"))
    return Decomposition(sig, tuple(pants) + tori, tuple(d), dprime)


def restrict(rep: Representation, piece: Piece, eps: float = EPS) -> Representation:
    bvals = tuple(evaluate_word(rep, w) for w in piece.boundary)
    for w, v in zip(piece.boundary, bvals):
        k = classify(v, eps)
        if k in (ElementClass.ELLIPTIC, ElementClass.IDENTITY):
            raise RestrictionError(f"boundary {word_str(w)} of {piece.label} is {k.value}")
    if piece.kind is PieceKind.PANTS:
        return Representation(SurfaceSig(0, 3), (), (), bvals)
    a, b = (evaluate_word(rep, w) for w in piece.generators)
    return Representation(SurfaceSig(1, 1), (a,), (b,), bvals)


def piece_euler_classes(rep: Representation, eps: float = EPS) -> list:
    """Euler class of each piece, or ``None`` where a boundary is elliptic/trivial."""
    out = []
    for piece in decomposition(rep.sig).pieces:
        try:
            out.append(relative_euler_class(restrict(rep, piece, eps), eps))
        except RestrictionError:
            out.append(None)
    return out


def is_totally_non_hyperbolic(rep: Representation, eps: float = EPS) -> bool:
    if boundary_type(rep, eps) is not BoundaryType.TYPE_PRESERVING:
        raise RepresentationError("total non-hyperbolicity is defined for type-preserving representations")
    dec = decomposition(rep.sig)
    return all(classify(evaluate_word(rep, w), eps) is not ElementClass.HYPERBOLIC for w in dec.curve_words)


def piece_is_abelian(rep: Representation, piece: Piece, eps: float = EPS, tol: float = 1e-9) -> bool:
    if piece.kind is PieceKind.PANTS:
        x, y = (evaluate_word(rep, w) for w in piece.boundary[:2])
    else:
        x, y = (evaluate_word(rep, w) for w in piece.generators)
    k = commutator(x, y)
    if k.exact():
        return is_identity(k)
    return distance_to_identity(k) <= tol * max(1.0, *(abs(float(v)) for v in (*x.m, *y.m)))


def character_pants(rep: Representation, eps: float = EPS) -> tuple:
    if rep.sig != SurfaceSig(0, 3):
        raise ValueError("character_pants needs a three-holed sphere")
    c1, c2 = rep.c[0], rep.c[1]
    for c in (c1, c2):
        if classify(c, eps) is ElementClass.ELLIPTIC:
            raise RepresentationError("elliptic peripheral has no lift in the closure of Hyp_0")
    u, v = lift_canonical_hyp0(c1, eps), lift_canonical_hyp0(c2, eps)
    return (sl2_projection(u).tr(), sl2_projection(v).tr(), sl2_projection(mul_lifted(u, v)).tr())


# ---------------------------------------------------------------------------
# JSON


def rep_to_json(rep: Representation) -> dict:
    doc = {
        "genus": rep.sig.g,
        "punctures": rep.sig.p,
        "a": [mat_to_json(x.m) for x in rep.a],
        "b": [mat_to_json(x.m) for x in rep.b],
        "c": [mat_to_json(x.m) for x in rep.c],
        "scalar": "rational" if rep.exact else "float",
    }
    if rep.provenance:
        doc["provenance"] = rep.provenance
    return doc


def rep_from_json(doc: dict, eps: float = EPS) -> Representation:
    exact = doc.get("scalar", "float") == "rational"
    sig = SurfaceSig(int(doc["genus"]), int(doc["punctures"]))

    def elems(key):
        return tuple(PSL2Element.of(mat_from_json(m, exact), eps=eps) for m in doc.get(key, []))

    return Representation(sig, elems("a"), elems("b"), elems("c"), doc.get("provenance"))


def make_rep(g: int, a=(), b=(), c=(), provenance=None) -> Representation:
    return Representation(SurfaceSig(g, len(c)), tuple(a), tuple(b), tuple(c), provenance)
