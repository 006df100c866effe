from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psl2reps import atlas
from psl2reps.mobius import PSL2Element, classify, inverse, mul, psl
from psl2reps.surface import (
    BoundaryType,
    PieceKind,
    RepresentationError,
    RestrictionError,
    SurfaceSig,
    boundary_type,
    character_pants,
    check_relator,
    component_of,
    conjugate_rep,
    decomposition,
    evaluate_word,
    format_signs,
    is_totally_non_hyperbolic,
    make_rep,
    parse_signs,
    pgl_flip,
    piece_euler_classes,
    piece_is_abelian,
    relation_residual,
    relative_euler_class,
    relator_word,
    rep_from_json,
    rep_to_json,
    restrict,
    sign_vector,
    word_str,
)

P = psl(1, 1, 0, 1)
PINV = psl(1, -1, 0, 1)
D = psl(2, 0, 0, Fraction(1, 2))
A53 = psl(Fraction(5, 3), Fraction(4, 3), Fraction(4, 3), Fraction(5, 3))


def closing(*xs):
    out = psl(1, 0, 0, 1)
    for x in xs:
        out = mul(out, x)
    return inverse(out)


def abelian_rep():
    return make_rep(0, c=(psl(1, 3, 0, 1), PINV, PINV, PINV))


def psi_rep():
    return make_rep(0, c=(psl(3, 2, -2, -1), psl(1, 0, -2, 1), P, P))


def pants_rep(x, y):
    return make_rep(0, c=(x, y, closing(x, y)))


def test_signature_and_words():
    assert SurfaceSig(1, 2).chi == -2
    assert word_str(relator_word(SurfaceSig(1, 1))) == "a1 b1 a1^-1 b1^-1 c1"
    assert parse_signs("+-0") == (1, -1, 0)
    assert format_signs((1, -1, 0)) == "+-0"
    with pytest.raises(ValueError):
        parse_signs("+x")


def test_residuals():
    assert relation_residual(psi_rep()) == 0
    trivial = make_rep(1, a=(psl(1, 0, 0, 1),), b=(psl(-1, 0, 0, -1),), c=(psl(1, 0, 0, 1),))
    assert relation_residual(trivial) == 0
    rep = atlas.representative(atlas.spec_for(0, 4, 1, (1, 1, 0, -1)))
    assert relation_residual(rep) <= 1e-9
    c = list(rep.c)
    m = c[0].m
    c[0] = PSL2Element.of(m.a + 1e-3, m.b, m.c, (1 + m.b * m.c) / (m.a + 1e-3))
    assert relation_residual(make_rep(0, c=c)) > 0
    with pytest.raises(RepresentationError):
        check_relator(make_rep(0, c=c))


def test_boundary_types():
    assert boundary_type(abelian_rep()) is BoundaryType.TYPE_PRESERVING
    hyp = atlas.representative(atlas.spec_for(0, 4, 1, (0, 0, 0, 0)))
    assert boundary_type(hyp) is BoundaryType.HYPERBOLIC
    assert boundary_type(pants_rep(P, psl(1, 0, 1, 1))) is BoundaryType.MIXED
    assert boundary_type(make_rep(1, a=(D,), b=(D,), c=(psl(1, 0, 0, 1),))) is BoundaryType.INVALID
    with pytest.raises(RepresentationError):
        sign_vector(make_rep(1, a=(D,), b=(D,), c=(psl(1, 0, 0, 1),)))


def test_printed_invariants():
    assert relative_euler_class(abelian_rep()) == 0
    assert sign_vector(abelian_rep()) == (1, -1, -1, -1)
    assert relative_euler_class(psi_rep()) == 1
    assert sign_vector(psi_rep()) == (1, 1, 1, 1)
    neg = pants_rep(psl(3, -2, 2, -1), psl(1, 0, 2, 1))
    assert relative_euler_class(neg) == -1
    assert sign_vector(neg) == (-1, -1, -1)
    assert sign_vector(pants_rep(P, psl(1, 0, 1, 1))) == (1, -1, 0)


def test_component_of():
    c = component_of(psi_rep())
    assert (c.n, c.s, c.boundary) == (1, (1, 1, 1, 1), BoundaryType.TYPE_PRESERVING)
    c = component_of(abelian_rep())
    assert (c.n, c.s) == (0, (1, -1, -1, -1))
    # identity on the torus generators, hyperbolic boundary glued
    rep = make_rep(1, a=(psl(1, 0, 0, 1),), b=(psl(1, 0, 0, 1),), c=(D, inverse(D)))
    c = component_of(rep)
    assert (c.n, c.s) == (0, (0, 0))


def test_pgl_flip():
    flipped = pgl_flip(psi_rep())
    assert relative_euler_class(flipped) == -1
    assert sign_vector(flipped) == (-1, -1, -1, -1)
    assert pgl_flip(flipped) == psi_rep()
    hyp = atlas.representative(atlas.spec_for(0, 3, 1, (0, 0, 0)))
    assert sign_vector(pgl_flip(hyp)) == (0, 0, 0)


def test_decompositions():
    dec = decomposition(SurfaceSig(0, 4))
    assert [p.kind for p in dec.pieces] == [PieceKind.PANTS, PieceKind.PANTS]
    assert word_str(dec.d_words[0]) == "c2^-1 c1^-1"
    dec = decomposition(SurfaceSig(1, 2))
    assert sorted(p.kind.value for p in dec.pieces) == ["OneHoleTorus", "Pants"]
    assert word_str(dec.dprime_words[0]) == "a1 b1 a1^-1 b1^-1"
    assert [p.kind for p in decomposition(SurfaceSig(1, 1)).pieces] == [PieceKind.TORUS]


def test_curve_words_evaluate():
    rep = psi_rep()
    d1 = decomposition(rep.sig).d_words[0]
    assert evaluate_word(rep, d1) == inverse(mul(rep.c[0], rep.c[1]))
    assert evaluate_word(rep, ()) == psl(1, 0, 0, 1)
    assert evaluate_word(rep, relator_word(rep.sig)) == psl(1, 0, 0, 1)
    rep = atlas.representative(atlas.spec_for(1, 2, 0, (1, -1)))
    dec = decomposition(rep.sig)
    # d = [a, b] = (c1 c2)^-1 holds in the group
    d, dp = inverse(mul(rep.c[0], rep.c[1])), evaluate_word(rep, dec.dprime_words[0])
    assert max(abs(x - y) for x, y in zip(d.m.to_float(), dp.m.to_float())) < 1e-9


def test_restrict():
    rep = atlas.representative(atlas.spec_for(0, 4, 1, (1, 1, 0, -1)))
    parts = [restrict(rep, p) for p in decomposition(rep.sig).pieces]
    assert sum(relative_euler_class(p) for p in parts) == relative_euler_class(rep)
    deformed = atlas.tnh_exceptional(SurfaceSig(0, 4))
    with pytest.raises(RestrictionError):
        restrict(deformed, decomposition(deformed.sig).pieces[0])
    assert piece_euler_classes(deformed) == [None, None]
    torus = make_rep(1, a=(D,), b=(A53,), c=(inverse(mul(mul(D, A53), mul(inverse(D), inverse(A53)))),))
    (piece,) = decomposition(torus.sig).pieces
    part = restrict(torus, piece)
    assert (part.a, part.b) == (torus.a, torus.b)


def test_total_non_hyperbolicity():
    for p in (4, 5, 6):
        assert is_totally_non_hyperbolic(atlas.tnh_exceptional(SurfaceSig(0, p), deformed=False))
        assert is_totally_non_hyperbolic(atlas.tnh_exceptional(SurfaceSig(0, p)))
    assert is_totally_non_hyperbolic(abelian_rep())
    glued = atlas.representative(atlas.spec_for(0, 4, 2, (1, 1, 1, 1)))
    assert not is_totally_non_hyperbolic(glued)


def test_piece_abelian():
    rep = abelian_rep()
    assert all(piece_is_abelian(rep, p) for p in decomposition(rep.sig).pieces)
    rep = psi_rep()
    assert not piece_is_abelian(rep, decomposition(rep.sig).pieces[0])
    mixed = pants_rep(P, D)
    assert not piece_is_abelian(mixed, decomposition(mixed.sig).pieces[0])


def test_character_pants():
    assert character_pants(pants_rep(psl(3, -2, 2, -1), psl(1, 0, 2, 1))) == (2, 2, -2)
    assert character_pants(pants_rep(P, psl(1, 2, 0, 1))) == (2, 2, 2)
    hyp = atlas.representative(atlas.spec_for(0, 3, 0, (0, 0, 0)))
    assert all(abs(t) > 2 for t in character_pants(hyp))


def test_json_round_trip():
    rep = psi_rep()
    assert rep_from_json(rep_to_json(rep)) == rep
    rep = atlas.representative(atlas.spec_for(1, 2, 1, (1, 0)))
    back = rep_from_json(rep_to_json(rep))
    assert component_of(back) == component_of(rep)


@st.composite
def rational_sl2(draw):
    q = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    a = draw(q.filter(lambda x: x != 0))
    b, c = draw(q), draw(q)
    return psl(a, b, c, (1 + b * c) / a)


@settings(max_examples=60, deadline=None)
@given(rational_sl2(), st.sampled_from([(0, 3, -1, (-1, -1, -1)), (0, 4, 1, (1, 1, 1, 1)), (1, 1, 1, (1,))]))
def test_component_conjugation_invariant(h, spec):
    g, p, n, s = spec
    rep = atlas.representative(atlas.spec_for(g, p, n, s), prefer_exact=True)
    assert component_of(conjugate_rep(rep, h)) == component_of(rep)
    assert classify(conjugate_rep(rep, h).c[0]) is classify(rep.c[0])
