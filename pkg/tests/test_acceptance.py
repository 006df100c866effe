"""Acceptance criteria; each test prints one PASS/FAIL line."""
import time
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

from psl2reps import verify
from psl2reps.components import count_components_n, count_total, signatures_in_range
from psl2reps.mobius import inverse, mul, psl
from psl2reps.surface import SurfaceSig, make_rep, relative_euler_class, sign_vector
from psl2reps.ucover import ParNeg, ParPos, classify_lifted, ev_commutator


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\n{'PASS' if ok else 'FAIL'} criterion {number} ({title}): "
                      f"{elapsed:.2f} s (limit {limit} s)")
    return run


def assert_checks(results):
    for res in results:
        assert res.passed, res.to_json()


def pants(x, y):
    return make_rep(0, c=(x, y, inverse(mul(x, y))))


D = psl(2, 0, 0, F(1, 2))
D_INV = psl(F(1, 2), 0, 0, 2)
A = psl(F(5, 3), F(4, 3), F(4, 3), F(5, 3))
P = psl(1, 1, 0, 1)


def test_explicit_matrices(criterion):
    with criterion(1, "explicit matrices", 1.0):
        torus = [((A, D), ParPos(-1), -1, -1), ((D, P), ParPos(0), 0, -1),
                 ((P, D), ParNeg(0), 0, 1), ((D, A), ParNeg(1), 1, 1)]
        for (a, b), cls, n, s in torus:
            assert a.exact() and b.exact()
            assert classify_lifted(ev_commutator(a, b)) == cls
            rep = make_rep(1, a=(a,), b=(b,), c=(inverse(mul(mul(a, b), mul(inverse(a), inverse(b)))),))
            # the peripheral image is the inverse commutator, so its sign flips
            assert (relative_euler_class(rep), sign_vector(rep)) == (n, (s,))

        hp = [
            ((psl(0, F(-1, 5), 5, 2), psl(1, -1, 0, 1)), -1, (-1, -1, 0)),
            ((P, psl(1, 0, 1, 1)), 0, (1, -1, 0)),
            ((psl(2, 5, F(-1, 5), 0), psl(1, 0, -1, 1)), 1, (1, 1, 0)),
            ((psl(5, -4, 4, -3), psl(F(1, 2), 0, 0, 2)), -1, (-1, 0, 0)),
            ((psl(1, 0, 1, 1), D), 0, (-1, 0, 0)),
            ((P, D_INV), 0, (1, 0, 0)),
            ((psl(-3, 4, -4, 5), D), 1, (1, 0, 0)),
        ]
        tp = [
            ((psl(3, -2, 2, -1), psl(1, 0, 2, 1)), -1, (-1, -1, -1)),
            ((psl(-1, 2, -2, 3), psl(1, 2, 0, 1)), 1, (1, 1, 1)),
        ]
        for (x, y), n, s in hp + tp:
            rep = pants(x, y)
            assert rep.exact
            assert relative_euler_class(rep) == n and sign_vector(rep) == s

        pinv = psl(1, -1, 0, 1)
        abelian = make_rep(0, c=(psl(1, 3, 0, 1), pinv, pinv, pinv))
        assert relative_euler_class(abelian) == 0 and sign_vector(abelian) == (1, -1, -1, -1)
        psi = make_rep(0, c=(psl(3, 2, -2, -1), psl(1, 0, -2, 1), P, P))
        assert relative_euler_class(psi) == 1 and sign_vector(psi) == (1, 1, 1, 1)


def test_counts(criterion):
    with criterion(2, "counting", 10.0):
        s04 = SurfaceSig(0, 4)
        assert count_components_n(s04, 1) == count_components_n(s04, -1) == 5
        assert count_total(SurfaceSig(1, 1)) == 4
        assert count_total(SurfaceSig(0, 3)) == 8
        assert len(signatures_in_range(-6, -1, 6)) == 16
        assert_checks([verify.check_census(-6, -1, 6)])


def test_round_trip(criterion):
    with criterion(3, "constructor round-trip", 60.0):
        assert_checks([verify.check_round_trip(-5, 1e-9)])


def test_additivity(criterion):
    with criterion(4, "additivity", 5.0):
        assert_checks([verify.check_additivity(200)])


def test_pgl_flip(criterion):
    with criterion(5, "PGL flip", 2.0):
        assert_checks([verify.check_flip(100)])


def test_image_laws(criterion):
    with criterion(6, "image laws", 30.0):
        results = verify.check_image_laws(10_000)
        assert len(results) == 3 and all(r.samples == 10_000 for r in results)
        assert_checks(results)


def test_algebra_and_oracles(criterion):
    with criterion(7, "algebra and oracle agreement", 60.0):
        assert_checks([verify.check_group_laws(10_000), verify.check_oracle_products(1000),
                       verify.check_oracle_euler(1000)])


def test_fricke(criterion):
    with criterion(8, "Fricke identity", 2.0):
        assert_checks([verify.check_fricke(10_000)])


def test_jacobian(criterion):
    with criterion(9, "Jacobian dichotomies", 10.0):
        results = verify.check_jacobian(1000)
        assert len(results) == 2
        assert_checks(results)


def test_sign_laws(criterion):
    with criterion(10, "sign laws", 5.0):
        assert_checks([verify.check_sign_laws(10_000)])
