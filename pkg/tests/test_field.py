from fractions import Fraction
import random

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from simplest_cubic.field import (
    ONE,
    RHO,
    RHO2,
    Element,
    PrecisionError,
    content,
    conjugate_intervals,
    det3,
    embeddings,
    f_poly,
    galois_apply,
    galois_apply2,
    is_totally_positive,
    make_params,
    mul,
    mult_matrix,
    norm,
    power,
    rho_double_prime,
    rho_prime,
    seed_intervals,
    trace_and_symmetric,
    unit_inverse,
)

P8 = make_params(8)

coord = st.integers(-10**6, 10**6)
elements = st.builds(Element, coord, coord, coord)
small = st.builds(Element, *(st.integers(-50, 50),) * 3)
a_values = st.integers(7, 400)


def roots_mp(a, dps=50):
    """(rho, rho', rho'') from a generic polynomial root finder."""
    with mpmath.workdps(dps):
        big, mid, low = sorted(mpmath.polyroots([1, -a, -(a + 3), -1], maxsteps=200, extraprec=200), reverse=True)
    # rho' is the most negative root
    return big, low, mid


# -- params ------------------------------------------------------------------


def test_params_a8():
    assert (P8.disc_root, P8.cone_den, P8.monogenic) == (97, 91, True)


def test_params_a7():
    p = make_params(7)
    assert p.disc_root == 79 and p.monogenic


def test_params_rejects_small_a():
    with pytest.raises(ValueError):
        make_params(6)


def test_params_non_squarefree():
    # 9^2 + 27 + 9 = 117 = 3^2 * 13
    assert not make_params(9).monogenic


@given(a_values)
def test_params_invariants(a):
    p = make_params(a)
    assert p.disc_root == p.cone_den + 6
    d = p.disc_root
    sqf = all(d % (q * q) for q in range(2, int(d ** 0.5) + 1))
    assert p.monogenic == sqf


# -- multiplication ------------------------------------------------------------


def test_mul_examples():
    assert mul(RHO2, RHO, P8) == Element(1, 11, 8)
    assert mul(RHO, RHO, P8) == RHO2
    x = Element(3, -4, 5)
    assert mul(x, ONE, P8) == x


@given(a_values)
def test_rho_cubed(a):
    p = make_params(a)
    assert mul(RHO2, RHO, p) == Element(1, a + 3, a)


@settings(max_examples=300)
@given(small, small, small, a_values)
def test_ring_laws(x, y, z, a):
    p = make_params(a)
    assert mul(x, y, p) == mul(y, x, p)
    assert mul(mul(x, y, p), z, p) == mul(x, mul(y, z, p), p)
    assert mul(x, y + z, p) == mul(x, y, p) + mul(x, z, p)


@settings(max_examples=300)
@given(small, small, a_values)
def test_mul_matches_float_embeddings(x, y, a):
    p = make_params(a)
    xy = mul(x, y, p)
    with mpmath.workdps(60):
        for r in roots_mp(a, 60):
            ev = lambda e: e.m + e.n * r + e.o * r * r  # noqa: E731
            assert abs(ev(xy) - ev(x) * ev(y)) < mpmath.mpf(10) ** -30


# -- norm --------------------------------------------------------------------------


def test_norm_examples():
    for k in (-3, 0, 1, 2, 7):
        assert norm(Element(k, 0, 0), P8) == k ** 3
    assert norm(RHO, P8) == 1
    # -f_8(-1) = -(-1 - 8 + 11 - 1) = -1
    assert norm(Element(1, 1, 0), P8) == -1


@settings(max_examples=500)
@given(elements, a_values)
def test_norm_closed_form_equals_determinant(x, a):
    p = make_params(a)
    assert norm(x, p) == det3(mult_matrix(x, p))


@settings(max_examples=200)
@given(small, a_values)
def test_norm_equals_product_of_conjugates(x, a):
    with mpmath.workdps(60):
        prod = mpmath.mpf(1)
        for r in roots_mp(a, 60):
            prod *= x.m + x.n * r + x.o * r * r
        assert abs(prod - norm(x, make_params(a))) < mpmath.mpf(10) ** -20


@settings(max_examples=300)
@given(small, small, a_values)
def test_norm_multiplicative(x, y, a):
    p = make_params(a)
    assert norm(mul(x, y, p), p) == norm(x, p) * norm(y, p)


# -- traces and positivity ---------------------------------------------------------


def test_symmetric_examples():
    assert trace_and_symmetric(ONE, P8) == (3, 3, 1)
    assert trace_and_symmetric(RHO, P8) == (8, -11, 1)
    assert trace_and_symmetric(RHO2, P8)[0] == 86


@settings(max_examples=200)
@given(small, a_values)
def test_symmetric_functions_match_conjugates(x, a):
    with mpmath.workdps(60):
        c = [x.m + x.n * r + x.o * r * r for r in roots_mp(a, 60)]
        e = (c[0] + c[1] + c[2], c[0] * c[1] + c[0] * c[2] + c[1] * c[2], c[0] * c[1] * c[2])
        got = trace_and_symmetric(x, make_params(a))
        assert all(abs(g - v) < mpmath.mpf(10) ** -20 for g, v in zip(got, e))


def test_total_positivity_examples():
    assert is_totally_positive(ONE, P8)
    assert not is_totally_positive(RHO, P8)
    assert is_totally_positive(RHO2, P8)
    assert not is_totally_positive(Element(0, 0, 0), P8)


@settings(max_examples=500)
@given(small, a_values)
def test_total_positivity_vs_intervals(x, a):
    p = make_params(a)
    signs = [iv.sign() for iv in conjugate_intervals(x, embeddings(p, 80))]
    if 0 not in signs:
        assert is_totally_positive(x, p) == all(s > 0 for s in signs)


# -- embeddings --------------------------------------------------------------------


def test_embeddings_a8():
    emb = embeddings(P8, 64)
    assert 9 < emb.rho.lo and emb.rho.hi < Fraction(37, 4)
    assert Fraction(-1, 10) < emb.rho_pp.lo and emb.rho_pp.hi < Fraction(-1, 11)


def test_embeddings_precision_floor():
    with pytest.raises(ValueError):
        embeddings(P8, 16)


def test_bisection_needs_sign_change():
    from simplest_cubic.field import Interval, _bisect

    with pytest.raises(PrecisionError):
        _bisect(8, Interval(Fraction(0), Fraction(1)), 40)


@settings(max_examples=60, deadline=None)
@given(a_values, st.sampled_from([32, 64, 100]))
def test_embedding_enclosures(a, bits):
    emb = embeddings(make_params(a), bits)
    seeds = seed_intervals(a)
    assert emb.rho.lo > 0 > emb.rho_p.hi and emb.rho_pp.hi < 0
    for r, s in zip(emb.roots(), seeds):
        assert r.width <= Fraction(1, 2 ** bits)
        assert s.lo <= r.lo and r.hi <= s.hi
        # the enclosure contains a root: f changes sign across it
        assert (f_poly(a, r.lo) > 0) != (f_poly(a, r.hi) > 0)
    assert emb.rho_p.hi < emb.rho_pp.lo and emb.rho_pp.hi < emb.rho.lo
    # rho > |rho'| > |rho''|
    assert emb.rho.lo > -emb.rho_p.lo and -emb.rho_p.hi > -emb.rho_pp.lo
    mp = roots_mp(a)
    for r, v in zip(emb.roots(), mp):
        assert r.lo <= Fraction(str(mpmath.nstr(v, 40))) + Fraction(1, 10**35)
        assert Fraction(str(mpmath.nstr(v, 40))) - Fraction(1, 10**35) <= r.hi


# -- Galois action -----------------------------------------------------------------


def test_galois_fixes_rationals():
    assert galois_apply(Element(5, 0, 0), P8) == Element(5, 0, 0)


@settings(max_examples=200)
@given(small, a_values)
def test_galois_order_three_and_norm(x, a):
    p = make_params(a)
    y = galois_apply(x, p)
    assert galois_apply(galois_apply(y, p), p) == x
    assert galois_apply2(x, p) == galois_apply(y, p)
    assert abs(norm(y, p)) == abs(norm(x, p))


@given(a_values)
def test_galois_image_of_rho(a):
    p = make_params(a)
    s = galois_apply(RHO, p)
    # s is a root of f_a
    s2 = mul(s, s, p)
    s3 = mul(s2, s, p)
    assert s3 - s2.scale(a) - s.scale(a + 3) - ONE == Element(0, 0, 0)
    # (1 + rho) * sigma(rho) = -1
    assert mul(Element(1, 1, 0), s, p) == Element(-1, 0, 0)


@given(a_values)
def test_galois_is_rho_double_prime(a):
    p = make_params(a)
    emb = embeddings(p, 64)
    assert galois_apply(RHO, p) == rho_double_prime(p)
    assert galois_apply2(RHO, p) == rho_prime(p)
    # evaluated at the root rho, sigma(rho) lands in the rho'' enclosure
    v = float(conjugate_intervals(rho_double_prime(p), emb)[0].lo)
    assert float(emb.rho_pp.lo) - 1e-12 <= v <= float(emb.rho_pp.hi) + 1e-12


def test_rho_prime_a8():
    assert rho_prime(P8) == Element(10, 8, -1)
    assert rho_double_prime(P8) == Element(-2, -9, 1)


# -- content and units -------------------------------------------------------------


def test_content_examples():
    assert content(Element(2, 4, 6)) == 2
    assert content(Element(1, 1, 0)) == 1
    assert content(Element(0, 0, 0)) == 0


@settings(max_examples=100)
@given(st.integers(-4, 4), st.integers(-4, 4), a_values)
def test_unit_inverse(i, j, a):
    p = make_params(a)
    u = mul(power(RHO, i, p), power(rho_prime(p), j, p), p)
    assert abs(norm(u, p)) == 1
    assert mul(u, unit_inverse(u, p), p) == ONE


def test_unit_inverse_rejects_non_unit():
    with pytest.raises(ValueError):
        unit_inverse(Element(2, 0, 0), P8)


def test_negative_power_matches_generator():
    # (rho')^{-2} = (-a-1, -(a^2+3a+3), a+2)
    assert power(rho_prime(P8), -2, P8) == Element(-9, -91, 10)
    assert power(rho_double_prime(P8), -2, P8) == Element(1, 2, 1)


def test_randomized_norm_determinant_bulk():
    rng = random.Random(1)
    for _ in range(2000):
        a = rng.randint(7, 200)
        p = make_params(a)
        x = Element(*(rng.randint(-10**9, 10**9) for _ in range(3)))
        assert norm(x, p) == det3(mult_matrix(x, p))
