import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gravop.arnold import (
    RingDescriptor,
    RingElement,
    RingError,
    basis_in_degree,
    format_element,
    multiply,
    normal_form,
    poincare,
    presentation_oracle,
    presentation_profile,
    product_by_association,
    product_formula_profile,
    truncated_polynomial_profile,
    y_element,
)
from gravop.exactla import GradedRankProfile


def conf(n, d=1):
    return RingDescriptor(n, d, "conf")


def test_admissible_generator_is_fixed():
    r = conf(3)
    assert r.x(1, 2).terms == {(0, ((1, 2),)): 1}


def test_square_and_symmetry():
    r = conf(3, 2)
    assert not r.x(1, 3) * r.x(1, 3)
    assert r.x(3, 1) == r.x(1, 3)
    assert r.x(1, 2) * r.x(2, 1) == r.zero()


def test_arnold_rewrite_value():
    # fixed from the presentation oracle: x13 x23 = -x12 x13 + x12 x23
    r = conf(3)
    e = r.x(1, 3) * r.x(2, 3)
    assert e.terms == {(0, ((1, 2), (1, 3))): -1, (0, ((1, 2), (2, 3))): 1}
    assert format_element(e) == "-x(1,2)*x(1,3) + x(1,2)*x(2,3)"
    oracle = presentation_oracle(3, 2)
    assert oracle.express([(1, [(1, 3), (2, 3)])], [((1, 2), (1, 3)), ((1, 2), (2, 3))]) == [-1, 1]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_arnold_relation_vanishes(d):
    r = conf(4, d)
    for i, j, k in itertools.permutations(range(1, 5), 3):
        rel = r.x(i, j) * r.x(j, k) + r.x(j, k) * r.x(k, i) + r.x(k, i) * r.x(i, j)
        assert not rel


def test_multiply_unit_and_bilinear():
    r = conf(3)
    b = r.x(1, 3) * r.x(2, 3) + r.x(1, 2)
    assert multiply(r.one(), b) == b
    assert multiply(r.x(1, 2) + r.x(1, 3), r.x(2, 3)) == (
        normal_form([(1, 0, [(1, 2), (2, 3)])], r) + normal_form([(1, 0, [(1, 3), (2, 3)])], r)
    )


def test_errors():
    r = conf(3)
    with pytest.raises(RingError):
        r.x(1, 4)
    with pytest.raises(RingError):
        r.x(2, 2)
    with pytest.raises(RingError):
        r.c()
    with pytest.raises(RingError):
        normal_form([(1, 1, [])], r)
    with pytest.raises(RingError):
        RingDescriptor(1, 1)
    with pytest.raises(RingError):
        RingDescriptor(3, 1, "torus")
    with pytest.raises(RingError):
        multiply(r.one(), conf(4).one())
    with pytest.raises(RingError):
        y_element(2, 1, r)


def test_basis_examples():
    r = conf(3)
    assert basis_in_degree(r, 1) == [(0, ((1, 2),)), (0, ((1, 3),)), (0, ((2, 3),))]
    assert basis_in_degree(r, 2) == [(0, ((1, 2), (1, 3))), (0, ((1, 2), (2, 3)))]
    th = RingDescriptor(2, 3, "th")
    assert [basis_in_degree(th, q) for q in (0, 2, 4, 6)] == [[(0, ())], [(1, ())], [(2, ())], []]


def test_poincare_examples():
    assert poincare(conf(3)).as_dict() == {0: 1, 1: 3, 2: 2}
    for d in (1, 2, 3):
        assert poincare(conf(2, d)).as_dict() == {0: 1, 2 * d - 1: 1}
        assert poincare(RingDescriptor(2, d, "th")).as_dict() == {2 * a: 1 for a in range(d)}
        assert poincare(RingDescriptor(2, d, "fiber")).as_dict() == {0: 1}


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("d", [1, 2, 3])
def test_profiles(n, d):
    h = 2 * d - 1
    c, f, t = (poincare(RingDescriptor(n, d, fl)) for fl in ("conf", "fiber", "th"))
    assert c == product_formula_profile(n, d)
    assert c.total() == math.factorial(n)
    assert c == f.convolve(GradedRankProfile({0: 1, h: 1}))
    assert t == f.convolve(truncated_polynomial_profile(d))
    assert t.total() == d * math.factorial(n) // 2


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("flavor", ["conf", "fiber"])
def test_presentation_oracle_ranks(n, flavor):
    ring = RingDescriptor(n, 1, flavor)
    assert presentation_profile(ring) == poincare(ring)


def test_y_elements():
    r = conf(3)
    assert y_element(1, 3, r) == r.x(1, 3) - r.x(1, 2)
    assert y_element(2, 3, r) == r.x(2, 3) - r.x(1, 2)
    assert y_element(3, 1, r) == y_element(1, 3, r)


def test_th_c_power():
    th = RingDescriptor(3, 2, "th")
    assert th.c() * th.c() == th.zero()
    assert not th.c(2)
    assert (th.c() * th.x(1, 3)).degree() == 2 + 3
    assert not th.x(1, 2)


@pytest.mark.parametrize("n", range(2, 6))
def test_graded_commutativity_exhaustive(n):
    r = conf(n, 2)
    gens = [r.x(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    for a, b in itertools.product(gens, repeat=2):
        assert a * b == -(b * a)


pairs = st.integers(2, 5).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda p: p[0] != p[1]), max_size=4),
        st.integers(0, 2**32),
    )
)


@given(pairs, st.sampled_from(["conf", "fiber"]))
def test_association_order_does_not_matter(data, flavor):
    n, factors, seed = data
    ring = RingDescriptor(n, 2, flavor)
    a = normal_form([(1, 0, factors)], ring)
    b = product_by_association(factors, ring, random.Random(seed))
    c = normal_form([(1, 0, factors)], ring, random.Random(seed + 1))
    assert a == b == c
    nf = [(v, list(m)) for (_, m), v in a.terms.items()]
    assert presentation_oracle(n, len(factors), ring.kills_x12).equivalent([(1, factors)], nf)


@given(pairs, pairs)
def test_graded_commutativity_random(p, q):
    n = min(p[0], q[0])
    ring = conf(n, 3)
    fa = [f for f in p[1] if max(f) <= n]
    fb = [f for f in q[1] if max(f) <= n]
    a = normal_form([(1, 0, fa)], ring)
    b = normal_form([(1, 0, fb)], ring)
    sign = -1 if (len(fa) * len(fb)) % 2 else 1
    assert a * b == sign * (b * a)


def test_json_round_trip():
    r = RingDescriptor(3, 2, "th")
    e = 3 * r.c() * r.x(1, 3) - r.x(2, 3)
    data = e.to_json()
    assert data["flavor"] == "th"
    assert RingElement.from_json(data) == e
    example = {"n": 3, "d": 2, "flavor": "conf", "terms": [{"coeff": -1, "c": 0, "monomial": [[1, 2], [1, 3]]}]}
    assert RingElement.from_json(example).to_json() == example


def test_inhomogeneous_element():
    r = conf(3)
    e = r.one() + r.x(1, 2)
    assert not e.is_homogeneous()
    assert e.degrees() == {0, 1}
    assert e.component(1) == r.x(1, 2)
