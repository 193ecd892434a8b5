import itertools

import pytest

from gravop import gravity
from gravop.gravity import GravityElement, GravityError
from gravop.poisson import operad


def test_epsilon_examples():
    assert gravity.epsilon(1, 3, (0, 0, 0, 0)) == 1
    assert gravity.epsilon(1, 2, (1, 1)) == 1
    assert gravity.epsilon(2, 3, (1, 1, 1)) == 1
    assert gravity.epsilon(1, 2, (0, 1)) == 1
    assert gravity.epsilon(1, 3, (0, 1, 1)) == -1
    with pytest.raises(GravityError):
        gravity.epsilon(2, 2, (0, 0))
    with pytest.raises(GravityError):
        gravity.epsilon(3, 1, (0, 0, 0))


def test_relation_permutation():
    assert gravity.relation_permutation(2, 4, 4, 2).images == (2, 4, 1, 3, 5, 6)


@pytest.mark.parametrize("par", list(itertools.product((0, 1), repeat=3)))
def test_two_bracket_case(par):
    assert gravity.check_gravity_relation(2, 1, par, 1)


def test_jacobi_instance():
    assert gravity.check_gravity_relation(3, 1, (0, 0, 0, 0), 1)
    lhs, rhs = gravity.gravity_relation_sides(3, 1, (0, 0, 0, 0), 1)
    assert lhs == rhs and lhs


def test_parity_sweep_k3_l2():
    reports = gravity.sweep_gravity_relation(3, 2, 2)
    assert len(reports) == 32
    assert all(r["pass"] for r in reports)
    assert reports[5] == {"check": "gravity_relation", "k": 3, "l": 2, "d": 2, "parities": [0, 0, 1, 0, 1], "pass": True}


def test_relation_is_not_vacuous():
    # dropping the epsilon signs must break the relation somewhere
    k, l, d = 3, 1, 1
    broken = 0
    for par in itertools.product((0, 1), repeat=4):
        lhs, _ = gravity.gravity_relation_sides(k, l, par, d)
        _, inner = gravity._relation_operations(k, l, d)
        rhs = sum((operad.evaluate(inner, gravity.relation_permutation(i, j, k, l), par)
                   for i, j in itertools.combinations(range(1, k + 1), 2)), operad.OperadElement(4, d, {}, par))
        broken += lhs != rhs
    assert broken


def test_relation_argument_errors():
    with pytest.raises(GravityError):
        gravity.check_gravity_relation(1, 1, (0, 0), 1)
    with pytest.raises(GravityError):
        gravity.check_gravity_relation(2, 1, (0, 0), 1)
    with pytest.raises(GravityError):
        gravity.check_gravity_relation(5, 4, (0,) * 9, 1)


def test_rank_profiles():
    for d in (1, 2, 3):
        assert gravity.gravity_rank_profile(2, d).as_dict() == {2 * a + 1: 1 for a in range(d)}
    assert gravity.gravity_rank_profile(3, 1).as_dict() == {1: 1, 2: 2}
    assert gravity.gravity_rank_profile(4, 1).total() == 12
    for n in range(2, 6):
        for d in (1, 2, 3):
            assert gravity.gravity_rank_profile(n, d).total() == gravity.total_rank_expected(n, d)


def test_main_theorem_examples():
    rep = gravity.verify_main_theorem(2, 3)
    assert [(r["degree"], r["gravity"], r["suspended_th"]) for r in rep["rows"]] == [(1, 1, 1), (3, 1, 1), (5, 1, 1)]
    assert gravity.th_homology_profile(3, 1).as_dict() == {0: 1, 1: 2}
    assert gravity.verify_main_theorem(3, 1)["pass"]
    assert gravity.verify_main_theorem(5, 2)["pass"]
    assert "alignment" in rep


def test_c_compatibility():
    rep = gravity.verify_c_compatibility(3, 2)
    assert rep["pass"]
    assert rep["slice_ranks"][0] == rep["slice_ranks"][1]
    assert gravity.verify_c_compatibility(4, 1)["matches_getzler"]


def test_getzler_profile():
    assert gravity.getzler_profile(3).as_dict() == {1: 1, 2: 2}
    assert gravity.getzler_profile(4).as_dict() == {1: 1, 2: 5, 3: 6}


def test_gravity_element_invariants():
    lam = operad.lam(2)
    g = GravityElement(1, lam)
    assert g.degree() == 1 and g.suspended_degree() == 2
    assert not g.times_c()
    assert GravityElement(0, lam).times_c() == g
    with pytest.raises(GravityError):
        GravityElement(2, lam)
    with pytest.raises(GravityError):
        GravityElement(0, operad.mu(2, 2))


def test_gravity_composition():
    d = 3
    b2, b3 = gravity.gravity_generator(2, d), gravity.gravity_generator(3, d, c_exp=1)
    e = gravity.compose(b2, 1, b3)
    assert e.c_exp == 1
    assert e.kernel_part == operad.compose(b2.kernel_part, 1, b3.kernel_part)
    assert not gravity.compose(gravity.gravity_generator(2, d, 2), 1, b3)


def test_kernel_closed_under_composition():
    d = 1
    for na in range(2, 4):
        for nb in range(2, 5 - na + 2):
            if na + nb - 1 > 5:
                continue
            ua = [u for q in range(na) for u in operad.kernel_basis(na, d, q)]
            ub = [u for q in range(nb) for u in operad.kernel_basis(nb, d, q)]
            for u, v in itertools.product(ua, ub):
                for i in range(1, na + 1):
                    assert not operad.delta(operad.compose(u, i, v))
