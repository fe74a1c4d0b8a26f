"""Integer order assignments: admissibility, the induced inequalities, the
bounded exhaustive searches and the structural predicates."""

import itertools
from fractions import Fraction

import pytest

from charkit.chartab import character_table
from charkit.classfun import ClassFunction, is_linear
from charkit.corpus import corpus_group
from charkit.errors import (
    InputError,
    NotLinear,
    NotSolvable,
    SearchSpaceTooLarge,
)
from charkit.heilbronn import (
    assignment_from_json,
    check_stark_restriction,
    foote_murty_gap,
    gap_not_one_check,
    has_abelian_normal_sylow,
    heilbronn_character,
    is_supersolvable,
    level_inequality,
    make_assignment,
    search_admissible,
    stark_lemma_check,
    theta_split,
    truncated_inequality,
    uvdw_gap,
)


def degrees_assignment(name, mode="weak", max_order=None):
    table = character_table(corpus_group(name))
    return make_assignment(table, table.degrees, mode=mode, max_order=max_order)


@pytest.mark.parametrize("name", ["S3", "C4", "Q8", "S4"])
def test_degree_base_is_admissible(name):
    a = degrees_assignment(name)
    assert a.weak_admissible and a.arithmetic_admissible
    G = a.group
    assert a.n_regular == G.order
    # with the degree base, n(H, phi) = phi(1) * [G:H] for every subgroup
    for H in G.subgroups():
        for phi in character_table(H).irreducibles:
            expected = Fraction(phi.degree.to_int() * (G.order // H.order))
            assert a.n(H, phi) == expected


def test_make_assignment_accepts_dict_and_roundtrips():
    table = character_table(corpus_group("S3"))
    a = make_assignment(table, {0: 1, 1: 1, 2: 2}, mode="arithmetic", label="s7")
    assert a.base == (1, 1, 2)
    assert a.label == "s7" and a.mode == "arithmetic"
    back = assignment_from_json(a.to_json(), table)
    assert back.base == a.base and back.mode == a.mode and back.label == a.label
    with pytest.raises(InputError):
        make_assignment(table, {0: 1, 9: 1})
    with pytest.raises(InputError):
        make_assignment(table, (1, 2))
    with pytest.raises(InputError):
        make_assignment(table, (1, 1, 1), mode="nonsense")


def test_heilbronn_character_collects_subgroup_orders():
    a = degrees_assignment("S3")
    G = a.group
    theta = heilbronn_character(a, G).theta
    assert theta == ClassFunction.regular(G)
    # with the degree base, Theta_H = [G:H] * Reg_H, matching Reg_G restricted
    H = G.derived_term(1)
    theta_h = heilbronn_character(a, H).theta
    assert theta_h == ClassFunction.regular(H).scale(G.order // H.order)


def test_stark_restriction_counts():
    a = degrees_assignment("S3", mode="arithmetic")
    rep = check_stark_restriction(a)
    assert rep.checked == 6 and rep.holds and rep.failures == ()
    w = degrees_assignment("S3", mode="weak")
    rep_w = check_stark_restriction(w)
    assert rep_w.checked == 5 and rep_w.holds


def test_foote_murty_values():
    a = degrees_assignment("S3")
    rep = foote_murty_gap(a)
    assert (rep.lhs, rep.rhs, rep.holds, rep.precondition_ok) == (
        Fraction(6),
        Fraction(36),
        True,
        True,
    )
    # values are reported even when the precondition fails
    table = character_table(corpus_group("S3"))
    b = make_assignment(table, (-2, 1, 0))
    rep_b = foote_murty_gap(b)
    assert rep_b.lhs == Fraction(5)
    assert rep_b.rhs == Fraction((-2 * 1 + 1 * 1 + 0 * 2) ** 2)


def test_stark_lemma_trivial_base():
    table = character_table(corpus_group("S3"))
    base = [0] * 3
    base[table.trivial_index] = 1
    a = make_assignment(table, tuple(base))
    rep = stark_lemma_check(a)
    assert rep.applicable and rep.holds
    assert rep.all_nonnegative and rep.concentrated_on_linear
    big = make_assignment(table, table.degrees)
    rep_big = stark_lemma_check(big)
    assert not rep_big.applicable and rep_big.holds


def test_stark_lemma_exhaustive_small_box():
    table = character_table(corpus_group("S3"))
    for base in itertools.product((-1, 0, 1), repeat=3):
        a = make_assignment(table, base)
        rep = stark_lemma_check(a)
        assert rep.holds
        if a.weak_admissible and a.n_regular <= 1:
            assert all(b >= 0 for b in base)


def test_truncated_inequality_anchor():
    a = degrees_assignment("S3", mode="arithmetic")
    table = a.table
    trivial = table.irreducibles[table.trivial_index]
    rep = truncated_inequality(a, trivial)
    assert (rep.lhs, rep.rhs, rep.holds, rep.precondition_ok) == (
        Fraction(5),
        Fraction(25),
        True,
        True,
    )
    std = table.irreducibles[2]
    with pytest.raises(NotLinear):
        truncated_inequality(a, std)
    a5 = character_table(corpus_group("A5"))
    b = make_assignment(a5, a5.degrees, max_order=60)
    with pytest.raises(NotSolvable):
        truncated_inequality(b, a5.irreducibles[0])


def test_level_inequality_anchors():
    a = degrees_assignment("S3", mode="arithmetic")
    r1 = level_inequality(a, 1)
    assert (r1.lhs, r1.rhs, r1.holds) == (Fraction(1), Fraction(1), True)
    r2 = level_inequality(a, 2)
    assert (r2.lhs, r2.rhs, r2.holds) == (Fraction(4), Fraction(16), True)
    with pytest.raises(InputError):
        level_inequality(a, 0)


def test_uvdw_gap_is_index_minus_one_for_degree_base():
    a = degrees_assignment("S3")
    G = a.group
    for H in G.subgroups():
        assert uvdw_gap(a, H) == G.order // H.order - 1


def test_gap_not_one_anchors():
    a = degrees_assignment("S3", mode="arithmetic")
    r1 = gap_not_one_check(a, 1)
    assert r1.gap == 4 and r1.holds and r1.precondition_ok
    r2 = gap_not_one_check(a, 2)
    assert r2.gap == 0 and r2.holds


def test_theta_split_degree_base():
    a = degrees_assignment("S3")
    rep = theta_split(a)
    assert rep.theta1.coeffs == {2: Fraction(2)}
    assert rep.theta2.coeffs == {}
    assert rep.theta3.coeffs == {0: Fraction(1), 1: Fraction(1)}
    assert rep.reconstruction_ok
    assert rep.every_negative_faithful  # vacuous: no negative terms
    assert rep.split_orthogonal
    assert rep.overlap == ()


def test_theta_split_with_negative_nonfaithful_term():
    table = character_table(corpus_group("S3"))
    a = make_assignment(table, (-1, 1, 1))
    rep = theta_split(a)
    assert rep.theta1.coeffs == {0: Fraction(1), 2: Fraction(1)}
    assert rep.theta2.coeffs == {0: Fraction(1)}
    assert rep.theta3.coeffs == {0: Fraction(-1), 1: Fraction(1)}
    assert rep.reconstruction_ok
    assert not rep.every_negative_faithful
    assert rep.every_negative_not_induced
    assert not rep.split_orthogonal
    assert rep.overlap == (0,)


def test_search_matches_bruteforce_reenumeration():
    table = character_table(corpus_group("S3"))
    for mode in ("weak", "arithmetic"):
        rep = search_admissible(table, 1, mode=mode)
        assert rep.candidates == 27
        assert rep.violations == 0 and rep.violation_witnesses == ()
        brute = 0
        for base in itertools.product((-1, 0, 1), repeat=3):
            a = make_assignment(table, base, mode=mode)
            flag = (
                a.weak_admissible if mode == "weak" else a.arithmetic_admissible
            )
            brute += 1 if flag else 0
        assert rep.admissible == brute


def test_search_parallel_agrees_with_serial():
    table = character_table(corpus_group("S3"))
    one = search_admissible(table, 1, mode="weak", jobs=1)
    two = search_admissible(table, 1, mode="weak", jobs=2)
    assert one == two


def test_search_guard():
    table = character_table(corpus_group("S3"))
    with pytest.raises(SearchSpaceTooLarge):
        search_admissible(table, 200, mode="weak")


def test_abelian_normal_sylow_predicate():
    cases = {
        ("S3", 3): True,
        ("S3", 2): False,
        ("S4", 2): False,
        ("A4", 2): True,
        ("SL23", 2): False,
        ("SL23", 3): False,
        ("C12", 2): True,
        ("C12", 3): True,
    }
    for (name, q), expected in cases.items():
        assert has_abelian_normal_sylow(corpus_group(name), q) == expected, (
            name,
            q,
        )
    with pytest.raises(InputError):
        has_abelian_normal_sylow(corpus_group("S3"), 4)


def test_supersolvable_predicate():
    expected = {
        "S3": True,
        "Q8": True,
        "C4": True,
        "D4": True,
        "D6": True,
        "S3xC2": True,
        "A4": False,
        "S4": False,
        "SL23": False,
        "A5": False,
    }
    for name, val in expected.items():
        assert is_supersolvable(corpus_group(name)) == val, name
