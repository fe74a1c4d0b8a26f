"""Monomial decompositions of induced trivial characters, level pairings,
M-group classification and the monomial cone."""

from fractions import Fraction

import pytest

from charkit.chartab import character_table, linear_characters
from charkit.classfun import (
    ClassFunction,
    VirtualCharacter,
    decompose,
    induce,
    inner_product,
    is_linear,
    level,
    restrict,
    twist,
)
from charkit.corpus import corpus_group, solvable_corpus
from charkit.cyclo import Cyclotomic
from charkit.errors import (
    EmptyFamily,
    InputError,
    NotSolvable,
)
from charkit.monomial import (
    MonomialDecomposition,
    brauer_witness_search,
    cone_membership,
    decompose_uvdw,
    decompose_uvdw_level,
    decomposition_from_json,
    is_m_group,
    level_identity,
    monomial_family,
    pairing_levels,
    twist_certificate,
)
from helpers import naive_induce, naive_inner


def test_uvdw_certificates_small_corpus():
    for G in solvable_corpus(12):
        for H in G.subgroups():
            dec = decompose_uvdw(G, H)
            dec.verify(internal=False)
            target = naive_induce(ClassFunction.trivial(H), G)
            assert dec.target == target
            assert dec.residual_trivial_coeff == 1
            assert naive_inner(target, ClassFunction.trivial(G)) == Cyclotomic.one()
            for t in dec.terms:
                assert is_linear(t.character)
                assert not t.is_trivial_character
                assert t.coefficient.denominator == 1 and t.coefficient > 0
                assert G.contains_subgroup(t.subgroup)
            assert dec.evaluate() == target


def test_uvdw_rejects_nonsolvable():
    A5 = corpus_group("A5")
    with pytest.raises(NotSolvable):
        decompose_uvdw(A5, A5.trivial_subgroup)


def test_uvdw_level_certificates():
    S4 = corpus_group("S4")
    for H in (S4.trivial_subgroup, S4.cyclic_subgroups[1], S4.derived_term(2)):
        for i in (1, 2, 3):
            dec = decompose_uvdw_level(S4, H, i)
            dec.verify(internal=False)
            base = dec.terms[0]
            assert base.is_trivial_character and base.coefficient == 1
            # the base subgroup is H*G^i: it contains both factors and is
            # generated by them
            Gi = S4.derived_term(i)
            M = base.subgroup
            assert M.contains_subgroup(Gi)
            assert set(H.elements) <= set(M.elements)
            assert dec.evaluate() == naive_induce(ClassFunction.trivial(H), S4)
    with pytest.raises(InputError):
        decompose_uvdw_level(S4, S4.trivial_subgroup, 0)


def test_twist_certificate():
    S3 = corpus_group("S3")
    tab = character_table(S3)
    sign = next(
        chi
        for chi in tab.irreducibles
        if is_linear(chi) and chi != ClassFunction.trivial(S3)
    )
    H = S3.subgroup([(1, 0, 2)])
    dec = decompose_uvdw(S3, H)
    tw = twist_certificate(dec, sign)
    tw.verify(internal=False)
    assert tw.target == twist(dec.target, sign)
    assert tw.residual_trivial_coeff == 0
    # the residual trivial multiple moved into an explicit (G, sign) term
    assert any(
        t.subgroup.order == S3.order and t.character == sign for t in tw.terms
    )
    # twisting by the trivial character is the identity
    tw0 = twist_certificate(dec, ClassFunction.trivial(S3))
    assert tw0.target == dec.target
    assert tw0.residual_trivial_coeff == dec.residual_trivial_coeff


def test_pairing_levels_normal_base():
    S4 = corpus_group("S4")
    V4 = S4.derived_term(2)
    tab = character_table(S4)
    rep = pairing_levels(S4, V4, ClassFunction.trivial(V4), 2)
    assert rep.trivial_on_intersection
    assert rep.dichotomy_holds and rep.identity_holds
    ind = naive_induce(ClassFunction.trivial(V4), S4)
    expected = tuple(
        int(naive_inner(ind, chi).to_fraction()) for chi in tab.irreducibles
    )
    assert rep.induced_pairings == expected
    assert sum(expected) == 4  # 1 + 1 + 2: exactly the level <= 2 characters
    assert rep.pairings == expected  # nothing survives above level 2 here
    assert rep.levels == tuple(level(chi) for chi in tab.irreducibles)


def test_pairing_levels_nontrivial_intersection():
    S3 = corpus_group("S3")
    A3 = S3.derived_term(1)
    omega = next(
        f
        for f in linear_characters(A3)
        if f != ClassFunction.trivial(A3)
    )
    rep = pairing_levels(S3, A3, omega, 1)
    assert not rep.trivial_on_intersection
    assert rep.extension is None and rep.extension_subgroup is None
    assert rep.dichotomy_holds
    assert rep.identity_holds is None
    for p, l in zip(rep.induced_pairings, rep.levels):
        if l <= 1:
            assert p == 0


def test_pairing_levels_extension_case():
    S3 = corpus_group("S3")
    H = S3.subgroup([(1, 0, 2)])
    sgn_h = next(
        f for f in linear_characters(H) if f != ClassFunction.trivial(H)
    )
    rep = pairing_levels(S3, H, sgn_h, 1)
    assert rep.trivial_on_intersection
    assert rep.extension_subgroup.order == 6
    assert is_linear(rep.extension)
    assert rep.dichotomy_holds and rep.identity_holds


def test_level_identity_matches_linearity_predicate():
    for G in solvable_corpus(24):
        tab = character_table(G)
        for i in range(G.derived_length + 1):
            rep = level_identity(G, i)
            assert rep.corrected_holds
            all_linear = all(
                chi.degree == Cyclotomic.one()
                for chi in tab.irreducibles
                if level(chi) <= i
            )
            assert rep.literal_holds == all_linear
            if i <= 1:
                assert rep.literal_holds


KNOWN_M_GROUPS = {
    "C6": True,
    "C12": True,
    "V4": True,
    "S3": True,
    "D4": True,
    "Q8": True,
    "A4": True,
    "S4": True,
    "D6": True,
    "SL23": False,
}


def test_m_group_classification_with_verified_witnesses():
    for name, expected in KNOWN_M_GROUPS.items():
        G = corpus_group(name)
        rep = is_m_group(G)
        assert rep.is_m_group == expected, name
        tab = character_table(G)
        for idx, H, phi in rep.witnesses:
            assert is_linear(phi)
            assert naive_induce(phi, G) == tab.irreducibles[idx]
        if expected:
            assert sorted(idx for idx, _, _ in rep.witnesses) == list(
                range(len(tab.irreducibles))
            )
            assert rep.failures == ()
        else:
            assert rep.failures


def test_sl23_failures_are_the_two_dimensionals():
    G = corpus_group("SL23")
    rep = is_m_group(G)
    tab = character_table(G)
    assert rep.failures == (3, 4, 5)
    assert all(tab.degrees[i] == 2 for i in rep.failures)


def test_monomial_family_s3():
    S3 = corpus_group("S3")
    fam = monomial_family(S3)
    # distinct induced-from-linear characters: Reg, two from the C2 copies,
    # two from A3 (the nontrivial pair both induce the standard character),
    # and the two linear characters of S3 itself
    assert len(fam) == 7
    fns = [m.function for m in fam]
    assert ClassFunction.regular(S3) in fns
    assert ClassFunction.trivial(S3) in fns
    for m in fam:
        assert is_linear(m.character)
        assert m.function == naive_induce(m.character, S3)
        vc = decompose(m.function, character_table(S3))
        assert vc.is_character()
    # distinct as functions
    assert all(
        fns[i] != fns[j] for i in range(len(fns)) for j in range(i + 1, len(fns))
    )


def test_monomial_family_a5():
    A5 = corpus_group("A5")
    fam = monomial_family(A5, max_order=60)
    assert len(fam) == 17
    for m in fam:
        assert is_linear(m.character)
        assert m.function == induce(m.character, A5)


def test_cone_membership_positive():
    for name in ("S3", "Q8"):
        G = corpus_group(name)
        tab = character_table(G)
        psi = ClassFunction.regular(G) - ClassFunction.trivial(G)
        res = cone_membership(psi, tab)
        assert res.member
        acc = ClassFunction(G, [0] * len(G.classes))
        for j, c in res.combination:
            assert c > 0
            acc = acc + res.family[j].function.scale(c)
        assert acc == psi


def test_cone_membership_negative_with_refutation():
    S3 = corpus_group("S3")
    tab = character_table(S3)
    sign = tab.irreducibles[0]
    psi = sign - ClassFunction.trivial(S3)
    res = cone_membership(psi, tab)
    assert not res.member
    j = res.refutation_index
    prod = naive_inner(psi, res.family[j].function)
    assert prod.to_fraction() == res.refutation_product
    assert res.refutation_product < 0


def test_cone_membership_empty_family():
    S3 = corpus_group("S3")
    tab = character_table(S3)
    with pytest.raises(EmptyFamily):
        cone_membership(ClassFunction.trivial(S3), tab, family=())


def test_brauer_witness_s3():
    S3 = corpus_group("S3")
    hit = brauer_witness_search(S3)
    assert hit is not None
    acc = ClassFunction(S3, [0, 0, 0])
    for member, c in hit:
        assert member.subgroup.is_cyclic
        assert abs(c) <= 3 and c != 0
        acc = acc + member.function.scale(c)
    assert acc == ClassFunction.trivial(S3)
    # expressing 1 from proper cyclic subgroups requires a negative coefficient
    assert any(c < 0 for _, c in hit)


def test_decomposition_json_roundtrip():
    S4 = corpus_group("S4")
    H = S4.subgroup([(1, 0, 2, 3), (0, 2, 1, 3)])
    dec = decompose_uvdw(S4, H)
    back = decomposition_from_json(dec.to_json())
    back.verify(internal=False)
    assert back.target == dec.target
    assert back.residual_trivial_coeff == dec.residual_trivial_coeff
    assert len(back.terms) == len(dec.terms)
