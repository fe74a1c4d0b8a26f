"""Character tables: hand-computed anchors, cross-checks between the abelian
and the modular (Dixon) computation paths, verification, and caching."""

import json
import os
from fractions import Fraction

import pytest

from charkit import chartab
from charkit.chartab import (
    CharacterTable,
    character_table,
    group_fingerprint,
    group_from_json,
    group_to_json,
    linear_characters,
    load_table,
    regular_character,
    verify_table,
)
from charkit.classfun import ClassFunction, inner_product
from charkit.corpus import corpus_group
from charkit.cyclo import Cyclotomic, zeta
from charkit.errors import SchemaError, VerificationFailed
from helpers import as_fraction_rows

KNOWN_DEGREES = {
    "S3": (1, 1, 2),
    "S4": (1, 1, 2, 3, 3),
    "A4": (1, 1, 1, 3),
    "A5": (1, 3, 3, 4, 5),
    "D4": (1, 1, 1, 1, 2),
    "Q8": (1, 1, 1, 1, 2),
    "D6": (1, 1, 1, 1, 2, 2),
    "SL23": (1, 1, 1, 2, 2, 2, 3),
}


def test_s3_table_matches_hand_computation():
    S3 = corpus_group("S3")
    table = character_table(S3)
    # class order: identity, 3-cycles, transpositions
    assert [c.size for c in S3.classes] == [1, 2, 3]
    expected = [
        (1, 1, -1),  # sign
        (1, 1, 1),  # trivial
        (2, -1, 0),  # standard
    ]
    got = [
        tuple(v.to_fraction() for v in chi.values) for chi in table.irreducibles
    ]
    assert got == [tuple(map(Fraction, row)) for row in expected]
    assert table.trivial_index == 1
    assert table.degrees == (1, 1, 2)
    assert table.linear_indices == (0, 1)


def test_c5_rows_are_power_characters():
    C5 = corpus_group("C5")
    table = character_table(C5)
    g = C5.generators[0]
    k = C5.class_of(g)
    # each row is determined by its value at the generator: some 5th root
    seen = set()
    for chi in table.irreducibles:
        val = chi.values[k]
        j = next(
            jj for jj in range(5) if val == Cyclotomic.root_of_unity(5, jj)
        )
        seen.add(j)
        # and the whole row is the j-th power character
        for ci, cls in enumerate(C5.classes):
            e = next(
                p for p in range(5) if cls.rep == _power(C5, g, p)
            )
            assert chi.values[ci] == Cyclotomic.root_of_unity(5, (j * e) % 5)
    assert seen == set(range(5))


def _power(G, g, p):
    from charkit import perms

    out = G.identity
    for _ in range(p):
        out = perms.compose(out, g)
    return out


@pytest.mark.parametrize("name", ["C6", "V4", "C8", "C12"])
def test_abelian_and_dixon_paths_agree(name):
    G = corpus_group(name)
    assert G.is_abelian
    a = CharacterTable(G, G.exponent, chartab._sort_rows(chartab._abelian_rows(G), G.exponent))
    d = CharacterTable(G, G.exponent, chartab._sort_rows(chartab._dixon_rows(G), G.exponent))
    assert as_fraction_rows(a) == as_fraction_rows(d)


@pytest.mark.parametrize("name", sorted(KNOWN_DEGREES))
def test_known_degree_vectors(name):
    table = character_table(corpus_group(name))
    assert table.degrees == KNOWN_DEGREES[name]


@pytest.mark.parametrize("name", ["S3", "Q8", "SL23", "A5"])
def test_verify_table_accepts_computed_tables(name):
    table = character_table(corpus_group(name))
    verify_table(table, internal=False)


def test_hand_column_orthogonality_s3():
    S3 = corpus_group("S3")
    table = character_table(S3)
    # centralizer orders per class: 6, 3, 2
    cent = [6, 3, 2]
    k = len(S3.classes)
    for i in range(k):
        for j in range(k):
            total = Cyclotomic.zero()
            for chi in table.irreducibles:
                total = total + chi.values[i] * chi.values[j].conjugate()
            expected = cent[i] if i == j else 0
            assert total == Cyclotomic.from_rational(expected)


def test_regular_character():
    for name in ("S3", "Q8"):
        G = corpus_group(name)
        table = character_table(G)
        reg = regular_character(table)
        assert reg == ClassFunction.regular(G)
        acc = ClassFunction(G, [0] * len(G.classes))
        for chi in table.irreducibles:
            acc = acc + chi.scale(chi.degree.to_int())
        assert acc == reg


def test_index_of():
    table = character_table(corpus_group("S3"))
    for i, chi in enumerate(table.irreducibles):
        assert table.index_of(chi) == i
    assert table.index_of(ClassFunction(table.group, [5, 5, 5])) is None


def test_cache_roundtrip_and_tampering(tmp_path):
    G = corpus_group("Q8")
    cache = str(tmp_path)
    chartab._TABLE_CACHE.clear()
    table = character_table(G, cache_dir=cache)
    path = os.path.join(cache, f"table-{group_fingerprint(G)}.json")
    assert os.path.exists(path)

    # force the load path by clearing the in-process memo
    chartab._TABLE_CACHE.clear()
    loaded = character_table(G, cache_dir=cache)
    assert as_fraction_rows(loaded) == as_fraction_rows(table)

    # tampering with a value must be caught on load
    with open(path) as fh:
        obj = json.load(fh)
    obj["irreducibles"][0][0] = {"order": 1, "coeffs": {"0": "7"}}
    with open(path, "w") as fh:
        json.dump(obj, fh)
    chartab._TABLE_CACHE.clear()
    with pytest.raises(VerificationFailed):
        character_table(G, cache_dir=cache)
    chartab._TABLE_CACHE.clear()

    # malformed JSON payload is a schema error
    with pytest.raises(SchemaError):
        load_table({"group": group_to_json(G)})


def test_load_table_rejects_wrong_group():
    S3 = corpus_group("S3")
    C6 = corpus_group("C6")
    obj = character_table(S3).to_json()
    with pytest.raises(VerificationFailed):
        load_table(obj, C6)


def test_group_json_roundtrip_and_fingerprint():
    for name in ("S3", "Q8", "SL23"):
        G = corpus_group(name)
        H = group_from_json(group_to_json(G))
        assert H == G
        assert H.elements == G.elements
        assert group_fingerprint(H) == group_fingerprint(G)
    assert group_fingerprint(corpus_group("S3")) != group_fingerprint(
        corpus_group("C6")
    )


def test_linear_characters_count():
    expected = {"S3": 2, "S4": 2, "A4": 3, "Q8": 4, "D4": 4, "C7": 7}
    for name, n in expected.items():
        G = corpus_group(name)
        lins = linear_characters(G)
        assert len(lins) == n
        for f in lins:
            assert f.degree == Cyclotomic.one()
            assert inner_product(f, f) == Cyclotomic.one()
