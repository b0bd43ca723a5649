import pytest

from brauercensus.errors import ResourceCapExceeded
from brauercensus.oracle import (
    FiniteField,
    SmallGroupSpec,
    character_degrees,
    conjugacy_classes,
    pprime_character_count,
    semisimple_class_count,
)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_axioms_exhaustively(q):
    f = FiniteField(q)
    for a in range(q):
        assert f.add[a][0] == a
        assert f.mul[a][f.one] == a
        assert f.add[a][f.neg[a]] == 0
        if a:
            assert f.mul[a][f.inv[a]] == f.one
        for b in range(q):
            assert f.add[a][b] == f.add[b][a]
            assert f.mul[a][b] == f.mul[b][a]
            for c in range(q):
                assert f.mul[a][f.add[b][c]] == f.add[f.mul[a][b]][f.mul[a][c]]


def test_spec_validation():
    with pytest.raises(ValueError):
        SmallGroupSpec("GL2", 3)
    with pytest.raises(ValueError):
        SmallGroupSpec("SL2", 6)
    assert SmallGroupSpec("SL2", 3).order == 24
    assert SmallGroupSpec("PGL2", 3).order == 24
    assert SmallGroupSpec("SL3", 2).order == 168


def test_order_cap():
    with pytest.raises(ResourceCapExceeded):
        semisimple_class_count(SmallGroupSpec("SL3", 9))


@pytest.mark.parametrize(
    "kind,q,expected",
    [
        ("SL2", 3, 3),
        ("PGL2", 3, 4),
        ("SL2", 5, 5),
        ("PGL2", 5, 6),
        ("SL2", 7, 7),
        ("SL2", 4, 4),
        ("SL2", 9, 9),
        ("SL3", 2, 4),
    ],
)
def test_semisimple_class_counts(kind, q, expected):
    assert semisimple_class_count(SmallGroupSpec(kind, q)) == expected


def test_classes_partition_the_group():
    for kind, q in [("SL2", 5), ("PGL2", 4), ("SL3", 2)]:
        spec = SmallGroupSpec(kind, q)
        classes = conjugacy_classes(spec)
        assert sum(size for _, size in classes) == spec.order


def test_character_degrees_match_class_counts():
    for kind, q in [("SL2", 3), ("SL2", 5), ("PGL2", 3), ("PGL2", 5), ("SL2", 4)]:
        spec = SmallGroupSpec(kind, q)
        assert len(character_degrees(spec)) == len(conjugacy_classes(spec))


def test_character_degree_values():
    assert character_degrees(SmallGroupSpec("SL2", 3)) == (1, 1, 1, 2, 2, 2, 3)
    assert character_degrees(SmallGroupSpec("PGL2", 3)) == (1, 1, 2, 3, 3)


@pytest.mark.parametrize(
    "kind,q,expected",
    [("SL2", 3, 6), ("PGL2", 3, 3), ("SL2", 5, 8), ("PGL2", 5, 5), ("SL2", 4, 4)],
)
def test_pprime_character_counts(kind, q, expected):
    assert pprime_character_count(SmallGroupSpec(kind, q)) == expected


def test_characters_unsupported_kind_rejected():
    with pytest.raises(ValueError):
        pprime_character_count(SmallGroupSpec("SL3", 2))


def test_census_cross_checks():
    # rank-2 anchors: the census and the brute force must agree where
    # both are computable
    from brauercensus.census import counts, make_group_config

    assert (
        counts(make_group_config("A2", "sc", 2)).rational_total
        == semisimple_class_count(SmallGroupSpec("SL3", 2))
    )
    assert (
        counts(make_group_config("A2", "ad", 2)).rational_total
        == semisimple_class_count(SmallGroupSpec("PGL3", 2))
    )
    assert (
        counts(make_group_config("A2", "ad", 3)).rational_total
        == semisimple_class_count(SmallGroupSpec("PGL3", 3))
    )
