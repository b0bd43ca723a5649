import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brauercensus.rootdata import (
    build_root_system,
    longest_element,
    root_action,
    simple_reflection,
    subdiagram_type,
)

ALL_TYPES = [
    "A1", "A2", "A5", "B2", "B4", "C3", "C5", "D4", "D5", "D7",
    "E6", "E7", "E8", "F4", "G2",
]


@pytest.mark.parametrize(
    "label,count",
    [("A1", 2), ("G2", 12), ("E8", 240), ("B3", 18), ("C4", 32), ("D5", 40), ("E6", 72)],
)
def test_root_counts(label, count):
    assert len(build_root_system(label).roots) == count


@pytest.mark.parametrize("bad", ["B1", "C1", "D2", "E5", "E9", "F3", "G3", "H4", "A0"])
def test_invalid_labels_rejected(bad):
    with pytest.raises(ValueError):
        build_root_system(bad)


@pytest.mark.parametrize("label", ALL_TYPES)
def test_reflection_closure_and_halving(label):
    datum = build_root_system(label)
    assert 2 * len(datum.positive_roots) == len(datum.roots)
    for beta in datum.roots:
        for i in datum.nodes:
            image = datum.reflect_root(beta, datum.node_root(i))
            assert datum.is_root(image)


@pytest.mark.parametrize("label", ALL_TYPES)
def test_pairing_integrality(label):
    datum = build_root_system(label)
    for beta in datum.positive_roots:
        for gamma in datum.positive_roots:
            assert isinstance(datum.root_pairing(beta, gamma), int)


def test_cartan_spot_checks():
    assert build_root_system("A2").cartan == ((2, -1), (-1, 2))
    b2 = build_root_system("B2").cartan
    assert b2 == ((2, -2), (-1, 2))
    g2 = build_root_system("G2").cartan
    assert g2 == ((2, -1), (-3, 2))


def test_coroot_coords_are_cartan_columns():
    datum = build_root_system("F4")
    for j in range(4):
        assert datum.coroot_coords[j] == tuple(datum.cartan[i][j] for i in range(4))


def test_simple_reflection_involution_and_a2_example():
    a2 = build_root_system("A2")
    s1 = simple_reflection(a2, 1)
    assert s1.compose(s1).is_identity
    # s_1 applied to the coroot of node 2 adds the coroot of node 1
    coroot2 = a2.coroot_coweight((0, 1))
    expected = tuple(
        x + y for x, y in zip(a2.coroot_coweight((1, 0)), coroot2)
    )
    assert s1.apply(coroot2) == expected


def test_simple_reflection_a1():
    a1 = build_root_system("A1")
    s1 = simple_reflection(a1, 1)
    assert s1.apply((1,)) == (-1,)


def test_longest_element_cases():
    a2 = build_root_system("A2")
    assert longest_element(a2, []).is_identity
    w0 = longest_element(a2, [1, 2])
    assert w0.compose(w0).is_identity
    # w0 of A2 is minus the diagram flip
    assert root_action(a2, w0, (1, 0)) == (0, -1)


@pytest.mark.parametrize("label", ALL_TYPES)
def test_longest_element_negates_positives(label):
    datum = build_root_system(label)
    w0 = longest_element(datum, datum.nodes)
    assert w0.compose(w0).is_identity
    for i in datum.nodes:
        image = root_action(datum, w0, datum.node_root(i))
        assert all(c <= 0 for c in image)


@pytest.mark.parametrize("label", ["B3", "C4", "D4", "D6", "E7", "E8", "F4", "G2"])
def test_minus_one_types_send_simples_to_negatives(label):
    # in these types the longest element acts as minus the identity on V
    datum = build_root_system(label)
    w0 = longest_element(datum, datum.nodes)
    neg = tuple(tuple(-(i == j) for j in range(datum.rank)) for i in range(datum.rank))
    assert w0.linear == neg


def test_parabolic_longest_element():
    a2 = build_root_system("A2")
    assert longest_element(a2, [1]) == simple_reflection(a2, 1)


def test_subdiagram_examples():
    e6 = build_root_system("E6")
    assert subdiagram_type(e6, []) == ()
    assert [str(t) for t in subdiagram_type(e6, [0, 1, 2, 3, 5, 6])] == ["A2", "A2", "A2"]
    e7 = build_root_system("E7")
    assert [str(t) for t in subdiagram_type(e7, [0, 1, 3, 4, 5, 6, 7])] == ["A7"]


def test_subdiagram_ambient_conventions():
    b4 = build_root_system("B4")
    assert [str(t) for t in subdiagram_type(b4, [0, 1, 3, 4])] == ["A1", "A1", "B2"]
    c4 = build_root_system("C4")
    assert [str(t) for t in subdiagram_type(c4, [0, 1, 3, 4])] == ["C2", "C2"]
    d6 = build_root_system("D6")
    assert [str(t) for t in subdiagram_type(d6, [0, 1, 2, 4, 5, 6])] == ["D3", "D3"]
    f4 = build_root_system("F4")
    assert [str(t) for t in subdiagram_type(f4, [1, 2, 3])] == ["B3"]
    assert [str(t) for t in subdiagram_type(f4, [2, 3, 4])] == ["C3"]


def test_subdiagram_rejects_bad_nodes():
    with pytest.raises(ValueError):
        subdiagram_type(build_root_system("A2"), [5])


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A3", "B3", "C3", "D4", "G2"]), st.data())
def test_root_action_preserves_system(label, data):
    datum = build_root_system(label)
    word = data.draw(st.lists(st.sampled_from(list(datum.nodes)), max_size=6))
    w = longest_element(datum, [])
    for i in word:
        w = simple_reflection(datum, i).compose(w)
    beta = data.draw(st.sampled_from(list(datum.roots)))
    assert datum.is_root(root_action(datum, w, beta))
