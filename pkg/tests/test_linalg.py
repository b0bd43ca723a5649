from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brauercensus.linalg import (
    AffineMap,
    SingularMatrixError,
    hermite_normal_form,
    lattice_contains,
    mat_identity,
    mat_inv,
    mat_mul,
    nullspace,
    solve_affine,
    solve_linear,
)


def test_solve_linear_exact():
    a = ((2, 1), (1, 3))
    x = solve_linear(a, (5, 10))
    assert x == (Fraction(1), Fraction(3))


def test_solve_linear_singular():
    with pytest.raises(SingularMatrixError):
        solve_linear(((1, 2), (2, 4)), (1, 1))


def test_mat_inv_roundtrip():
    a = ((2, 1, 0), (-1, 2, -1), (0, -1, 2))
    assert mat_mul(a, mat_inv(a)) == mat_identity(3)


def test_nullspace_reduced():
    basis = nullspace(((1, 1, 1),))
    assert len(basis) == 2
    for v in basis:
        assert sum(v) == 0
    # reduced echelon rows start with a 1 pivot
    assert basis[0][0] == 1


def test_solve_affine_inconsistent():
    assert solve_affine(((1, 1), (1, 1)), (0, 1)) is None


def test_affine_map_compose_inverse():
    f = AffineMap(((0, 1), (1, 0)), (1, 2))
    g = f.compose(f.inverse())
    assert g.is_identity
    assert f.apply((3, 4)) == (5, 5)


def test_affine_map_fixed_point():
    f = AffineMap(((Fraction(1, 2), 0), (0, Fraction(1, 2))), (1, 0))
    assert f.unique_fixed_point() == (Fraction(2), Fraction(0))


def test_hnf_canonical():
    basis = hermite_normal_form([(2, 0), (0, 2), (1, 1)])
    assert basis == ((1, 1), (0, 2))
    assert lattice_contains(basis, (3, 1))
    assert not lattice_contains(basis, (1, 0))
    assert lattice_contains(basis, (0, 0))


def test_lattice_fractional_rejected():
    basis = hermite_normal_form([(1, 0), (0, 1)])
    assert not lattice_contains(basis, (Fraction(1, 2), 0))


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4
    )
)
def test_hnf_spans_same_lattice(gens):
    basis = hermite_normal_form(gens)
    for g in gens:
        assert lattice_contains(basis, tuple(g))
    for row in basis:
        # every basis row is an integer combination of the generators: it is
        # at least inside the HNF of the generators, which is the lattice
        assert lattice_contains(basis, row)
