"""Alcove geometry: extended diagram, fundamental group, folding.

The fundamental alcove is the simplex cut out by ``<a_i, x> >= 0`` and
``<a_0, x> <= 1`` (a_0 the highest root).  A point is described either
by its coweight coordinates or by its affine coordinates, the tuple
``(x_0, ..., x_n)`` indexed by extended node with ``x_i = n_i * coord_i``
for a simple node of mark ``n_i`` and ``x_0 = 1 - <a_0, x>``; the affine
coordinates always sum to 1, and the point lies in the closed alcove
exactly when they are all nonnegative.

For every node ``a`` of mark 1 (the minuscule nodes, node 0 included)
there is a linear Weyl element ``z_a`` inducing an automorphism of the
extended diagram, and the affine map ``f_a = z_a + w_a^vee`` stabilizes
the alcove, acting on affine coordinates by the inverse node
permutation.  Together these maps realize the stabilizer of the alcove
in the extended affine Weyl group; composition corresponds to the node
law ``z_a z_b = z_{z_a(b)}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .errors import InvariantViolation
from .linalg import AffineMap, Vec, unit_vec, vec_dot
from .rootdata import RootDatum, longest_element

FOLD_ITERATION_CAP = 100_000


# ---------------------------------------------------------------------------
# points and coordinates


def affine_coords(datum: RootDatum, coords: Vec) -> tuple:
    """Affine coordinates indexed by extended node (node 0 first)."""
    simple = tuple(datum.marks[i] * coords[i - 1] for i in datum.nodes)
    return (1 - sum(simple),) + simple


def coords_from_affine(datum: RootDatum, affine: tuple) -> Vec:
    return tuple(Fraction(affine[i], datum.marks[i]) for i in datum.nodes)


@dataclass(frozen=True)
class AffinePoint:
    """A point of V with both coordinate descriptions precomputed."""

    coords: Vec
    affine: tuple

    @property
    def in_alcove(self) -> bool:
        return all(x >= 0 for x in self.affine)


def affine_point(datum: RootDatum, coords: Vec) -> AffinePoint:
    return AffinePoint(tuple(coords), affine_coords(datum, coords))


def point_from_affine(datum: RootDatum, affine: tuple) -> AffinePoint:
    return AffinePoint(coords_from_affine(datum, affine), tuple(affine))


def in_closed_alcove(datum: RootDatum, coords: Vec) -> bool:
    if any(c < 0 for c in coords):
        return False
    return vec_dot(datum.highest_root, coords) <= 1


# ---------------------------------------------------------------------------
# diagram symmetries


@dataclass(frozen=True)
class DiagramSymmetry:
    """A permutation of the extended node set preserving bonds and marks."""

    perm: tuple[int, ...]  # image of node i at index i; index 0 is node 0

    def __call__(self, node: int) -> int:
        return self.perm[node]

    @property
    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm))

    def inverse(self) -> "DiagramSymmetry":
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return DiagramSymmetry(tuple(inv))

    def compose(self, other: "DiagramSymmetry") -> "DiagramSymmetry":
        """self after other."""
        return DiagramSymmetry(tuple(self.perm[p] for p in other.perm))

    @property
    def order(self) -> int:
        k, cur = 1, self
        while not cur.is_identity:
            cur = cur.compose(self)
            k += 1
        return k

    @classmethod
    def identity(cls, rank: int) -> "DiagramSymmetry":
        return cls(tuple(range(rank + 1)))


def validate_symmetry(datum: RootDatum, sym: DiagramSymmetry) -> None:
    """Reject permutations that do not preserve the extended diagram."""
    if len(sym.perm) != datum.rank + 1 or sorted(sym.perm) != list(datum.extended_nodes):
        raise ValueError("permutation does not cover the extended node set")
    for a in datum.extended_nodes:
        if datum.marks[sym(a)] != datum.marks[a]:
            raise ValueError("permutation does not preserve marks")
        for b in datum.extended_nodes:
            if datum.extended_pairing(sym(a), sym(b)) != datum.extended_pairing(a, b):
                raise ValueError("permutation does not preserve the extended diagram")


def standard_symmetry(datum: RootDatum, kind: str) -> DiagramSymmetry:
    """The conventional diagram symmetry of a given kind.

    ``"split"`` is the identity; ``"twisted"`` the order-2 symmetry of
    A_n (n>=2), D_n and E6; ``"triality"`` the order-3 symmetry of D4.
    """
    n = datum.rank
    fam = datum.label.family
    if kind == "split":
        return DiagramSymmetry.identity(n)
    perm = list(range(n + 1))
    if kind == "twisted":
        if fam == "A" and n >= 2:
            for i in datum.nodes:
                perm[i] = n + 1 - i
        elif fam == "D":
            perm[n - 1], perm[n] = n, n - 1
        elif fam == "E" and n == 6:
            perm[1], perm[6] = 6, 1
            perm[3], perm[5] = 5, 3
        else:
            raise ValueError(f"{datum.label} has no order-2 diagram symmetry")
    elif kind == "triality":
        if fam == "D" and n == 4:
            perm[1], perm[3], perm[4] = 3, 4, 1
        else:
            raise ValueError("triality only exists for D4")
    else:
        raise ValueError(f"unknown symmetry kind {kind!r}")
    sym = DiagramSymmetry(tuple(perm))
    validate_symmetry(datum, sym)
    return sym


# ---------------------------------------------------------------------------
# marks, minuscule nodes, fundamental group


def marks(datum: RootDatum) -> tuple[dict[int, int], Vec]:
    """Marks per extended node and the highest root."""
    return dict(datum.marks), datum.highest_root


def minuscule_nodes(datum: RootDatum) -> tuple[int, ...]:
    """Extended nodes of mark 1, node 0 first."""
    return tuple(a for a in datum.extended_nodes if datum.marks[a] == 1)


def coweight_lift(datum: RootDatum, node: int) -> Vec:
    """The fundamental coweight of a node (zero vector for node 0)."""
    if node == 0:
        return (0,) * datum.rank
    return unit_vec(datum.rank, node - 1)


@dataclass(frozen=True)
class FundamentalGroup:
    """The stabilizer of the alcove, indexed by minuscule nodes.

    ``elements`` lists the minuscule nodes with node 0 as the identity;
    the group law in node terms is ``mult[(a, b)] = perm[a](b)``.
    """

    elements: tuple[int, ...]
    mult: dict
    inv: dict
    perm: dict
    inv_perm: dict
    weyl: dict
    lift: dict

    @property
    def order(self) -> int:
        return len(self.elements)

    def order_of(self, a: int) -> int:
        k, cur = 1, a
        while cur != 0:
            cur = self.mult[(cur, a)]
            k += 1
        return k

    def power(self, a: int, k: int) -> int:
        k %= self.order_of(a)
        cur = 0
        for _ in range(k):
            cur = self.mult[(cur, a)]
        return cur

    def subgroup(self, generators: Iterable[int]) -> frozenset[int]:
        closed = {0} | set(generators)
        grew = True
        while grew:
            grew = False
            for a in list(closed):
                for b in list(closed):
                    c = self.mult[(a, b)]
                    if c not in closed:
                        closed.add(c)
                        grew = True
        return frozenset(closed)

    def is_subgroup(self, nodes: frozenset[int]) -> bool:
        return 0 in nodes and all(
            self.mult[(a, b)] in nodes for a in nodes for b in nodes
        )

    def apply_to_affine(self, node: int, affine: tuple) -> tuple:
        """Action of ``f_node`` on affine coordinates (inverse node permutation)."""
        inv = self.inv_perm[node].perm
        return tuple(affine[inv[b]] for b in range(len(affine)))


@lru_cache(maxsize=None)
def fundamental_group(datum: RootDatum) -> FundamentalGroup:
    n = datum.rank
    mins = minuscule_nodes(datum)
    vertex_of = {datum.alcove_vertices[a]: a for a in datum.extended_nodes}
    weyl = {0: AffineMap.identity(n)}
    perm = {0: DiagramSymmetry.identity(n)}
    lift = {a: coweight_lift(datum, a) for a in mins}
    w0 = longest_element(datum, datum.nodes)
    for a in mins:
        if a == 0:
            continue
        wa = longest_element(datum, [i for i in datum.nodes if i != a])
        z = wa.compose(w0)
        images = []
        for b in datum.extended_nodes:
            target = tuple(
                x + y for x, y in zip(z.apply(datum.alcove_vertices[b]), lift[a])
            )
            node = vertex_of.get(target)
            if node is None:
                raise InvariantViolation(f"f_{a} does not permute the alcove vertices")
            images.append(node)
        sym = DiagramSymmetry(tuple(images))
        validate_symmetry(datum, sym)
        if sym(0) != a:
            raise InvariantViolation(f"z_{a} sends node 0 to {sym(0)}, expected {a}")
        weyl[a] = z
        perm[a] = sym
    mult = {(a, b): perm[a](b) for a in mins for b in mins}
    inv = {}
    for a in mins:
        inv[a] = next(b for b in mins if mult[(a, b)] == 0)
    # The node law must agree with matrix composition.
    for a in mins:
        for b in mins:
            if weyl[a].compose(weyl[b]) != weyl[mult[(a, b)]]:
                raise InvariantViolation("fundamental group law violated on matrices")
    inv_perm = {a: perm[a].inverse() for a in mins}
    return FundamentalGroup(
        elements=mins,
        mult=mult,
        inv=inv,
        perm=perm,
        inv_perm=inv_perm,
        weyl=weyl,
        lift=lift,
    )


def z_element(datum: RootDatum, node: int) -> tuple[AffineMap, DiagramSymmetry]:
    """The linear alcove-stabilizer element of a minuscule node."""
    group = fundamental_group(datum)
    if node not in group.elements:
        raise ValueError(f"node {node} is not minuscule in {datum.label}")
    return group.weyl[node], group.perm[node]


def f_map(datum: RootDatum, node: int) -> AffineMap:
    """The alcove-stabilizing affine map ``z_node + coweight(node)``."""
    group = fundamental_group(datum)
    if node not in group.elements:
        raise ValueError(f"node {node} is not minuscule in {datum.label}")
    return AffineMap(group.weyl[node].linear, group.lift[node])


# ---------------------------------------------------------------------------
# folding into the fundamental alcove


@lru_cache(maxsize=None)
def affine_reflection_generators(datum: RootDatum) -> dict[int, AffineMap]:
    """Wall reflections of the alcove, keyed by the node of the violated wall."""
    n = datum.rank
    gens = {}
    for i in datum.nodes:
        col = datum.coroot_coords[i - 1]
        linear = tuple(
            tuple((1 if k == j else 0) - (col[k] if j == i - 1 else 0) for j in range(n))
            for k in range(n)
        )
        gens[i] = AffineMap(linear, (0,) * n)
    hr = datum.highest_root
    hrv = datum.highest_coroot_coweight
    linear = tuple(
        tuple((1 if k == j else 0) - hrv[k] * hr[j] for j in range(n)) for k in range(n)
    )
    gens[0] = AffineMap(linear, tuple(hrv))
    return gens


def fold_coords(datum: RootDatum, coords: Vec) -> Vec:
    """Move a point into the closed alcove by wall reflections (fast path)."""
    n = datum.rank
    cur = list(coords)
    hr = datum.highest_root
    hrv = datum.highest_coroot_coweight
    cols = datum.coroot_coords
    for _ in range(FOLD_ITERATION_CAP):
        i = next((i for i in range(n) if cur[i] < 0), None)
        if i is not None:
            c = cur[i]
            col = cols[i]
            for k in range(n):
                if col[k]:
                    cur[k] -= c * col[k]
            continue
        excess = vec_dot(hr, cur) - 1
        if excess <= 0:
            return tuple(cur)
        for k in range(n):
            cur[k] -= excess * hrv[k]
    raise InvariantViolation("folding did not terminate within the iteration cap")


def fold_to_alcove(datum: RootDatum, point) -> tuple[AffinePoint, list[AffineMap]]:
    """Fold a point into the closed alcove, returning the reflection word.

    The word lists the applied wall reflections in application order, so
    composing them right-to-left over the input reproduces the output.
    The wall to reflect in is always the first violated one in the node
    order 1, ..., rank, 0.
    """
    coords = point.coords if isinstance(point, AffinePoint) else tuple(point)
    gens = affine_reflection_generators(datum)
    cur = list(coords)
    word: list[AffineMap] = []
    n = datum.rank
    hr = datum.highest_root
    hrv = datum.highest_coroot_coweight
    for _ in range(FOLD_ITERATION_CAP):
        i = next((i for i in range(n) if cur[i] < 0), None)
        if i is not None:
            c = cur[i]
            col = datum.coroot_coords[i]
            for k in range(n):
                if col[k]:
                    cur[k] -= c * col[k]
            word.append(gens[i + 1])
            continue
        excess = vec_dot(hr, cur) - 1
        if excess <= 0:
            return affine_point(datum, tuple(cur)), word
        for k in range(n):
            cur[k] -= excess * hrv[k]
        word.append(gens[0])
    raise InvariantViolation("folding did not terminate within the iteration cap")


# ---------------------------------------------------------------------------
# invariant subspaces and their hyperplane containments


@dataclass(frozen=True)
class InvariantSpace:
    """The affine fixed space of an alcove-stabilizer map."""

    node: int
    dimension: int
    point: Vec
    basis: tuple[Vec, ...]


@lru_cache(maxsize=None)
def invariant_space(datum: RootDatum, node: int) -> InvariantSpace:
    """Fixed space of ``f_node``, with its dimension checked two ways.

    The dimension of the fixed space always equals the number of orbits
    of the induced node permutation on the extended diagram, minus one;
    a mismatch would mean corrupted group data.
    """
    fam = f_map(datum, node)
    sol = fam.fixed_points()
    if sol is None:
        raise InvariantViolation(f"f_{node} has no fixed points")
    point, basis = sol
    group = fundamental_group(datum)
    sym = group.perm[node]
    seen: set[int] = set()
    orbits = 0
    for a in datum.extended_nodes:
        if a not in seen:
            orbits += 1
            cur = a
            while cur not in seen:
                seen.add(cur)
                cur = sym(cur)
    if len(basis) != orbits - 1:
        raise InvariantViolation(
            f"dim fixed({node}) = {len(basis)} but the node permutation has {orbits} orbits"
        )
    return InvariantSpace(node, len(basis), point, basis)


def hyperplane_containment(
    datum: RootDatum, node: int, q: int
) -> Optional[tuple[Vec, int]]:
    """A hyperplane ``<b, x> = k/q`` of the q-refined arrangement containing
    the whole fixed space of ``f_node``, if one exists.

    Walls of the alcove can never contain the fixed space (it always
    holds points with all affine coordinates positive on the relevant
    orbit), so finding one signals corruption.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    space = invariant_space(datum, node)
    for beta in datum.positive_roots:
        if any(vec_dot(beta, d) != 0 for d in space.basis):
            continue
        c = Fraction(vec_dot(beta, space.point))
        scaled = c * q
        if scaled.denominator != 1:
            continue
        if c == 0 or (beta == datum.highest_root and c == 1):
            raise InvariantViolation("fixed space contained in an alcove wall")
        return beta, int(scaled)
    return None
