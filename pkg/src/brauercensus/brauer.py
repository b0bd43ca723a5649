"""The Brauer complex: sub-alcoves of the alcove under the q-refined
affine Weyl group, their fixed points, and stabilizer bookkeeping.

A Frobenius configuration consists of a prime power q and a diagram
symmetry rho; the Frobenius acts on V as q times the coweight
permutation induced by rho inverse, so its inverse contracts V by 1/q.
The image of the alcove under that contraction (the small alcove) tiles
the alcove in exactly ``q**rank`` translates under the q-refined affine
Weyl group, which this module enumerates exactly by reflecting across
walls.  Each translate carries a unique point fixed by the composite
"translate after Frobenius-inverse after alcove stabilizer", computed
by an exact linear solve.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .affine import (
    AffinePoint,
    DiagramSymmetry,
    affine_point,
    f_map,
    fundamental_group,
    hyperplane_containment,
    invariant_space,
    validate_symmetry,
)
from .errors import InvariantViolation, ResourceCapExceeded
from .linalg import AffineMap, Vec, vec_dot
from .rootdata import RootDatum

DEFAULT_SUBALCOVE_CAP = 10**6


def prime_power(q: int) -> Optional[tuple[int, int]]:
    """(p, f) with q = p**f, or None if q is not a prime power >= 2."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    f, rest = 0, q
    while rest % p == 0:
        rest //= p
        f += 1
    return (p, f) if rest == 1 else None


@dataclass(frozen=True)
class FrobeniusConfig:
    """Field size and graph twist defining the Frobenius action on V."""

    q: int
    rho: DiagramSymmetry

    def __post_init__(self):
        if prime_power(self.q) is None:
            raise ValueError(f"q = {self.q} is not a prime power >= 2")

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    @property
    def is_split(self) -> bool:
        return self.rho.is_identity


def validate_frobenius(datum: RootDatum, config: FrobeniusConfig) -> None:
    validate_symmetry(datum, config.rho)
    if config.rho(0) != 0:
        raise ValueError("a graph twist must fix the affine node")


def coweight_permutation_matrix(datum: RootDatum, sym: DiagramSymmetry):
    """Matrix sending the coweight of node a to the coweight of sym(a)."""
    n = datum.rank
    return tuple(
        tuple(1 if sym(j + 1) == k + 1 else 0 for j in range(n)) for k in range(n)
    )


@lru_cache(maxsize=None)
def frobenius_map(datum: RootDatum, config: FrobeniusConfig) -> AffineMap:
    """F = q * (coweight permutation of rho inverse), as a linear map."""
    validate_frobenius(datum, config)
    mat = coweight_permutation_matrix(datum, config.rho.inverse())
    return AffineMap(
        tuple(tuple(config.q * x for x in row) for row in mat), (0,) * datum.rank
    )


@lru_cache(maxsize=None)
def frobenius_inverse(datum: RootDatum, config: FrobeniusConfig) -> AffineMap:
    validate_frobenius(datum, config)
    mat = coweight_permutation_matrix(datum, config.rho)
    return AffineMap(
        tuple(tuple(Fraction(x, config.q) for x in row) for row in mat),
        (0,) * datum.rank,
    )


@dataclass(frozen=True)
class SubAlcove:
    """One translate of the small alcove inside the fundamental alcove.

    ``vertices[j]`` is the image of the j-th small-alcove vertex (vertex
    0 is the image of the origin), ``walls[j]`` the pair (positive root,
    constant) of the hyperplane through the facet opposite vertex j, and
    ``key`` the barycenter, which identifies the simplex uniquely.
    """

    map: AffineMap
    vertices: tuple[Vec, ...]
    key: Vec
    walls: tuple[tuple[Vec, Fraction], ...]


def _barycenter(vertices: tuple[Vec, ...]) -> Vec:
    m = len(vertices)
    return tuple(Fraction(sum(col), m) for col in zip(*vertices))


@lru_cache(maxsize=None)
def enumerate_subalcoves(
    datum: RootDatum, config: FrobeniusConfig, cap: int = DEFAULT_SUBALCOVE_CAP
) -> tuple[SubAlcove, ...]:
    """All ``q**rank`` sub-alcoves, found by breadth-first wall reflection.

    Each neighbor of a sub-alcove is its mirror image across one of its
    rank+1 walls; a candidate survives when its reflected apex stays in
    the closed alcove (the shared facet already does).  The exact count
    is enforced as a postcondition.
    """
    validate_frobenius(datum, config)
    n = datum.rank
    q = config.q
    expected = q**n
    if expected > cap:
        raise ResourceCapExceeded(
            f"{datum.label}, q={q}: {expected} sub-alcoves exceed the cap {cap}"
        )
    hr = datum.highest_root

    base_vertices = [(Fraction(0),) * n]
    for i in datum.nodes:
        base_vertices.append(
            tuple(
                Fraction(1, q * datum.marks[i]) if j == i - 1 else Fraction(0)
                for j in range(n)
            )
        )
    base_walls = [(hr, Fraction(1, q))]
    for i in datum.nodes:
        base_walls.append((datum.node_root(i), Fraction(0)))
    base = SubAlcove(
        map=AffineMap.identity(n),
        vertices=tuple(base_vertices),
        key=_barycenter(tuple(base_vertices)),
        walls=tuple(base_walls),
    )

    def reflection(beta: Vec, c: Fraction) -> AffineMap:
        bv = datum.coroot_coweight(beta)
        linear = tuple(
            tuple((1 if k == j else 0) - bv[k] * beta[j] for j in range(n))
            for k in range(n)
        )
        return AffineMap(linear, tuple(c * x for x in bv))

    seen = {base.key: base}
    queue = deque([base])
    while queue:
        cur = queue.popleft()
        for j, (beta, c) in enumerate(cur.walls):
            bv = datum.coroot_coweight(beta)
            apex = cur.vertices[j]
            offset = vec_dot(beta, apex) - c
            new_apex = tuple(x - offset * y for x, y in zip(apex, bv))
            if any(x < 0 for x in new_apex) or vec_dot(hr, new_apex) > 1:
                continue
            new_vertices = cur.vertices[:j] + (new_apex,) + cur.vertices[j + 1 :]
            key = _barycenter(new_vertices)
            if key in seen:
                continue
            if len(seen) >= cap:
                raise ResourceCapExceeded("sub-alcove cap exceeded during search")
            new_walls = []
            for k, (gamma, d) in enumerate(cur.walls):
                if k == j:
                    new_walls.append((gamma, d))
                    continue
                pairing = vec_dot(gamma, bv)
                image = tuple(g - pairing * b for g, b in zip(gamma, beta))
                d2 = d - c * pairing
                if any(x < 0 for x in image):
                    image = tuple(-x for x in image)
                    d2 = -d2
                new_walls.append((image, d2))
            sub = SubAlcove(
                map=reflection(beta, c).compose(cur.map),
                vertices=new_vertices,
                key=key,
                walls=tuple(new_walls),
            )
            seen[key] = sub
            queue.append(sub)
    if len(seen) != expected:
        raise InvariantViolation(
            f"{datum.label}, q={q}: found {len(seen)} sub-alcoves, expected {expected}"
        )
    return tuple(sorted(seen.values(), key=lambda s: s.key))


def base_subalcove(subalcoves: Iterable[SubAlcove]) -> SubAlcove:
    """The translate whose map is the identity (the small alcove itself)."""
    return next(s for s in subalcoves if s.map.is_identity)


@lru_cache(maxsize=None)
def _stabilizer_composite(
    datum: RootDatum, config: FrobeniusConfig, node: int
) -> AffineMap:
    """Frobenius-inverse after the alcove stabilizer of a minuscule node."""
    return frobenius_inverse(datum, config).compose(f_map(datum, node))


def fixed_point(
    datum: RootDatum, config: FrobeniusConfig, sub: SubAlcove, node: int
) -> AffinePoint:
    """The unique fixed point of ``sub.map`` after Frobenius-inverse after
    the stabilizer of ``node``; it always lies inside the sub-alcove.

    The composite contracts distances by 1/q, so the exact linear solve
    cannot be singular, and the resulting coordinates have denominators
    coprime to the field characteristic.
    """
    composite = sub.map.compose(_stabilizer_composite(datum, config, node))
    coords = composite.unique_fixed_point()
    p = config.p
    for x in coords:
        if Fraction(x).denominator % p == 0:
            raise InvariantViolation("fixed point has a denominator divisible by p")
    return affine_point(datum, coords)


def m_alpha(
    datum: RootDatum,
    config: FrobeniusConfig,
    node: int,
    cap: int = DEFAULT_SUBALCOVE_CAP,
) -> tuple[SubAlcove, ...]:
    """Sub-alcoves mapped to themselves by the stabilizer of ``node``.

    The count is ``q**dim`` of the node's fixed space when that space is
    contained in no hyperplane of the q-refined arrangement, and zero
    otherwise; both branches are enforced.
    """
    fam = f_map(datum, node)
    stable = tuple(
        sub
        for sub in enumerate_subalcoves(datum, config, cap)
        if fam.apply(sub.key) == sub.key
    )
    contained = hyperplane_containment(datum, node, config.q)
    expected = 0 if contained is not None else config.q ** invariant_space(datum, node).dimension
    if len(stable) != expected:
        raise InvariantViolation(
            f"{datum.label}, q={config.q}, node {node}: "
            f"{len(stable)} stable sub-alcoves, expected {expected}"
        )
    return stable


@lru_cache(maxsize=None)
def q_stabilizer_catalogue(
    datum: RootDatum, config: FrobeniusConfig
) -> dict[int, AffineMap]:
    """The small-alcove stabilizer maps, keyed by minuscule node."""
    q = config.q
    out = {}
    group = fundamental_group(datum)
    for b in group.elements:
        rb = config.rho(b)
        out[b] = AffineMap(
            group.weyl[rb].linear,
            tuple(Fraction(x, q) for x in group.lift[rb]),
        )
    return out


def _point_in_s_q(datum: RootDatum, config: FrobeniusConfig, coords: Vec, cap: int) -> bool:
    """Whether a point is a base-stabilizer fixed point of some sub-alcove."""
    mu = frobenius_inverse(datum, config).apply(coords)
    target = tuple(coords)
    return any(
        sub.map.apply(mu) == target for sub in enumerate_subalcoves(datum, config, cap)
    )


def m_of(
    datum: RootDatum,
    config: FrobeniusConfig,
    node: int,
    cap: int = DEFAULT_SUBALCOVE_CAP,
) -> int:
    """The minuscule node whose small-alcove stabilizer matches the
    conjugated stabilizer of ``node``.

    The image of the small alcove under ``f_node`` is some sub-alcove
    with map r; the composite r-inverse after f_node must equal one of
    the catalogued small-alcove stabilizers exactly.  Consistency with
    the direct membership test (the coweight of ``node`` is a
    base-stabilizer fixed point iff the answer is ``node`` itself) is
    asserted.
    """
    subalcoves = enumerate_subalcoves(datum, config, cap)
    fam = f_map(datum, node)
    base = base_subalcove(subalcoves)
    target_key = fam.apply(base.key)
    r = next((s.map for s in subalcoves if s.key == target_key), None)
    if r is None:
        raise InvariantViolation("stabilizer image of the small alcove left the alcove")
    composite = r.inverse().compose(fam)
    catalogue = q_stabilizer_catalogue(datum, config)
    match = next((b for b, g in catalogue.items() if g == composite), None)
    if match is None:
        raise InvariantViolation("conjugated stabilizer not in the catalogue")
    lift = fundamental_group(datum).lift[node]
    if (match == node) != _point_in_s_q(datum, config, lift, cap):
        raise InvariantViolation("fixed-node test disagrees with the membership test")
    return match


@dataclass(frozen=True)
class ThetaReport:
    """Fixed points over all stabilizer nodes of a subgroup, with orbits.

    ``points`` are the distinct fixed points (affine coordinates, sorted);
    ``orbits`` partitions them under the subgroup's stabilizer maps;
    ``strata[a]`` counts the orbits meeting the fixed space of node a.
    Orbit counts and coverage are enforced only when ``hypotheses_hold``
    (split with q = 1 mod the subgroup order, or twisted with q = -1).
    """

    points: tuple
    orbits: tuple
    orbit_count: int
    strata: dict
    hypotheses_hold: bool


def theta(
    datum: RootDatum,
    config: FrobeniusConfig,
    subgroup: Iterable[int],
    cap: int = DEFAULT_SUBALCOVE_CAP,
) -> ThetaReport:
    group = fundamental_group(datum)
    nodes = frozenset(subgroup)
    if not group.is_subgroup(nodes):
        raise ValueError("the given node set is not a subgroup of the fundamental group")
    order = len(nodes)
    hyp = (config.is_split and (config.q - 1) % order == 0) or (
        not config.is_split and (config.q + 1) % order == 0
    )
    subalcoves = enumerate_subalcoves(datum, config, cap)
    points: set = set()
    for sub in subalcoves:
        for a in sorted(nodes):
            points.add(fixed_point(datum, config, sub, a).affine)

    index = {aff: i for i, aff in enumerate(sorted(points))}
    parent = list(range(len(index)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for aff in index:
        for z in nodes:
            image = group.apply_to_affine(z, aff)
            if image in index:
                ra, rb = find(index[aff]), find(index[image])
                if ra != rb:
                    parent[ra] = rb
            elif hyp:
                raise InvariantViolation(
                    "stabilizer did not permute the fixed points under the congruence hypothesis"
                )
    groups: dict[int, list] = {}
    for aff, i in index.items():
        groups.setdefault(find(i), []).append(aff)
    orbits = tuple(sorted(tuple(sorted(g)) for g in groups.values()))
    if hyp and len(orbits) != config.q**datum.rank:
        raise InvariantViolation(
            f"{len(orbits)} stabilizer orbits, expected {config.q**datum.rank}"
        )
    strata = {}
    for a in sorted(nodes):
        strata[a] = sum(
            1
            for orbit in orbits
            if any(group.apply_to_affine(a, aff) == aff for aff in orbit)
        )
    return ThetaReport(
        points=tuple(sorted(points)),
        orbits=orbits,
        orbit_count=len(orbits),
        strata=strata,
        hypotheses_hold=hyp,
    )
