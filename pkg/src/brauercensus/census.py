"""Census of F-stable semisimple conjugacy classes for one isogeny type.

An isogeny type is a subgroup of the fundamental group; it determines
the cocharacter lattice between the coroot and coweight lattices.  Two
alcove points parametrize the same class exactly when some subgroup
element carries one onto the other modulo that lattice, and a class is
F-stable when its point is equivalent to the folded image of its
Frobenius translate.  Every stable class is classified by the zero set
of its affine coordinates (a basis of the connected-centralizer root
system), its component group inside the isogeny subgroup, and the
Frobenius action on that component group, from which the rational class
and semisimple character counts follow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .affine import (
    AffinePoint,
    affine_point,
    coords_from_affine,
    fold_coords,
    fundamental_group,
    minuscule_nodes,
    point_from_affine,
    standard_symmetry,
)
from .brauer import (
    DEFAULT_SUBALCOVE_CAP,
    FrobeniusConfig,
    enumerate_subalcoves,
    fixed_point,
    frobenius_map,
    validate_frobenius,
)
from .errors import InvariantViolation, ResourceCapExceeded
from .linalg import Vec, hermite_normal_form, lattice_contains
from .rootdata import RootDatum, TypeLabel, build_root_system, subdiagram_type


class Lattice:
    """An integer lattice between the coroot and coweight lattices."""

    def __init__(self, generators: Iterable[Sequence[int]]):
        self.generators = tuple(tuple(g) for g in generators)
        self.basis = hermite_normal_form(self.generators)

    def contains(self, vec: Vec) -> bool:
        return lattice_contains(self.basis, vec)

    @property
    def index_in_coweights(self) -> int:
        det = 1
        for i, row in enumerate(self.basis):
            det *= row[i]
        return det


@dataclass(frozen=True)
class GroupConfig:
    """Root datum, isogeny subgroup (as minuscule nodes) and Frobenius."""

    datum: RootDatum
    a_g: frozenset[int]
    frob: FrobeniusConfig

    @property
    def q(self) -> int:
        return self.frob.q

    @property
    def p(self) -> int:
        return self.frob.p

    @property
    def rank(self) -> int:
        return self.datum.rank

    def isogeny_name(self) -> str:
        group = fundamental_group(self.datum)
        if len(self.a_g) == 1:
            return "sc"
        if len(self.a_g) == group.order:
            return "ad"
        return "sub:" + ",".join(str(a) for a in sorted(self.a_g - {0}))


def make_group_config(
    label,
    isogeny,
    q: int,
    twisted: bool = False,
    triality: bool = False,
) -> GroupConfig:
    """Build and validate a census configuration.

    ``isogeny`` is "sc", "ad", or an iterable of minuscule nodes
    generating the subgroup.  The graph twist must preserve the subgroup,
    otherwise the cocharacter lattice would not be Frobenius-stable.
    """
    datum = label if isinstance(label, RootDatum) else build_root_system(label)
    group = fundamental_group(datum)
    if isogeny == "sc":
        nodes = frozenset({0})
    elif isogeny == "ad":
        nodes = frozenset(group.elements)
    else:
        gens = set(isogeny)
        bad = gens - set(group.elements)
        if bad:
            raise ValueError(f"nodes {sorted(bad)} are not minuscule in {datum.label}")
        nodes = group.subgroup(gens)
    if triality and not twisted:
        raise ValueError("triality requires the twisted flag")
    kind = "triality" if triality else "twisted" if twisted else "split"
    rho = standard_symmetry(datum, kind)
    frob = FrobeniusConfig(q, rho)
    validate_frobenius(datum, frob)
    if frozenset(rho(a) for a in nodes) != nodes:
        raise ValueError("the graph twist does not stabilize the isogeny subgroup")
    return GroupConfig(datum=datum, a_g=nodes, frob=frob)


@lru_cache(maxsize=None)
def cocharacter_lattice(config: GroupConfig) -> Lattice:
    """The lattice spanned by the coroots and the subgroup's coweights."""
    gens = list(config.datum.coroot_coords)
    group = fundamental_group(config.datum)
    for a in sorted(config.a_g):
        gens.append(group.lift[a])
    lat = Lattice(gens)
    expected = group.order // len(config.a_g)
    if lat.index_in_coweights != expected:
        raise InvariantViolation(
            f"cocharacter lattice has index {lat.index_in_coweights}, expected {expected}"
        )
    return lat


def orbit_equal(config: GroupConfig, lam: AffinePoint, mu: AffinePoint) -> Optional[int]:
    """A subgroup element carrying one alcove point onto the other modulo
    the cocharacter lattice, or None; inputs must lie in the closed alcove.

    The first witness in increasing node order is returned (the identity,
    node 0, is tested first), so any exact-equality witness that exists
    may be shadowed by an earlier lattice-difference witness.
    """
    if not lam.in_alcove or not mu.in_alcove:
        raise ValueError("orbit comparison requires points of the closed alcove")
    group = fundamental_group(config.datum)
    lattice = cocharacter_lattice(config)
    for z in sorted(config.a_g):
        image = group.apply_to_affine(z, lam.affine)
        diff = tuple(
            a - b
            for a, b in zip(
                coords_from_affine(config.datum, image), mu.coords
            )
        )
        if all(Fraction(x).denominator == 1 for x in diff) and lattice.contains(diff):
            return z
    return None


def f_stable(config: GroupConfig, lam: AffinePoint) -> Optional[int]:
    """Witness that the class of an alcove point is Frobenius-stable.

    The Frobenius translate is folded back into the alcove and compared
    against the point up to the isogeny subgroup; valid for every point
    of the closed alcove, vertices included.
    """
    fimage = frobenius_map(config.datum, config.frob).apply(lam.coords)
    folded = affine_point(config.datum, fold_coords(config.datum, fimage))
    return orbit_equal(config, lam, folded)


def orbit_key(config: GroupConfig, affine: tuple) -> tuple:
    """Canonical orbit representative: lexicographically minimal affine
    coordinates over the subgroup's stabilizer images."""
    group = fundamental_group(config.datum)
    return min(group.apply_to_affine(z, affine) for z in sorted(config.a_g))


def central_frobenius_action(config: GroupConfig, z: int) -> int:
    """Frobenius on the fundamental group: relabel by the twist inverse,
    then raise to the q-th power."""
    group = fundamental_group(config.datum)
    return group.power(config.frob.rho.inverse()(z), config.q)


@dataclass(frozen=True)
class ClassRecord:
    """One F-stable semisimple class of the configured group."""

    rep: AffinePoint
    i_lambda: tuple[int, ...]
    centralizer_components: tuple[TypeLabel, ...]
    torus_rank: int
    comp_group: tuple[int, ...]
    f_action: tuple[tuple[int, int], ...]
    fixed_count: int
    h1_count: int

    @property
    def comp_group_order(self) -> int:
        return len(self.comp_group)

    @property
    def is_disconnected(self) -> bool:
        return len(self.comp_group) > 1

    def centralizer_name(self) -> str:
        if not self.centralizer_components:
            return f"T{self.torus_rank}"
        name = "x".join(str(t) for t in self.centralizer_components)
        return name if self.torus_rank == 0 else f"{name}xT{self.torus_rank}"


def component_F_action(
    config: GroupConfig, subgroup: Iterable[int]
) -> tuple[dict[int, int], int, int]:
    """Frobenius action on a subgroup of the isogeny group.

    Returns the action map, the number of fixed elements, and the size
    of the first cohomology of the action, which coincides with the
    fixed count for a finite abelian group.
    """
    nodes = frozenset(subgroup)
    group = fundamental_group(config.datum)
    if not nodes <= config.a_g or not group.is_subgroup(nodes):
        raise ValueError("not a subgroup of the configured isogeny group")
    action = {z: central_frobenius_action(config, z) for z in sorted(nodes)}
    if set(action.values()) != set(nodes):
        raise ValueError("subgroup is not Frobenius-stable")
    fixed = sum(1 for z, w in action.items() if z == w)
    return action, fixed, fixed


def _classify(config: GroupConfig, rep: AffinePoint) -> ClassRecord:
    datum = config.datum
    group = fundamental_group(datum)
    zeros = tuple(a for a in datum.extended_nodes if rep.affine[a] == 0)
    comps = subdiagram_type(datum, zeros)
    comp_group = frozenset(
        z
        for z in config.a_g
        if group.apply_to_affine(z, rep.affine) == rep.affine
    )
    if not group.is_subgroup(comp_group):
        raise InvariantViolation("point stabilizer is not a subgroup")
    action, fixed, h1 = component_F_action(config, comp_group)
    return ClassRecord(
        rep=rep,
        i_lambda=zeros,
        centralizer_components=comps,
        torus_rank=datum.rank - len(zeros),
        comp_group=tuple(sorted(comp_group)),
        f_action=tuple(sorted(action.items())),
        fixed_count=fixed,
        h1_count=h1,
    )


def enumerate_classes(
    config: GroupConfig, cap: int = DEFAULT_SUBALCOVE_CAP
) -> tuple[ClassRecord, ...]:
    """All F-stable semisimple classes, exactly ``q**rank`` of them.

    Candidates are the stabilizer fixed points of every sub-alcove over
    the subgroup's nodes, plus the minuscule alcove vertices (the one
    family the fixed-point argument does not cover).  Candidates are
    grouped by canonical orbit key, each orbit is tested once for
    Frobenius stability, and the survivors are classified.
    """
    datum = config.datum
    q = config.q
    expected = q**datum.rank
    if expected > cap:
        raise ResourceCapExceeded(f"census of {expected} classes exceeds the cap {cap}")
    subalcoves = enumerate_subalcoves(datum, config.frob, cap)
    group = fundamental_group(datum)

    candidates: dict[tuple, None] = {}
    for sub in subalcoves:
        for a in sorted(config.a_g):
            candidates[fixed_point(datum, config.frob, sub, a).affine] = None
    vertex_affines = []
    for b in minuscule_nodes(datum):
        aff = affine_point(datum, datum.alcove_vertices[b]).affine
        vertex_affines.append(aff)
        candidates[aff] = None

    orbits: dict[tuple, None] = {}
    for aff in candidates:
        orbits[orbit_key(config, aff)] = None

    # The canonical keys must agree with the pairwise orbit relation on
    # the vertex candidates, where the key shortcut is least obvious.
    for i, aff_a in enumerate(vertex_affines):
        pa = point_from_affine(datum, aff_a)
        for aff_b in vertex_affines[i + 1 :]:
            pb = point_from_affine(datum, aff_b)
            same_key = orbit_key(config, aff_a) == orbit_key(config, aff_b)
            if same_key != (orbit_equal(config, pa, pb) is not None):
                raise InvariantViolation("orbit key disagrees with the orbit relation")

    records = []
    for key in sorted(orbits):
        rep = point_from_affine(datum, key)
        if f_stable(config, rep) is None:
            continue
        records.append(_classify(config, rep))
    if len(records) != expected:
        raise InvariantViolation(
            f"{datum.label} {config.isogeny_name()} q={q}: "
            f"{len(records)} stable classes, expected {expected}"
        )
    return tuple(records)


@dataclass(frozen=True)
class CensusCounts:
    """Aggregated class counts for one configuration."""

    geometric_total: int
    n_disconnected: int
    rational_total: int
    pprime_char_total: int
    by_component_order: tuple[tuple[int, int], ...]
    warnings: tuple[str, ...] = field(default_factory=tuple)


def counts(
    config: GroupConfig,
    records: Optional[Sequence[ClassRecord]] = None,
    cap: int = DEFAULT_SUBALCOVE_CAP,
) -> CensusCounts:
    """Counting identities over the census records.

    The rational total sums the Frobenius-fixed component-group sizes
    (one rational class per cohomology class, which for abelian groups
    is one per fixed element); the character total sums their squares,
    counting the semisimple characters of the group dual to the
    configured one.
    """
    if records is None:
        records = enumerate_classes(config, cap)
    by_order: dict[int, int] = {}
    for r in records:
        by_order[r.comp_group_order] = by_order.get(r.comp_group_order, 0) + 1
    warnings = []
    if len(config.a_g) % config.p == 0:
        warnings.append(
            f"p = {config.p} divides the isogeny group order {len(config.a_g)}"
        )
    return CensusCounts(
        geometric_total=len(records),
        n_disconnected=sum(1 for r in records if r.is_disconnected),
        rational_total=sum(r.fixed_count for r in records),
        pprime_char_total=sum(r.fixed_count**2 for r in records),
        by_component_order=tuple(sorted(by_order.items())),
        warnings=tuple(warnings),
    )


@dataclass(frozen=True)
class DisconnectedCheck:
    family_rule: str
    expected: int
    actual: int


def expected_disconnected_count(config: GroupConfig) -> tuple[str, int]:
    """The closed-form disconnected-class count for prime-order adjoint
    isogeny groups, per family."""
    datum = config.datum
    group = fundamental_group(datum)
    d = len(config.a_g)
    if d < 2 or any(d % k == 0 for k in range(2, d)):
        raise ValueError("requires an isogeny group of prime order")
    if config.p == d:
        raise ValueError("requires p not dividing the isogeny group order")
    if len(config.a_g) != group.order:
        raise ValueError("requires the adjoint isogeny type")
    fam, n, q = datum.label.family, datum.rank, config.q
    if fam == "A":
        return "1", 1
    if fam == "B":
        return "q^(n-1)", q ** (n - 1)
    if fam == "C":
        return "q^floor(n/2)", q ** (n // 2)
    if fam == "E" and n == 6:
        return "q^2", q**2
    if fam == "E" and n == 7:
        return "q^4", q**4
    raise ValueError(f"no closed form for type {datum.label}")


def disconnected_census_check(
    config: GroupConfig, cap: int = DEFAULT_SUBALCOVE_CAP
) -> DisconnectedCheck:
    """Assert the disconnected-class count against its closed form."""
    rule, expected = expected_disconnected_count(config)
    actual = counts(config, cap=cap).n_disconnected
    if actual != expected:
        raise InvariantViolation(
            f"{config.datum.label} q={config.q}: {actual} disconnected classes, "
            f"expected {expected} ({rule})"
        )
    return DisconnectedCheck(family_rule=rule, expected=expected, actual=actual)


@dataclass(frozen=True)
class DOddComparison:
    """Rational-class total of an odd-rank adjoint D census against the
    closed form ``q^(2n+1) + q^(2n-1) + 2 q^n``, with the strata that
    feed it reported alongside."""

    rational_total: int
    closed_form: int
    agree: bool
    by_component_order: tuple[tuple[int, int], ...]
    q_mod_4: int


def d_odd_comparison(config: GroupConfig, cap: int = DEFAULT_SUBALCOVE_CAP) -> DOddComparison:
    datum = config.datum
    if datum.label.family != "D" or datum.rank % 2 == 0:
        raise ValueError("requires an odd-rank D type")
    group = fundamental_group(datum)
    if len(config.a_g) != group.order:
        raise ValueError("requires the adjoint isogeny type")
    n = (datum.rank - 1) // 2
    q = config.q
    closed = q ** (2 * n + 1) + q ** (2 * n - 1) + 2 * q**n
    c = counts(config, cap=cap)
    return DOddComparison(
        rational_total=c.rational_total,
        closed_form=closed,
        agree=c.rational_total == closed,
        by_component_order=c.by_component_order,
        q_mod_4=q % 4,
    )
