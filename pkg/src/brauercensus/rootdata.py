"""Irreducible root systems in Bourbaki numbering.

The ambient rational vector space V is always carried in the basis of
fundamental coweights, so that the pairing of a root ``b = sum c_i a_i``
(stored as its integer coefficient vector in the simple-root basis) with
a point ``x`` of V is the plain dot product ``sum c_i x_i``.  Simple
coroots then have the columns of the Cartan matrix as coordinate
vectors, and every object in the package is exact.

Node conventions: simple roots are numbered 1..rank as in the Bourbaki
plates; node 0 denotes the extra node of the extended Dynkin diagram
(the negative of the highest root).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable

from .errors import InvariantViolation
from .linalg import (
    AffineMap,
    Mat,
    Vec,
    mat_identity,
    mat_transpose,
    solve_linear,
    vec_dot,
)

FAMILIES = "ABCDEFG"

_RANK_RANGES = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

# Number of roots of each irreducible type, used as a generation check.
_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}


@dataclass(frozen=True, order=True)
class TypeLabel:
    """An irreducible Cartan type, e.g. ``TypeLabel("E", 6)``."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_RANGES:
            raise ValueError(f"unknown family {self.family!r}")
        lo, hi = _RANK_RANGES[self.family]
        if self.rank < lo or (hi is not None and self.rank > hi):
            raise ValueError(f"invalid rank {self.rank} for family {self.family}")
        if self.family == "E" and self.rank not in (6, 7, 8):
            raise ValueError(f"invalid rank {self.rank} for family E")

    @classmethod
    def parse(cls, text: str) -> "TypeLabel":
        text = text.strip()
        if len(text) < 2 or text[0].upper() not in FAMILIES or not text[1:].isdigit():
            raise ValueError(f"cannot parse type label {text!r}")
        return cls(text[0].upper(), int(text[1:]))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _bonds(label: TypeLabel) -> list[tuple[int, int]]:
    """Edges of the Dynkin diagram as 1-based node pairs (single bonds)."""
    n = label.rank
    if label.family in "ABCFG":
        return [(i, i + 1) for i in range(1, n)]
    if label.family == "D":
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    # E types: chain 1-3-4-...-n with node 2 hanging off node 4.
    return [(1, 3)] + [(i, i + 1) for i in range(3, n)] + [(2, 4)]


def cartan_matrix(label: TypeLabel) -> Mat:
    """The Cartan matrix ``A[i][j] = <a_i, a_j^vee>`` in Bourbaki numbering."""
    n = label.rank
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i, j in _bonds(label):
        a[i - 1][j - 1] = -1
        a[j - 1][i - 1] = -1
    if label.family == "B":
        a[n - 2][n - 1] = -2  # <a_{n-1}, a_n^vee>, node n short
    elif label.family == "C":
        a[n - 1][n - 2] = -2  # <a_n, a_{n-1}^vee>, node n long
    elif label.family == "F":
        a[1][2] = -2  # <a_2, a_3^vee>
    elif label.family == "G":
        a[1][0] = -3  # <a_2, a_1^vee>, node 1 short
    return tuple(tuple(row) for row in a)


class RootDatum:
    """An irreducible root system with exact Weyl-group machinery.

    All roots are generated as the closure of the simple roots under the
    simple reflections; each root carries its coroot so that pairings of
    arbitrary roots and coroots stay integer computations.
    """

    def __init__(self, label: TypeLabel):
        self.label = label
        self.rank = label.rank
        self.cartan: Mat = cartan_matrix(label)
        # coroot_coords[j] = coordinates of the simple coroot a_{j+1}^vee in
        # the coweight basis = column j of the Cartan matrix.
        cols = mat_transpose(self.cartan)
        self.coroot_coords: tuple[Vec, ...] = tuple(cols)
        self._generate_roots()

    def __repr__(self) -> str:
        return f"RootDatum({self.label})"

    def _generate_roots(self):
        n = self.rank
        a = self.cartan
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        coroot_of = {simple[i]: simple[i] for i in range(n)}
        frontier = list(simple)
        while frontier:
            root = frontier.pop()
            dual = coroot_of[root]
            for i in range(n):
                # <root, a_i^vee> and <a_i, dual> read off the Cartan matrix.
                pr = sum(root[j] * a[j][i] for j in range(n))
                new_root = tuple(
                    root[j] - pr if j == i else root[j] for j in range(n)
                )
                if new_root not in coroot_of:
                    pc = sum(a[i][j] * dual[j] for j in range(n))
                    new_dual = tuple(
                        dual[j] - pc if j == i else dual[j] for j in range(n)
                    )
                    coroot_of[new_root] = new_dual
                    frontier.append(new_root)
        expected = _ROOT_COUNTS[self.label.family](n)
        if len(coroot_of) != expected:
            raise InvariantViolation(
                f"{self.label}: generated {len(coroot_of)} roots, expected {expected}"
            )
        positive = sorted(
            (r for r in coroot_of if all(c >= 0 for c in r)),
            key=lambda r: (sum(r), r),
        )
        if 2 * len(positive) != len(coroot_of):
            raise InvariantViolation(f"{self.label}: positive roots do not halve the system")
        self.positive_roots: tuple[Vec, ...] = tuple(positive)
        self.roots: tuple[Vec, ...] = tuple(positive) + tuple(
            tuple(-c for c in r) for r in positive
        )
        self._coroot_of = coroot_of
        self._root_set = frozenset(coroot_of)

    # -- basic queries -------------------------------------------------

    def is_root(self, vec: Vec) -> bool:
        return tuple(vec) in self._root_set

    def coroot_of(self, root: Vec) -> Vec:
        """Coefficients of the coroot in the simple-coroot basis."""
        return self._coroot_of[tuple(root)]

    def pairing(self, root: Vec, coords: Vec):
        """``<root, x>`` for a point x of V in coweight coordinates."""
        return vec_dot(root, coords)

    @lru_cache(maxsize=None)
    def coroot_coweight(self, root: Vec) -> Vec:
        """Coordinates of the coroot of ``root`` in the coweight basis."""
        dual = self._coroot_of[tuple(root)]
        return tuple(
            sum(self.cartan[i][j] * dual[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def root_pairing(self, root: Vec, other: Vec) -> int:
        """The integer ``<root, other^vee>``."""
        return vec_dot(root, self.coroot_coweight(tuple(other)))

    def reflect_root(self, root: Vec, mirror: Vec) -> Vec:
        """Image of ``root`` under the reflection in ``mirror``."""
        k = self.root_pairing(root, mirror)
        return tuple(r - k * m for r, m in zip(root, mirror))

    # -- highest root, marks, extended diagram -------------------------

    @cached_property
    def highest_root(self) -> Vec:
        top = max(self.positive_roots, key=lambda r: (sum(r), r))
        for r in self.positive_roots:
            if any(c > t for c, t in zip(r, top)):
                raise InvariantViolation(f"{self.label}: no dominating root")
        return top

    @cached_property
    def highest_coroot_coweight(self) -> Vec:
        return self.coroot_coweight(self.highest_root)

    @cached_property
    def marks(self) -> dict[int, int]:
        """Coefficients of the highest root per node, with node 0 -> 1."""
        m = {0: 1}
        for i, c in enumerate(self.highest_root, start=1):
            m[i] = c
        return m

    @property
    def nodes(self) -> range:
        """Simple-root nodes, 1-based."""
        return range(1, self.rank + 1)

    @property
    def extended_nodes(self) -> range:
        """Nodes of the extended diagram: 0 (= -highest root) and 1..rank."""
        return range(0, self.rank + 1)

    def node_root(self, node: int) -> Vec:
        if node == 0:
            return tuple(-c for c in self.highest_root)
        return tuple(1 if j == node - 1 else 0 for j in range(self.rank))

    def extended_pairing(self, node_a: int, node_b: int) -> int:
        """``<root(a), coroot(b)>`` over extended nodes."""
        ra = self.node_root(node_a)
        rb = self.node_root(node_b)
        return self.root_pairing(ra, rb)

    @cached_property
    def alcove_vertices(self) -> tuple[Vec, ...]:
        """Vertices of the fundamental alcove, indexed by extended node."""
        verts = [tuple(Fraction(0) for _ in range(self.rank))]
        for i in self.nodes:
            verts.append(
                tuple(
                    Fraction(1, self.marks[i]) if j == i - 1 else Fraction(0)
                    for j in range(self.rank)
                )
            )
        return tuple(verts)


@lru_cache(maxsize=None)
def _build(label: TypeLabel) -> RootDatum:
    return RootDatum(label)


def build_root_system(label: TypeLabel | str) -> RootDatum:
    """Construct (and cache) the root system for a type label."""
    if isinstance(label, str):
        label = TypeLabel.parse(label)
    return _build(label)


def simple_reflection(datum: RootDatum, i: int) -> AffineMap:
    """The simple reflection ``s_i`` as a linear map on coweight coordinates."""
    if i not in datum.nodes:
        raise ValueError(f"node {i} out of range for {datum.label}")
    n = datum.rank
    col = datum.coroot_coords[i - 1]
    linear = tuple(
        tuple((1 if k == j else 0) - (col[k] if j == i - 1 else 0) for j in range(n))
        for k in range(n)
    )
    return AffineMap(linear, (0,) * n)


def longest_element(datum: RootDatum, subset: Iterable[int]) -> AffineMap:
    """Longest element of the parabolic Weyl subgroup on the given nodes.

    Computed by the descent walk: push a vector that is strictly dominant
    for the subset down until it is antidominant, accumulating the applied
    reflections.  The resulting map sends every positive root of the
    sub-system to a negative one.
    """
    nodes = sorted(set(subset))
    for i in nodes:
        if i not in datum.nodes:
            raise ValueError(f"node {i} out of range for {datum.label}")
    n = datum.rank
    mat = [list(row) for row in mat_identity(n)]
    v = [1 if (j + 1) in nodes else 0 for j in range(n)]
    while True:
        i = next((i for i in nodes if v[i - 1] > 0), None)
        if i is None:
            break
        col = datum.coroot_coords[i - 1]
        c = v[i - 1]
        for k in range(n):
            v[k] -= c * col[k]
        row_i = mat[i - 1][:]
        for k in range(n):
            ck = col[k]
            if ck:
                mat[k] = [x - ck * y for x, y in zip(mat[k], row_i)]
    return AffineMap(tuple(tuple(r) for r in mat), (0,) * n)


def root_action(datum: RootDatum, wmap: AffineMap, root: Vec) -> Vec:
    """Image of a root under the linear part of a Weyl-group element.

    The linear part acts on V; the induced action on roots is the inverse
    transpose, which stays integral for Weyl elements.
    """
    sol = solve_linear(mat_transpose(wmap.linear), tuple(root))
    out = []
    for x in sol:
        if Fraction(x).denominator != 1:
            raise InvariantViolation("root image is not integral")
        out.append(int(x))
    image = tuple(out)
    if not datum.is_root(image):
        raise InvariantViolation("Weyl action did not preserve the root system")
    return image


def _classify_component(datum: RootDatum, comp: list[int]) -> TypeLabel:
    """Classify one connected induced subdiagram against the catalogue.

    Matching is up to node relabelling; when a Cartan matrix fits several
    catalogue entries (B2/C2, A3/D3) the ambient family decides, falling
    back to the alphabetically first name.
    """
    m = len(comp)
    ambient = datum.label.family
    if m == 1:
        return TypeLabel("A", 1)
    pair = {}
    adj: dict[int, list[int]] = {c: [] for c in comp}
    for x in comp:
        for y in comp:
            if x < y:
                axy = datum.extended_pairing(x, y)
                ayx = datum.extended_pairing(y, x)
                if axy:
                    pair[(x, y)] = (axy, ayx)
                    adj[x].append(y)
                    adj[y].append(x)
    weights = {e: a * b for e, (a, b) in pair.items()}
    if any(w == 3 for w in weights.values()):
        if m == 2:
            return TypeLabel("G", 2)
        raise InvariantViolation("triple bond in a component of rank > 2")
    degrees = {x: len(adj[x]) for x in comp}
    doubles = [e for e, w in weights.items() if w == 2]
    if not doubles:
        branch = [x for x in comp if degrees[x] >= 3]
        if not branch:
            if m == 3 and ambient == "D":
                return TypeLabel("D", 3)
            return TypeLabel("A", m)
        if len(branch) > 1 or degrees[branch[0]] > 3:
            raise InvariantViolation("subdiagram is not of finite type")
        arms = sorted(_arm_lengths(adj, branch[0]))
        if arms[0] == 1 and arms[1] == 1:
            return TypeLabel("D", m)
        if arms == [1, 2, 2]:
            return TypeLabel("E", 6)
        if arms == [1, 2, 3]:
            return TypeLabel("E", 7)
        if arms == [1, 2, 4]:
            return TypeLabel("E", 8)
        raise InvariantViolation("subdiagram is not of finite type")
    if len(doubles) > 1 or any(degrees[x] >= 3 for x in comp):
        raise InvariantViolation("subdiagram is not of finite type")
    if m == 2:
        return TypeLabel(ambient if ambient in "BC" else "B", 2)
    (x, y) = doubles[0]
    end = x if degrees[x] == 1 else y if degrees[y] == 1 else None
    if end is None:
        if m == 4:
            return TypeLabel("F", 4)
        raise InvariantViolation("interior double bond in a component of rank != 4")
    other = y if end == x else x
    axy = datum.extended_pairing(other, end)
    return TypeLabel("B" if axy == -2 else "C", m)


def _arm_lengths(adj: dict[int, list[int]], branch: int) -> list[int]:
    lengths = []
    for start in adj[branch]:
        length = 1
        prev, cur = branch, start
        while True:
            nxt = [z for z in adj[cur] if z != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise InvariantViolation("subdiagram is not of finite type")
            prev, cur = cur, nxt[0]
            length += 1
        lengths.append(length)
    return lengths


def subdiagram_type(datum: RootDatum, nodes: Iterable[int]) -> tuple[TypeLabel, ...]:
    """Types of the connected components induced on extended-diagram nodes.

    The result is sorted by (family, rank) so equal inputs give identical
    output.
    """
    node_list = sorted(set(nodes))
    for x in node_list:
        if x not in datum.extended_nodes:
            raise ValueError(f"node {x} is not an extended node of {datum.label}")
    remaining = set(node_list)
    comps = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        frontier = [seed]
        while frontier:
            x = frontier.pop()
            for y in remaining - comp:
                if datum.extended_pairing(x, y) != 0:
                    comp.add(y)
                    frontier.append(y)
        remaining -= comp
        comps.append(sorted(comp))
    return tuple(sorted(_classify_component(datum, c) for c in comps))
