"""Brute-force ground truth on small matrix groups.

Builds SL2/PGL2/SL3/PGL3 over tiny fields by closing a standard
generating set (transvections, plus one diagonal for the projective
groups), partitions the group into conjugacy classes, and counts the
classes of elements whose order is prime to the field characteristic.
The results share no logic with the census machinery beyond integer
arithmetic, so they anchor its outputs independently.

Character counts are not brute-forced: the degree multisets of SL2 and
PGL2 are classical one-parameter families, encoded directly and
validated against the class counts and the group order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd

from .errors import InvariantViolation, ResourceCapExceeded

GROUP_ORDER_CAP = 10**6

# Irreducible polynomials x^f + ... used for the non-prime fields,
# stored as low-degree coefficient tuples of x^f = -(...).
_REDUCTIONS = {
    (2, 2): (1, 1),  # x^2 = x + 1
    (2, 3): (1, 1, 0),  # x^3 = x + 1
    (3, 2): (2, 0),  # x^2 = -1
}


class FiniteField:
    """A finite field of order at most 9 with table-based arithmetic.

    Elements are integers 0..q-1 encoding base-p digit tuples; 0 and 1
    are the additive and multiplicative identities.
    """

    def __init__(self, q: int):
        p, f = _factor_prime_power(q)
        self.q, self.p, self.f = q, p, f
        polys = list(product(range(p), repeat=f))
        index = {poly: i for i, poly in enumerate(polys)}
        assert index[(0,) * f] == 0
        one = (1,) + (0,) * (f - 1)

        def mul_poly(a, b):
            prod = [0] * (2 * f - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] = (prod[i + j] + x * y) % p
            for k in range(2 * f - 2, f - 1, -1):
                c = prod[k]
                if c:
                    prod[k] = 0
                    red = _REDUCTIONS[(p, f)] if f > 1 else ()
                    for j, r in enumerate(red):
                        prod[k - f + j] = (prod[k - f + j] + c * r) % p
            return tuple(prod[:f])

        self.add = [
            [index[tuple((x + y) % p for x, y in zip(a, b))] for b in polys]
            for a in polys
        ]
        self.mul = [[index[mul_poly(a, b)] for b in polys] for a in polys]
        self.neg = [index[tuple((-x) % p for x in a)] for a in polys]
        self.one = index[one]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = next(b for b in range(1, q) if self.mul[a][b] == self.one)
        self.inv = inv

    def primitive_element(self) -> int:
        for a in range(1, self.q):
            k, cur = 1, a
            while cur != self.one:
                cur = self.mul[cur][a]
                k += 1
            if k == self.q - 1:
                return a
        raise InvariantViolation("no primitive element found")


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError("field order must be at least 2")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    f, rest = 0, q
    while rest % p == 0:
        rest //= p
        f += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    if f > 1 and (p, f) not in _REDUCTIONS:
        raise ValueError(f"field of order {q} not supported")
    return p, f


@lru_cache(maxsize=None)
def _field(q: int) -> FiniteField:
    return FiniteField(q)


_KINDS = {"SL2": 2, "PGL2": 2, "SL3": 3, "PGL3": 3}


@dataclass(frozen=True)
class SmallGroupSpec:
    """A small matrix group: kind in SL2/PGL2/SL3/PGL3, q a prime power."""

    kind: str
    q: int

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unsupported kind {self.kind!r}")
        _factor_prime_power(self.q)

    @property
    def n(self) -> int:
        return _KINDS[self.kind]

    @property
    def projective(self) -> bool:
        return self.kind.startswith("PGL")

    @property
    def order(self) -> int:
        q, n = self.q, self.n
        gl = 1
        for i in range(n):
            gl *= q**n - q**i
        return gl // (q - 1)


def _mat_mul(field: FiniteField, n: int, a, b):
    mul, add = field.mul, field.add
    out = []
    for i in range(n):
        row = a[i * n : (i + 1) * n]
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = add[acc][mul[row[k]][b[k * n + j]]]
            out.append(acc)
    return tuple(out)


def _projectivize(field: FiniteField, mat):
    lead = next(x for x in mat if x != 0)
    if lead == field.one:
        return mat
    s = field.inv[lead]
    return tuple(field.mul[s][x] for x in mat)


def _mat_inv(field: FiniteField, n: int, mat):
    # Gauss-Jordan over the field tables.
    aug = [
        [mat[i * n + j] for j in range(n)]
        + [field.one if i == j else 0 for j in range(n)]
        for i in range(n)
    ]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        s = field.inv[aug[c][c]]
        aug[c] = [field.mul[s][x] for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [
                    field.add[x][field.neg[field.mul[f][y]]]
                    for x, y in zip(aug[r], aug[c])
                ]
    return tuple(aug[i][n + j] for i in range(n) for j in range(n))


def _generators(spec: SmallGroupSpec, field: FiniteField):
    n = spec.n
    identity = tuple(
        field.one if i == j else 0 for i in range(n) for j in range(n)
    )
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for t in range(1, field.q):
                g = list(identity)
                g[i * n + j] = t
                gens.append(tuple(g))
    if spec.projective and field.q > 2:
        g = list(identity)
        g[0] = field.primitive_element()
        gens.append(_projectivize(field, tuple(g)))
    return identity, gens


@lru_cache(maxsize=None)
def _build_group(spec: SmallGroupSpec):
    """All elements (canonical forms) and the generating set, by closure."""
    if spec.order > GROUP_ORDER_CAP:
        raise ResourceCapExceeded(
            f"{spec.kind}({spec.q}) has order {spec.order}, over the cap {GROUP_ORDER_CAP}"
        )
    field = _field(spec.q)
    identity, gens = _generators(spec, field)
    canon = (lambda m: _projectivize(field, m)) if spec.projective else (lambda m: m)
    gens = [canon(g) for g in gens]
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = canon(_mat_mul(field, spec.n, x, g))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != spec.order:
        raise InvariantViolation(
            f"generated {len(seen)} elements of {spec.kind}({spec.q}), "
            f"expected {spec.order}"
        )
    return frozenset(seen), tuple(gens), identity


@lru_cache(maxsize=None)
def conjugacy_classes(spec: SmallGroupSpec) -> tuple[tuple, ...]:
    """Class representatives with sizes, partition-checked against the order."""
    elements, gens, identity = _build_group(spec)
    field = _field(spec.q)
    n = spec.n
    canon = (lambda m: _projectivize(field, m)) if spec.projective else (lambda m: m)
    ginv = [(g, _mat_inv(field, n, g)) for g in gens]
    unvisited = set(elements)
    classes = []
    while unvisited:
        rep = min(unvisited)
        orbit = {rep}
        queue = deque([rep])
        while queue:
            x = queue.popleft()
            for g, gi in ginv:
                y = canon(_mat_mul(field, n, _mat_mul(field, n, g, x), gi))
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        unvisited -= orbit
        classes.append((rep, len(orbit)))
    if sum(size for _, size in classes) != spec.order:
        raise InvariantViolation("conjugacy classes do not partition the group")
    return tuple(classes)


def _element_order(spec: SmallGroupSpec, mat) -> int:
    field = _field(spec.q)
    n = spec.n
    canon = (lambda m: _projectivize(field, m)) if spec.projective else (lambda m: m)
    identity = tuple(field.one if i == j else 0 for i in range(n) for j in range(n))
    k, cur = 1, mat
    while cur != identity:
        cur = canon(_mat_mul(field, n, cur, mat))
        k += 1
    return k


def semisimple_class_count(spec: SmallGroupSpec) -> int:
    """Number of conjugacy classes of elements of order prime to p."""
    p = _field(spec.q).p
    return sum(
        1 for rep, _ in conjugacy_classes(spec) if _element_order(spec, rep) % p != 0
    )


def character_degrees(spec: SmallGroupSpec) -> tuple[int, ...]:
    """Irreducible character degrees of SL2(q) or PGL2(q).

    These are the classical one-parameter families; the list length
    matches the class count and the squares sum to the group order.
    """
    if spec.kind not in ("SL2", "PGL2"):
        raise ValueError(f"character degrees not encoded for {spec.kind}")
    q = spec.q
    if q % 2 == 0:
        degrees = [1, q] + [q - 1] * (q // 2) + [q + 1] * ((q - 2) // 2)
    elif spec.kind == "SL2":
        degrees = (
            [1, q]
            + [(q + 1) // 2] * 2
            + [(q - 1) // 2] * 2
            + [q + 1] * ((q - 3) // 2)
            + [q - 1] * ((q - 1) // 2)
        )
    else:
        degrees = (
            [1, 1, q, q] + [q + 1] * ((q - 3) // 2) + [q - 1] * ((q - 1) // 2)
        )
    if sum(d * d for d in degrees) != spec.order:
        raise InvariantViolation("degree squares do not sum to the group order")
    return tuple(sorted(degrees))


def pprime_character_count(spec: SmallGroupSpec) -> int:
    """Number of irreducible characters of degree prime to p."""
    p = _field(spec.q).p
    return sum(1 for d in character_degrees(spec) if gcd(d, p) == 1)
