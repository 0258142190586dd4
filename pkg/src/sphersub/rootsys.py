"""Exact combinatorics of irreducible root systems of types A-G.

Everything here is integer arithmetic in the simple-root basis, with the
Bourbaki numbering of the nodes.  The Cartan matrix convention is

    cartan[i][j] = <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j),

so pairing a vector written in simple-root coordinates against the coroot
alpha_i^vee reads off column ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

FAMILIES = "ABCDEFG"

# |W| for the exceptional types; the classical families use product formulas.
_EXCEPTIONAL_WEYL_ORDER = {
    ("E", 6): 51840,
    ("E", 7): 2903040,
    ("E", 8): 696729600,
    ("F", 4): 1152,
    ("G", 2): 12,
}

_EXCEPTIONAL_DIM = {
    ("E", 6): 78,
    ("E", 7): 133,
    ("E", 8): 248,
    ("F", 4): 52,
    ("G", 2): 14,
}


class InvalidRankError(ValueError):
    """Rank outside the admissible range for the family."""


class NonSimpleError(ValueError):
    """The type denotes a group that is not simple (e.g. D2)."""


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidRankError(f"unknown family {self.family!r}")
        if self.rank < 1:
            raise InvalidRankError(f"rank must be positive, got {self.rank}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @staticmethod
    def parse(text: str) -> "SimpleType":
        if len(text) < 2 or text[0] not in FAMILIES or not text[1:].isdigit():
            raise InvalidRankError(f"not a simple type label: {text!r}")
        return SimpleType(text[0], int(text[1:]))


def validate(t: SimpleType) -> SimpleType:
    """Enforce the rank bounds A>=1, B>=2, C>=2, D>=3, E in {6,7,8}, F=4, G=2.

    D2 is rejected with NonSimpleError so callers can distinguish a
    disconnected diagram from a plain rank typo.
    """
    fam, n = t.family, t.rank
    if fam == "A" and n >= 1:
        return t
    if fam in "BC" and n >= 2:
        return t
    if fam == "D":
        if n == 2:
            raise NonSimpleError("D2 is A1 x A1, not simple")
        if n >= 3:
            return t
    if fam == "E" and n in (6, 7, 8):
        return t
    if fam == "F" and n == 4:
        return t
    if fam == "G" and n == 2:
        return t
    raise InvalidRankError(f"invalid rank {n} for family {fam}")


def canonicalize(t: SimpleType) -> SimpleType:
    """Canonical representative modulo the low-rank coincidences.

    B2/C2 -> B2 and D3 -> A3 (both fixed choices); D2 raises NonSimpleError.
    """
    validate(t)
    if t.family == "C" and t.rank == 2:
        return SimpleType("B", 2)
    if t.family == "D" and t.rank == 3:
        return SimpleType("A", 3)
    return t


def _edges(t: SimpleType) -> list[tuple[int, int, int, int]]:
    """Dynkin edges as (i, j, c_ij, c_ji) with 0-based nodes, i < j."""
    fam, n = t.family, t.rank
    chain = [(i, i + 1, -1, -1) for i in range(n - 1)]
    if fam == "A":
        return chain
    if fam == "B":
        # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
        return chain[:-1] + [(n - 2, n - 1, -2, -1)]
    if fam == "C":
        # alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2
        return chain[:-1] + [(n - 2, n - 1, -1, -2)]
    if fam == "D":
        return chain[:-1] + [(n - 3, n - 1, -1, -1)]
    if fam == "E":
        # Bourbaki: chain 1-3-4-...-n with node 2 hanging off node 4.
        edges = [(0, 2, -1, -1), (1, 3, -1, -1)]
        edges += [(i, i + 1, -1, -1) for i in range(2, n - 1)]
        return edges
    if fam == "F":
        return [(0, 1, -1, -1), (1, 2, -2, -1), (2, 3, -1, -1)]
    if fam == "G":
        # alpha_1 short
        return [(0, 1, -1, -3)]
    raise AssertionError(fam)


@lru_cache(maxsize=None)
def cartan_matrix(t: SimpleType) -> tuple[tuple[int, ...], ...]:
    """Bourbaki Cartan matrix of t, rows indexed by simple roots."""
    validate(t)
    n = t.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j, cij, cji in _edges(t):
        a[i][j] = cij
        a[j][i] = cji
    return tuple(tuple(row) for row in a)


@lru_cache(maxsize=None)
def root_lengths(t: SimpleType) -> tuple[int, ...]:
    """Half squared lengths d_i = (alpha_i, alpha_i)/2, short roots at 1."""
    validate(t)
    n = t.rank
    if t.family in "ADE":
        return (1,) * n
    if t.family == "B":
        return (2,) * (n - 1) + (1,)
    if t.family == "C":
        return (1,) * (n - 1) + (2,)
    if t.family == "F":
        return (2, 2, 1, 1)
    if t.family == "G":
        return (1, 3)
    raise AssertionError(t)


@dataclass(frozen=True)
class RootSystem:
    simple_type: SimpleType
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    # d_alpha for each positive root, aligned with positive_roots
    lengths: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.simple_type.rank

    def coroot_coords(self, index: int) -> tuple[int, ...]:
        """Coroot of positive root #index in the simple-coroot basis."""
        root = self.positive_roots[index]
        d = root_lengths(self.simple_type)
        da = self.lengths[index]
        coords = []
        for ki, di in zip(root, d):
            num = ki * di
            if num % da:
                raise AssertionError("non-integral coroot coordinate")
            coords.append(num // da)
        return tuple(coords)


@lru_cache(maxsize=None)
def root_system(t: SimpleType) -> RootSystem:
    """All positive roots of t by reflection closure of the simple roots."""
    validate(t)
    n = t.rank
    cartan = cartan_matrix(t)
    d = root_lengths(t)
    simple = []
    for i in range(n):
        coords = tuple(1 if j == i else 0 for j in range(n))
        simple.append(coords)
    seen = {coords: d[i] for i, coords in enumerate(simple)}
    frontier = list(simple)
    while frontier:
        nxt = []
        for root in frontier:
            da = seen[root]
            for i in range(n):
                pairing = sum(root[j] * cartan[j][i] for j in range(n))
                if pairing == 0:
                    continue
                image = list(root)
                image[i] -= pairing
                image = tuple(image)
                if image not in seen:
                    seen[image] = da
                    nxt.append(image)
        frontier = nxt
    positives = sorted(
        (r for r in seen if all(c >= 0 for c in r)), key=lambda r: (sum(r), r)
    )
    lengths = tuple(seen[r] for r in positives)
    return RootSystem(t, cartan, tuple(positives), lengths)


def positive_roots(t: SimpleType) -> tuple[tuple[int, ...], ...]:
    return root_system(t).positive_roots


def dim_group(t: SimpleType) -> int:
    """dim of the simple group of type t (= 2 |Phi+| + rank)."""
    validate(t)
    n = t.rank
    if t.family == "A":
        return n * (n + 2)
    if t.family in "BC":
        return n * (2 * n + 1)
    if t.family == "D":
        return n * (2 * n - 1)
    return _EXCEPTIONAL_DIM[(t.family, n)]


def num_positive_roots(t: SimpleType) -> int:
    return (dim_group(t) - t.rank) // 2


def weyl_order(t: SimpleType) -> int:
    """|W| as an exact integer."""
    validate(t)
    n = t.rank
    if t.family == "A":
        return factorial(n + 1)
    if t.family in "BC":
        return (1 << n) * factorial(n)
    if t.family == "D":
        return (1 << (n - 1)) * factorial(n)
    return _EXCEPTIONAL_WEYL_ORDER[(t.family, n)]


def highest_root(t: SimpleType) -> tuple[int, ...]:
    """Highest root in simple-root coordinates (unique maximal height)."""
    rs = root_system(t)
    return max(rs.positive_roots, key=sum)


def _identify_component(nodes: list[int], cartan) -> SimpleType:
    """Type of a connected induced subdiagram (canonical B2 for rank-2 doubles)."""
    k = len(nodes)
    if k == 1:
        return SimpleType("A", 1)
    adj = {u: [] for u in nodes}
    double = []
    triple = []
    for u in nodes:
        for v in nodes:
            if u < v and cartan[u][v] != 0:
                adj[u].append(v)
                adj[v].append(u)
                bond = cartan[u][v] * cartan[v][u]
                if bond == 2:
                    double.append((u, v))
                elif bond == 3:
                    triple.append((u, v))
    if triple:
        return SimpleType("G", 2)
    degrees = sorted(len(adj[u]) for u in nodes)
    if degrees[-1] >= 3:
        # branch node: D or E, classified by sorted arm lengths
        center = next(u for u in nodes if len(adj[u]) == 3)
        arms = []
        for start in adj[center]:
            length, prev, cur = 1, center, start
            while True:
                ahead = [w for w in adj[cur] if w != prev]
                if not ahead:
                    break
                prev, cur = cur, ahead[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            return SimpleType("D", k)
        if arms == [1, 2, 2]:
            return SimpleType("E", 6)
        if arms == [1, 2, 3]:
            return SimpleType("E", 7)
        if arms == [1, 2, 4]:
            return SimpleType("E", 8)
        raise AssertionError(f"unrecognizable branch diagram {arms}")
    if not double:
        return SimpleType("A", k)
    if k == 2:
        return SimpleType("B", 2)
    (u, v) = double[0]
    # chain with one double bond; B if it sits at the end pointing to a
    # short terminal node, C if the terminal node is long, F4 if interior
    end_u, end_v = len(adj[u]) == 1, len(adj[v]) == 1
    if not (end_u or end_v):
        if k == 4:
            return SimpleType("F", 4)
        raise AssertionError("interior double bond outside F4")
    terminal, inner = (u, v) if end_u else (v, u)
    if cartan[inner][terminal] == -2:
        return SimpleType("B", k)
    return SimpleType("C", k)


def subdiagram_types(t: SimpleType, nodes: frozenset[int] | set[int]) -> tuple[SimpleType, ...]:
    """Component types of the subdiagram induced on a set of 0-based nodes."""
    validate(t)
    cartan = cartan_matrix(t)
    remaining = set(nodes)
    comps = []
    while remaining:
        start = min(remaining)
        comp = {start}
        frontier = [start]
        while frontier:
            u = frontier.pop()
            for v in remaining - comp:
                if cartan[u][v] != 0:
                    comp.add(v)
                    frontier.append(v)
        remaining -= comp
        comps.append(_identify_component(sorted(comp), cartan))
    return tuple(sorted(comps))


def parabolic_weyl_order(t: SimpleType, nodes) -> int:
    """|W_S| for the parabolic subsystem spanned by the given simple roots."""
    order = 1
    for comp in subdiagram_types(t, nodes):
        order *= weyl_order(comp)
    return order
