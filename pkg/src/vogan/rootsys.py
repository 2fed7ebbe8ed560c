"""Finite-type Dynkin diagrams, Cartan matrices and positive root systems.

Node labels are 1-based everywhere in the public API; coefficient vectors
(roots) are plain tuples indexed from 0.

Numbering:
    A, D, E, G  Bourbaki.
    B_n         nodes 1..n-1 long, node n short.
    C_n         nodes 1..n-1 short, node n long.
    F_4         nodes 1, 2 short, nodes 3, 4 long, double bond 2=3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator

Root = tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}

_TYPE_RE = re.compile(r"^\s*([A-Za-z])_?(\d+)\s*$")


class RootSystemError(ValueError):
    """Raised for an invalid simple type."""


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        family, rank = self.family, self.rank
        if family in _MIN_RANK:
            if rank < _MIN_RANK[family]:
                raise RootSystemError(
                    f"type {family}{rank}: family {family} requires rank >= {_MIN_RANK[family]}"
                )
        elif family in _FIXED_RANKS:
            allowed = _FIXED_RANKS[family]
            if rank not in allowed:
                choices = ", ".join(str(r) for r in allowed)
                raise RootSystemError(
                    f"type {family}{rank}: family {family} requires rank in {{{choices}}}"
                )
        else:
            raise RootSystemError(f"unknown family {family!r}; expected one of A-G")

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        m = _TYPE_RE.match(text)
        if not m:
            raise RootSystemError(f"cannot read simple type from {text!r}; expected e.g. B5")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _edges_and_lengths(t: SimpleType) -> tuple[list[tuple[int, int]], list[int]]:
    """0-based edges and squared root lengths (short root = 1)."""
    n = t.rank
    path = [(i, i + 1) for i in range(n - 1)]
    if t.family == "A":
        return path, [1] * n
    if t.family == "B":
        return path, [2] * (n - 1) + [1]
    if t.family == "C":
        return path, [1] * (n - 1) + [2]
    if t.family == "D":
        return path[: n - 2] + [(n - 3, n - 1)], [1] * n
    if t.family == "E":
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        return edges, [1] * n
    if t.family == "F":
        return path, [1, 1, 2, 2]
    if t.family == "G":
        return path, [1, 3]
    raise AssertionError(t)


@dataclass(frozen=True)
class DynkinDiagram:
    """A simple Dynkin diagram under the fixed numbering.

    ``cartan[i][j]`` is ``2 (a_i, a_j) / (a_i, a_i)`` so that for B3 the
    last row reads ``(0, -2, 2)``.
    """

    type: SimpleType
    cartan: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...] = field(compare=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """1-based neighbour lists, indexed by 0-based node."""
        n = self.rank
        return tuple(
            tuple(j + 1 for j in range(n) if j != i and self.cartan[i][j] != 0)
            for i in range(n)
        )

    @cached_property
    def bonds(self) -> dict[tuple[int, int], tuple[int, int | None]]:
        """``{(i, j): (multiplicity, long_node)}`` for each bond with ``i < j``.

        ``long_node`` is ``None`` for simple bonds.
        """
        out = {}
        n = self.rank
        for i in range(n):
            for j in range(i + 1, n):
                if self.cartan[i][j] == 0:
                    continue
                mult = self.cartan[i][j] * self.cartan[j][i]
                long_node = None
                if self.lengths[i] > self.lengths[j]:
                    long_node = i + 1
                elif self.lengths[j] > self.lengths[i]:
                    long_node = j + 1
                out[(i + 1, j + 1)] = (mult, long_node)
        return out

    def is_longer(self, i: int, j: int) -> bool:
        """True when node ``i`` is strictly longer than node ``j``."""
        return self.lengths[i - 1] > self.lengths[j - 1]

    def __str__(self) -> str:
        return str(self.type)


@lru_cache(maxsize=None)
def cartan_matrix(t: SimpleType | str) -> DynkinDiagram:
    if isinstance(t, str):
        t = SimpleType.parse(t)
    edges, lengths = _edges_and_lengths(t)
    n = t.rank
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i, j in edges:
        a[i][j] = -max(1, lengths[j] // lengths[i])
        a[j][i] = -max(1, lengths[i] // lengths[j])
    return DynkinDiagram(t, tuple(map(tuple, a)), tuple(lengths))


def root_order_key(root: Root) -> tuple:
    # height first, then larger leading coefficients first (simple roots come out as a1, a2, ...)
    return (sum(root), tuple(-c for c in root))


def _pairing(cartan, root: Root, i: int) -> int:
    """<root, a_i^vee> for 0-based simple index i."""
    row = cartan[i]
    return sum(row[k] * c for k, c in enumerate(root) if c)


@lru_cache(maxsize=None)
def positive_roots(diagram: DynkinDiagram) -> tuple[Root, ...]:
    """All positive roots, ordered by :func:`root_order_key`.

    Built level by level: for a root ``b`` and simple root ``a_i``, with
    ``p`` the largest integer such that ``b - p a_i`` is a root, ``b + a_i``
    is a root iff ``p - <b, a_i^vee> > 0``.
    """
    n = diagram.rank
    cartan = diagram.cartan
    simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    found: set[Root] = set(simples)
    level = simples
    while level:
        nxt: set[Root] = set()
        for b in level:
            for i in range(n):
                p = 0
                probe = list(b)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in found:
                        p += 1
                    else:
                        break
                if p - _pairing(cartan, b, i) > 0:
                    up = list(b)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        nxt.add(up)
        found |= nxt
        level = sorted(nxt)
    return tuple(sorted(found, key=root_order_key))


def root_length(root: Root) -> int:
    return sum(root)


def highest_root(diagram: DynkinDiagram) -> Root:
    return positive_roots(diagram)[-1]


def _automorphisms(diagram: DynkinDiagram) -> Iterator[tuple[int, ...]]:
    """Backtracking search for Cartan-preserving permutations (0-based images)."""
    n = diagram.rank
    a = diagram.cartan
    image = [-1] * n
    used = [False] * n

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(image)
            return
        for t in range(n):
            if used[t]:
                continue
            if any(a[i][k] != a[t][image[k]] or a[k][i] != a[image[k]][t] for k in range(i)):
                continue
            image[i] = t
            used[t] = True
            yield from extend(i + 1)
            used[t] = False
        image[i] = -1

    yield from extend(0)


@lru_cache(maxsize=None)
def diagram_automorphisms(diagram: DynkinDiagram) -> tuple[tuple[int, ...], ...]:
    """Every diagram automorphism as a 1-based image tuple, identity first."""
    perms = sorted(tuple(t + 1 for t in p) for p in _automorphisms(diagram))
    ident = tuple(diagram.nodes)
    perms.remove(ident)
    return (ident, *perms)


@lru_cache(maxsize=None)
def diagram_involutions(diagram: DynkinDiagram) -> tuple[tuple[int, ...], ...]:
    """Automorphisms of order at most 2 as 1-based image tuples, identity first."""
    return tuple(
        p for p in diagram_automorphisms(diagram)
        if all(p[p[i] - 1] == i + 1 for i in range(diagram.rank))
    )


def constructible_types(max_rank: int = 8) -> list[SimpleType]:
    out = []
    for family in "ABCDEFG":
        for rank in range(1, max_rank + 1):
            try:
                out.append(SimpleType(family, rank))
            except RootSystemError:
                pass
    return out


def format_root(root: Root) -> str:
    """``(0, 1, 2)`` -> ``"a2+2a3"``."""
    parts = []
    for i, c in enumerate(root, 1):
        if c:
            parts.append(f"a{i}" if c == 1 else f"{c}a{i}")
    return "+".join(parts) or "0"
