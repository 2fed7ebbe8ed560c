"""Operation (A), equivalence classes and property (P).

Operation (A) at a painted node j of weight 0 mirrors the simple
reflection in a non-compact imaginary root: a theta-fixed neighbour i
changes colour exactly when <a_i, a_j^vee> is odd.  Under the fixed
numbering this skips the long neighbour of a short j in B_n (j = n),
C_n (j = n-1) and F_4 (j = 2) and toggles every other fixed neighbour.
Neighbours in a theta 2-orbit are never painted, so they never toggle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable

from .classify import NoticedReport, noticed_report
from .diagram import DiagramError, WeightedVoganDiagram, to_dict
from .rootsys import DynkinDiagram, diagram_automorphisms


class EquivalenceError(ValueError):
    pass


@lru_cache(maxsize=None)
def toggle_masks(diagram: DynkinDiagram, image: tuple[int, ...]) -> tuple[int, ...]:
    """Bit mask (bit i-1 for node i) of nodes recoloured by operation (A) at each node."""
    n = diagram.rank
    a = diagram.cartan
    masks = []
    for j in range(n):
        m = 0
        for i in range(n):
            if i != j and a[j][i] % 2 and image[i] == i + 1:
                m |= 1 << i
        masks.append(m)
    return tuple(masks)


def _mask(nodes: Iterable[int]) -> int:
    m = 0
    for i in nodes:
        m |= 1 << (i - 1)
    return m


def _nodes(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def _zero_mask(weights: tuple[int, ...]) -> int:
    return _mask(i for i, w in enumerate(weights, 1) if w == 0)


def applicable_nodes(d: WeightedVoganDiagram) -> list[int]:
    """Painted nodes of weight 0, ascending."""
    return sorted(i for i in d.painted if d.weights[i - 1] == 0)


def operation_a(d: WeightedVoganDiagram, node: int) -> WeightedVoganDiagram:
    if node not in d.painted:
        raise EquivalenceError(f"operation (A) needs a painted node; node {node} is not in J")
    if d.weights[node - 1] != 0:
        raise EquivalenceError(
            f"operation (A) needs weight 0; node {node} has weight {d.weights[node - 1]}"
        )
    m = toggle_masks(d.diagram, d.theta.image)[node - 1]
    return d.with_painted(_nodes(_mask(d.painted) ^ m))


def _step_masks(J: int, zero: int, toggles: tuple[int, ...]):
    """(node, new J) for each applicable node of J, ascending node."""
    avail = J & zero
    i = 0
    while avail:
        if avail & 1:
            yield i + 1, J ^ toggles[i]
        avail >>= 1
        i += 1


def _canonical_key(mask: int) -> tuple[int, ...]:
    return _nodes(mask)


def class_masks(d: WeightedVoganDiagram) -> list[int]:
    """J masks reachable from d, in canonical order (sorted-J lexicographic)."""
    toggles = toggle_masks(d.diagram, d.theta.image)
    zero = _zero_mask(d.weights)
    start = _mask(d.painted)
    seen = {start}
    queue = deque([start])
    while queue:
        J = queue.popleft()
        for _, nxt in _step_masks(J, zero, toggles):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return sorted(seen, key=_canonical_key)


def has_property_p(d: WeightedVoganDiagram) -> bool:
    """Each connected component of the weight-0 subdiagram has at most one painted node."""
    return _property_p_mask(d.diagram, d.weights, _mask(d.painted))


@lru_cache(maxsize=None)
def _zero_components(diagram: DynkinDiagram, weights: tuple[int, ...]) -> tuple[int, ...]:
    zero = [i for i in diagram.nodes if weights[i - 1] == 0]
    left = set(zero)
    comps = []
    while left:
        stack = [min(left)]
        left.discard(stack[0])
        m = 0
        while stack:
            v = stack.pop()
            m |= 1 << (v - 1)
            for u in diagram.neighbors[v - 1]:
                if u in left:
                    left.discard(u)
                    stack.append(u)
        comps.append(m)
    return tuple(comps)


def _property_p_mask(diagram: DynkinDiagram, weights: tuple[int, ...], J: int) -> bool:
    return all((J & c).bit_count() <= 1 for c in _zero_components(diagram, weights))


@dataclass(frozen=True)
class EquivalenceClass:
    members: tuple[WeightedVoganDiagram, ...]
    report: NoticedReport

    @property
    def canonical(self) -> WeightedVoganDiagram:
        return self.members[0]

    @property
    def noticed(self) -> bool:
        return self.report.noticed

    @property
    def property_p_members(self) -> tuple[WeightedVoganDiagram, ...]:
        return tuple(m for m in self.members if has_property_p(m))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, d: object) -> bool:
        return d in self.members

    def to_dict(self) -> dict[str, Any]:
        return {
            "canonical": to_dict(self.canonical),
            "members": [to_dict(m) for m in self.members],
            "noticed": self.noticed,
            "property_p_members": [to_dict(m) for m in self.property_p_members],
        }


def equivalence_class(d: WeightedVoganDiagram) -> EquivalenceClass:
    members = tuple(d.with_painted(_nodes(m)) for m in class_masks(d))
    return EquivalenceClass(members, noticed_report(members[0]))


def _same_frame(d1: WeightedVoganDiagram, d2: WeightedVoganDiagram) -> bool:
    return d1.diagram == d2.diagram and d1.theta == d2.theta and d1.weights == d2.weights


def move_sequence(d1: WeightedVoganDiagram, d2: WeightedVoganDiagram) -> list[int] | None:
    """Shortest list of operation (A) nodes taking d1 to d2, or None.

    Breadth-first with neighbours expanded by ascending node, so ties go to
    the smallest node index at the earliest step.
    """
    if not _same_frame(d1, d2):
        return None
    toggles = toggle_masks(d1.diagram, d1.theta.image)
    zero = _zero_mask(d1.weights)
    start, goal = _mask(d1.painted), _mask(d2.painted)
    parent: dict[int, tuple[int, int] | None] = {start: None}
    queue = deque([start])
    while queue:
        J = queue.popleft()
        if J == goal:
            path = []
            while parent[J] is not None:
                J, node = parent[J]
                path.append(node)
            return path[::-1]
        for node, nxt in _step_masks(J, zero, toggles):
            if nxt not in parent:
                parent[nxt] = (J, node)
                queue.append(nxt)
    return None


def equivalent(d1: WeightedVoganDiagram, d2: WeightedVoganDiagram) -> bool:
    return move_sequence(d1, d2) is not None


def relabel(d: WeightedVoganDiagram, perm: tuple[int, ...]) -> WeightedVoganDiagram:
    """Transport d along the diagram automorphism ``perm`` (node i -> perm[i-1])."""
    n = d.rank
    inv = [0] * n
    for i, p in enumerate(perm, 1):
        inv[p - 1] = i
    theta = tuple(perm[d.theta(inv[k]) - 1] for k in range(n))
    weights = tuple(d.weights[inv[k] - 1] for k in range(n))
    painted = frozenset(perm[i - 1] for i in d.painted)
    return WeightedVoganDiagram(d.diagram, type(d.theta)(theta), painted, weights)


def isomorphic_images(d: WeightedVoganDiagram) -> list[WeightedVoganDiagram]:
    """Distinct images of d under all diagram automorphisms."""
    seen = []
    for perm in diagram_automorphisms(d.diagram):
        e = relabel(d, perm)
        if e not in seen:
            seen.append(e)
    return seen


def equivalent_up_to_iso(d1: WeightedVoganDiagram, d2: WeightedVoganDiagram) -> bool:
    return any(equivalent(d1, e) for e in isomorphic_images(d2))


def normalize_p(d: WeightedVoganDiagram) -> WeightedVoganDiagram:
    """The canonical member of d's class that has property (P)."""
    for m in class_masks(d):
        if _property_p_mask(d.diagram, d.weights, m):
            return d.with_painted(_nodes(m))
    raise EquivalenceError(
        f"anomaly: no member of the class of {d} has property (P); "
        "every class is expected to contain one"
    )


__all__ = [
    "DiagramError",
    "EquivalenceClass",
    "EquivalenceError",
    "applicable_nodes",
    "class_masks",
    "equivalence_class",
    "equivalent",
    "equivalent_up_to_iso",
    "has_property_p",
    "isomorphic_images",
    "move_sequence",
    "normalize_p",
    "operation_a",
    "relabel",
    "toggle_masks",
]
