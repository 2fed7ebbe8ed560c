"""Root-level invariants of a weighted Vogan diagram.

For each positive root: its weight sum n_i w_i, its painted length
sum_{i in J} n_i, whether theta fixes it, and whether it splits as
gamma + theta(gamma) with gamma positive.  From these come the sets
P_np^(j), P_p^(j), K^(j), the noticed equality and the per-node
minimality test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from .diagram import Involution, WeightedVoganDiagram
from .rootsys import DynkinDiagram, Root, positive_roots, root_order_key


@dataclass(frozen=True)
class _ThetaData:
    roots: tuple[Root, ...]
    index: dict[Root, int]
    theta_index: tuple[int, ...]
    fixed: tuple[bool, ...]
    gamma: tuple[Root | None, ...]


@lru_cache(maxsize=None)
def _theta_data(diagram: DynkinDiagram, image: tuple[int, ...]) -> _ThetaData:
    roots = positive_roots(diagram)
    index = {r: k for k, r in enumerate(roots)}
    theta = Involution(image)
    theta_index = tuple(index[theta.apply(r)] for r in roots)
    fixed = tuple(k == t for k, t in enumerate(theta_index))
    gamma: list[Root | None] = [None] * len(roots)
    if not theta.is_identity:
        for k, g in enumerate(roots):
            tg = roots[theta_index[k]]
            s = tuple(a + b for a, b in zip(g, tg))
            m = index.get(s)
            if m is not None and gamma[m] is None:
                gamma[m] = g
    return _ThetaData(roots, index, theta_index, fixed, tuple(gamma))


def theta_on_root(theta: Involution, root: Root) -> Root:
    return theta.apply(root)


def root_weight(d: WeightedVoganDiagram, root: Root) -> int:
    return sum(c * w for c, w in zip(root, d.weights))


def painted_length(d: WeightedVoganDiagram, root: Root) -> int:
    return sum(root[i - 1] for i in d.painted)


def gamma_sum_witness(d: WeightedVoganDiagram | tuple[DynkinDiagram, Involution], root: Root) -> Root | None:
    """Least positive gamma (in root order) with gamma + theta(gamma) == root."""
    if isinstance(d, WeightedVoganDiagram):
        diagram, theta = d.diagram, d.theta
    else:
        diagram, theta = d
    data = _theta_data(diagram, theta.image)
    k = data.index.get(tuple(root))
    return None if k is None else data.gamma[k]


@dataclass(frozen=True)
class RootClass:
    root: Root
    weight: int
    painted_length: int
    fixed: bool
    gamma_sum: Root | None

    @property
    def noncompact(self) -> bool:
        """Fixed root landing in P_p: odd painted length or a gamma + theta(gamma) sum."""
        return self.fixed and (self.painted_length % 2 == 1 or self.gamma_sum is not None)


def classify_roots(d: WeightedVoganDiagram) -> list[RootClass]:
    data = _theta_data(d.diagram, d.theta.image)
    w = d.weights
    J = [i - 1 for i in d.painted]
    out = []
    for k, r in enumerate(data.roots):
        out.append(RootClass(
            r,
            sum(c * x for c, x in zip(r, w)),
            sum(r[i] for i in J),
            data.fixed[k],
            data.gamma[k],
        ))
    return out


@dataclass(frozen=True)
class WeightPartition:
    j: int
    P_np: tuple[Root, ...]
    P_p: tuple[Root, ...]
    K: tuple[tuple[Root, Root], ...]

    def counts(self) -> tuple[int, int, int]:
        return len(self.P_np), len(self.P_p), len(self.K)


def _partition(classes: list[RootClass], data: _ThetaData, j: int) -> WeightPartition:
    P_np, P_p, K = [], [], []
    for k, rc in enumerate(classes):
        if rc.weight != j:
            continue
        if rc.fixed:
            (P_p if rc.noncompact else P_np).append(rc.root)
        else:
            t = data.theta_index[k]
            if k < t:
                K.append((rc.root, data.roots[t]))
    return WeightPartition(j, tuple(P_np), tuple(P_p), tuple(K))


def partition(d: WeightedVoganDiagram, j: int) -> WeightPartition:
    """P_np^(j), P_p^(j) and K^(j), each in root order.

    Pairs in K are written (a, theta a) with a the earlier root.
    """
    if j < 0:
        raise ValueError(f"weight value must be non-negative, got {j}")
    return _partition(classify_roots(d), _theta_data(d.diagram, d.theta.image), j)


@dataclass(frozen=True)
class NoticedReport:
    n_fixed: int
    n_two_orbits: int
    P_np0: tuple[Root, ...]
    K0: tuple[tuple[Root, Root], ...]
    P_p2: tuple[Root, ...]
    K2: tuple[tuple[Root, Root], ...]
    lhs: int = field(init=False)
    rhs: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "lhs", self.n_fixed + self.n_two_orbits + 2 * len(self.P_np0) + 2 * len(self.K0)
        )
        object.__setattr__(self, "rhs", len(self.P_p2) + len(self.K2))

    @property
    def noticed(self) -> bool:
        return self.lhs == self.rhs

    def lhs_terms(self) -> tuple[int, int, int, int]:
        return self.n_fixed, self.n_two_orbits, 2 * len(self.P_np0), 2 * len(self.K0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "noticed": self.noticed,
            "lhs_terms": list(self.lhs_terms()),
            "P_np0": [list(r) for r in self.P_np0],
            "K0": [[list(a), list(b)] for a, b in self.K0],
            "P_p2": [list(r) for r in self.P_p2],
            "K2": [[list(a), list(b)] for a, b in self.K2],
        }


def noticed_report(d: WeightedVoganDiagram) -> NoticedReport:
    classes = classify_roots(d)
    data = _theta_data(d.diagram, d.theta.image)
    p0 = _partition(classes, data, 0)
    p2 = _partition(classes, data, 2)
    return NoticedReport(
        len(d.theta.fixed_nodes), len(d.theta.two_orbits), p0.P_np, p0.K, p2.P_p, p2.K
    )


def is_noticed(d: WeightedVoganDiagram) -> bool:
    return noticed_report(d).noticed


def _node_witnesses(d: WeightedVoganDiagram) -> list[Root | None]:
    out: list[Root | None] = [None] * d.rank
    for rc in classify_roots(d):
        if rc.weight != 2 or not (not rc.fixed or rc.noncompact):
            continue
        for i, c in enumerate(rc.root):
            if c and out[i] is None:
                out[i] = rc.root
    return out


def node_supports_g2p(d: WeightedVoganDiagram, node: int) -> tuple[bool, Root | None]:
    """Whether some weight-2 root through ``node`` is complex or non-compact.

    Returns the verdict and the least such root as witness.
    """
    if not 1 <= node <= d.rank:
        raise ValueError(f"node {node} outside 1..{d.rank}")
    w = _node_witnesses(d)[node - 1]
    return w is not None, w


def minimality_check(d: WeightedVoganDiagram) -> bool:
    return all(w is not None for w in _node_witnesses(d))


def theorem55_check(d: WeightedVoganDiagram) -> tuple[bool, bool]:
    """(|P_np^(1)| == |P_p^(1)|, every node passes node_supports_g2p).

    Both are necessary for a noticed diagram; neither is sufficient.
    """
    p1 = partition(d, 1)
    return len(p1.P_np) == len(p1.P_p), minimality_check(d)


def sort_roots(roots) -> list[Root]:
    return sorted(roots, key=root_order_key)


def root_weights(diagram: DynkinDiagram, weights: tuple[int, ...]) -> tuple[int, ...]:
    """Weights of all positive roots in root order."""
    return tuple(sum(c * w for c, w in zip(r, weights)) for r in positive_roots(diagram))


def summarize(d: WeightedVoganDiagram, weights_by_root: tuple[int, ...] | None = None):
    """(lhs, rhs, |P_np^(1)| == |P_p^(1)|, minimality) in one pass over the roots.

    ``weights_by_root`` may be passed in when sweeping many painted sets
    over one weight vector.
    """
    data = _theta_data(d.diagram, d.theta.image)
    if weights_by_root is None:
        weights_by_root = root_weights(d.diagram, d.weights)
    J = [i - 1 for i in d.painted]
    np0 = k0 = p2 = k2 = np1 = p1 = 0
    reached = 0
    for k, r in enumerate(data.roots):
        w = weights_by_root[k]
        if w > 2:
            continue
        fixed = data.fixed[k]
        if fixed:
            odd = sum(r[i] for i in J) % 2 == 1 or data.gamma[k] is not None
        if w == 0:
            if not fixed:
                k0 += 1
            elif not odd:
                np0 += 1
        elif w == 1:
            if fixed:
                if odd:
                    p1 += 1
                else:
                    np1 += 1
        else:
            if not fixed:
                k2 += 1
            elif odd:
                p2 += 1
            else:
                continue
            for i, c in enumerate(r):
                if c:
                    reached |= 1 << i
    theta = d.theta
    lhs = len(theta.fixed_nodes) + len(theta.two_orbits) + 2 * np0 + k0
    rhs = p2 + k2 // 2
    return lhs, rhs, np1 == p1, reached == (1 << d.rank) - 1
