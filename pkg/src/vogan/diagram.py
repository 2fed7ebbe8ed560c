"""Weighted Vogan diagrams: the data (D, theta, J, w), validation and I/O.

Text form (one line)::

    <TYPE> theta=<id | i1,...,in> J=<comma list, may be empty> w=<comma list>

JSON form::

    {"type": "B5", "theta": [1, 2, 3, 4, 5], "painted": [2, 4, 5], "weights": [2, 0, 0, 2, 0]}
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Iterable

from .rootsys import DynkinDiagram, Root, RootSystemError, SimpleType, cartan_matrix

ALLOWED_WEIGHTS = (0, 1, 2)


class DiagramError(ValueError):
    """Invalid diagram data; ``problems`` lists every violated invariant."""

    def __init__(self, problems: list[str] | str, position: int | None = None):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = problems
        self.position = position
        msg = "; ".join(problems)
        if position is not None:
            msg = f"at column {position}: {msg}"
        super().__init__(msg)


@dataclass(frozen=True)
class Involution:
    """A diagram automorphism of order <= 2, ``image[i-1] = theta(i)``."""

    image: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "Involution":
        return cls(tuple(range(1, n + 1)))

    @property
    def rank(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    @property
    def is_identity(self) -> bool:
        return all(t == i for i, t in enumerate(self.image, 1))

    @property
    def fixed_nodes(self) -> tuple[int, ...]:
        return tuple(i for i, t in enumerate(self.image, 1) if t == i)

    @property
    def two_orbits(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, t) for i, t in enumerate(self.image, 1) if i < t)

    def orbits(self) -> list[tuple[int, ...]]:
        """Orbits in increasing order of their least element."""
        return [(i,) if t == i else (i, t) for i, t in enumerate(self.image, 1) if i <= t]

    def apply(self, root: Root) -> Root:
        """theta(sum n_i a_i) = sum n_i a_theta(i)."""
        if len(root) != self.rank:
            raise ValueError(f"root of rank {len(root)} given to involution of rank {self.rank}")
        out = [0] * self.rank
        for i, c in enumerate(root):
            out[self.image[i] - 1] = c
        return tuple(out)

    def spec(self) -> str:
        return "id" if self.is_identity else ",".join(map(str, self.image))


def _automorphism_problems(diagram: DynkinDiagram, image: tuple[int, ...]) -> list[str]:
    n = diagram.rank
    if len(image) != n:
        return [f"theta has {len(image)} entries, diagram {diagram} has {n} nodes"]
    if sorted(image) != list(range(1, n + 1)):
        return [f"theta {list(image)} is not a permutation of 1..{n}"]
    out = []
    if any(image[image[i] - 1] != i + 1 for i in range(n)):
        out.append(f"theta {list(image)} has order greater than 2")
    a = diagram.cartan
    if any(a[i][j] != a[image[i] - 1][image[j] - 1] for i in range(n) for j in range(n)):
        out.append(f"theta {list(image)} is not an automorphism of {diagram}")
    return out


@dataclass(frozen=True)
class WeightedVoganDiagram:
    diagram: DynkinDiagram
    theta: Involution
    painted: frozenset[int]
    weights: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.diagram.rank

    @property
    def type(self) -> SimpleType:
        return self.diagram.type

    def with_painted(self, painted: Iterable[int]) -> "WeightedVoganDiagram":
        return WeightedVoganDiagram(self.diagram, self.theta, frozenset(painted), self.weights)

    def sort_key(self) -> tuple:
        return (self.weights, tuple(sorted(self.painted)))

    def __str__(self) -> str:
        return render_text(self)


def make(
    type_: SimpleType | str | DynkinDiagram,
    theta: Iterable[int] | Involution | str | None = None,
    painted: Iterable[int] = (),
    weights: Iterable[int] | None = None,
) -> WeightedVoganDiagram:
    """Build and validate a diagram from loose Python values."""
    diagram = type_ if isinstance(type_, DynkinDiagram) else cartan_matrix(type_)
    n = diagram.rank
    if theta is None or theta == "id":
        image = tuple(range(1, n + 1))
    elif isinstance(theta, Involution):
        image = theta.image
    else:
        image = tuple(theta)
    w = tuple(weights) if weights is not None else (0,) * n
    return validate(diagram, image, painted, w)


def validate(
    diagram: DynkinDiagram,
    theta: Iterable[int],
    painted: Iterable[int],
    weights: Iterable[int],
) -> WeightedVoganDiagram:
    """Check every invariant and raise :class:`DiagramError` listing all breaches."""
    n = diagram.rank
    image = tuple(theta)
    J = frozenset(painted)
    w = tuple(weights)
    problems = _automorphism_problems(diagram, image)
    theta_ok = not problems
    bad_nodes = sorted(i for i in J if not 1 <= i <= n)
    if bad_nodes:
        problems.append(f"painted nodes {bad_nodes} outside 1..{n}")
    if len(w) != n:
        problems.append(f"{len(w)} weights given for {n} nodes")
    else:
        for i, x in enumerate(w, 1):
            if x not in ALLOWED_WEIGHTS:
                problems.append(f"weight of node {i} is {x}, not in {{0,1,2}}")
    if theta_ok:
        for i in sorted(J):
            if 1 <= i <= n and image[i - 1] != i:
                problems.append(f"painted node {i} is not theta-fixed")
        if len(w) == n:
            for i, t in enumerate(image, 1):
                if i < t and w[i - 1] != w[t - 1]:
                    problems.append(
                        f"weights of nodes {i} and {t} differ ({w[i - 1]} != {w[t - 1]}) "
                        "but theta swaps them"
                    )
    if problems:
        raise DiagramError(problems)
    return WeightedVoganDiagram(diagram, Involution(image), J, w)


def underlying_weighted_dynkin(d: WeightedVoganDiagram) -> tuple[DynkinDiagram, tuple[int, ...]]:
    return d.diagram, d.weights


def underlying_vogan(d: WeightedVoganDiagram) -> tuple[DynkinDiagram, Involution, frozenset[int]]:
    return d.diagram, d.theta, d.painted


# ---------------------------------------------------------------- text form

_FIELD_RE = re.compile(r"(theta|J|w)=(\S*)")


def _int_list(text: str, offset: int, name: str) -> list[int]:
    if text == "":
        return []
    out = []
    pos = offset
    for part in text.split(","):
        if not re.fullmatch(r"[+-]?\d+", part):
            raise DiagramError(f"{name}: expected an integer, got {part!r}", pos)
        out.append(int(part))
        pos += len(part) + 1
    return out


def parse(text: str) -> WeightedVoganDiagram:
    """Read the one-line text form; syntax errors carry a 1-based column."""
    stripped = text.strip()
    lead = len(text) - len(text.lstrip())
    if not stripped:
        raise DiagramError("empty diagram text", 1)
    head, _, rest = stripped.partition(" ")
    try:
        t = SimpleType.parse(head)
    except RootSystemError as exc:
        raise DiagramError(str(exc), lead + 1) from None
    diagram = cartan_matrix(t)
    base = lead + len(head) + 1
    fields: dict[str, tuple[str, int]] = {}
    pos = 0
    for token in rest.split(" "):
        col = base + pos + 1
        pos += len(token) + 1
        if token == "":
            continue
        m = _FIELD_RE.fullmatch(token)
        if not m:
            raise DiagramError(f"unexpected token {token!r}; expected theta=, J= or w=", col)
        key = m.group(1)
        if key in fields:
            raise DiagramError(f"field {key}= given twice", col)
        fields[key] = (m.group(2), col + len(key) + 1)
    for key in ("theta", "J", "w"):
        if key not in fields:
            raise DiagramError(f"missing field {key}=", len(text) + 1)
    theta_text, theta_col = fields["theta"]
    if theta_text == "id":
        image = tuple(diagram.nodes)
    else:
        image = tuple(_int_list(theta_text, theta_col, "theta"))
    painted = _int_list(*fields["J"], "J")
    if len(set(painted)) != len(painted):
        raise DiagramError(f"J lists a node twice: {painted}", fields["J"][1])
    weights = _int_list(*fields["w"], "w")
    return validate(diagram, image, painted, weights)


def render_text(d: WeightedVoganDiagram) -> str:
    J = ",".join(str(i) for i in sorted(d.painted))
    w = ",".join(str(x) for x in d.weights)
    return f"{d.type} theta={d.theta.spec()} J={J} w={w}"


# ---------------------------------------------------------------- JSON form

def to_dict(d: WeightedVoganDiagram) -> dict[str, Any]:
    return {
        "type": str(d.type),
        "theta": list(d.theta.image),
        "painted": sorted(d.painted),
        "weights": list(d.weights),
    }


def from_dict(obj: dict[str, Any]) -> WeightedVoganDiagram:
    missing = [k for k in ("type", "theta", "painted", "weights") if k not in obj]
    if missing:
        raise DiagramError(f"JSON diagram missing fields {missing}")
    try:
        diagram = cartan_matrix(SimpleType.parse(str(obj["type"])))
    except RootSystemError as exc:
        raise DiagramError(str(exc)) from None
    return validate(diagram, obj["theta"], obj["painted"], obj["weights"])


def to_json(d: WeightedVoganDiagram) -> str:
    return json.dumps(to_dict(d), separators=(",", ":"), sort_keys=True)


def from_json(text: str) -> WeightedVoganDiagram:
    return from_dict(json.loads(text))


# ---------------------------------------------------------------- DOT form

def render_dot(d: WeightedVoganDiagram) -> str:
    """Graphviz source: painted nodes filled, weights as external labels,
    theta 2-orbits as dashed double-headed edges, multiple bonds labelled
    with an arrow toward the short node."""
    lines = [f'graph "{d.type}" {{', "  rankdir=LR;", "  node [shape=circle, label=\"\"];"]
    for i in d.diagram.nodes:
        style = ', style=filled, fillcolor=black' if i in d.painted else ""
        lines.append(f'  n{i} [xlabel="{d.weights[i - 1]}", tooltip="node {i}"{style}];')
    for (i, j), (mult, long_node) in d.diagram.bonds.items():
        attrs = []
        if mult > 1:
            short = j if long_node == i else i
            attrs.append(f'color="{":".join(["black"] * mult)}"')
            attrs.append(f'label="{">" if short == j else "<"}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  n{i} -- n{j}{suffix};")
    for i, t in d.theta.two_orbits:
        lines.append(f"  n{i} -- n{t} [style=dashed, dir=both, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
