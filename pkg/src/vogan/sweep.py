"""Exhaustive enumeration of weighted Vogan diagrams and class catalogs."""

from __future__ import annotations

import itertools
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterator

from .classify import noticed_report, root_weights, summarize
from .diagram import DiagramError, Involution, WeightedVoganDiagram, from_dict, render_text, to_dict
from .equiv import _nodes, _property_p_mask, _zero_mask, relabel, toggle_masks
from .rootsys import DynkinDiagram, SimpleType, cartan_matrix, diagram_automorphisms, diagram_involutions

log = logging.getLogger(__name__)

DEFAULT_MAX_RANK = 8


class SweepError(ValueError):
    pass


def _resolve(type_: SimpleType | str | DynkinDiagram, theta) -> tuple[DynkinDiagram, Involution]:
    diagram = type_ if isinstance(type_, DynkinDiagram) else cartan_matrix(type_)
    if theta is None or theta == "id":
        image = tuple(diagram.nodes)
    elif isinstance(theta, Involution):
        image = theta.image
    elif isinstance(theta, str):
        image = tuple(int(x) for x in theta.split(","))
    else:
        image = tuple(theta)
    if image not in diagram_involutions(diagram):
        raise SweepError(f"theta {list(image)} is not an involution of {diagram}")
    return diagram, Involution(image)


def weight_vectors(theta: Involution) -> Iterator[tuple[int, ...]]:
    """theta-symmetric vectors in {0,1,2}^n, lexicographic in the orbit values."""
    orbits = theta.orbits()
    for values in itertools.product((0, 1, 2), repeat=len(orbits)):
        w = [0] * theta.rank
        for orbit, v in zip(orbits, values):
            for i in orbit:
                w[i - 1] = v
        yield tuple(w)


def _painted_masks(theta: Involution) -> list[int]:
    fixed = [i - 1 for i in theta.fixed_nodes]
    masks = []
    for r in range(len(fixed) + 1):
        for combo in itertools.combinations(fixed, r):
            masks.append(sum(1 << i for i in combo))
    return sorted(masks, key=_nodes)


def diagram_count(type_, theta=None) -> int:
    _, inv = _resolve(type_, theta)
    return 2 ** len(inv.fixed_nodes) * 3 ** len(inv.orbits())


def enumerate_diagrams(type_, theta=None) -> Iterator[WeightedVoganDiagram]:
    diagram, inv = _resolve(type_, theta)
    masks = _painted_masks(inv)
    for w in weight_vectors(inv):
        for m in masks:
            yield WeightedVoganDiagram(diagram, inv, frozenset(_nodes(m)), w)


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the canonically smaller mask as root
            if _nodes(rb) < _nodes(ra):
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self) -> list[list]:
        out: dict[Any, list] = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


@dataclass(frozen=True)
class CatalogClass:
    canonical: WeightedVoganDiagram
    size: int
    lhs: int
    rhs: int
    cardinality_ok: bool
    minimal: bool
    members: tuple[WeightedVoganDiagram, ...] | None = None
    iso_images: int = 1

    @property
    def noticed(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict[str, Any]:
        out = {
            "canonical": to_dict(self.canonical),
            "size": self.size,
            "noticed": self.noticed,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "theorem55": [self.cardinality_ok, self.minimal],
        }
        if self.iso_images != 1:
            out["iso_images"] = self.iso_images
        if self.members is not None:
            out["members"] = [to_dict(m) for m in self.members]
        return out

    @classmethod
    def from_dict(cls, obj: dict[str, Any]) -> "CatalogClass":
        members = obj.get("members")
        return cls(
            from_dict(obj["canonical"]),
            obj["size"],
            obj["lhs"],
            obj["rhs"],
            obj["theorem55"][0],
            obj["theorem55"][1],
            tuple(from_dict(m) for m in members) if members is not None else None,
            obj.get("iso_images", 1),
        )


@dataclass(frozen=True)
class Catalog:
    type: SimpleType
    theta: Involution
    classes: tuple[CatalogClass, ...]
    up_to_iso: bool = False
    stats: dict[str, int] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "stats", {
            "total_diagrams": sum(c.size for c in self.classes),
            "total_classes": len(self.classes),
            "noticed_classes": sum(c.noticed for c in self.classes),
        })

    @property
    def noticed(self) -> list[CatalogClass]:
        return [c for c in self.classes if c.noticed]

    def to_dict(self) -> dict[str, Any]:
        out = {
            "type": str(self.type),
            "theta": list(self.theta.image),
            "stats": dict(self.stats),
            "classes": [c.to_dict() for c in self.classes],
        }
        if self.up_to_iso:
            out["up_to_iso"] = True
        return out

    @classmethod
    def from_dict(cls, obj: dict[str, Any]) -> "Catalog":
        cat = cls(
            SimpleType.parse(obj["type"]),
            Involution(tuple(obj["theta"])),
            tuple(CatalogClass.from_dict(c) for c in obj["classes"]),
            obj.get("up_to_iso", False),
        )
        if cat.stats != obj["stats"]:
            raise SweepError(f"catalog stats {obj['stats']} disagree with its classes {cat.stats}")
        return cat


def _slice_classes(
    diagram: DynkinDiagram,
    inv: Involution,
    weights: tuple[int, ...],
    full: bool,
    check_members: bool,
) -> list[CatalogClass]:
    masks = _painted_masks(inv)
    toggles = toggle_masks(diagram, inv.image)
    zero = _zero_mask(weights)
    uf = UnionFind(masks)
    for J in masks:
        avail = J & zero
        for i in range(diagram.rank):
            if avail >> i & 1:
                uf.union(J, J ^ toggles[i])
    by_root = root_weights(diagram, weights)
    out = []
    for group in uf.groups():
        group.sort(key=_nodes)
        members = tuple(WeightedVoganDiagram(diagram, inv, frozenset(_nodes(m)), weights) for m in group)
        canon = members[0]
        lhs, rhs, card, minimal = summarize(canon, by_root)
        if check_members:
            report = noticed_report(canon)
            if (report.lhs, report.rhs) != (lhs, rhs):
                raise AssertionError(f"summary disagrees with full report on {canon}")
            for m in members[1:]:
                r = noticed_report(m)
                if r.noticed != report.noticed:
                    raise AssertionError(f"noticed verdict differs inside class: {canon} vs {m}")
            if not any(_property_p_mask(diagram, weights, m) for m in group):
                raise AssertionError(f"class of {canon} has no property (P) member")
        out.append(CatalogClass(
            canon, len(members), lhs, rhs, card, minimal,
            members if full else None,
        ))
    out.sort(key=lambda c: _nodes(sum(1 << (i - 1) for i in c.canonical.painted)))
    return out


def _slice_job(args) -> list[CatalogClass]:
    type_text, image, weights, full, check = args
    return _slice_classes(cartan_matrix(type_text), Involution(image), weights, full, check)


def _merge_isomorphic(classes: list[CatalogClass], theta: Involution) -> list[CatalogClass]:
    """Merge classes whose canonical members are related by automorphisms commuting with theta."""
    if not classes:
        return classes
    diagram = classes[0].canonical.diagram
    perms = [
        p for p in diagram_automorphisms(diagram)
        if all(p[theta(i) - 1] == theta(p[i - 1]) for i in diagram.nodes)
    ]
    if len(perms) == 1:
        return classes
    index: dict[WeightedVoganDiagram, int] = {}
    for k, c in enumerate(classes):
        for m in (c.members or _class_members(c.canonical)):
            index[m] = k
    uf = UnionFind(range(len(classes)))
    for k, c in enumerate(classes):
        for p in perms[1:]:
            uf.union(k, index[relabel(c.canonical, p)])
    merged = []
    for group in uf.groups():
        group.sort()
        head = classes[group[0]]
        merged.append(CatalogClass(
            head.canonical, head.size, head.lhs, head.rhs, head.cardinality_ok, head.minimal,
            head.members, len(group),
        ))
    merged.sort(key=lambda c: (c.canonical.weights, _nodes(sum(1 << (i - 1) for i in c.canonical.painted))))
    return merged


def _class_members(d: WeightedVoganDiagram) -> list[WeightedVoganDiagram]:
    from .equiv import equivalence_class
    return list(equivalence_class(d).members)


def classify_all(
    type_,
    theta=None,
    *,
    full: bool = False,
    check_members: bool = False,
    up_to_iso: bool = False,
    workers: int = 1,
    max_rank: int = DEFAULT_MAX_RANK,
) -> Catalog:
    """Split every diagram of (type, theta) into operation-(A) classes.

    Work is sliced by weight vector (operation (A) never changes weights);
    slices are merged back in enumeration order whatever ``workers`` is.
    """
    diagram, inv = _resolve(type_, theta)
    if diagram.rank > max_rank:
        raise SweepError(f"rank {diagram.rank} exceeds the sweep cap {max_rank}")
    slices = list(weight_vectors(inv))
    log.info("sweeping %s theta=%s: %d weight vectors", diagram, inv.spec(), len(slices))
    if workers > 1:
        jobs = [(str(diagram.type), inv.image, w, full, check_members) for w in slices]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_slice_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        parts = [_slice_classes(diagram, inv, w, full, check_members) for w in slices]
    classes = [c for part in parts for c in part]
    if up_to_iso:
        classes = _merge_isomorphic(classes, inv)
    return Catalog(diagram.type, inv, tuple(classes), up_to_iso)


def export_catalog(catalog: Catalog, format: str = "json") -> str:
    if format == "json":
        return json.dumps(catalog.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"
    if format == "text":
        s = catalog.stats
        lines = [
            f"# {catalog.type} theta={catalog.theta.spec()} diagrams={s['total_diagrams']} "
            f"classes={s['total_classes']} noticed={s['noticed_classes']}"
        ]
        for c in catalog.classes:
            lines.append(
                f"{render_text(c.canonical)} | size={c.size} | noticed={str(c.noticed).lower()} "
                f"| lhs={c.lhs} rhs={c.rhs}"
            )
        return "\n".join(lines) + "\n"
    raise SweepError(f"unsupported catalog format {format!r}; use json or text")


def load_catalog(text: str) -> Catalog:
    try:
        return Catalog.from_dict(json.loads(text))
    except (KeyError, TypeError, DiagramError) as exc:
        raise SweepError(f"malformed catalog: {exc}") from None
