"""The quiver: partitions as vertices, length-two forest orbits as edges.

A path ``e1 e2 ... el`` is composable when ``source(e_i) == dest(e_{i+1})``; its
image under ``iota`` is the product ``e1 * e2 * ... * el`` of edge orbits.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from .alignment import AlignmentClass, classify
from .forest import (
    Forest, ForestError, Node, bullet, foliage, format_forest, labeling, length,
    squash, tree_value,
)
from .linear import LinComb, WordPoly
from .orbits import (
    borbit_canonical, borbit_members, delta_borbit, matching_members,
)


class TooShort(ForestError):
    pass


class FactorNotAnEdge(ForestError):
    pass


class NotRightAligned(ForestError):
    pass


# ---------------------------------------------------------------- partitions

Partition = tuple  # weakly decreasing positive ints


def partitions_of(m: int, largest: int | None = None) -> Iterator[Partition]:
    """Partitions of ``m`` in reverse lexicographic order."""
    largest = m if largest is None else largest
    if m == 0:
        yield ()
        return
    for k in range(min(m, largest), 0, -1):
        for rest in partitions_of(m - k, k):
            yield (k,) + rest


def as_partition(parts) -> Partition:
    return tuple(sorted(parts, reverse=True))


def format_partition(p: Partition) -> str:
    """Ascending digits such as ``1122``; ``∅`` when empty, commas past 9."""
    if not p:
        return "∅"
    sep = "," if max(p) > 9 else ""
    return sep.join(str(x) for x in sorted(p))


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("", "∅", "0", "empty"):
        return ()
    items = text.split(",") if "," in text else list(text)
    return as_partition(int(x) for x in items)


def _remove(p: Partition, *vals) -> Partition:
    rest = list(p)
    for v in vals:
        rest.remove(v)
    return tuple(rest)


# ---------------------------------------------------------------- edges

@dataclass(frozen=True)
class Edge:
    id: int
    kind: str
    source: Partition
    dest: Partition
    rep: Forest
    key: tuple

    @cached_property
    def canonical(self) -> Forest:
        return borbit_canonical(self.rep)

    def describe(self) -> str:
        return (f"{self.id}: {format_partition(self.source)} -> {format_partition(self.dest)}"
                f" {self.kind} [ {format_forest(self.rep)} ]B")

    def to_json(self) -> dict:
        return {
            "id": self.id, "kind": self.kind,
            "source": list(self.source), "dest": list(self.dest),
            "rep": format_forest(self.rep),
        }


def _top(a: int, b: int, c: int) -> Node:
    return Node(a, Node(b, c, 2), 1)


def _edges_from(n: int, p: Partition):
    """(kind, key, rep) for every edge with source ``p``."""
    q0 = n + 1 - sum(p)
    values = sorted(set(p))
    for i, b in enumerate(values):
        for c in values[i + 1:]:
            q = _remove(p, b, c)
            yield "Q1", (b, c), (_top(q0, b, c),) + q
    for i, a in enumerate(values):
        for j in range(i + 1, len(values)):
            for c in values[j + 1:]:
                b = values[j]
                q = _remove(p, a, b, c)
                yield "Q2", (a, b, c, 0), (q0, _top(a, b, c)) + q
                yield "Q2", (a, b, c, 1), (q0, _top(b, a, c)) + q
    for a in values:
        if p.count(a) < 2:
            continue
        for b in values:
            if b == a:
                continue
            q = _remove(p, a, a, b)
            rep = _top(a, a, b) if a < b else _top(a, b, a)
            yield "Q3", (a, b), (q0, rep) + q


# ---------------------------------------------------------------- paths

@dataclass(frozen=True)
class Path:
    dest_vertex: Partition
    edges: tuple = ()

    @property
    def source(self) -> Partition:
        return self.edges[-1].source if self.edges else self.dest_vertex

    @property
    def dest(self) -> Partition:
        return self.dest_vertex

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def edge_ids(self) -> tuple:
        return tuple(e.id for e in self.edges)

    def describe(self) -> str:
        if not self.edges:
            return f"<{format_partition(self.dest_vertex)}>"
        return "*".join(f"e{e.id}" for e in self.edges)


def compose(a: Path, b: Path) -> Path | None:
    """``a`` followed on its source side by ``b``; None when not composable."""
    if a.source != b.dest:
        return None
    if not a.edges:
        return b
    if not b.edges:
        return a
    return Path(a.dest_vertex, a.edges + b.edges)


class OrbitSum(LinComb):
    """Combination of orbits keyed by canonical representatives."""

    __slots__ = ()

    def sort_key(self, key):
        from .orbits import encode_forest
        return encode_forest(key)

    def format_key(self, key):
        return f"[ {format_forest(key)} ]B"


@dataclass
class QuiverN:
    n: int
    vertices: list
    edges: list
    paths: list = field(default_factory=list)
    _iota: dict = field(default_factory=dict, repr=False)

    @cached_property
    def edges_by_dest(self) -> dict:
        out: dict = {}
        for e in self.edges:
            out.setdefault(e.dest, []).append(e)
        return out

    @cached_property
    def edge_by_canonical(self) -> dict:
        return {e.canonical: e for e in self.edges}

    @cached_property
    def path_index(self) -> dict:
        return {(p.dest_vertex, p.edge_ids): i for i, p in enumerate(self.paths)}

    def index_of(self, p: Path) -> int:
        return self.path_index[(p.dest_vertex, p.edge_ids)]

    def grouped(self) -> dict:
        """Paths grouped by (source, dest, length)."""
        out: dict = {}
        for p in self.paths:
            out.setdefault((p.source, p.dest, len(p)), []).append(p)
        return out

    def paths_between(self, source: Partition, dest: Partition) -> list:
        return [p for p in self.paths if p.source == source and p.dest == dest]

    def count_by_length(self) -> dict:
        out: dict = {}
        for p in self.paths:
            out[len(p)] = out.get(len(p), 0) + 1
        return out

    def vertex_forest(self, v: Partition) -> Forest:
        return (self.n + 1 - sum(v),) + tuple(v)

    # iota ------------------------------------------------------------
    def iota_set(self, p: Path) -> frozenset:
        """Canonical orbit representatives in the image of ``p``."""
        key = (p.dest_vertex, p.edge_ids)
        hit = self._iota.get(key)
        if hit is not None:
            return hit
        if not p.edges:
            res = frozenset({borbit_canonical(self.vertex_forest(p.dest_vertex))})
        elif len(p.edges) == 1:
            res = frozenset({p.edges[0].canonical})
        else:
            tail = self.iota_set(Path(p.edges[0].source, p.edges[1:]))
            r = p.edges[0].canonical
            target = foliage(r)
            out = set()
            for z in tail:
                for zz in matching_members(z, target):
                    out.add(borbit_canonical(bullet(r, zz)))
            res = frozenset(out)
        self._iota[key] = res
        return res

    def iota_orbits(self, p: Path) -> OrbitSum:
        return OrbitSum({f: 1 for f in self.iota_set(p)})

    def iota(self, p: Path):
        from .linear import ForestSum
        out = ForestSum()
        for f in self.iota_set(p):
            for g in borbit_members(f):
                out.add_term(g, 1)
        return out

    def delta_of_path(self, p: Path) -> WordPoly:
        out = WordPoly()
        for f in self.iota_set(p):
            for w, c in delta_borbit(f).terms.items():
                out.add_term(w, c)
        return out

    # export ----------------------------------------------------------
    def to_dot(self, include_isolated: bool = True) -> str:
        used = {e.source for e in self.edges} | {e.dest for e in self.edges}
        lines = [f"digraph Q{self.n} {{"]
        for v in self.vertices:
            if include_isolated or v in used:
                lines.append(f'  "{format_partition(v)}";')
        for e in self.edges:
            lines.append(f'  "{format_partition(e.source)}" -> "{format_partition(e.dest)}"'
                         f' [label="{e.kind}:{e.id}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "vertices": [list(v) for v in self.vertices],
            "edges": [e.to_json() for e in self.edges],
        }, indent=2)


def build_quiver(n: int, with_paths: bool = True) -> QuiverN:
    if n < 1:
        raise ValueError("n must be positive")
    vertices = [p for m in range(n + 1) for p in partitions_of(m)]
    edges = []
    for p in vertices:
        for kind, key, rep in _edges_from(n, p):
            src = as_partition(foliage(rep)[1:])
            dst = as_partition(squash(rep)[1:])
            edges.append(Edge(len(edges), kind, src, dst, rep, (kind, p) + key))
    q = QuiverN(n, vertices, edges)
    if with_paths:
        q.paths = enumerate_paths(q)
    return q


def enumerate_paths(q: QuiverN) -> list:
    """Every path: vertices first, then by length, then by edge ids."""
    out = [Path(v) for v in q.vertices]
    by_dest = q.edges_by_dest
    layer = [Path(e.dest, (e,)) for e in q.edges]
    while layer:
        out.extend(layer)
        nxt = []
        for p in layer:
            for e in by_dest.get(p.source, ()):
                nxt.append(Path(p.dest_vertex, p.edges + (e,)))
        layer = nxt
    return out


# ---------------------------------------------------------------- factorization

def _reduce2(t):
    if isinstance(t, int):
        return t
    return Node(_reduce2(t.left), _reduce2(t.right), t.label - 2)


def primary_factorization(f: Forest) -> tuple[Forest, Forest]:
    """Split off the length-two factor holding labels 1 and 2."""
    f = tuple(f)
    if length(f) < 2:
        raise TooShort("primary factorization needs length at least two")
    if labeling(f) != "labeled":
        raise NotRightAligned("primary factorization expects a labeled forest")
    if classify(f) < AlignmentClass.RightAligned:
        raise NotRightAligned("primary factorization expects a right aligned forest")
    i = next(k for k, t in enumerate(f) if not isinstance(t, int) and t.label == 1)
    t = f[i]
    rest = f[:i] + (t.left, t.right.left, t.right.right) + f[i + 1:]
    sq = [tree_value(x) for x in rest]
    head = tuple(sq[:i]) + (_top(sq[i], sq[i + 1], sq[i + 2]),) + tuple(sq[i + 3:])
    return head, tuple(_reduce2(x) for x in rest)


def path_of(f: Forest, q: QuiverN) -> Path:
    """The path whose edges are the orbits of the successive primary factors."""
    f = tuple(f)
    dest = as_partition(squash(f)[1:])
    edges = []
    while length(f):
        head, f = primary_factorization(f)
        e = q.edge_by_canonical.get(borbit_canonical(head))
        if e is None:
            raise FactorNotAnEdge(f"factor {format_forest(head)} is not an edge of Q{q.n}")
        edges.append(e)
    return Path(dest, tuple(edges))
