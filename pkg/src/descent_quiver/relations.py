"""The relation ideal of the quiver and the conjectured generating families.

``I`` is the kernel of ``Delta`` composed with ``iota`` on the path algebra.  It
is computed block by block: paths with different sources have Delta images on
disjoint sets of words, and within a source the kernel is further split by
destination.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .alignment import F, render_unlabeled
from .forest import Forest, ForestError, Node, erase, foliage, squash
from .linalg import RatMatrix, SparseBasis, rank_kernel
from .linear import ForestSum, LinComb, WordPoly
from .orbits import borbit_canonical, borbit_members, delta_sum, encode_forest
from .quiver import (
    Edge, Path, QuiverN, as_partition, build_quiver, format_partition,
    partitions_of, path_of,
)


class GeneratorOutsideKernel(ForestError):
    pass


class LiftOutsideKernel(ForestError):
    pass


class BudgetExceeded(ValueError):
    pass


DEFAULT_CAP = 10


class PathVector(LinComb):
    """Element of the path algebra keyed by path index."""

    __slots__ = ()

    def format_key(self, key):
        return f"P{key}"


def format_vector(v: PathVector, q: QuiverN, names: dict | None = None) -> str:
    """Human readable form; ``names`` maps edge ids to letters."""
    def word(i):
        p = q.paths[i]
        if not p.edges:
            return f"<{format_partition(p.dest_vertex)}>"
        if names:
            return "".join(names.get(e.id, f"e{e.id}") for e in p.edges)
        return "*".join(f"e{e.id}" for e in p.edges)

    return str(_Named({word(k): c for k, c in v.terms.items()}))


class _Named(LinComb):
    __slots__ = ()


# ---------------------------------------------------------------- the Delta matrix

def delta_matrix(q: QuiverN) -> tuple[RatMatrix, list, list]:
    """(matrix, row words, column paths) with columns Delta(iota(path))."""
    cols = [q.delta_of_path(p).terms for p in q.paths]
    m, words = RatMatrix.from_columns(cols)
    return m, words, list(q.paths)


def _block_kernel(q: QuiverN, idx: list) -> tuple[int, list]:
    cols = [q.delta_of_path(q.paths[i]).terms for i in idx]
    m, _ = RatMatrix.from_columns(cols)
    r, ker = rank_kernel(m)
    vecs = []
    for k in ker:
        vecs.append(PathVector({idx[j]: c for j, c in enumerate(k) if c}))
    return r, vecs


@dataclass
class KernelInfo:
    vectors: list
    rank: int
    split_ok: bool


def kernel_info(q: QuiverN) -> KernelInfo:
    by_source: dict = {}
    by_pair: dict = {}
    for i, p in enumerate(q.paths):
        by_source.setdefault(p.source, []).append(i)
        by_pair.setdefault((p.source, p.dest), []).append(i)
    vecs: list = []
    total_rank = 0
    split_ok = True
    for s, idx in by_source.items():
        r, ker = _block_kernel(q, idx)
        total_rank += r
        pair_dim = 0
        for (s2, d), pidx in by_pair.items():
            if s2 != s:
                continue
            _, pk = _block_kernel(q, pidx)
            pair_dim += len(pk)
            vecs.extend(pk)
        if pair_dim != len(ker):
            split_ok = False
    return KernelInfo(vecs, total_rank, split_ok)


def kernel_I(q) -> list:
    """Basis of I, each vector supported on one (source, dest) pair."""
    if isinstance(q, int):
        q = build_quiver(q)
    return kernel_info(q).vectors


def delta_of_vector(v: PathVector, q: QuiverN) -> WordPoly:
    out = WordPoly()
    for i, c in v.terms.items():
        for w, d in q.delta_of_path(q.paths[i]).terms.items():
            out.add_term(w, c * d)
    return out


def in_ideal(v: PathVector, q: QuiverN) -> bool:
    return not delta_of_vector(v, q)


# ---------------------------------------------------------------- branch symbols

@dataclass(frozen=True)
class BranchSymbol:
    circled: bool
    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 1:
            raise ValueError("symbol entries must be positive")
        if not self.b < self.c:
            raise ValueError("branch symbols need b < c")
        if not self.circled and not self.a <= self.c:
            raise ValueError("plain branch symbols need a <= c")

    @property
    def total(self) -> int:
        return self.a + self.b + self.c

    @property
    def entries(self) -> tuple:
        return (self.a, self.b, self.c)

    def __str__(self):
        mark = "o" if self.circled else ""
        return f"<{mark}{self.a};{self.b},{self.c}|"


def Circled(a: int, b: int, c: int) -> BranchSymbol:
    return BranchSymbol(True, a, b, c)


def Plain(a: int, b: int, c: int) -> BranchSymbol:
    return BranchSymbol(False, a, b, c)


def symbol_of(e: Edge) -> BranchSymbol:
    if e.kind == "Q1":
        t = e.rep[0]
        return Circled(t.left, t.right.left, t.right.right)
    t = e.rep[1]
    return Plain(t.left, t.right.left, t.right.right)


def _top(a, b, c) -> Node:
    return Node(a, Node(b, c, 2), 1)


def edge_for(source: tuple, s: BranchSymbol, q: QuiverN) -> Edge | None:
    """The edge with destination ``source`` that the symbol appends, if any."""
    p = tuple(source)
    if s.circled:
        if s.a != q.n + 1 - sum(p) - s.b - s.c:
            return None
        rep = (_top(s.a, s.b, s.c),) + p
    else:
        if s.total not in p:
            return None
        rest = list(p)
        rest.remove(s.total)
        rep = (q.n + 1 - sum(p), _top(s.a, s.b, s.c)) + tuple(rest)
    return q.edge_by_canonical.get(borbit_canonical(rep))


def act_path(path: Path, s: BranchSymbol, q: QuiverN) -> Path | None:
    e = edge_for(path.source, s, q)
    if e is None:
        return None
    return Path(path.dest_vertex, path.edges + (e,))


def branch_act(v: PathVector, s: BranchSymbol, q: QuiverN) -> PathVector:
    out = PathVector()
    for i, c in v.terms.items():
        p = act_path(q.paths[i], s, q)
        if p is not None:
            out.add_term(q.index_of(p), c)
    return out


def vertex_act(p: tuple, word, q: QuiverN) -> PathVector:
    """p.S1S2... as a vector (a single path or zero)."""
    path: Path | None = Path(as_partition(p))
    for s in word:
        path = act_path(path, s, q)
        if path is None:
            return PathVector()
    return PathVector({q.index_of(path): 1})


# families: (symbol kinds by letter, terms, condition)

def _c1(A, D, G=None):
    return D.total not in (A.b, A.c)


def _c2(A, D, G=None):
    return A.total not in D.entries and D.total not in A.entries


def _c3(A, D, G):
    return D.total == G.total and D.total in (A.b, A.c)


def _c4(A, D, G):
    return G.total in (A.b, A.c) and G.total in D.entries and D.total not in (A.b, A.c)


def _c5(A, D, G):
    return A.total == D.total and A.total in G.entries


def _c6(A, D, G):
    return (G.total in A.entries and G.total in D.entries
            and A.total not in D.entries and D.total not in A.entries)


_ADG4 = (("ADG", 1), ("GAD", 1), ("AGD", -1), ("DGA", -1))

FAMILIES = {
    "B1": ("CP", (("AD", 1), ("DA", -1)), _c1),
    "B2": ("PP", (("AD", 1), ("DA", -1)), _c2),
    "B3": ("CPP", (("ADG", 1), ("DGA", 1), ("DAG", -1), ("GAD", -1)), _c3),
    "B4": ("CPP", _ADG4, _c4),
    "B5": ("PPP", _ADG4, _c5),
    "B6": ("PPP", _ADG4, _c6),
}


def family_element(name: str, p: tuple, syms: dict, q: QuiverN) -> PathVector:
    _, terms, _ = FAMILIES[name]
    out = PathVector()
    for word, sign in terms:
        for i, c in vertex_act(p, [syms[x] for x in word], q).terms.items():
            out.add_term(i, sign * c)
    return out


def _normalize(v: PathVector) -> tuple:
    """Primitive integer form with a positive leading coefficient."""
    items = sorted(v.terms.items())
    den = lcm(*(Fraction(c).denominator for _, c in items)) if items else 1
    ints = [(k, int(c * den)) for k, c in items]
    g = 0
    for _, c in ints:
        g = gcd(g, c)
    if ints and ints[0][1] < 0:
        g = -g
    return tuple((k, c // g) for k, c in ints)


def gen_B_family(q: QuiverN, families=tuple(FAMILIES), check: bool = True,
                 report: list | None = None) -> list:
    """All nonzero instances p.B of the families, found from actual paths.

    With ``check`` an instance outside I raises; otherwise it is left out and
    appended to ``report``.
    """
    seen: dict = {}
    rejected: set = set()
    for path in q.paths:
        k = len(path)
        if k not in (2, 3):
            continue
        syms = [symbol_of(e) for e in path.edges]
        for name in families:
            kinds, terms, cond = FAMILIES[name]
            if len(kinds) != k:
                continue
            letters = "ADG"[:k]
            for word, _ in terms:
                assign = dict(zip(word, syms))
                if any(assign[x].circled != (kinds[letters.index(x)] == "C") for x in letters):
                    continue
                if not cond(*(assign[x] for x in letters)):
                    continue
                v = family_element(name, path.dest_vertex, assign, q)
                if not v:
                    continue
                key = _normalize(v)
                if key in seen or key in rejected:
                    continue
                if not in_ideal(v, q):
                    text = f"{name} at {format_partition(path.dest_vertex)}: {format_vector(v, q)}"
                    if check:
                        raise GeneratorOutsideKernel(text)
                    rejected.add(key)
                    if report is not None:
                        report.append({"family": name, "vertex": format_partition(path.dest_vertex),
                                       "symbols": {x: str(assign[x]) for x in letters},
                                       "element": format_vector(v, q)})
                    continue
                seen[key] = v
    return list(seen.values())


# ---------------------------------------------------------------- Jacobi families

def _j(x, y, z) -> list:
    return [Node(Node(a, b), c) for a, b, c in ((x, y, z), (z, x, y), (y, z, x))]


def _compositions(total: int, k: int):
    if k == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - k + 2):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


def _j_shapes():
    """(family, number of parameters, builder) where builder returns the first-tree terms."""
    def j1(prm, y_long):
        z, a, b, c, d, *ef = prm
        X = Node(a, b)
        Y = Node(c, Node(d, Node(*ef))) if y_long else Node(c, d)
        return [(Node(Node(z, X), Y), 1), (Node(Node(z, Y), X), -1), (Node(z, Node(X, Y)), -2)]

    def j2(prm, long):
        if long:
            z, a, b, c, d, e, f = prm
            terms = _j(a, Node(b, c), Node(d, Node(e, f)))
        else:
            z, a, b, c, d = prm
            terms = _j(a, b, Node(c, d))
        return [(Node(z, t), 1) for t in terms]

    def j3(prm, long):
        if long:
            a, b, c, d, e, f, g = prm
            terms = _j(a, Node(b, Node(c, d)), Node(e, Node(f, g)))
        else:
            a, b, c, d, e = prm
            terms = _j(a, b, Node(c, Node(d, e)))
        return [(t, 1) for t in terms]

    yield "J1", 5, lambda p: j1(p, False), "first"
    yield "J1", 7, lambda p: j1(p, True), "first"
    yield "J2", 5, lambda p: j2(p, False), "both"
    yield "J2", 7, lambda p: j2(p, True), "both"
    yield "J3", 5, lambda p: j3(p, False), "second"
    yield "J3", 7, lambda p: j3(p, True), "second"


def j_elements(n: int):
    """(family, ForestSum) for every parameterization of value n+1."""
    total = n + 1
    for name, k, build, where in _j_shapes():
        for s in range(k, total + 1):
            for prm in _compositions(s, k):
                terms = build(prm)
                rest = total - s
                placements = []
                if where in ("first", "both"):
                    placements.append(False)
                if where in ("second", "both"):
                    placements.append(True)
                for with_q0 in placements:
                    for q0 in (range(1, rest + 1) if with_q0 else (None,)):
                        left = rest - (q0 or 0)
                        for qs in partitions_of(left):
                            fs = ForestSum()
                            for t, c in terms:
                                f = ((q0, t) if with_q0 else (t,)) + qs
                                fs.add_term(f, c)
                            yield name, prm, fs


def render_sum(fs: ForestSum) -> ForestSum:
    out = ForestSum()
    for f, c in fs.terms.items():
        for g, d in render_unlabeled(f).terms.items():
            out.add_term(g, c * d)
    return out


def orbit_sum(fs: ForestSum) -> ForestSum:
    """Replace every forest by the sum of the distinct members of its orbit."""
    out = ForestSum()
    for f, c in fs.terms.items():
        for g in borbit_members(f):
            out.add_term(g, c)
    return out


def lift(r: ForestSum, q: QuiverN) -> PathVector:
    """Sum of the paths p(F(Y)) over the terms Y of a rendering."""
    out = PathVector()
    for y, c in r.terms.items():
        out.add_term(q.index_of(path_of(F(y), q)), c)
    return out


class Lifter:
    """Exact lifts of rendered orbit sums along E o iota.

    The image of ``p(F(Y))`` under E o iota holds every orbit related to
    ``F(Y)``, not only the orbit of ``Y`` itself.  Rendering those images gives
    one row per path; a target is lifted by solving for the combination of rows
    equal to it.
    """

    def __init__(self, q: QuiverN):
        self.q = q
        self._rows: dict = {}

    def row(self, y: Forest) -> tuple[int, ForestSum]:
        hit = self._rows.get(y)
        if hit is None:
            i = self.q.index_of(path_of(F(y), self.q))
            img = ForestSum()
            for z in self.q.iota_set(self.q.paths[i]):
                for g in borbit_members(z):
                    img.add_term(erase(g), 1)
            hit = self._rows[y] = (i, render_sum(img))
        return hit

    def solve(self, target: ForestSum) -> PathVector | None:
        """A path combination whose rendered image is ``target``; None if none."""
        ys = list(target.terms)
        seen = set(ys)
        k = 0
        while k < len(ys):
            for w in self.row(ys[k])[1].terms:
                if w not in seen:
                    seen.add(w)
                    ys.append(w)
            k += 1
        cols = [self.row(y)[1].terms for y in ys] + [(-target).terms]
        m, _ = RatMatrix.from_columns(cols)
        sol = next((v for v in rank_kernel(m)[1] if v[-1]), None)
        if sol is None:
            return None
        out = PathVector()
        for j, y in enumerate(ys):
            if sol[j]:
                out.add_term(self.row(y)[0], Fraction(sol[j], sol[-1]))
        return out


def _group_key(name: str, fs: ForestSum) -> tuple:
    f = next(iter(fs.terms))
    return (name, isinstance(f[0], int), tuple(sorted(squash(f))), tuple(sorted(foliage(f))))


def j_targets(n: int) -> list:
    """(family, params, rendered target) for the Jacobi families.

    Besides the rendering of each element, a rendering may differ by any
    combination in the kernel of Delta of the rendered orbit sums reachable
    within the same family, frame and leaves; a basis of those differences is
    returned with params None.
    """
    out = []
    groups: dict = {}
    for name, prm, fs in j_elements(n):
        support = groups.setdefault(_group_key(name, fs), set())
        r = ForestSum()
        for f, c in orbit_sum(fs).terms.items():
            part = render_unlabeled(f)
            support.update(part.terms)
            r = r + part.scale(c)
        if r:
            out.append((name, prm, r))
    for key, support in groups.items():
        ys = sorted(support, key=encode_forest)
        sums = [render_sum(orbit_sum(ForestSum({y: 1}))) for y in ys]
        m, _ = RatMatrix.from_columns([delta_sum(s).terms for s in sums])
        for k in rank_kernel(m)[1]:
            t = ForestSum()
            for j, x in enumerate(k):
                if x:
                    t = t + sums[j].scale(x)
            if t:
                out.append((key[0], None, t))
    return out


def gen_J_family(q: QuiverN, mode: str = "solved", report: list | None = None) -> list:
    """Lifts of the rendered Jacobi families that lie in I.

    ``mode="direct"`` sums p(F(Y)) over the rendering's terms; ``"solved"``
    lifts exactly through :class:`Lifter` and includes rendering differences.
    Lifts outside I (or targets with no lift) are skipped and appended to
    ``report``.
    """
    if mode not in ("direct", "solved"):
        raise ValueError(f"unknown lift mode {mode!r}")
    seen: dict = {}
    if mode == "direct":
        items = []
        for name, prm, fs in j_elements(q.n):
            r = render_sum(fs)
            if r:
                items.append((name, prm, r))
    else:
        items = j_targets(q.n)
    lifter = Lifter(q)
    for name, prm, r in items:
        v = lift(r, q) if mode == "direct" else lifter.solve(r)
        if v is None or not in_ideal(v, q):
            if report is not None:
                report.append({"family": name, "params": prm and list(prm), "rendering": str(r),
                               "lift": None if v is None else format_vector(v, q)})
            continue
        if v:
            seen.setdefault(_normalize(v), v)
    return list(seen.values())


# ---------------------------------------------------------------- the generated ideal

def split_blocks(v: PathVector, q: QuiverN) -> list:
    blocks: dict = {}
    for i, c in v.terms.items():
        p = q.paths[i]
        blocks.setdefault((p.source, p.dest), PathVector()).add_term(i, c)
    return list(blocks.values())


def _neighbors(v: PathVector, q: QuiverN):
    i0 = next(iter(v.terms))
    p0 = q.paths[i0]
    for e in q.edges:
        if e.source == p0.dest:
            out = PathVector()
            for i, c in v.terms.items():
                p = q.paths[i]
                out.add_term(q.index_of(Path(e.dest, (e,) + p.edges)), c)
            yield out
        if e.dest == p0.source:
            out = PathVector()
            for i, c in v.terms.items():
                p = q.paths[i]
                out.add_term(q.index_of(Path(p.dest_vertex, p.edges + (e,))), c)
            yield out


def ideal_closure(gens: list, q: QuiverN) -> list:
    """Basis of the two-sided ideal generated by ``gens``."""
    basis = SparseBasis()
    queue = [b for g in gens for b in split_blocks(g, q)]
    k = 0
    while k < len(queue):
        v = queue[k]
        k += 1
        if basis.add(v.terms):
            queue.extend(_neighbors(v, q))
    return [PathVector(r) for r in basis.rows.values()]


# ---------------------------------------------------------------- verification

def verify_conjecture(n: int, cap: int = DEFAULT_CAP, mode: str = "solved") -> dict:
    """Compare the ideal generated by the B and J families with I."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise BudgetExceeded(f"n={n} exceeds the configured cap {cap}")
    q = build_quiver(n)
    info = kernel_info(q)
    dim_kq = len(q.paths)
    dim_i = len(info.vectors)
    b_out: list = []
    gb = gen_B_family(q, check=False, report=b_out)
    j_out: list = []
    gj = gen_J_family(q, mode=mode, report=j_out)
    closure = ideal_closure(gb + gj, q)
    basis = SparseBasis()
    for v in closure:
        basis.add(v.terms)
    missing = [v for v in info.vectors if not basis.contains(v.terms)]
    ok = (not missing and len(closure) == dim_i and dim_kq - dim_i == 2 ** n
          and info.split_ok)
    return {
        "n": n,
        "dim_kQ": dim_kq,
        "dim_I": dim_i,
        "dim_quotient": dim_kq - dim_i,
        "expected_quotient": 2 ** n,
        "dim_ideal": len(closure),
        "lift_mode": mode,
        "generators_B": len(gb),
        "generators_J": len(gj),
        "b_outside_I": b_out,
        "j_outside_I": len(j_out),
        "kernel_splits": info.split_ok,
        "verdict": "PASS" if ok else "FAIL",
        "witnesses": [format_vector(v, q) for v in missing[:5]],
    }


def report_json(rep: dict) -> str:
    return json.dumps(rep, indent=2)
