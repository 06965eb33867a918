"""The cover digraph on S_n, its partial order, and the structural identities.

Edge convention: ``(a, b)`` in ``edges`` means ``a -> b``, i.e. ``a`` covers
``b`` and ``a > b``. A local move at window ``j`` takes the single 1 at
position ``j + N`` (with zeros at ``j .. j+N-1``) and spreads it over
positions ``j .. j+N-1``; the recurrence keeps the value unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np

from . import kernels
from .errors import (
    BaseCase,
    BridgeNotBijective,
    BridgeNotCover,
    CharacterizationViolated,
    EmptyPoset,
    IntervalGap,
    IntervalOverlap,
    InvariantViolation,
    NotALattice,
    NotDisjoint,
    QFError,
    VertexNotFound,
)
from .partitions import EMPTY, Rep, add_reps, canonical, complement, enumerate_masks, eta, tau
from .qfseq import QFSequence


def local_move_window(a: Rep, b: Rep, level: int) -> int | None:
    """Window j (1-based) such that b is a local move of a, or None."""
    diff = a.mask ^ b.mask
    if diff == 0:
        return None
    shift = (diff & -diff).bit_length() - 1
    block = (1 << (level + 1)) - 1
    if diff != block << shift or (a.mask >> shift) & block != 1 << level:
        return None
    return shift + 1


def _natural_edge_indices(masks, level):
    if not masks:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    width = max(masks[0].bit_length() - level, 0)
    if masks[0].bit_length() <= kernels.MAX_MASK_BITS:
        return kernels.local_move_edges(np.asarray(masks, dtype=np.int64), level, width)
    where = {m: i for i, m in enumerate(masks)}
    block = (1 << (level + 1)) - 1
    src, dst = [], []
    for x, m in enumerate(masks):
        for j in range(width):
            if (m >> j) & block == 1 << level:
                y = where.get(m ^ (block << j))
                if y is not None:
                    src.append(x)
                    dst.append(y)
    return np.asarray(src, np.int64), np.asarray(dst, np.int64)


@dataclass(frozen=True, eq=False)
class PosetDiagram:
    """Vertices in canonical order plus directed cover edges.

    ``upper[i]`` flags membership of ``vertices[i]`` in the length-k part
    (U); it is only set for posets built for a specific ``n``.
    """

    level: int
    vertices: tuple[Rep, ...]
    edges: tuple[tuple[Rep, Rep], ...]
    n: int | None = None
    k: int | None = None
    upper: tuple[bool, ...] | None = None

    def __len__(self):
        return len(self.vertices)

    def __bool__(self):
        return bool(self.vertices)

    def __contains__(self, rep):
        return rep in self.index

    @cached_property
    def index(self) -> dict[Rep, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def position(self, a: Rep) -> int:
        try:
            return self.index[a]
        except KeyError:
            raise VertexNotFound(a) from None

    @cached_property
    def edge_arrays(self):
        idx = self.index
        src = np.asarray([idx[a] for a, _ in self.edges], dtype=np.int64)
        dst = np.asarray([idx[b] for _, b in self.edges], dtype=np.int64)
        if np.any(src >= dst):
            raise InvariantViolation("edge does not point down the canonical order")
        return src, dst

    @cached_property
    def edge_matrix(self) -> np.ndarray:
        V = len(self.vertices)
        E = np.zeros((V, V), dtype=bool)
        src, dst = self.edge_arrays
        E[src, dst] = True
        return E

    @cached_property
    def reach(self) -> np.ndarray:
        """``reach[x, y]`` iff vertex y <= vertex x."""
        src, dst = self.edge_arrays
        return kernels.reachability(len(self.vertices), src, dst)

    @cached_property
    def cover(self) -> np.ndarray:
        """Transitive reduction of the order; ``cover[x, y]`` iff x covers y."""
        return kernels.transitive_reduction(self.reach)

    @cached_property
    def tables(self):
        return kernels.meet_join(self.reach)

    def leq(self, a: Rep, b: Rep) -> bool:
        """True iff a <= b, i.e. there is a path from b down to a."""
        return bool(self.reach[self.position(b), self.position(a)])

    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def same_as(self, other: PosetDiagram) -> bool:
        return self.vertices == other.vertices and self.edge_set() == other.edge_set()

    def signs(self) -> list[int]:
        return [v.sign() for v in self.vertices]


def make_poset(level, vertices, edges=None, n=None, k=None, upper_len=None) -> PosetDiagram:
    """Assemble a PosetDiagram; ``edges=None`` means the natural local-move edges."""
    verts = canonical(set(vertices))
    if edges is None:
        src, dst = _natural_edge_indices([v.mask for v in verts], level)
        pairs = [(verts[s], verts[d]) for s, d in zip(src.tolist(), dst.tolist())]
    else:
        pairs = list(set(edges))
    where = {v: i for i, v in enumerate(verts)}
    pairs.sort(key=lambda e: (where[e[0]], where[e[1]]))
    upper = None
    if upper_len is not None:
        upper = tuple(v.length() == upper_len for v in verts)
    return PosetDiagram(level, verts, tuple(pairs), n, k, upper)


def natural_poset(level: int, vertices, n=None) -> PosetDiagram:
    return make_poset(level, vertices, None, n=n)


def build_poset(seq: QFSequence, n: int) -> PosetDiagram:
    """P_n with its U/D flags; empty when S_n is."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    masks = enumerate_masks(seq, n)
    if not masks:
        return PosetDiagram(seq.level, (), (), n, None, ())
    k = seq.largest_index_leq(n)
    return make_poset(seq.level, [Rep(m) for m in masks], None, n=n, k=k, upper_len=k)


def poset_at(seq: QFSequence, n: int) -> PosetDiagram:
    """Like build_poset but total: n = 0 is the one-point poset on the empty rep."""
    if n == 0:
        return PosetDiagram(seq.level, (EMPTY,), (), 0, 0, (True,))
    return build_poset(seq, n)


def is_leq(p: PosetDiagram, a: Rep, b: Rep) -> bool:
    return p.leq(a, b)


# ---------------------------------------------------------------------------
# extremes


def _has_run(rep: Rep, width: int, bit: int) -> bool:
    run = 0
    for b in rep.bits:
        run = run + 1 if b == bit else 0
        if run >= width:
            return True
    return False


def _extreme(p: PosetDiagram, top: bool) -> Rep:
    if not p:
        raise EmptyPoset("poset has no vertices")
    R = p.reach
    if top:
        # maximal: nothing strictly above, i.e. column has only the diagonal
        extremes = np.nonzero(R.sum(axis=0) == 1)[0]
    else:
        extremes = np.nonzero(R.sum(axis=1) == 1)[0]
    if extremes.size != 1:
        raise CharacterizationViolated(f"{extremes.size} {'maximal' if top else 'minimal'} elements")
    return p.vertices[int(extremes[0])]


def max_element(p: PosetDiagram) -> Rep:
    """The top element; checks it is the only vertex without N consecutive ones."""
    top = _extreme(p, True)
    runless = [v for v in p.vertices if not _has_run(v, p.level, 1)]
    if runless != [top]:
        raise CharacterizationViolated(f"top {top} vs run-free vertices {runless}")
    if p.k is not None and top.length() != p.k:
        raise CharacterizationViolated(f"top {top} has length {top.length()} != {p.k}")
    return top


def min_element(p: PosetDiagram) -> Rep:
    """The bottom element; checks it is the only vertex without N consecutive zeros."""
    bottom = _extreme(p, False)
    runless = [v for v in p.vertices if not _has_run(v, p.level, 0)]
    if runless != [bottom]:
        raise CharacterizationViolated(f"bottom {bottom} vs run-free vertices {runless}")
    return bottom


# ---------------------------------------------------------------------------
# restriction, shifting, gluing, duals


def induced(p: PosetDiagram, keep) -> PosetDiagram:
    keep = set(keep)
    verts = [v for v in p.vertices if v in keep]
    edges = [(a, b) for a, b in p.edges if a in keep and b in keep]
    upper = None
    if p.upper is not None:
        upper = tuple(u for v, u in zip(p.vertices, p.upper) if v in keep)
    return PosetDiagram(p.level, tuple(verts), tuple(edges), p.n, None, upper)


def split_UD(p: PosetDiagram) -> tuple[PosetDiagram, PosetDiagram]:
    """Induced subdigraphs on the length-k vertices (U) and the rest (D)."""
    if not p:
        return p, p
    if p.upper is None:
        raise ValueError("poset carries no length split")
    ups = {v for v, u in zip(p.vertices, p.upper) if u}
    return induced(p, ups), induced(p, set(p.vertices) - ups)


def crossing_bridge(p: PosetDiagram) -> dict[Rep, Rep]:
    """Edges of P_n from U to D, as a map; they form a matching."""
    up = dict(zip(p.vertices, p.upper or ()))
    bridge = {}
    for a, b in p.edges:
        if up[a] and not up[b]:
            if a in bridge:
                raise InvariantViolation(f"{a} covers two lower-length vertices")
            bridge[a] = b
    return bridge


def shift_poset(p: PosetDiagram, b: Rep) -> PosetDiagram:
    """P + b with the natural order on the shifted set."""
    return natural_poset(p.level, [add_reps(a, b) for a in p.vertices])


def dual_poset(p: PosetDiagram, k: int) -> PosetDiagram:
    """Complement every vertex over 1..k and reverse every edge."""
    verts = [complement(v, k) for v in p.vertices]
    edges = [(complement(b, k), complement(a, k)) for a, b in p.edges]
    return make_poset(p.level, verts, edges)


@dataclass(frozen=True, eq=False)
class GluedPoset:
    left: PosetDiagram
    right: PosetDiagram
    bridge: tuple[tuple[Rep, Rep], ...]
    combined: PosetDiagram
    natural: bool
    bridge_covers: bool

    @property
    def valid(self) -> bool:
        return self.natural and self.bridge_covers


def glue(P: PosetDiagram, Q: PosetDiagram, bridge) -> GluedPoset:
    """Union of two disjoint posets plus one cover edge a -> psi(a) per bridge pair.

    The result records whether the order generated by the combined edges is
    the natural order on the union, and whether every bridge edge is still a
    cover there.
    """
    bridge = dict(bridge)
    shared = set(P.vertices) & set(Q.vertices)
    if shared:
        raise NotDisjoint(f"{len(shared)} shared vertices, e.g. {next(iter(shared))}")
    if len(set(bridge.values())) != len(bridge):
        raise BridgeNotBijective("bridge is not injective")
    for a, b in bridge.items():
        if a not in P or b not in Q:
            raise BridgeNotBijective(f"bridge pair {a} -> {b} leaves the glued posets")
        if local_move_window(a, b, P.level) is None:
            raise BridgeNotCover(a, b)
    pairs = tuple(sorted(bridge.items(), key=lambda e: -e[0].mask))
    union = P.vertices + Q.vertices
    combined = make_poset(P.level, union, P.edges + Q.edges + pairs)
    nat = natural_poset(P.level, union)
    natural = bool(np.array_equal(combined.reach, nat.reach))
    covers = all(combined.cover[combined.position(a), combined.position(b)] for a, b in pairs)
    return GluedPoset(P, Q, pairs, combined, natural, covers)


# ---------------------------------------------------------------------------
# lattice operations


def _bound(p, a, b, which):
    if not p:
        raise EmptyPoset("poset has no vertices")
    meet_t, join_t = p.tables
    table = meet_t if which == "meet" else join_t
    r = int(table[p.position(a), p.position(b)])
    if r < 0:
        raise NotALattice(a, b, which)
    return p.vertices[r]


def meet(p: PosetDiagram, a: Rep, b: Rep) -> Rep:
    return _bound(p, a, b, "meet")


def join(p: PosetDiagram, a: Rep, b: Rep) -> Rep:
    return _bound(p, a, b, "join")


def is_lattice(p: PosetDiagram) -> bool:
    if not p:
        return True
    meet_t, join_t = p.tables
    return bool((meet_t >= 0).all() and (join_t >= 0).all())


def modularity_witness(p: PosetDiagram):
    """None if p is a modular lattice, else a short description of why not."""
    if not p:
        return None
    if not is_lattice(p):
        return "not a lattice"
    meet_t, join_t = p.tables
    x, y, z = kernels.modular_violation(p.reach, meet_t, join_t).tolist()
    if x >= 0:
        v = p.vertices
        return f"modular law fails at x={v[x]}, y={v[y]}, z={v[z]}"
    x, y = kernels.cover_symmetry_violation(p.cover, meet_t, join_t).tolist()
    if x >= 0:
        return f"cover symmetry fails at {p.vertices[x]}, {p.vertices[y]}"
    return None


def is_modular(p: PosetDiagram) -> bool:
    return modularity_witness(p) is None


# ---------------------------------------------------------------------------
# duality


@dataclass
class Report:
    """Named boolean checks plus free-form notes that are not asserted."""

    n: int
    checks: dict[str, bool] = field(default_factory=dict)
    notes: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [name for name, passed in self.checks.items() if not passed]


def dual_check(seq: QFSequence, n: int) -> Report:
    """Check that complementing over 1..k is an order-reversing bijection S_n -> S_n'.

    Inside the window ``A_k <= n < A_k + A_{k-1}`` the map must also send the
    length-k vertices to the length-(k-1) vertices of S_n' and vice versa.
    Lengths are measured against n's own k; when n' < A_k the split of S_n'
    by its own index differs, and that comparison is only recorded.
    """
    report = Report(n)
    if n < seq.term(1):
        report.notes["applicable"] = False
        return report
    k = seq.largest_index_leq(n)
    n2 = seq.gamma(k) - n
    report.notes.update(k=k, n_dual=n2)
    P = build_poset(seq, n)
    # n > gamma_k leaves S_n empty; its dual is empty too
    Q = poset_at(seq, n2) if n2 >= 0 else PosetDiagram(seq.level, (), ())
    phi = {a: complement(a, k) for a in P.vertices}
    image = set(phi.values())
    report.checks["bijection"] = len(image) == len(P) and image == set(Q.vertices)
    mapped = {(phi[b], phi[a]) for a, b in P.edges}
    report.checks["edges_reversed"] = mapped == Q.edge_set()
    report.checks["involution"] = all(complement(v, k) == a for a, v in phi.items())
    U, D = split_UD(P)
    swapped = (
        {phi[a] for a in U.vertices} == {b for b in Q.vertices if b.length() == k - 1}
        and {phi[a] for a in D.vertices} == {b for b in Q.vertices if b.length() == k}
    )
    if Q and Q.n:
        U2, D2 = split_UD(Q)
        report.notes["ud_swap_own_split"] = (
            {phi[a] for a in U.vertices} == set(D2.vertices)
            and {phi[a] for a in D.vertices} == set(U2.vertices)
        )
    if k >= 2 and n < seq.term(k) + seq.term(k - 1):
        report.checks["ud_swap"] = swapped
    else:
        report.notes["ud_swap_outside_window"] = swapped
    return report


# ---------------------------------------------------------------------------
# recursion


class RecursionCase(Enum):
    DUAL = "dual"  # A_k <= n <= A_{k,0}: dual of P_{gamma_k - n}
    DOUBLED = "doubled"  # A_{k,0} < n <= A_{k,1}: (P_m + tau) glued to (P_m + eta)
    BRIDGED = "bridged"  # A_{k,1} < n <= A_{k,2}: (P_m + tau) glued to (D_m + eta)
    SHIFTED = "shifted"  # A_{k,2} < n < A_{k+1}: P_m + tau


def recursion_case(seq: QFSequence, n: int) -> RecursionCase:
    N = seq.level
    if n < seq.term(N + 1):
        raise BaseCase(f"n = {n} is below A_{N + 1} = {seq.term(N + 1)}")
    k = seq.largest_index_leq(n)
    t = seq.thresholds(k)
    hits = [
        case
        for case, inside in (
            (RecursionCase.DUAL, seq.term(k) <= n <= t.a_k0),
            (RecursionCase.DOUBLED, t.a_k0 < n <= t.a_k1),
            (RecursionCase.BRIDGED, t.a_k1 < n <= t.a_k2),
            (RecursionCase.SHIFTED, t.a_k2 < n < seq.term(k + 1)),
        )
        if inside
    ]
    if not hits:
        raise IntervalGap(f"n = {n} lies in no interval for k = {k}")
    if len(hits) > 1:
        raise IntervalOverlap(f"n = {n} lies in {[h.value for h in hits]} for k = {k}")
    return hits[0]


def _reconstruct(seq, n, k, case):
    """Right-hand side: (poset, U vertices, D vertices, extra checks, glued halves or None)."""
    extra = {}
    if case is RecursionCase.DUAL:
        n2 = seq.gamma(k) - n
        Q = build_poset(seq, n2)
        U2, D2 = split_UD(Q)
        rhs = dual_poset(Q, k)
        ups = {complement(v, k) for v in D2.vertices}
        downs = {complement(v, k) for v in U2.vertices}
        return rhs, ups, downs, extra, None
    m = n - seq.term(k)
    Pm = poset_at(seq, m) if m >= seq.term(1) else PosetDiagram(seq.level, (), ())
    t_k, e_k = tau(k), eta(seq, k)
    left = shift_poset(Pm, t_k)
    if case is RecursionCase.SHIFTED:
        return left, set(left.vertices), set(), extra, None
    if case is RecursionCase.BRIDGED:
        base = split_UD(Pm)[1] if Pm else Pm
    else:
        base = Pm
    right = shift_poset(base, e_k)
    bridge = {add_reps(a, t_k): add_reps(a, e_k) for a in base.vertices}
    glued = glue(left, right, bridge)
    extra["glue_natural"] = glued.natural
    extra["bridge_covers"] = glued.bridge_covers
    return glued.combined, set(left.vertices), set(right.vertices), extra, (left, right)


def verify_recursion(seq: QFSequence, n: int) -> Report:
    """Rebuild P_n from smaller posets per its recursion case and compare exactly."""
    report = Report(n)
    try:
        case = recursion_case(seq, n)
    except (IntervalGap, IntervalOverlap) as exc:
        report.checks["interval"] = False
        report.notes["error"] = str(exc)
        return report
    k = seq.largest_index_leq(n)
    report.notes.update(k=k, case=case.value)
    target = build_poset(seq, n)
    U, D = split_UD(target)
    try:
        rhs, ups, downs, extra, halves = _reconstruct(seq, n, k, case)
    except QFError as exc:
        report.checks["construct"] = False
        report.notes["error"] = f"{type(exc).__name__}: {exc}"
        return report
    report.checks["vertices"] = rhs.vertices == target.vertices
    report.checks["edges"] = rhs.edge_set() == target.edge_set()
    report.checks["ud_split"] = ups == set(U.vertices) and downs == set(D.vertices)
    report.checks.update(extra)
    if halves is not None:
        left, right = halves
        report.checks["u_identification"] = U.same_as(left)
        report.checks["d_identification"] = D.same_as(right)
    return report


# ---------------------------------------------------------------------------
# DOT export


def to_dot(p: PosetDiagram, seq: QFSequence) -> str:
    """Graphviz source: one node per vertex (canonical order), one edge per cover."""
    lines = [f"digraph P_{p.n} {{"]
    for v in p.vertices:
        sign = "+1" if v.sign() > 0 else "-1"
        lines.append(f'  "{v.bitstring()}" [label="{v.render_parts(seq)}", sign="{sign}"];')
    for a, b in p.edges:
        lines.append(f'  "{a.bitstring()}" -> "{b.bitstring()}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
