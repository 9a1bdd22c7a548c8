"""Path-insertion machinery: partners, collections, multi-insertion.

A partner of a path Q (or a single vertex x) on a host path P is a position i,
1-indexed with 1 <= i <= |P|-1, such that the arc pair P[i] -> Q.first and
Q.last -> P[i+1] exists; splicing Q between P[i] and P[i+1] then keeps a valid
path with P's endpoints. Partner indices are 1-indexed everywhere, matching
the usual statement of the insertion lemmas; step logs serialize them as-is.

All searches are deterministic (ascending positions, ascending vertex ids).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .digraph import Cycle, Digraph, Path, make_path


def _pmask(verts) -> int:
    mask = 0
    for v in verts:
        mask |= 1 << v
    return mask


def _degree_toward(g: Digraph, x: int, mask: int) -> int:
    return (g.rows[x] & mask).bit_count() + (g.cols[x] & mask).bit_count()


# ---------------------------------------------------------------------------
# Partners
# ---------------------------------------------------------------------------


def find_partner_for_vertex(g: Digraph, p: Path, x: int) -> int | None:
    """Smallest partner index of the single vertex x on p, or None."""
    verts = p.vertices
    if x in verts:
        raise ValueError(f"vertex {x} already lies on the path")
    if len(verts) < 2:
        raise ValueError("host path needs at least two vertices")
    for i in range(1, len(verts)):
        if g.has_arc(verts[i - 1], x) and g.has_arc(x, verts[i]):
            return i
    return None


def find_partner_for_path(g: Digraph, p: Path, q: Path) -> int | None:
    """Smallest partner index of the whole path q on p, or None."""
    pv, qv = p.vertices, q.vertices
    if set(pv) & set(qv):
        raise ValueError("paths must be vertex-disjoint")
    if len(pv) < 2:
        raise ValueError("host path needs at least two vertices")
    for i in range(1, len(pv)):
        if g.has_arc(pv[i - 1], qv[0]) and g.has_arc(qv[-1], pv[i]):
            return i
    return None


def insert_at(g: Digraph, p: Path, i: int, q: Path) -> Path:
    """Splice q between p[i] and p[i+1] (1-indexed partner position)."""
    pv, qv = p.vertices, q.vertices
    if set(pv) & set(qv):
        raise ValueError("paths must be vertex-disjoint")
    if not 1 <= i <= len(pv) - 1:
        raise ValueError(f"partner index {i} outside [1, {len(pv) - 1}]")
    if not (g.has_arc(pv[i - 1], qv[0]) and g.has_arc(qv[-1], pv[i])):
        raise ValueError(f"position {i} is not a partner of the insert path")
    return make_path(g, pv[:i] + qv + pv[i:])


# ---------------------------------------------------------------------------
# Insertion hypotheses
# ---------------------------------------------------------------------------


def lemma2_hypothesis(g: Digraph, p: Path, x: int, *, literal_ii: bool = False) -> str | None:
    """Strongest satisfied single-vertex insertion hypothesis: "i", "ii",
    "iii", or None.

    With m = |p| and d(x, P) counted toward the path's vertex set:
      (i)   d(x, P) >= m + 2;
      (ii)  d(x, P) >= m + 1 and (arc x->P.first missing or arc
            P.last->x missing);
      (iii) d(x, P) >= m and both of those arcs missing.
    `literal_ii` swaps (ii)'s second disjunct for "arc P.last->P.first
    missing" (the uncorrected reading, kept for comparison runs).
    """
    verts = p.vertices
    if x in verts:
        raise ValueError(f"vertex {x} already lies on the path")
    m = len(verts)
    d = _degree_toward(g, x, _pmask(verts))
    to_first_missing = not g.has_arc(x, verts[0])
    from_last_missing = not g.has_arc(verts[-1], x)
    if d >= m + 2:
        return "i"
    second = (
        not g.has_arc(verts[-1], verts[0]) if literal_ii else from_last_missing
    )
    if d >= m + 1 and (to_first_missing or second):
        return "ii"
    if d >= m and to_first_missing and from_last_missing:
        return "iii"
    return None


def lemma4_hypothesis(g: Digraph, p: Path, q: Path, *, literal_terms: bool = False) -> bool:
    """Whole-path partner guarantee for q on p.

    Requires d_in(q.first, P) + d_out(q.last, P) >= |P| + [arc p.last ->
    q.first present] + [arc q.last -> p.first present].  The two indicator
    terms discount the only degree contributions that cannot open an
    insertion slot: an arc into q.first from the last path vertex has no
    slot after it, and an arc from q.last to the first path vertex has no
    slot before it; once those are paid for, |P| remaining contributions
    force two at consecutive positions.  `literal_terms` swaps the
    indicators for the arcs q.first -> p.first and p.last -> q.last, an
    uncorrected reading that admits counterexamples (kept, like
    lemma2_hypothesis's literal_ii, for comparison runs).
    """
    pv, qv = p.vertices, q.vertices
    if set(pv) & set(qv):
        raise ValueError("paths must be vertex-disjoint")
    mask = _pmask(pv)
    din_first = (g.cols[qv[0]] & mask).bit_count()
    dout_last = (g.rows[qv[-1]] & mask).bit_count()
    if literal_terms:
        need = len(pv) + int(g.has_arc(qv[0], pv[0])) + int(g.has_arc(pv[-1], qv[-1]))
    else:
        need = len(pv) + int(g.has_arc(pv[-1], qv[0])) + int(g.has_arc(qv[-1], pv[0]))
    return din_first + dout_last >= need


def lemma1_hypothesis(g: Digraph, c: Cycle, x: int) -> bool:
    """d(x, C) >= |C| + 1 for an off-cycle vertex x."""
    if x in c.vertices:
        raise ValueError(f"vertex {x} lies on the cycle")
    return _degree_toward(g, x, _pmask(c.vertices)) >= len(c) + 1


def lemma3_hypothesis(g: Digraph, c: Cycle, q: Path) -> bool:
    """d_in(q.first, C) + d_out(q.last, C) >= |C| + 1 for a disjoint path q."""
    if set(c.vertices) & set(q.vertices):
        raise ValueError("cycle and path must be vertex-disjoint")
    mask = _pmask(c.vertices)
    din_first = (g.cols[q.vertices[0]] & mask).bit_count()
    dout_last = (g.rows[q.vertices[-1]] & mask).bit_count()
    return din_first + dout_last >= len(c) + 1


# ---------------------------------------------------------------------------
# Partner collections and multi-insertion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartnerCollection:
    """A block partition of the insert path plus one partner index per block.

    cuts holds 1-indexed block boundaries (1 = i_1 < ... < i_m = |Q| + 1);
    block j covers Q[cuts[j]..cuts[j+1]-1]. partners[j] is that block's
    position on P. Simultaneous insertion of all blocks was validated by
    reconstruction when this object was produced.
    """

    cuts: tuple[int, ...]
    partners: tuple[int, ...]


def _splice(pv, blocks, partners):
    """Vertex sequence with every block inserted at its partner position.

    Blocks sharing a position land in block order between the same two host
    vertices.
    """
    at: dict[int, list[int]] = {}
    for block, pos in zip(blocks, partners):
        at.setdefault(pos, []).extend(block)
    out = []
    for idx, v in enumerate(pv):
        out.append(v)
        out.extend(at.get(idx + 1, ()))
    return out


def _valid_sequence(g: Digraph, seq) -> bool:
    if len(set(seq)) != len(seq):
        return False
    return all(g.has_arc(a, b) for a, b in zip(seq, seq[1:]))


def find_collection_of_partners(
    g: Digraph, p: Path, q: Path, *, node_budget: int = 250_000
) -> PartnerCollection | None:
    """Bounded backtracking search for a partner collection of q on p.

    Partitions with fewer blocks are preferred; for each partition,
    assignments using pairwise distinct partner arcs are tried before ones
    that share arcs; every complete assignment is validated by rebuilding
    the spliced sequence, so anything returned is realizable.
    """
    pv, qv = p.vertices, q.vertices
    if set(pv) & set(qv):
        raise ValueError("paths must be vertex-disjoint")
    if len(pv) < 2:
        raise ValueError("host path needs at least two vertices")
    s = len(qv)
    budget = node_budget

    for nblocks in range(1, s + 1):
        for interior in combinations(range(2, s + 1), nblocks - 1):
            cuts = (1,) + interior + (s + 1,)
            blocks = [qv[cuts[j] - 1 : cuts[j + 1] - 1] for j in range(nblocks)]
            options = []
            dead = False
            for block in blocks:
                opts = [
                    i
                    for i in range(1, len(pv))
                    if g.has_arc(pv[i - 1], block[0]) and g.has_arc(block[-1], pv[i])
                ]
                if not opts:
                    dead = True
                    break
                options.append(opts)
            if dead:
                continue

            for allow_shared in (False, True):
                chosen = [0] * nblocks

                def assign(j):
                    nonlocal budget
                    budget -= 1
                    if budget < 0:
                        return False
                    if j == nblocks:
                        if allow_shared and len(set(chosen)) == nblocks:
                            return False  # all-distinct ones ran in pass one
                        seq = _splice(pv, blocks, chosen)
                        return _valid_sequence(g, seq)
                    for i in options[j]:
                        if not allow_shared and i in chosen[:j]:
                            continue
                        chosen[j] = i
                        if assign(j + 1):
                            return True
                    return False

                if assign(0):
                    return PartnerCollection(cuts, tuple(chosen))
                if budget < 0:
                    return None
    return None


def _ordered_cover_path(g: Digraph, pv, qset):
    """Path from pv[0] to pv[-1] covering pv and qset, preserving pv's order.

    Exhaustive DFS, candidates ascending by vertex id; the final host vertex
    is only placed once everything else is on the path.
    """
    rows = g.rows
    last = pv[-1]
    qmask = _pmask(qset)

    out: list[int] = [pv[0]]

    def rec(cur, pidx, remq):
        # pidx: how many host vertices are already placed.
        if pidx == len(pv) and not remq:
            return True
        nxt_host = pv[pidx] if pidx < len(pv) else None
        cand = rows[cur] & remq
        merged = []
        while cand:
            b = cand & -cand
            cand ^= b
            merged.append(b.bit_length() - 1)
        if nxt_host is not None and g.has_arc(cur, nxt_host):
            if nxt_host != last or remq == 0:
                merged.append(nxt_host)
                merged.sort()
        for w in merged:
            out.append(w)
            if w == nxt_host:
                if rec(w, pidx + 1, remq):
                    return True
            else:
                if rec(w, pidx, remq & ~(1 << w)):
                    return True
            out.pop()
        return False

    return tuple(out) if rec(pv[0], 1, qmask) else None


def multi_insert(g: Digraph, p: Path, q: Path) -> Path | None:
    """Path from p.first to p.last covering V(p) u V(q), if one exists with
    p's internal order preserved.

    A found partner collection is spliced directly; otherwise an exhaustive
    order-preserving search decides the fallback.
    """
    coll = find_collection_of_partners(g, p, q)
    if coll is not None:
        cuts = coll.cuts
        qv = q.vertices
        blocks = [
            qv[cuts[j] - 1 : cuts[j + 1] - 1] for j in range(len(coll.partners))
        ]
        return make_path(g, _splice(p.vertices, blocks, coll.partners))
    hit = _ordered_cover_path(g, p.vertices, q.vertices)
    return None if hit is None else make_path(g, hit)


@dataclass(frozen=True)
class InsertionOutcome:
    extended: Path
    leftovers: frozenset[int]
    steps: tuple[tuple[int, int], ...]


def extend_as_much_as_possible(g: Digraph, p: Path, extra) -> InsertionOutcome:
    """Insert single vertices from `extra` until none has a partner.

    Each round inserts the lowest insertable vertex id at its smallest
    partner index; the step log records (vertex, index at insertion time).
    """
    verts = list(p.vertices)
    if set(verts) & set(extra):
        raise ValueError("extra vertices must avoid the path")
    left = sorted(set(extra))
    if left and not (0 <= left[0] and left[-1] < g.n):
        raise ValueError("extra vertices outside the digraph")
    steps: list[tuple[int, int]] = []
    cur = Path(tuple(verts))
    progressed = True
    while progressed and left:
        progressed = False
        for y in left:
            i = find_partner_for_vertex(g, cur, y)
            if i is not None:
                cur = insert_at(g, cur, i, Path((y,)))
                steps.append((y, i))
                left.remove(y)
                progressed = True
                break
    return InsertionOutcome(cur, frozenset(left), tuple(steps))


# ---------------------------------------------------------------------------
# Bypass-free consequences around an (n-1)-cycle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lemma7Report:
    """Clause-by-clause evaluation for an (n-1)-cycle C and its off vertex y.

    windows_ok:   y sends (receives) at most one arc into every pair of
                  consecutive cycle vertices;
    degrees_ok:   2*d_out(y) and 2*d_in(y) at most n-1, total at most n-1;
    reversals_ok: whenever y can be spliced between consecutive cycle
                  vertices x_k, x_{k+1}, no cycle arc other than the one at
                  k is doubled in reverse.
    """

    windows_ok: bool
    degrees_ok: bool
    reversals_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.windows_ok and self.degrees_ok and self.reversals_ok


def lemma7_consequences(g: Digraph, c: Cycle, y: int) -> Lemma7Report:
    if len(c) != g.n - 1:
        raise ValueError("cycle must cover all vertices but one")
    if y in c.vertices:
        raise ValueError(f"vertex {y} lies on the cycle")
    n = g.n
    cv = c.vertices
    k = len(cv)

    windows_ok = True
    for i in range(k):
        a, b = cv[i], cv[(i + 1) % k]
        if int(g.has_arc(y, a)) + int(g.has_arc(y, b)) > 1:
            windows_ok = False
            break
        if int(g.has_arc(a, y)) + int(g.has_arc(b, y)) > 1:
            windows_ok = False
            break

    do, di = g.out_degree(y), g.in_degree(y)
    degrees_ok = 2 * do <= n - 1 and 2 * di <= n - 1 and do + di <= n - 1

    reversals_ok = True
    for i in range(k):
        if g.has_arc(cv[i], y) and g.has_arc(y, cv[(i + 1) % k]):
            for j in range(k):
                if j == i:
                    continue
                if g.has_arc(cv[(j + 1) % k], cv[j]):
                    reversals_ok = False
                    break
            if not reversals_ok:
                break

    return Lemma7Report(windows_ok, degrees_ok, reversals_ok)


def is_good_cycle(g: Digraph, c: Cycle) -> bool:
    """(n-1)-cycle whose off-cycle vertex has total degree at least n."""
    if len(c) != g.n - 1:
        return False
    (off,) = set(range(g.n)) - set(c.vertices)
    return g.degree(off) >= g.n
