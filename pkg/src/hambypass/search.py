"""Exact backtracking oracles for cycles, paths, bypasses and patterns.

Every search is deterministic: candidate vertices are tried in ascending
order, cycle witnesses start at their smallest vertex, and arc iteration is
lexicographic. Identical inputs therefore yield identical witnesses across
runs and worker counts.

The `_raw` helpers operate on (n, rows, cols) bitset tuples so the
enumeration engine can call them without building Digraph objects.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import families
from .digraph import Cycle, Digraph, Path, make_cycle, make_path, vertex_mask


@dataclass(frozen=True)
class BypassWitness:
    """Vertex order v1..vn: consecutive arcs plus the chord v1->vn."""

    order: tuple[int, ...]


@dataclass(frozen=True)
class PatternEmbedding:
    """mapping[i] is the host vertex carrying pattern vertex i."""

    mapping: tuple[int, ...]


# ---------------------------------------------------------------------------
# Cycles
# ---------------------------------------------------------------------------


def _cycle_raw(n, rows, m):
    """First m-cycle as a vertex tuple starting at its smallest vertex."""
    for s in range(n):
        # All other cycle vertices exceed s, otherwise an earlier start
        # would have produced the cycle already.
        allowed = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)
        path = [s]

        def rec(v, visited, depth):
            if depth == m:
                return (rows[v] >> s) & 1
            cand = rows[v] & allowed & ~visited
            while cand:
                b = cand & -cand
                cand ^= b
                w = b.bit_length() - 1
                path.append(w)
                if rec(w, visited | b, depth + 1):
                    return True
                path.pop()
            return False

        if rec(s, 1 << s, 1):
            return tuple(path)
    return None


def _iter_cycles_raw(n, rows, m):
    """All m-cycles, each once, smallest vertex first, ascending DFS order."""
    for s in range(n):
        allowed = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)
        path = [s]
        out = []

        def rec(v, visited, depth):
            if depth == m:
                if (rows[v] >> s) & 1:
                    out.append(tuple(path))
                return
            cand = rows[v] & allowed & ~visited
            while cand:
                b = cand & -cand
                cand ^= b
                w = b.bit_length() - 1
                path.append(w)
                rec(w, visited | b, depth + 1)
                path.pop()

        rec(s, 1 << s, 1)
        yield from out


def find_cycle_of_length(g: Digraph, m: int) -> Cycle | None:
    """First cycle of exactly m vertices, or None. Needs 2 <= m <= n."""
    if not 2 <= m <= g.n:
        raise ValueError(f"cycle length must lie in [2, {g.n}], got {m}")
    hit = _cycle_raw(g.n, g.rows, m)
    return None if hit is None else make_cycle(g, hit)


def iter_cycles_of_length(g: Digraph, m: int):
    if not 2 <= m <= g.n:
        raise ValueError(f"cycle length must lie in [2, {g.n}], got {m}")
    for verts in _iter_cycles_raw(g.n, g.rows, m):
        yield make_cycle(g, verts)


def find_hamiltonian_cycle(g: Digraph) -> Cycle | None:
    if g.n < 2:
        return None
    return find_cycle_of_length(g, g.n)


def find_pre_hamiltonian_cycle(g: Digraph) -> Cycle | None:
    """A cycle through exactly n-1 vertices, or None."""
    if g.n < 3:
        return None
    return find_cycle_of_length(g, g.n - 1)


def _hc_on_subset_raw(n, rows, cols, smask):
    """Hamiltonian cycle of the induced subdigraph on smask, as a tuple."""
    size = smask.bit_count()
    if size < 2:
        return None
    # Cheap exclusion: every chosen vertex needs an arc in and out inside.
    rest = smask
    while rest:
        b = rest & -rest
        rest ^= b
        v = b.bit_length() - 1
        if not rows[v] & smask & ~b or not cols[v] & smask & ~b:
            return None
    s = (smask & -smask).bit_length() - 1
    path = [s]

    def rec(v, visited, depth):
        if depth == size:
            return (rows[v] >> s) & 1
        cand = rows[v] & smask & ~visited
        while cand:
            b = cand & -cand
            cand ^= b
            w = b.bit_length() - 1
            path.append(w)
            if rec(w, visited | b, depth + 1):
                return True
            path.pop()
        return False

    return tuple(path) if rec(s, 1 << s, 1) else None


def _prehc_exists_raw(n, rows, cols):
    full = (1 << n) - 1
    for y in range(n):
        if _hc_on_subset_raw(n, rows, cols, full & ~(1 << y)) is not None:
            return True
    return False


# ---------------------------------------------------------------------------
# Hamiltonian paths between fixed ends
# ---------------------------------------------------------------------------


def _ham_path_raw(n, rows, cols, u, v, smask):
    """Path from u to v covering smask exactly, vertices tried ascending."""
    size = smask.bit_count()
    vbit = 1 << v
    path = [u]

    def feasible(cur, rem):
        # Every remaining vertex must still be enterable and (except the
        # final target) leavable inside the remaining region.
        curbit = 1 << cur
        r = rem
        while r:
            b = r & -r
            r ^= b
            w = b.bit_length() - 1
            others = rem & ~b
            if not cols[w] & (others | curbit):
                return False
            if b != vbit and not rows[w] & others:
                return False
        return True

    def rec(cur, visited, depth):
        if depth == size:
            return cur == v
        rem = smask & ~visited
        if rem == vbit:
            cand = rows[cur] & vbit
        else:
            cand = rows[cur] & rem & ~vbit
            if not cand or not feasible(cur, rem):
                return False
        while cand:
            b = cand & -cand
            cand ^= b
            w = b.bit_length() - 1
            path.append(w)
            if rec(w, visited | b, depth + 1):
                return True
            path.pop()
        return False

    if not (smask >> u) & 1 or not (smask >> v) & 1:
        return None
    return tuple(path) if rec(u, 1 << u, 1) else None


def find_hamiltonian_path_between(g: Digraph, u: int, v: int, s) -> Path | None:
    """Path from u to v visiting every vertex of s exactly once."""
    smask = vertex_mask(g.n, s)
    if u == v:
        raise ValueError("endpoints must differ")
    if not (smask >> u) & 1 or not (smask >> v) & 1:
        raise ValueError("both endpoints must lie in the vertex set")
    hit = _ham_path_raw(g.n, g.rows, g.cols, u, v, smask)
    return None if hit is None else make_path(g, hit)


# ---------------------------------------------------------------------------
# Hamiltonian bypass
# ---------------------------------------------------------------------------


def _bypass_raw(n, rows, cols):
    if n < 3:
        return None
    full = (1 << n) - 1
    for u in range(n):
        r = rows[u]
        while r:
            b = r & -r
            r ^= b
            w = b.bit_length() - 1
            hit = _ham_path_raw(n, rows, cols, u, w, full)
            if hit is not None:
                return hit
    return None


def find_hamiltonian_bypass(g: Digraph) -> BypassWitness | None:
    """First Hamiltonian bypass: arcs (u, w) tried lexicographically, and for
    each a Hamiltonian (u, w)-path is sought; the path is the witness order."""
    hit = _bypass_raw(g.n, g.rows, g.cols)
    return None if hit is None else BypassWitness(hit)


def validate_bypass(g: Digraph, witness: BypassWitness) -> bool:
    """Witness order must be a permutation of all vertices, consecutive arcs
    present, plus the chord first->last."""
    order = witness.order
    if sorted(order) != list(range(g.n)):
        return False
    if not all(g.has_arc(a, b) for a, b in zip(order, order[1:])):
        return False
    return g.has_arc(order[0], order[-1])


# ---------------------------------------------------------------------------
# Spanning pattern embedding
# ---------------------------------------------------------------------------


def _embed_raw(n, rows, cols, prows, pcols):
    pdout = [r.bit_count() for r in prows]
    pdin = [c.bit_count() for c in pcols]
    gdout = [r.bit_count() for r in rows]
    gdin = [c.bit_count() for c in cols]
    mapping = [-1] * n

    def rec(i, used):
        if i == n:
            return True
        pr = prows[i]
        pc = pcols[i]
        for v in range(n):
            bit = 1 << v
            if used & bit or gdout[v] < pdout[i] or gdin[v] < pdin[i]:
                continue
            ok = True
            for j in range(i):
                mj = mapping[j]
                if (pr >> j) & 1 and not (rows[v] >> mj) & 1:
                    ok = False
                    break
                if (pc >> j) & 1 and not (rows[mj] >> v) & 1:
                    ok = False
                    break
            if ok:
                mapping[i] = v
                if rec(i + 1, used | bit):
                    return True
                mapping[i] = -1
        return False

    return tuple(mapping) if rec(0, 0) else None


def find_bypass_pattern(g: Digraph, k: int) -> PatternEmbedding | None:
    """Spanning embedding of the reversed-tail cycle pattern of parameter k.

    k = 2 agrees with find_hamiltonian_bypass on existence.
    """
    pattern = families.bypass_pattern(g.n, k)
    hit = _embed_raw(g.n, g.rows, g.cols, pattern.rows, pattern.cols)
    return None if hit is None else PatternEmbedding(hit)


# ---------------------------------------------------------------------------
# Good cycles
# ---------------------------------------------------------------------------


def _good_cycle_raw(n, rows, cols):
    """(cycle tuple, off vertex) for the first (n-1)-cycle whose off-cycle
    vertex has total degree >= n, scanning off vertices ascending."""
    if n < 3:
        return None
    full = (1 << n) - 1
    for y in range(n):
        if rows[y].bit_count() + cols[y].bit_count() < n:
            continue
        hit = _hc_on_subset_raw(n, rows, cols, full & ~(1 << y))
        if hit is not None:
            return hit, y
    return None


def find_good_cycle(g: Digraph) -> Cycle | None:
    hit = _good_cycle_raw(g.n, g.rows, g.cols)
    return None if hit is None else make_cycle(g, hit[0])
