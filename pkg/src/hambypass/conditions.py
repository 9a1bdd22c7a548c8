"""Degree-condition predicates with first-violation witnesses.

Every public checker returns a ConditionReport whose witness, when present,
re-evaluates to a genuine violation of the stated inequality. Witness scans
are lexicographic so the same input always yields the same witness. Bounds
that are half-integers in the classical statements are kept exact by doubling
both sides (no floats anywhere); such witnesses carry doubled value/bound and
say so in their detail string.

The `_*_violation` functions work on raw (n, rows, cols, dout, din) data so
the enumeration engine can run them on millions of digraphs without building
Digraph objects; the public wrappers are thin.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .digraph import Digraph


@dataclass(frozen=True)
class ConditionWitness:
    roles: dict[str, int]
    value: int
    bound: int
    detail: str = ""


@dataclass(frozen=True)
class ConditionReport:
    holds: bool
    witness: ConditionWitness | None = None

    def to_dict(self) -> dict:
        if self.witness is None:
            return {"holds": self.holds}
        w = self.witness
        return {
            "holds": self.holds,
            "witness": {
                "roles": dict(w.roles),
                "value": w.value,
                "bound": w.bound,
                "detail": w.detail,
            },
        }


def _arrays(g: Digraph) -> tuple[int, tuple, tuple, tuple, tuple]:
    dout = tuple(r.bit_count() for r in g.rows)
    din = tuple(c.bit_count() for c in g.cols)
    return g.n, g.rows, g.cols, dout, din


# ---------------------------------------------------------------------------
# Triple degree condition (parameter k, bound 3n - 2 + k)
# ---------------------------------------------------------------------------


def _a_k_violation(n, rows, cols, dout, din, k, inclusive=False):
    """First (x, y, z) violating the k-parameterized triple condition.

    For every non-adjacent ordered pair x, y and each third vertex z:
    missing arc x->z forces d(x)+d(y)+d_out(x)+d_in(z) >= 3n-2+k, and
    missing arc z->x forces d(x)+d(y)+d_in(x)+d_out(z) >= 3n-2+k.
    z ranges over vertices distinct from x and y unless `inclusive`.
    """
    bound = 3 * n - 2 + k
    for x in range(n):
        rx = rows[x]
        cx = cols[x]
        adj = rx | cx
        dx = dout[x] + din[x]
        for y in range(n):
            if y == x or (adj >> y) & 1:
                continue
            s = dx + dout[y] + din[y]
            for z in range(n):
                if z == x or (z == y and not inclusive):
                    continue
                if not (rx >> z) & 1 and s + dout[x] + din[z] < bound:
                    return (x, y, z, "out", s + dout[x] + din[z], bound)
                if not (cx >> z) & 1 and s + din[x] + dout[z] < bound:
                    return (x, y, z, "in", s + din[x] + dout[z], bound)
    return None


def check_a_k(g: Digraph, k: int, *, inclusive: bool = False) -> ConditionReport:
    """Triple degree condition at level k. Needs order >= 3.

    `inclusive` also admits the degenerate triples with z = y (a strictly
    stronger reading; kept for sensitivity re-runs).
    """
    if g.n < 3:
        raise ValueError("triple degree condition needs order >= 3")
    hit = _a_k_violation(*_arrays(g), k, inclusive)
    if hit is None:
        return ConditionReport(True)
    x, y, z, side, value, bound = hit
    which = "x->z" if side == "out" else "z->x"
    return ConditionReport(
        False,
        ConditionWitness(
            {"x": x, "y": y, "z": z},
            value,
            bound,
            f"missing arc {which}",
        ),
    )


# ---------------------------------------------------------------------------
# Pairwise total-degree bounds
# ---------------------------------------------------------------------------


def _pair_sum_violation(n, rows, cols, dout, din, bound):
    for x in range(n):
        adj = rows[x] | cols[x]
        dx = dout[x] + din[x]
        for y in range(x + 1, n):
            if (adj >> y) & 1:
                continue
            s = dx + dout[y] + din[y]
            if s < bound:
                return (x, y, s, bound)
    return None


def check_meyniel(g: Digraph) -> ConditionReport:
    """d(x) + d(y) >= 2n - 1 for every non-adjacent pair."""
    return check_degree_sum(g, -1)


def check_degree_sum(g: Digraph, offset: int) -> ConditionReport:
    """d(x) + d(y) >= 2n + offset for every non-adjacent pair."""
    hit = _pair_sum_violation(*_arrays(g), 2 * g.n + offset)
    if hit is None:
        return ConditionReport(True)
    x, y, value, bound = hit
    return ConditionReport(False, ConditionWitness({"x": x, "y": y}, value, bound))


# ---------------------------------------------------------------------------
# Classical per-vertex / per-pair bounds
# ---------------------------------------------------------------------------


def _ghouila_violation(n, rows, cols, dout, din):
    for x in range(n):
        if dout[x] + din[x] < n:
            return (x, dout[x] + din[x], n)
    return None


def check_ghouila_houri(g: Digraph) -> ConditionReport:
    """Total degree at least n at every vertex."""
    hit = _ghouila_violation(*_arrays(g))
    if hit is None:
        return ConditionReport(True)
    x, value, bound = hit
    return ConditionReport(False, ConditionWitness({"x": x}, value, bound))


def _woodall_violation(n, rows, cols, dout, din):
    for x in range(n):
        rx = rows[x]
        for y in range(n):
            if y == x or (rx >> y) & 1:
                continue
            s = dout[x] + din[y]
            if s < n:
                return (x, y, s, n)
    return None


def check_woodall(g: Digraph) -> ConditionReport:
    """d_out(x) + d_in(y) >= n whenever the arc x->y is missing."""
    hit = _woodall_violation(*_arrays(g))
    if hit is None:
        return ConditionReport(True)
    x, y, value, bound = hit
    return ConditionReport(
        False, ConditionWitness({"x": x, "y": y}, value, bound, "missing arc x->y")
    )


def _nash_violation(n, rows, cols, dout, din):
    # Doubled comparison: 2 * semidegree >= n, exact for odd n.
    for x in range(n):
        if 2 * dout[x] < n:
            return (x, "out", 2 * dout[x], n)
        if 2 * din[x] < n:
            return (x, "in", 2 * din[x], n)
    return None


def check_nash_williams(g: Digraph) -> ConditionReport:
    """Both semidegrees at least n/2 at every vertex (doubled arithmetic)."""
    hit = _nash_violation(*_arrays(g))
    if hit is None:
        return ConditionReport(True)
    x, side, value, bound = hit
    return ConditionReport(
        False,
        ConditionWitness({"x": x}, value, bound, f"doubled {side}-degree vs n"),
    )


# ---------------------------------------------------------------------------
# Common-neighbour pair conditions
# ---------------------------------------------------------------------------


def _thm13_violation(n, rows, cols, dout, din):
    for x in range(n):
        adj = rows[x] | cols[x]
        cx = cols[x]
        dx = dout[x] + din[x]
        for y in range(x + 1, n):
            if (adj >> y) & 1 or not (cx & cols[y]):
                continue
            dy = dout[y] + din[y]
            lo = dx if dx < dy else dy
            if lo < n - 1:
                return (x, y, "min", lo, n - 1)
            if dx + dy < 2 * n - 1:
                return (x, y, "sum", dx + dy, 2 * n - 1)
    return None


def check_thm13_condition(g: Digraph) -> ConditionReport:
    """Non-adjacent pairs with a common in-neighbour need high degrees.

    min{d(x), d(y)} >= n-1 and d(x)+d(y) >= 2n-1 for every such pair.
    """
    hit = _thm13_violation(*_arrays(g))
    if hit is None:
        return ConditionReport(True)
    x, y, which, value, bound = hit
    detail = "min degree" if which == "min" else "degree sum"
    return ConditionReport(False, ConditionWitness({"x": x, "y": y}, value, bound, detail))


def _common_flank(rows, cols, x, y) -> bool:
    return bool((rows[x] & rows[y]) | (cols[x] & cols[y]))


def _thm14_violation(n, rows, cols, dout, din):
    for x in range(n):
        adj = rows[x] | cols[x]
        for y in range(x + 1, n):
            if (adj >> y) & 1 or not _common_flank(rows, cols, x, y):
                continue
            a = dout[x] + din[y]
            b = din[x] + dout[y]
            lo = a if a < b else b
            if lo < n:
                return (x, y, lo, n)
    return None


def check_thm14_condition(g: Digraph) -> ConditionReport:
    """min{d_out(x)+d_in(y), d_in(x)+d_out(y)} >= n for non-adjacent pairs
    sharing an out-neighbour or an in-neighbour."""
    hit = _thm14_violation(*_arrays(g))
    if hit is None:
        return ConditionReport(True)
    x, y, value, bound = hit
    return ConditionReport(False, ConditionWitness({"x": x, "y": y}, value, bound))


def _thm15_violation(n, rows, cols, dout, din):
    for x in range(n):
        adj = rows[x] | cols[x]
        dx = dout[x] + din[x]
        for y in range(x + 1, n):
            if (adj >> y) & 1 or not _common_flank(rows, cols, x, y):
                continue
            dy = dout[y] + din[y]
            if dx + dy < 2 * n - 1:
                return (x, y, "sum", dx + dy, 2 * n - 1)
            a = dout[x] + din[y]
            b = din[x] + dout[y]
            lo = a if a < b else b
            if lo < n - 1:
                return (x, y, "minsum", lo, n - 1)
    return None


def check_thm15_condition(g: Digraph) -> ConditionReport:
    """Degree sum >= 2n-1 and crossed semidegree sums >= n-1 for non-adjacent
    pairs sharing an out-neighbour or an in-neighbour."""
    hit = _thm15_violation(*_arrays(g))
    if hit is None:
        return ConditionReport(True)
    x, y, which, value, bound = hit
    detail = "degree sum" if which == "sum" else "crossed semidegree sum"
    return ConditionReport(False, ConditionWitness({"x": x, "y": y}, value, bound, detail))


def _thm16_violation(n, rows, cols, dout, din, min_in=3):
    if n < 6:
        return ("order", None, n, 6)
    for x in range(n):
        if dout[x] < 2:
            return ("min_out", x, dout[x], 2)
    for x in range(n):
        if din[x] < min_in:
            return ("min_in", x, din[x], min_in)
    hit = _thm13_violation(n, rows, cols, dout, din)
    if hit is not None:
        return ("thm13", hit, None, None)
    return None


def _thm16_report(hit) -> ConditionReport:
    kind = hit[0]
    if kind == "order":
        return ConditionReport(
            False, ConditionWitness({}, hit[2], hit[3], "order below 6")
        )
    if kind in ("min_out", "min_in"):
        side = "out" if kind == "min_out" else "in"
        return ConditionReport(
            False,
            ConditionWitness({"x": hit[1]}, hit[2], hit[3], f"minimum {side}-degree"),
        )
    x, y, which, value, bound = hit[1]
    detail = "min degree" if which == "min" else "degree sum"
    return ConditionReport(False, ConditionWitness({"x": x, "y": y}, value, bound, detail))


def check_thm16_hypothesis(g: Digraph) -> ConditionReport:
    """Order >= 6, min out-degree >= 2, min in-degree >= 3, plus the
    common-in-neighbour pair condition."""
    hit = _thm16_violation(*_arrays(g))
    return ConditionReport(True) if hit is None else _thm16_report(hit)


def check_thm16_relaxed(g: Digraph) -> ConditionReport:
    """Same hypothesis with the in-degree floor lowered to 2 (probe form)."""
    hit = _thm16_violation(*_arrays(g), min_in=2)
    return ConditionReport(True) if hit is None else _thm16_report(hit)


# ---------------------------------------------------------------------------
# Overlapping non-adjacent pairs consequence (doubled arithmetic)
# ---------------------------------------------------------------------------


def _lemma5_violation(n, rows, cols, dout, din):
    d = [dout[i] + din[i] for i in range(n)]
    for x in range(n):
        adj = rows[x] | cols[x]
        non = [v for v in range(n) if v != x and not (adj >> v) & 1]
        for y in non:
            a = 2 * n - d[x] - d[y]
            if a < 1:
                continue
            need = 4 * n - 4 + a
            for z in non:
                if z == y:
                    continue
                if 2 * (d[x] + d[z]) < need:
                    return (x, y, z, 2 * (d[x] + d[z]), need)
    return None


def lemma5_consequence_holds(g: Digraph) -> ConditionReport:
    """Slack transfer between overlapping non-adjacent pairs.

    For every x with two distinct non-neighbours y and z: writing
    a = 2n - d(x) - d(y), if a >= 1 then 2(d(x) + d(z)) >= 4n - 4 + a.
    Value and bound in the witness are the doubled quantities.
    """
    hit = _lemma5_violation(*_arrays(g))
    if hit is None:
        return ConditionReport(True)
    x, y, z, value, bound = hit
    return ConditionReport(
        False,
        ConditionWitness({"x": x, "y": y, "z": z}, value, bound, "doubled comparison"),
    )


# ---------------------------------------------------------------------------
# Identifier registry (shared by the CLI and the enumeration verifier)
# ---------------------------------------------------------------------------

RawPredicate = Callable[[int, tuple, tuple, tuple, tuple], bool]


@dataclass(frozen=True)
class Condition:
    cond_id: str
    check: Callable[[Digraph], ConditionReport]
    raw: RawPredicate = field(repr=False)


def _simple(core, *args) -> RawPredicate:
    def raw(n, rows, cols, dout, din):
        return core(n, rows, cols, dout, din, *args) is None

    return raw


def resolve(cond_id: str) -> Condition:
    """Map a stable identifier string to its checker and raw predicate.

    Parameterized forms: "a_k:<k>", "a_k_inc:<k>", "degree_sum:<offset>".
    Unknown ids raise ValueError.
    """
    name, _, param = cond_id.partition(":")
    if name in ("a_k", "a_k_inc"):
        try:
            k = int(param)
        except ValueError:
            raise ValueError(f"bad condition id {cond_id!r}: integer k required")
        inclusive = name == "a_k_inc"
        return Condition(
            cond_id,
            lambda g, k=k: check_a_k(g, k, inclusive=inclusive),
            lambda n, rows, cols, dout, din, k=k: _a_k_violation(
                n, rows, cols, dout, din, k, inclusive
            )
            is None,
        )
    if name == "degree_sum":
        try:
            offset = int(param)
        except ValueError:
            raise ValueError(f"bad condition id {cond_id!r}: integer offset required")
        return Condition(
            cond_id,
            lambda g: check_degree_sum(g, offset),
            lambda n, rows, cols, dout, din: _pair_sum_violation(
                n, rows, cols, dout, din, 2 * n + offset
            )
            is None,
        )
    if param:
        raise ValueError(f"condition {name!r} takes no parameter")
    table = {
        "meyniel": (check_meyniel, lambda n, r, c, o, i: _pair_sum_violation(n, r, c, o, i, 2 * n - 1) is None),
        "ghouila_houri": (check_ghouila_houri, _simple(_ghouila_violation)),
        "woodall": (check_woodall, _simple(_woodall_violation)),
        "nash_williams": (check_nash_williams, _simple(_nash_violation)),
        "thm13": (check_thm13_condition, _simple(_thm13_violation)),
        "thm14": (check_thm14_condition, _simple(_thm14_violation)),
        "thm15": (check_thm15_condition, _simple(_thm15_violation)),
        "thm16": (check_thm16_hypothesis, _simple(_thm16_violation)),
        "thm16relaxed": (check_thm16_relaxed, lambda n, r, c, o, i: _thm16_violation(n, r, c, o, i, 2) is None),
        "lemma5": (lemma5_consequence_holds, _simple(_lemma5_violation)),
    }
    if name not in table:
        raise ValueError(f"unknown condition id {cond_id!r}")
    check, raw = table[name]
    return Condition(cond_id, check, raw)


def known_condition_ids() -> list[str]:
    return [
        "a_k:<k>",
        "a_k_inc:<k>",
        "meyniel",
        "degree_sum:<offset>",
        "ghouila_houri",
        "woodall",
        "nash_williams",
        "thm13",
        "thm14",
        "thm15",
        "thm16",
        "thm16relaxed",
        "lemma5",
    ]
