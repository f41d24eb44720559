"""The operator calculus on multi-segments.

Row exchange, union-intersection (all types), the dual involution, hat
merging, circle-row splitting, and the higher-level separation / merge /
unhook / dualize composites used by the lift family.
"""

from dataclasses import dataclass
from typing import Optional

from .core import (
    MultiSegment, OrderError, Row, SegmentError, STRICT, RELAXED,
    alpha_beta, make_row, order_admissible, order_sorted, row_is_strict,
    validate, weak_normalize,
)

T1, T2, T3, T3PRIME = "T1", "T2", "T3", "T3prime"


@dataclass(frozen=True)
class OpResult:
    out: MultiSegment
    applied: bool
    type_tag: Optional[str] = None


class NoExchangeError(SegmentError):
    """Row exchange requested on a pair it is not defined for."""


def _supports_nest(r1, r2):
    """True if supp(r1) contains supp(r2) or vice versa (incl. equality)."""
    return (r1.B <= r2.B and r1.A >= r2.A) or (r2.B <= r1.B and r2.A >= r1.A)


def _mode_of(rows, mode_hint):
    if all(row_is_strict(r) for r in rows):
        return STRICT
    return RELAXED


def row_exchange(ms, k):
    """Swap rows k and k+1 with the compensating (l, eta) changes.

    If the swapped order would be inadmissible the input is returned with
    applied=False.  The output may be a relaxed symbol.
    """
    rows = list(ms.rows)
    if not (0 <= k < len(rows) - 1):
        raise SegmentError("no adjacent pair at position %d" % k)
    r1, r2 = rows[k], rows[k + 1]
    if not _supports_nest(r1, r2):
        if r2.A > r1.A and r2.B > r1.B:
            return OpResult(ms, False)
        raise NoExchangeError(
            "rows %d,%d have non-nesting supports in an inadmissible order" % (k, k + 1))
    eps = (-1) ** (r1.A - r1.B) * r1.eta * r2.eta
    if r1.B <= r2.B and r1.A >= r2.A:
        # Case 1: supp(r1) contains supp(r2); equality lands here too.
        new_r2 = Row(r2.A, r2.B, r2.l, (-1) ** (r1.A - r1.B) * r2.eta)
        if eps == 1:
            if r1.circles < 2 * r2.circles:
                new_r1 = Row(r1.A, r1.B, r1.b - (r1.l + r2.circles),
                             (-1) ** (r2.A - r2.B) * r1.eta)
            else:
                new_r1 = Row(r1.A, r1.B, r1.l + r2.circles,
                             (-1) ** (r2.A - r2.B + 1) * r1.eta)
        else:
            new_r1 = Row(r1.A, r1.B, r1.l - r2.circles,
                         (-1) ** (r2.A - r2.B + 1) * r1.eta)
    else:
        # Case 2: supp(r1) strictly inside supp(r2).
        new_r1 = Row(r1.A, r1.B, r1.l, (-1) ** (r2.A - r2.B) * r1.eta)
        if eps == 1:
            if r2.circles < 2 * r1.circles:
                new_r2 = Row(r2.A, r2.B, r2.b - (r2.l + r1.circles),
                             (-1) ** (r1.A - r1.B) * r2.eta)
            else:
                new_r2 = Row(r2.A, r2.B, r2.l + r1.circles,
                             (-1) ** (r1.A - r1.B + 1) * r2.eta)
        else:
            new_r2 = Row(r2.A, r2.B, r2.l - r1.circles,
                         (-1) ** (r1.A - r1.B + 1) * r2.eta)
    rows[k] = weak_normalize(new_r2)
    rows[k + 1] = weak_normalize(new_r1)
    return OpResult(MultiSegment(tuple(rows), _mode_of(rows, ms.mode)), True)


def ui_type(ms, k):
    """The union-intersection type at position k, or None."""
    rows = ms.rows
    if not (0 <= k < len(rows) - 1):
        return None
    r1, r2 = rows[k], rows[k + 1]
    if not (r2.A > r1.A and r2.B > r1.B):
        return None
    eps = (-1) ** (r1.A - r1.B) * r1.eta * r2.eta
    if eps == 1 and r2.A - r2.l == r1.A - r1.l:
        return T1
    if eps == 1 and r2.B + r2.l == r1.B + r1.l:
        return T2
    if eps == -1 and r2.B + r2.l == r1.A - r1.l + 1:
        return T3PRIME if r1.l == r2.l == 0 else T3
    return None


def ui(ms, k):
    """Union-intersection of adjacent rows k, k+1."""
    tag = ui_type(ms, k)
    if tag is None:
        return OpResult(ms, False)
    rows = list(ms.rows)
    r1, r2 = rows[k], rows[k + 1]
    d = r2.A - r1.A
    if tag == T1:
        new1 = Row(r2.A, r1.B, r1.l, r1.eta)
        new2 = Row(r1.A, r2.B, r2.l - d, (-1) ** d * r2.eta)
    elif tag == T2:
        if r1.circles >= d:
            new1 = Row(r2.A, r1.B, r1.l + d, r1.eta)
        else:
            new1 = Row(r2.A, r1.B, r1.b - r1.l, -r1.eta)
        new2 = Row(r1.A, r2.B, r2.l, (-1) ** d * r2.eta)
    else:
        new1 = Row(r2.A, r1.B, r1.l, r1.eta)
        if r2.l <= r1.l:
            new2 = Row(r1.A, r2.B, r2.l, (-1) ** d * r2.eta)
        else:
            new2 = Row(r1.A, r2.B, r1.l, (-1) ** (d + 1) * r2.eta)
    if tag == T3PRIME:
        rows[k: k + 2] = [weak_normalize(new1)]
    else:
        rows[k: k + 2] = [weak_normalize(new1), weak_normalize(new2)]
    return OpResult(MultiSegment(tuple(rows), _mode_of(rows, ms.mode)), True, tag)


def dual(ms):
    """The combinatorial involution: rows reversed, [A,B] -> [A,-B]."""
    if not order_sorted(ms.rows):
        raise OrderError("dual requires (P') order; sort via row exchanges first")
    alphas, betas = alpha_beta(ms.rows)
    out = []
    for i, r in enumerate(ms.rows):
        eta = (-1) ** (alphas[i] + betas[i]) * r.eta
        out.append(make_row(r.A, -r.B, r.l + r.B, eta, mode=RELAXED))
    out.reverse()
    return MultiSegment(tuple(out), _mode_of(out, ms.mode))


def to_sorted(ms):
    """Row-exchange the multi-segment into (P') order (stable bubble pass)."""
    cur = ms
    n = len(cur.rows)
    changed = True
    while changed:
        changed = False
        for k in range(n - 1):
            if cur.rows[k].B > cur.rows[k + 1].B:
                res = row_exchange(cur, k)
                if not res.applied:
                    raise OrderError("could not sort to (P') at position %d" % k)
                cur = res.out
                changed = True
    return cur


def split_circles(ms, k, X):
    """Split the all-circles row k at X; exact inverse of ui type 3'."""
    rows = list(ms.rows)
    r = rows[k]
    if r.l != 0:
        raise SegmentError("split requires an all-circles row (l = 0)")
    if not (r.B <= X <= r.A - 1):
        raise SegmentError("split point %d outside [%d,%d)" % (X, r.B, r.A))
    low = Row(X, r.B, 0, r.eta)
    high = Row(r.A, X + 1, 0, -((-1) ** (X - r.B)) * r.eta)
    rows[k: k + 1] = [low, weak_normalize(high)]
    if not order_admissible(rows):
        raise OrderError("split at %d leaves an inadmissible order" % X)
    return MultiSegment(tuple(rows), ms.mode)


def merge_condition(r1, r2):
    """Two consecutive hats can merge iff the upper support abuts the lower
    triangle block (A_2 = B_1 - 1) and the signs alternate."""
    if not (r1.is_hat and r2.is_hat):
        return False
    B1 = r1.l
    if r2.A != B1 - 1:
        return False
    return r2.eta == (-1) ** r1.circles * r1.eta


def merge_hats(ms, k):
    """Merge consecutive hats k, k+1 via dual, type-3' ui, dual.

    The result replaces the two hats by ([A_1, -B_2], B_2, eta_1); the
    composite is checked against this closed form.
    """
    rows = ms.rows
    if not (0 <= k < len(rows) - 1):
        raise SegmentError("no adjacent pair at position %d" % k)
    r1, r2 = rows[k], rows[k + 1]
    if not (r1.is_hat and r2.is_hat):
        raise SegmentError("merge requires two hats")
    if not order_sorted(rows):
        raise OrderError("merge requires (P') order")
    if not merge_condition(r1, r2):
        return OpResult(ms, False)
    d = dual(ms)
    n = len(rows)
    pos = n - 2 - k  # image of r2 sits right before the image of r1
    res = ui(d, pos)
    if not res.applied or res.type_tag != T3PRIME:
        return OpResult(ms, False)
    out = dual(to_sorted(res.out))
    merged = weak_normalize(Row(r1.A, -r2.l, r2.l, r1.eta))
    expect = rows[:k] + (merged,) + rows[k + 2:]
    if tuple(out.rows) != expect:
        raise SegmentError("hat merge composite disagrees with the closed form")
    return OpResult(out, True, T3PRIME)


def _track_exchange(state, k):
    """Row exchange on a (ms, ids) pair, keeping row identities aligned."""
    ms, ids = state
    res = row_exchange(ms, k)
    if not res.applied:
        return None
    ids = ids[:k] + (ids[k + 1], ids[k]) + ids[k + 2:]
    return (res.out, ids)


def _exchange_down(state, pos, steps):
    """Move the row at pos downward past `steps` following rows."""
    for _ in range(steps):
        state = _track_exchange(state, pos)
        if state is None:
            return None
        pos += 1
    return state, pos


def _exchange_up(state, pos, steps):
    """Move the row at pos upward past `steps` preceding rows."""
    for _ in range(steps):
        state = _track_exchange(state, pos - 1)
        if state is None:
            return None
        pos -= 1
    return state, pos


def ui_pair(ms, i, j):
    """Union-intersection of the (possibly non-adjacent) rows i < j.

    Searches for a chain of row exchanges making the pair adjacent, applies
    ui there, and restores the original order (minus the deleted row for a
    type 3' application).
    """
    rows = ms.rows
    n = len(rows)
    if not (0 <= i < j < n):
        raise SegmentError("need positions i < j")
    if not (rows[i].A < rows[j].A and rows[i].B < rows[j].B):
        return OpResult(ms, False)
    start = (ms, tuple(range(n)))
    seen = {(start[0].rows, start[1])}
    frontier = [start]
    found = None
    while frontier and found is None:
        nxt = []
        for state in frontier:
            cur, ids = state
            p = ids.index(i)
            if p + 1 < n and ids[p + 1] == j and ui_type(cur, p) is not None:
                found = (state, p)
                break
            for k in range(n - 1):
                moved = _track_exchange(state, k)
                if moved is not None and (moved[0].rows, moved[1]) not in seen:
                    seen.add((moved[0].rows, moved[1]))
                    nxt.append(moved)
        frontier = nxt
    if found is None:
        return OpResult(ms, False)
    (cur, ids), p = found
    res = ui(cur, p)
    tag = res.type_tag
    if tag == T3PRIME:
        ids = ids[:p + 1] + ids[p + 2:]
    goal = tuple(x for x in range(n) if not (tag == T3PRIME and x == j))
    out = _restore_order(res.out, ids, goal)
    if out is None:
        return OpResult(ms, False)
    return OpResult(out, True, tag)


def _restore_order(ms, ids, goal):
    """Row-exchange until the identity sequence matches goal."""
    if ids == goal:
        return ms
    start = (ms, ids)
    seen = {(ms.rows, ids)}
    frontier = [start]
    while frontier:
        nxt = []
        for state in frontier:
            for k in range(len(ids) - 1):
                moved = _track_exchange(state, k)
                if moved is None or (moved[0].rows, moved[1]) in seen:
                    continue
                if moved[1] == goal:
                    return moved[0]
                seen.add((moved[0].rows, moved[1]))
                nxt.append(moved)
        frontier = nxt
    return None


# ---------------------------------------------------------------------------
# Separation / unhook / dualize / merge composites
# ---------------------------------------------------------------------------

def op_S(ms, chain, c):
    """Separate the last c circles of the all-circles row at `chain`.

    The row is exchanged down past every following row whose support starts
    at A - c or earlier, split there, and the low part exchanged back up.
    """
    rows = ms.rows
    r = rows[chain]
    if r.l != 0 or not (1 <= c < r.circles):
        return OpResult(ms, False)
    state = (ms, tuple(range(len(rows))))
    pos = chain
    while pos + 1 < len(rows) and state[0].rows[pos + 1].B <= r.A - c:
        moved = _exchange_down(state, pos, 1)
        if moved is None:
            return OpResult(ms, False)
        state, pos = moved
    cur, ids = state
    try:
        split = split_circles(cur, pos, r.A - c)
    except SegmentError:
        return OpResult(ms, False)
    ids = ids[:pos] + (ids[pos], -1) + ids[pos + 1:]
    state = (split, ids)
    moved = _exchange_up(state, pos, pos - chain)
    if moved is None:
        return OpResult(ms, False)
    return OpResult(moved[0][0], True)


def op_U(ms, hat, c):
    """Unhook c circles from the hat at `hat` into a fresh top-column row.

    The hat is exchanged to the bottom (unfolding its triangles), split, and
    the low part exchanged back to its place.
    """
    rows = ms.rows
    h = rows[hat]
    if not h.is_hat or not (1 <= c < h.circles):
        return OpResult(ms, False)
    n = len(rows)
    state = (ms, tuple(range(n)))
    moved = _exchange_down(state, hat, n - 1 - hat)
    if moved is None:
        return OpResult(ms, False)
    state, pos = moved
    cur = state[0]
    bottom = cur.rows[pos]
    if bottom.l != 0:
        return OpResult(ms, False)
    try:
        split = split_circles(cur, pos, bottom.A - c)
    except SegmentError:
        return OpResult(ms, False)
    ids = state[1][:pos] + (state[1][pos], -1) + state[1][pos + 1:]
    moved = _exchange_up((split, ids), pos, pos - hat)
    if moved is None:
        return OpResult(ms, False)
    return OpResult(moved[0][0], True)


def op_M(ms, hat):
    """Merge the hat at `hat` with the hat right after it."""
    return merge_hats(ms, hat)


def op_D(ms, hat, target):
    """Dualized merge: absorb the circles row at `target` (ending one short
    of the hat's triangle reach) into the hat at `hat`.

    Computed as dual, exchanges, type-3' ui, exchanges, dual.
    """
    rows = ms.rows
    h = rows[hat]
    r = rows[target]
    if not h.is_hat or target <= hat:
        return OpResult(ms, False)
    if r.l != 0 or r.A != h.l - 1:
        return OpResult(ms, False)
    if not order_sorted(rows):
        raise OrderError("dualized merge requires (P') order")
    n = len(rows)
    d = dual(ms)
    ids = tuple(reversed(range(n)))
    p_target = n - 1 - target
    p_hat = n - 1 - hat
    state = (d, ids)
    moved = _exchange_down(state, p_target, p_hat - 1 - p_target)
    if moved is None:
        return OpResult(ms, False)
    state, pos = moved
    if ui_type(state[0], pos) != T3PRIME:
        return OpResult(ms, False)
    res = ui(state[0], pos)
    ids = state[1][:pos + 1] + state[1][pos + 2:]
    moved = _exchange_up((res.out, ids), pos, pos - p_target)
    if moved is None:
        return OpResult(ms, False)
    out = dual(to_sorted(moved[0][0]))
    return OpResult(out, True, T3PRIME)


def dual_ui_dual(ms, k):
    """The raising operator dual . ui_k . dual on a (P')-sorted input."""
    d = dual(ms)
    res = ui(d, k)
    if not res.applied:
        return OpResult(ms, False)
    return OpResult(dual(to_sorted(res.out)), True, res.type_tag)


def dual_split_dual(ms, k, X):
    """The inverse raising move dual . split_circles . dual."""
    d = dual(ms)
    split = split_circles(d, k, X)
    return dual(to_sorted(split))
