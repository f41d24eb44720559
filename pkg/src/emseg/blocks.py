"""Tempered structure: alternating signs, block decomposition, boundaries."""

from dataclasses import dataclass

from .core import MultiSegment, Row, SegmentError


@dataclass(frozen=True)
class BlockTuple:
    """Column multiplicities (m_{c_min}, ..., m_{c_max}) of a block."""

    c_min: int
    mults: tuple

    def __post_init__(self):
        if self.c_min < 0:
            raise SegmentError("c_min must be >= 0")
        if any(m < 1 for m in self.mults):
            raise SegmentError("multiplicities must be positive")

    @property
    def c_max(self):
        return self.c_min + len(self.mults) - 1

    @property
    def is_empty(self):
        return not self.mults

    def mult(self, c):
        if self.c_min <= c <= self.c_max:
            return self.mults[c - self.c_min]
        return 0


EMPTY_BLOCK = BlockTuple(0, ())

TYPE1, TYPE2, TYPE3 = "Type1", "Type2", "Type3"


@dataclass(frozen=True)
class Boundary:
    kind: str
    H_col: int
    N_col: int


def is_tempered(ms):
    """All rows single circles, rows in one column sharing a sign."""
    col_sign = {}
    for r in ms.rows:
        if r.A != r.B or r.l != 0:
            return False
        if col_sign.setdefault(r.B, r.eta) != r.eta:
            return False
    return True


def is_alternating(ms):
    """Every consecutive pair satisfies eta(r') = (-1)^C(r) * eta(r)."""
    rows = ms.rows
    return all(
        rows[i + 1].eta == (-1) ** rows[i].circles * rows[i].eta
        for i in range(len(rows) - 1))


def eta_of(ms):
    """The sign of the first row."""
    if not ms.rows:
        raise SegmentError("eta undefined on the empty multi-segment")
    return ms.rows[0].eta


def last_circle_sign(row):
    """Sign of the last circle: circles alternate starting from eta."""
    return (-1) ** (row.circles - 1) * row.eta


def _column_groups(ms):
    groups = []
    for r in ms.rows:
        if groups and groups[-1][0] == r.B:
            groups[-1][1] += 1
        else:
            groups.append([r.B, 1, r.eta])
    return groups


def block_decompose(ms):
    """Greedy split of a tempered multi-segment into maximal blocks.

    A block continues across a column step of +1 with flipped sign; an even
    multiplicity leaves one row behind to start the next block; a gap or a
    repeated sign closes the block.
    """
    if not is_tempered(ms):
        raise SegmentError("block decomposition requires a tempered input")
    if any(ms.rows[i].B > ms.rows[i + 1].B for i in range(len(ms.rows) - 1)):
        raise SegmentError("tempered input must be sorted by column")
    blocks = []
    cur = []

    def close():
        if cur:
            blocks.append(MultiSegment(tuple(cur), ms.mode))
            cur.clear()

    for c, m, s in _column_groups(ms):
        row = Row(c, c, 0, s)
        if cur and cur[-1].B + 1 == c and cur[-1].eta == -s:
            take = m if m % 2 == 1 else m - 1
            cur.extend([row] * take)
            if m % 2 == 0:
                close()
                cur.append(row)
        else:
            close()
            take = m if m % 2 == 1 else m - 1
            cur.extend([row] * take)
            if m % 2 == 0:
                close()
                cur.append(row)
    close()
    return blocks


def block_tuple(block):
    """Column multiplicities of one tempered block."""
    if not block.rows:
        return EMPTY_BLOCK
    if not is_tempered(block):
        raise SegmentError("block_tuple requires a tempered block")
    groups = _column_groups(block)
    c_min = groups[0][0]
    mults = [0] * (groups[-1][0] - c_min + 1)
    for c, m, _ in groups:
        mults[c - c_min] += m
    if any(m == 0 for m in mults):
        raise SegmentError("block has a column gap")
    return BlockTuple(c_min, tuple(mults))


def remove_column(ms, c):
    """Drop every single-circle row in column c (the rc operator)."""
    rows = tuple(r for r in ms.rows
                 if not (r.A == r.B == c and r.l == 0))
    return ms.replace_rows(rows)


def classify_boundary(b1, b2):
    """Boundary taxonomy for consecutive blocks: gap, overlap, or abutment."""
    H_col = max(r.A for r in b1.rows)
    N_col = min(r.B for r in b2.rows)
    if N_col > H_col + 1:
        kind = TYPE1
    elif N_col == H_col:
        kind = TYPE2
    elif N_col == H_col + 1:
        kind = TYPE3
    else:
        raise SegmentError("blocks overlap by more than one column")
    return Boundary(kind, H_col, N_col)


def tempered_block(bt, eta=1):
    """The tempered multi-segment with the given multiplicities, signs
    alternating between columns starting from eta."""
    rows = []
    s = eta
    for i, m in enumerate(bt.mults):
        c = bt.c_min + i
        rows.extend([Row(c, c, 0, s)] * m)
        s = -s
    return MultiSegment(tuple(rows))
