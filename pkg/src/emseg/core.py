"""Value types for the extended multi-segment calculus.

A row is a triple ([A, B], l, eta): a support segment, a count of triangle
pairs and a sign for the first circle.  A multi-segment is an ordered list of
rows.  This module houses the value types, admissibility checks, parsing and
rendering, and the derived quantities (Arthur parameter, sign product,
non-vanishing condition).
"""

import json
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

STRICT = "strict"
RELAXED = "relaxed"


class SegmentError(ValueError):
    """Base error for invalid segment data."""


class ParseError(SegmentError):
    """Malformed textual input; carries the offending position."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class OrderError(SegmentError):
    """A multi-segment is not in the order an operation requires."""


class ScopeError(SegmentError):
    """Input outside the supported (integral) scope."""


class Row(NamedTuple):
    """One extended segment ([A, B], l, eta)."""

    A: int
    B: int
    l: int
    eta: int

    @property
    def a(self):
        """Length of the segment as a representation datum: A + B + 1."""
        return self.A + self.B + 1

    @property
    def b(self):
        """Number of columns of the row: A - B + 1."""
        return self.A - self.B + 1

    @property
    def circles(self):
        """Number of circles: b - 2l."""
        return self.b - 2 * self.l

    @property
    def is_hat(self):
        """A hat has its triangles reaching column 0, i.e. B = -l."""
        return self.B == -self.l


def _check_sign(eta):
    if eta not in (1, -1):
        raise SegmentError("eta must be +1 or -1, got %r" % (eta,))


def weak_normalize(row):
    """Store eta as +1 whenever the row has no circles (2l = b)."""
    if 2 * row.l == row.b and row.eta != 1:
        return row._replace(eta=1)
    return row


def make_row(A, B, l, eta, mode=STRICT):
    """Build a weak-normalized row, checking the invariants for the mode."""
    for name, v in (("A", A), ("B", B), ("l", l)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise ScopeError("%s must be an integer, got %r" % (name, v))
    _check_sign(eta)
    if A < B:
        raise SegmentError("need A >= B, got [%d,%d]" % (A, B))
    if A + B < 0:
        raise SegmentError("need A + B >= 0, got [%d,%d]" % (A, B))
    row = Row(A, B, l, eta)
    if mode == STRICT and not (0 <= 2 * l <= row.b):
        raise SegmentError(
            "need 0 <= 2l <= b in strict mode, got l=%d with b=%d" % (l, row.b))
    return weak_normalize(row)


def row_is_strict(row):
    return 0 <= 2 * row.l <= row.b


@dataclass(frozen=True)
class MultiSegment:
    """An ordered list of rows, either strict or relaxed ("symbol") mode.

    Rows are stored weak-normalized.  The order is not constrained on
    construction; use validate() to test admissibility.
    """

    rows: tuple
    mode: str = STRICT

    def __post_init__(self):
        if self.mode not in (STRICT, RELAXED):
            raise SegmentError("unknown mode %r" % (self.mode,))
        rows = tuple(
            make_row(r.A, r.B, r.l, r.eta, self.mode) if isinstance(r, Row)
            else make_row(*r, mode=self.mode)
            for r in self.rows)
        object.__setattr__(self, "rows", rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    def replace_rows(self, rows):
        return MultiSegment(tuple(rows), self.mode)


def multi_segment(rows, mode=STRICT):
    """Convenience constructor from (A, B, l, eta) tuples."""
    return MultiSegment(tuple(Row(*r) for r in rows), mode)


def order_admissible(rows):
    """Order property (P): A_i > A_j and B_i > B_j forces i after j."""
    n = len(rows)
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i].A > rows[j].A and rows[i].B > rows[j].B:
                return False
    return True


def order_sorted(rows):
    """Order property (P'): B non-decreasing."""
    return all(rows[i].B <= rows[i + 1].B for i in range(len(rows) - 1))


def validate(ms, criterion="P"):
    """True iff the order satisfies (P) or (P') and the rows fit the mode."""
    if criterion not in ("P", "Pprime"):
        raise ValueError("criterion must be 'P' or 'Pprime'")
    if ms.mode == STRICT and not all(row_is_strict(r) for r in ms.rows):
        return False
    if criterion == "Pprime":
        return order_sorted(ms.rows)
    return order_admissible(ms.rows)


def arthur_parameter(ms):
    """The multiset of (a, b) = (A+B+1, A-B+1), as a sorted tuple."""
    if not validate(ms, "P"):
        raise SegmentError("multi-segment has an inadmissible order")
    return tuple(sorted((r.a, r.b) for r in ms.rows))


def group_sign(ms):
    """The sign product prod (-1)^(floor(b_i/2) + l_i) * eta_i^(b_i)."""
    if ms.mode != STRICT:
        raise SegmentError("sign undefined on symbols")
    sign = 1
    for r in ms.rows:
        sign *= (-1) ** (r.b // 2 + r.l) * r.eta ** (r.b % 2)
    return sign


def check_star(ms):
    """Non-vanishing necessary condition: B_i + l_i >= 0 for every row."""
    return all(r.B + r.l >= 0 for r in ms.rows)


def shift(ms, d):
    """Shift every support by d: [A, B] -> [A+d, B+d]."""
    rows = []
    for r in ms.rows:
        if r.A + r.B + 2 * d < 0:
            raise SegmentError(
                "shift by %d breaks A + B >= 0 on [%d,%d]" % (d, r.A, r.B))
        rows.append(Row(r.A + d, r.B + d, r.l, r.eta))
    return ms.replace_rows(rows)


# ---------------------------------------------------------------------------
# Parsing and rendering
# ---------------------------------------------------------------------------

_ROW_RE = re.compile(r"\[\s*(-?\d+)\s*,\s*(-?\d+)\s*;\s*(-?\d+)\s*;\s*([+-])\s*\]")


def parse(text, mode=STRICT):
    """Parse the row DSL: a concatenation of [A,B;l;s] items."""
    rows = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _ROW_RE.match(text, pos)
        if not m:
            raise ParseError("expected a row of the form [A,B;l;s]", pos)
        A, B, l = int(m.group(1)), int(m.group(2)), int(m.group(3))
        eta = 1 if m.group(4) == "+" else -1
        try:
            rows.append(make_row(A, B, l, eta, mode))
        except SegmentError as e:
            raise ParseError(str(e), pos) from e
        pos = m.end()
    return MultiSegment(tuple(rows), mode)


def render(ms):
    """Render to the row DSL; inverse of parse."""
    return "".join(
        "[%d,%d;%d;%s]" % (r.A, r.B, r.l, "+" if r.eta == 1 else "-")
        for r in ms.rows)


def to_json(ms):
    """Serialize to the JSON wire format."""
    return json.dumps(
        {"rows": [{"A": r.A, "B": r.B, "l": r.l, "eta": r.eta}
                  for r in ms.rows]})


def from_json(text, mode=STRICT):
    """Parse the JSON wire format."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError("invalid JSON: %s" % e.msg, e.pos) from e
    if not isinstance(data, dict) or "rows" not in data:
        raise ParseError('expected an object with a "rows" list', 0)
    rows = []
    for item in data["rows"]:
        try:
            rows.append(make_row(item["A"], item["B"], item["l"],
                                 item["eta"], mode))
        except (KeyError, TypeError) as e:
            raise ParseError("bad row object %r" % (item,), 0) from e
    return MultiSegment(tuple(rows), mode)


def render_grid(ms, unicode_symbols=False):
    """Draw the symbol picture: triangle pairs and alternating circles.

    Each row occupies columns B..A: l left triangles, then the circles
    alternating in sign starting from eta, then l right triangles.
    """
    if not ms.rows:
        return "(empty)"
    lo = min(r.B for r in ms.rows)
    hi = max(r.A for r in ms.rows)
    if unicode_symbols:
        sym = {"+": "⊕", "-": "⊖", "<": "◁", ">": "▷"}
    else:
        sym = {"+": "+", "-": "-", "<": "<", ">": ">"}
    width = max(len(str(c)) for c in range(lo, hi + 1))
    header = " ".join(str(c).rjust(width) for c in range(lo, hi + 1))
    lines = [header]
    for r in ms.rows:
        cells = {}
        for c in range(r.B, r.B + r.l):
            cells[c] = sym["<"]
        for c in range(r.A - r.l + 1, r.A + 1):
            cells[c] = sym[">"]
        s = r.eta
        for c in range(r.B + r.l, r.A - r.l + 1):
            cells[c] = sym["+" if s == 1 else "-"]
            s = -s
        lines.append(" ".join(
            cells.get(c, "").rjust(width) if c in cells else " " * width
            for c in range(lo, hi + 1)).rstrip())
    return "\n".join(lines)


def circle_count(ms):
    """Total number of circles C(E) over all rows."""
    return sum(r.circles for r in ms.rows)


def serialize_key(ms):
    """A canonical byte string for an exact (weak-normalized) row list."""
    return render(ms).encode()


def alpha_beta(rows):
    """Prefix sums of a and suffix sums of b, per row position."""
    n = len(rows)
    alphas = []
    total_a = 0
    for r in rows:
        alphas.append(total_a)
        total_a += r.a
    betas = [0] * n
    total_b = 0
    for i in range(n - 1, -1, -1):
        betas[i] = total_b
        total_b += rows[i].b
    return alphas, betas
