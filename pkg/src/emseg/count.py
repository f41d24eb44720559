"""Packet counting: the recursions, the enumeration, and the product rule."""

from dataclasses import dataclass
from functools import lru_cache

from .blocks import (
    BlockTuple, block_decompose, block_tuple, tempered_block,
)
from .closure import closure
from .core import SegmentError, arthur_parameter
from .sdata import build, enumerate_S, enumerate_ST

RECURSION, ENUMERATION, CLOSURE = "recursion", "enumeration", "closure"


@dataclass(frozen=True)
class PacketCount:
    value: int
    method: str


@lru_cache(maxsize=None)
def _count_rec(c_min, mults):
    if not mults:
        return 1
    if len(mults) == 1:
        return 1
    prev = _count_rec(c_min, mults[:-1])
    prev2 = _count_rec(c_min, mults[:-2])
    if c_min == 0:
        if mults[-2] == 1:
            return 3 * prev
        return 4 * prev - prev2
    if mults[-2] == 1:
        return 2 * prev
    return 3 * prev - prev2


def count_block_recursive(M):
    """The two-term recursion over shortened blocks."""
    return PacketCount(_count_rec(0 if M.c_min == 0 else 1, M.mults), RECURSION)


def count_block_enumerative(M, eta=1):
    """Distinct packets among all built class members."""
    psis = set()
    if M.c_min == 0:
        for S, T in enumerate_ST(M):
            psis.add(arthur_parameter(build(M, S, T, eta)))
    else:
        for S in enumerate_S(M):
            psis.add(arthur_parameter(build(M, S, None, eta)))
    return PacketCount(len(psis), ENUMERATION)


def count_block_closure(M, eta=1, **limits):
    """Independent oracle: breadth-first closure of the tempered block."""
    report = closure(tempered_block(M, eta), **limits)
    if not report.exhausted:
        raise SegmentError("closure did not exhaust the class for %r" % (M,))
    return PacketCount(len(report.psi), CLOSURE)


def count_tempered(ms):
    """Product over the block decomposition; only the first block may use
    the start-at-zero recursion."""
    blocks = block_decompose(ms)
    total = 1
    for i, blk in enumerate(blocks):
        bt = block_tuple(blk)
        c_min = bt.c_min if i == 0 else max(bt.c_min, 1)
        total *= _count_rec(0 if c_min == 0 else 1, bt.mults)
    return PacketCount(total, RECURSION)


def count_multi(parts):
    """Product over independent supercuspidal labels."""
    total = 1
    for ms in parts:
        total *= count_tempered(ms).value
    return PacketCount(total, RECURSION)


def grid_instances(max_len=4, max_mult=5, max_cmin=1, max_rows=9):
    """The verification grid of block-tuples."""
    mult_choices = [m for m in range(1, max_mult + 1, 2)]
    out = []

    def rec(prefix):
        if prefix and sum(prefix) <= max_rows:
            for c_min in range(0, max_cmin + 1):
                out.append(BlockTuple(c_min, tuple(prefix)))
        if len(prefix) == max_len:
            return
        for m in mult_choices:
            if sum(prefix) + m <= max_rows:
                rec(prefix + [m])

    rec([])
    return out


def verify_grid(max_len=4, max_mult=5, max_cmin=1, max_rows=9):
    """Three-way agreement report over the grid; yields per-instance dicts."""
    for M in grid_instances(max_len, max_mult, max_cmin, max_rows):
        rec = count_block_recursive(M).value
        enum = count_block_enumerative(M).value
        clo = count_block_closure(M).value
        yield {
            "c_min": M.c_min,
            "mults": list(M.mults),
            "recursion": rec,
            "enumeration": enum,
            "closure": clo,
            "agree": rec == enum == clo,
        }
