"""Command line interface: parse/render/apply/blocks/enumerate/count/closure/verify.

Bulk output is JSON lines; human-readable symbol grids sit behind --pretty.
Exit codes: 0 success, 1 invalid input, 2 limits exceeded, 3 internal
invariant violation.
"""

import argparse
import json
import sys

from .blocks import BlockTuple, block_decompose, block_tuple, classify_boundary
from .closure import DEFAULT_MAX_DEPTH, DEFAULT_MAX_STATES, closure
from .core import (
    ParseError, SegmentError, from_json, parse, render, render_grid, to_json,
)
from .count import (
    count_block_closure, count_block_enumerative, count_block_recursive,
    count_tempered, grid_instances,
)
from .ops import (
    dual, dual_ui_dual, merge_hats, row_exchange, split_circles, to_sorted, ui,
)
from .sdata import build, enumerate_S, enumerate_ST, trivial_T

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_LIMITS = 2
EXIT_INTERNAL = 3


class CliInputError(Exception):
    """Bad command line or bad input data."""


class CliLimitError(Exception):
    """A configured search limit was exceeded."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliInputError(message)


def _read_text(args):
    if getattr(args, "dsl", None) is not None:
        return args.dsl
    if getattr(args, "json_text", None) is not None:
        return args.json_text
    return sys.stdin.read()


def _read_ms(args, mode="strict"):
    text = _read_text(args).strip()
    if not text:
        return parse("", mode)
    if text.startswith("{"):
        return from_json(text, mode)
    return parse(text, mode)


def _emit_ms(ms, args, out):
    if args.format == "dsl":
        out.write(render(ms) + "\n")
    else:
        out.write(to_json(ms) + "\n")
    if args.pretty:
        out.write(render_grid(ms, unicode_symbols=True) + "\n")


def _parse_eta(text):
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise CliInputError("eta must be + or -, got %r" % (text,))


def _parse_block_tuple(args):
    try:
        mults = tuple(int(x) for x in args.M.replace(" ", "").split(","))
    except ValueError:
        raise CliInputError("--M must be a comma-separated integer list")
    try:
        return BlockTuple(args.cmin, mults)
    except SegmentError as e:
        raise CliInputError(str(e))


def _parse_grid_spec(spec):
    bounds = {"len": 4, "mult": 5, "cmin": 1, "rows": 9}
    if spec:
        for item in spec.replace(" ", "").split(","):
            if not item:
                continue
            if "<=" not in item:
                raise CliInputError("grid bound %r is not of the form key<=n" % item)
            key, _, val = item.partition("<=")
            if key not in bounds:
                raise CliInputError("unknown grid bound %r" % key)
            try:
                bounds[key] = int(val)
            except ValueError:
                raise CliInputError("grid bound %r needs an integer" % item)
    return bounds


def _cmd_parse(args, out):
    ms = _read_ms(args, mode="relaxed" if args.relaxed else "strict")
    _emit_ms(ms, args, out)
    return EXIT_OK


def _cmd_render(args, out):
    ms = _read_ms(args)
    out.write(render(ms) + "\n")
    if args.pretty:
        out.write(render_grid(ms, unicode_symbols=True) + "\n")
    return EXIT_OK


def _cmd_apply(args, out):
    ms = _read_ms(args, mode="relaxed" if args.relaxed else "strict")
    op = args.op
    if op == "exchange":
        res = row_exchange(ms, args.k)
        result, applied, tag = res.out, res.applied, None
    elif op == "ui":
        res = ui(ms, args.k)
        result, applied, tag = res.out, res.applied, res.type_tag
    elif op == "dual":
        result, applied, tag = dual(ms), True, None
    elif op == "dual-ui-dual":
        res = dual_ui_dual(ms, args.k)
        result, applied, tag = res.out, res.applied, res.type_tag
    elif op == "sort":
        result, applied, tag = to_sorted(ms), True, None
    elif op == "split":
        if args.X is None:
            raise CliInputError("split needs --X")
        result, applied, tag = split_circles(ms, args.k, args.X), True, None
    elif op == "merge":
        res = merge_hats(ms, args.k)
        result, applied, tag = res.out, res.applied, res.type_tag
    else:
        raise CliInputError("unknown operator %r" % op)
    record = {"applied": applied, "type": tag,
              "result": render(result) if args.format == "dsl"
              else json.loads(to_json(result))}
    out.write(json.dumps(record) + "\n")
    if args.pretty:
        out.write(render_grid(result, unicode_symbols=True) + "\n")
    return EXIT_OK


def _cmd_blocks(args, out):
    ms = _read_ms(args)
    blocks = block_decompose(ms)
    for i, blk in enumerate(blocks):
        bt = block_tuple(blk)
        record = {
            "index": i,
            "dsl": render(blk),
            "c_min": bt.c_min,
            "mults": list(bt.mults),
        }
        if i + 1 < len(blocks):
            record["boundary"] = classify_boundary(blk, blocks[i + 1]).kind
        out.write(json.dumps(record) + "\n")
    return EXIT_OK


def _cmd_enumerate(args, out):
    M = _parse_block_tuple(args)
    eta = _parse_eta(args.eta)
    if args.with_T:
        if M.c_min != 0:
            raise CliInputError("--with-T needs --cmin 0")
        tuples = enumerate_ST(M)
    else:
        tuples = [(S, None) for S in enumerate_S(M)]
    for S, T in tuples:
        ms = build(M, S, T, eta)
        record = {"S": [list(iv) for iv in S], "dsl": render(ms)}
        if T is not None:
            record["T"] = [[list(p) for p in parts] for parts in T]
        out.write(json.dumps(record) + "\n")
        if args.pretty:
            out.write(render_grid(ms, unicode_symbols=True) + "\n")
    return EXIT_OK


def _cmd_count(args, out):
    if args.M is not None:
        M = _parse_block_tuple(args)
        if args.method == "recursion":
            pc = count_block_recursive(M)
        elif args.method == "enumeration":
            pc = count_block_enumerative(M)
        else:
            pc = count_block_closure(M)
    else:
        ms = _read_ms(args)
        pc = count_tempered(ms)
    out.write(json.dumps({"value": pc.value, "method": pc.method}) + "\n")
    return EXIT_OK


def _cmd_closure(args, out):
    ms = _read_ms(args)
    report = closure(ms, max_states=args.limit, max_depth=args.max_depth)
    if not report.exhausted:
        raise CliLimitError(
            "closure hit a limit (%d states, depth %d)"
            % (args.limit, args.max_depth))
    if args.emit == "nodes":
        for key in sorted(report.nodes):
            out.write(json.dumps({"node": key.decode()}) + "\n")
    elif args.emit == "psi":
        for psi in sorted(report.psi):
            out.write(json.dumps({"psi": [list(p) for p in psi]}) + "\n")
    else:
        out.write(json.dumps({
            "nodes": len(report.nodes),
            "psi": len(report.psi),
            "states": report.states,
        }) + "\n")
    return EXIT_OK


def _verify_one(M):
    rec = count_block_recursive(M).value
    enum = count_block_enumerative(M).value
    clo = count_block_closure(M).value
    return {
        "c_min": M.c_min,
        "mults": list(M.mults),
        "recursion": rec,
        "enumeration": enum,
        "closure": clo,
        "agree": rec == enum == clo,
    }


def _cmd_verify(args, out):
    bounds = _parse_grid_spec(args.grid)
    instances = grid_instances(
        max_len=bounds["len"], max_mult=bounds["mult"],
        max_cmin=bounds["cmin"], max_rows=bounds["rows"])
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_one, instances))
    else:
        results = [_verify_one(M) for M in instances]
    ok = True
    for record in results:
        out.write(json.dumps(record) + "\n")
        ok = ok and record["agree"]
    if not ok:
        raise AssertionError("count methods disagree on the grid")
    return EXIT_OK


def _add_input_flags(p):
    p.add_argument("--dsl", help="row list in the [A,B;l;s] notation")
    p.add_argument("--json", dest="json_text", help="row list as JSON")
    p.add_argument("--format", choices=("dsl", "json"), default="json",
                   help="output format for multi-segments")
    p.add_argument("--pretty", action="store_true",
                   help="also draw the symbol grid")


def build_parser():
    top = _Parser(prog="emseg", description=__doc__)
    top.add_argument("--jobs", type=int, default=1,
                     help="worker processes for sweeps")
    sub = top.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("parse", help="parse and normalize a row list")
    _add_input_flags(p)
    p.add_argument("--relaxed", action="store_true",
                   help="accept symbols with out-of-range l")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("render", help="render a row list to DSL text")
    _add_input_flags(p)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("apply", help="apply one operator")
    _add_input_flags(p)
    p.add_argument("--op", required=True,
                   choices=("exchange", "ui", "dual", "dual-ui-dual",
                            "sort", "split", "merge"))
    p.add_argument("--k", type=int, default=0, help="row position")
    p.add_argument("--X", type=int, help="split column")
    p.add_argument("--relaxed", action="store_true")
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("blocks", help="decompose a tempered row list")
    _add_input_flags(p)
    p.set_defaults(func=_cmd_blocks)

    p = sub.add_parser("enumerate", help="enumerate class coordinates")
    p.add_argument("--M", required=True, help="comma-separated multiplicities")
    p.add_argument("--cmin", type=int, default=0)
    p.add_argument("--with-T", dest="with_T", action="store_true")
    p.add_argument("--eta", default="+")
    p.add_argument("--format", choices=("dsl", "json"), default="json")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("count", help="count packets")
    _add_input_flags(p)
    p.add_argument("--M", help="comma-separated multiplicities")
    p.add_argument("--cmin", type=int, default=0)
    p.add_argument("--method",
                   choices=("recursion", "enumeration", "closure"),
                   default="recursion")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("closure", help="breadth-first class exploration")
    _add_input_flags(p)
    p.add_argument("--limit", type=int, default=DEFAULT_MAX_STATES)
    p.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p.add_argument("--emit", choices=("nodes", "psi", "count"),
                   default="count")
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("verify", help="three-way count agreement sweep")
    p.add_argument("--grid", default="",
                   help='bounds like "len<=4,mult<=5,cmin<=1,rows<=9"')
    p.set_defaults(func=_cmd_verify)

    return top


def run(argv=None, out=None, err=None):
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except CliInputError as e:
        err.write("error: %s\n" % e)
        return EXIT_INVALID
    except (ParseError, SegmentError) as e:
        err.write("error: %s\n" % e)
        return EXIT_INVALID
    except CliLimitError as e:
        err.write("limit: %s\n" % e)
        return EXIT_LIMITS
    except AssertionError as e:
        err.write("invariant violation: %s\n" % e)
        return EXIT_INTERNAL
    except BrokenPipeError:
        return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
