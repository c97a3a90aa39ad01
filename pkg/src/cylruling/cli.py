"""Command line entry point: ``cylruling <group> <verb> [options]``.

Exit codes: 0 success, 1 domain error (a JSON error record goes to stdout),
2 usage error.
"""
import argparse
import json
import sys

from . import quiver as qv
from .certify import SuspensionSpec, nonsqueeze_certificate, suspension_counts, torus_local_systems
from .errors import BadParams, DomainError, InvalidFront
from .front import (builtin_front, cover, format_rational, parse_front, parse_rational, serialize_front,
                    validate_front)
from .moves import MoveSpec, apply_move, available_moves, fuzz_moves, trajectory_log
from .rulings import (CircularRuling, chi, count_circular_rulings, count_disk_rulings, enumerate_circular_rulings,
                      enumerate_disk_rulings, expand_short, is_eps_short, length_spectrum, planar_ruling_count)

SCHEMA = "cylruling-cli/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _rational(text):
    try:
        return parse_rational(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _u64(text):
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _read(path):
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _front(path):
    return parse_front(_read(path))


class _Out:
    def __init__(self, args):
        self.json = getattr(args, "json", False)
        self.lines = []
        self.record = None

    def text(self, line):
        self.lines.append(line)

    def data(self, record, text_lines):
        self.record = record
        self.lines.extend(text_lines)

    def render(self):
        if self.json:
            rec = self.record if self.record is not None else {"lines": self.lines}
            return json.dumps({"schema": SCHEMA, **rec}, sort_keys=True, ensure_ascii=False) + "\n"
        return "".join(line + "\n" for line in self.lines)


def ruling_to_dict(front, r):
    out = {
        "switches": [i for i, s in enumerate(r.switches) if s],
        "pairings": [[list(p) for p in sl] for sl in r.pairings],
        "chi": chi(front, r),
    }
    if isinstance(r, CircularRuling):
        out["offsets"] = [[[a, b, int(n)] for a, b, n in sl] for sl in r.offsets]
    return out


# -- front ------------------------------------------------------------------

def cmd_front_validate(args, out):
    rep = validate_front(_read(args.file))
    codes = rep.codes()
    if not rep.ok:
        raise InvalidFront("; ".join(codes), codes=",".join(codes))
    out.data({"valid": True}, ["valid"])


def cmd_front_cover(args, out):
    if args.k is None:
        raise UsageError("front cover needs --k")
    return serialize_front(cover(_front(args.file), args.k))


def cmd_front_builtin(args, out):
    return serialize_front(builtin_front(args.name, k=args.k, m=args.m))


# -- rulings ----------------------------------------------------------------

def _kinds(kind):
    return ("disk", "circular") if kind == "both" else (kind,)


def cmd_rulings_count(args, out):
    f = _front(args.file)
    if args.kind == "planar":
        if args.cut is None:
            raise UsageError("planar counts need --cut")
        n = planar_ruling_count(f, args.cut)
        out.data({"planar": n, "cut": format_rational(args.cut)}, [str(n)])
        return
    counts = {}
    for kind in _kinds(args.kind):
        counts[kind] = count_disk_rulings(f) if kind == "disk" else count_circular_rulings(f)
    if len(counts) == 1:
        out.data(counts, [str(next(iter(counts.values())))])
    else:
        out.data(counts, [f"{k} {v}" for k, v in counts.items()])


def cmd_rulings_enumerate(args, out):
    f = _front(args.file)
    rec, lines = {}, []
    for kind in _kinds(args.kind):
        rs = enumerate_disk_rulings(f) if kind == "disk" else enumerate_circular_rulings(f)
        rec[kind] = [ruling_to_dict(f, r) for r in rs]
        for r in rec[kind]:
            lines.append(f"{kind} chi={r['chi']} switches={r['switches']}")
    out.data(rec, lines)


def cmd_rulings_expand(args, out):
    f = _front(args.file)
    rec, lines = [], []
    for r in enumerate_disk_rulings(f):
        if args.eps is not None and not is_eps_short(f, r, args.eps):
            rec.append({"disk": ruling_to_dict(f, r), "short": False})
            lines.append(f"switches={ruling_to_dict(f, r)['switches']} not {format_rational(args.eps)}-short")
            continue
        c = expand_short(f, r)
        d = ruling_to_dict(f, c)
        rec.append({"disk": ruling_to_dict(f, r), "circular": d})
        lines.append(f"switches={d['switches']} offsets={d['offsets']}")
    out.data({"expansions": rec}, lines)


def cmd_rulings_spectrum(args, out):
    f = _front(args.file)
    if args.x is None:
        raise UsageError("rulings spectrum needs --x")
    rec, lines = {}, []
    for kind in _kinds(args.kind):
        rs = enumerate_disk_rulings(f) if kind == "disk" else enumerate_circular_rulings(f)
        specs = [[format_rational(v) for v in length_spectrum(f, r, args.x, args.side).lengths] for r in rs]
        rec[kind] = specs
        lines += [f"{kind} " + " ".join(s) for s in specs]
    out.data({"x": format_rational(args.x), **rec}, lines)


# -- moves ------------------------------------------------------------------

def cmd_moves_list(args, out):
    ms = [m.text() for m in available_moves(_front(args.file))]
    out.data({"moves": ms}, ms)


def cmd_moves_apply(args, out):
    f = _front(args.file)
    for text in args.move:
        f = apply_move(f, MoveSpec.parse(text))
    return serialize_front(f)


def cmd_moves_fuzz(args, out):
    f = _front(args.file)
    fronts, moves = fuzz_moves(f, args.seed, args.n, max_crossings=args.max_crossings)
    steps = []
    for g in fronts:
        steps.append({"disk": count_disk_rulings(g), "circular": count_circular_rulings(g)})
    log = trajectory_log(fronts, moves)
    lines = [f"{line} disk={s['disk']} circular={s['circular']}" for line, s in zip(log, steps)]
    out.data({"seed": args.seed, "moves": [m.text() for m in moves], "counts": steps, "log": log}, lines)


# -- quiver -----------------------------------------------------------------

def _with_p(data, p):
    if p is None:
        return data
    qv.check_prime(p)
    if "p" in data and int(data["p"]) != p:
        raise BadParams(f"file is over F_{data['p']} but --p {p} was given")
    return {**data, "p": p}


def _bars_text(bars):
    return [f"{b.start} {b.length} {b.shift}" for b in bars]


def cmd_quiver_decompose(args, out):
    data = _with_p(qv.load_json(_read(args.file)), args.p)
    if args.linear:
        bars = qv.decompose_linear(qv.rep_from_dict(data, linear=True))
    else:
        bars = qv.decompose_nilpotent_cyclic(qv.rep_from_dict(data))
    out.data({"bars": [b.to_list() for b in bars]}, _bars_text(bars))


def cmd_quiver_cohomology(args, out):
    data = qv.load_json(_read(args.file))
    if args.p is not None:
        data = {**data, "even": _with_p(data.get("even", {}), args.p), "odd": _with_p(data.get("odd", {}), args.p)}
    c = qv.complex_from_dict(data)
    he, ho = qv.periodic_cohomology(c)
    bars = qv.decompose_periodic(c)
    out.data({"even": qv.rep_to_dict(he), "odd": qv.rep_to_dict(ho), "bars": [b.to_list() for b in bars]},
             [f"even dims {list(he.dims)}", f"odd dims {list(ho.dims)}"] + _bars_text(bars))


# -- certify / suspend ------------------------------------------------------

def cmd_certify(args, out):
    cert = nonsqueeze_certificate(_front(args.file))
    d = cert.to_dict()
    out.data(d, [f"front {cert.front_hash}", f"disk {cert.disk_count}", f"circular {cert.circular_count}",
                 f"violated {str(cert.inequality_violated).lower()}"] + ([cert.conclusion] if cert.conclusion else []))


def cmd_suspend(args, out):
    if args.torus is not None:
        if args.local_systems is not None:
            raise UsageError("give either --local-systems or --torus")
        ls = torus_local_systems(args.torus, args.q)
    elif args.local_systems is not None:
        ls = args.local_systems
    else:
        raise UsageError("suspend needs --local-systems or --torus")
    spec = SuspensionSpec(args.disk, args.circular, ls, args.q)
    disk, circ, violated = suspension_counts(spec)
    out.data({"disk_total": disk, "circular_total": circ, "violated": violated, "local_system_count": ls},
             [f"disk {disk}", f"circular {circ}", f"violated {str(violated).lower()}"])


# -- parser -----------------------------------------------------------------

def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="versioned JSON output")
    common.add_argument("--out", help="write output to this path instead of stdout")

    p = _Parser(prog="cylruling", description="Normal rulings of fronts on the cylinder.")
    groups = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def verb(sub, name, func, file=True, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        if file:
            sp.add_argument("file", help="front or rep file ('-' for stdin)")
        sp.set_defaults(func=func)
        return sp

    g = groups.add_parser("front").add_subparsers(dest="verb", required=True, parser_class=_Parser)
    verb(g, "validate", cmd_front_validate)
    verb(g, "cover", cmd_front_cover).add_argument("--k", type=int)
    b = verb(g, "builtin", cmd_front_builtin, file=False)
    b.add_argument("name")
    b.add_argument("--k", type=int)
    b.add_argument("--m", type=int)

    g = groups.add_parser("rulings").add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for name, func in (("count", cmd_rulings_count), ("enumerate", cmd_rulings_enumerate),
                       ("spectrum", cmd_rulings_spectrum)):
        sp = verb(g, name, func)
        kinds = ["disk", "circular", "both"] + (["planar"] if name == "count" else [])
        sp.add_argument("--kind", choices=kinds, default="both")
        if name == "count":
            sp.add_argument("--cut", type=_rational)
        if name == "spectrum":
            sp.add_argument("--x", type=_rational)
            sp.add_argument("--side", choices=["left", "right"], default="right")
    verb(g, "expand", cmd_rulings_expand).add_argument("--eps", type=_rational)

    g = groups.add_parser("moves").add_subparsers(dest="verb", required=True, parser_class=_Parser)
    verb(g, "list", cmd_moves_list)
    verb(g, "apply", cmd_moves_apply).add_argument("move", nargs="+", help="e.g. R2_in@3/+1")
    fz = verb(g, "fuzz", cmd_moves_fuzz)
    fz.add_argument("--seed", type=_u64, default=0)
    fz.add_argument("--n", type=_nonneg, default=10)
    fz.add_argument("--max-crossings", type=_nonneg)

    g = groups.add_parser("quiver").add_subparsers(dest="verb", required=True, parser_class=_Parser)
    d = verb(g, "decompose", cmd_quiver_decompose)
    d.add_argument("--p", type=int)
    d.add_argument("--linear", action="store_true", help="read an A_n rep (n-1 arrows)")
    verb(g, "cohomology", cmd_quiver_cohomology).add_argument("--p", type=int)

    verb(groups, "certify", cmd_certify)
    s = verb(groups, "suspend", cmd_suspend, file=False)
    s.add_argument("--disk", type=_nonneg, required=True)
    s.add_argument("--circular", type=_nonneg, required=True)
    s.add_argument("--local-systems", type=_nonneg)
    s.add_argument("--torus", type=_nonneg, help="base T^m: (q-1)^m local systems")
    s.add_argument("--q", type=int, default=2)
    return p


def _emit(payload, path, stdout):
    if path:
        with open(path, "wb") as fh:
            fh.write(payload)
    else:
        stdout.write(payload)
        stdout.flush()


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout.buffer
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return 2
    except SystemExit as exc:      # --help
        return 0 if not exc.code else 2
    out = _Out(args)
    try:
        result = args.func(args, out)
    except UsageError as exc:
        print(exc, file=stderr)
        return 2
    except DomainError as exc:
        rec = {"schema": SCHEMA, **exc.record()}
        stdout.write((json.dumps(rec, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8"))
        stdout.flush()
        return 1
    if result is not None:
        if args.json:
            doc = {"schema": SCHEMA, "front": json.loads(result)}
            result = (json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")
        _emit(result, args.out, stdout)
    else:
        _emit(out.render().encode("utf-8"), args.out, stdout)
    return 0


def main():
    sys.exit(run())
