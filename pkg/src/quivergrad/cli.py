"""Command-line entry point.

Exit codes: 0 verdict produced (including negative verdicts), 1 usage or
input error, 2 computation error (bound exhausted, precondition failed, ...).
"""
from __future__ import annotations

import argparse
import os
import sys
from importlib import resources

from . import grading, koszul, preprojective
from .bimodule import ext_bimodule
from .errors import (ParseError, PresentationError, QuiverError, QuiverGradError)
from .graded import hilbert
from .quiver import format_element, parse_element
from .textformat import format_presentation, parse_presentation


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def load(path):
    """Read a presentation file; bundled corpus names work from anywhere."""
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return parse_presentation(fh.read())
    name = os.path.basename(path)
    if not name.endswith(".alg"):
        name += ".alg"
    res = resources.files("quivergrad") / "data" / name
    if res.is_file():
        return parse_presentation(res.read_text(encoding="utf-8"))
    raise FileNotFoundError(f"no such file: {path}")


class Out:
    def __init__(self, fmt):
        self.fmt = fmt
        self.lines = []

    @property
    def structured(self):
        return self.fmt == "structured"

    def kv(self, key, value):
        if self.structured:
            self.lines.append(f"{key}: {value}")

    def human(self, text):
        if not self.structured:
            self.lines.append(text)

    def raw(self, text):
        self.lines.append(text.rstrip("\n"))

    def text(self):
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def _multiset(ms):
    return " ".join(f"{d}x{c}" for d, c in ms.items()) or "-"


# -- verbs -----------------------------------------------------------------

def _degree_arg(text):
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree {text!r}") from None
    return parts[0] if len(parts) == 1 else parts


def cmd_hilbert(args, out):
    p = load(args.file)
    up = args.up_to
    if isinstance(up, int) and p.rank > 1:
        up = (up,) * p.rank
    elif not isinstance(up, int) and len(up) != p.rank:
        raise UsageError(f"--up-to needs {p.rank} component(s)")
    table = hilbert(p, up)
    out.kv("status", "ok")
    out.kv("up-to", args.up_to if isinstance(args.up_to, int) else ",".join(map(str, up)))
    for k in sorted(table):
        out.kv(f"dim[{','.join(map(str, k))}]", table[k])
    out.human(table.to_line())


def cmd_koszul(args, out):
    p = load(args.file)
    v = koszul.koszul_verdict(p, args.steps, args.bound)
    out.kv("status", v.status)
    out.kv("steps", args.steps)
    out.kv("bound", args.bound)
    for i, ms in enumerate(v.step_degrees):
        out.kv(f"step[{i}]", _multiset(ms))
    out.human(f"{v.status} (steps {args.steps}, bound {args.bound})")
    for i, ms in enumerate(v.step_degrees):
        out.human(f"  step {i}: generators in degrees {_multiset(ms)}")


def cmd_almost_koszul(args, out):
    p = load(args.file)
    v = koszul.almost_koszul_verdict(p, args.bound)
    out.kv("status", v.status)
    out.kv("bound", args.bound)
    out.kv("top-degree", v.top)
    out.kv("total-dim", v.total_dim)
    if v.pq:
        out.kv("p", v.pq[0])
        out.kv("q", v.pq[1])
        out.human(f"(p,q) = ({v.pq[0]},{v.pq[1]})")
    else:
        out.human("(p,q) = none")
    for s, (w, d) in sorted(v.witness.items()):
        out.kv(f"witness[{s}]", f"{w}@{d}")
        out.human(f"  simple {s}: kernel is the simple at {w} in degree {d}")
    out.human(f"  total dimension {v.total_dim}, bound {args.bound}")


def cmd_ext_gen(args, out):
    p = load(args.file)
    r = koszul.ext_generation_check(p, args.steps, args.bound)
    status = "generated" if r.generated else "not-generated"
    out.kv("status", status)
    out.kv("steps", args.steps)
    out.kv("bound", args.bound)
    out.human(f"{status} (steps {args.steps}, bound {args.bound})")
    for i, (d, k) in enumerate(zip(r.ext_dims, r.product_ranks)):
        prod = "-" if k is None else k
        out.kv(f"ext[{i}]", f"dim {d} products {prod}")
        out.human(f"  Ext^{i}: dim {d}, spanned by products: {prod}")


def cmd_qdual(args, out):
    out.raw(format_presentation(koszul.quadratic_dual(load(args.file))))


def cmd_preproj(args, out):
    p = load(args.file)
    pp = preprojective.higher_preprojective_presentation(p, args.n)
    E = ext_bimodule(p, args.n)
    preprojective.check_against_tensor_powers(pp, E, args.n, args.bound)
    out.raw(format_presentation(pp))


def cmd_double(args, out):
    from .graded import Presentation

    out.raw(format_presentation(Presentation(preprojective.double_quiver(load(args.file)))))


def cmd_classical(args, out):
    out.raw(format_presentation(preprojective.classical_preprojective(load(args.file))))


def cmd_cuts_enumerate(args, out):
    p = load(args.file)
    verdicts = grading.enumerate_cuts(p, args.n, args.bound, workers=args.workers)
    valid = [v for v in verdicts if v.valid]
    out.kv("status", "ok")
    out.kv("n", args.n)
    out.kv("bound", args.bound)
    out.kv("subsets", len(verdicts))
    out.kv("valid", len(valid))
    for v in verdicts:
        out.kv(f"cut[{','.join(sorted(v.cut))}]", v.status)
    out.human(f"{len(valid)} valid cut(s) among {len(verdicts)} subsets (n {args.n}, bound {args.bound})")
    for v in verdicts:
        out.human(f"  {v.cut}: {v.status}")


def _cut_arg(text):
    return grading.Cut.parse(text)


def cmd_cut_check(args, out):
    p = load(args.file)
    v = grading.validate_cut(p, args.cut, args.n, args.bound)
    out.kv("status", "valid" if v.valid else "invalid")
    out.kv("cut", ",".join(sorted(v.cut)))
    out.kv("n", args.n)
    out.kv("bound", args.bound)
    if v.reason:
        out.kv("reason", v.reason)
    if v.gldim is not None:
        out.kv("gldim", v.gldim)
    for i, sl in sorted(v.slices.items()):
        out.kv(f"slice[{i}]", sum(sl.values()))
    out.human(f"{v.cut}: {v.status} (n {args.n}, bound {args.bound})")
    if v.gldim is not None:
        out.human(f"  degree-0 part has global dimension {v.gldim}")
    for i, sl in sorted(v.slices.items()):
        out.human(f"  slice {i}: dim {sum(sl.values())}")


def cmd_cut_mutate(args, out):
    p = load(args.file)
    c = grading.mutate_cut(p, args.cut, args.vertex)
    out.kv("status", "ok")
    out.kv("cut", ",".join(sorted(c)))
    out.human(str(c))


def cmd_conjugate(args, out):
    p = load(args.file)
    r = parse_element(p.quiver, args.by)
    images = grading.conjugate(p, r, args.nil_bound)
    out.kv("status", "ok")
    for k, x in images.items():
        out.kv(f"image[{k}]", format_element(x))
        out.human(f"{k} -> {format_element(x)}")


def cmd_nilpotency(args, out):
    p = load(args.file)
    texts = [t.strip() for chunk in args.elements for t in chunk.split(";") if t.strip()]
    xs = [parse_element(p.quiver, t) for t in texts]
    res = grading.nilpotency_degrees(p, xs, args.bound)
    out.kv("status", "ok")
    out.kv("bound", args.bound)
    for t, r in zip(texts, res):
        out.kv(f"element[{t}]", r.status)
        out.human(f"{t}: {r.status}")


def _weights(p, text):
    if text == "length":
        return grading.path_length_weights(p)
    if text.startswith("cut:"):
        return grading.cut_weights(p, grading.Cut.parse(text[4:]).check(p))
    w = {}
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"bad weight item {item!r}")
        k, v = item.split("=", 1)
        w[k.strip()] = int(v)
    missing = {a.name for a in p.quiver.arrows} - set(w)
    if missing:
        raise UsageError(f"weights missing for {sorted(missing)}")
    return w


def cmd_gradical(args, out):
    p = load(args.file)
    g1 = grading.Grading(_weights(p, args.w1))
    g2 = grading.Grading(_weights(p, args.w2))
    if args.w2_conjugate_by:
        images = grading.conjugate(p, parse_element(p.quiver, args.w2_conjugate_by))
        g2.generators = {a.name: images[a.name] for a in p.quiver.arrows}
    verdict = grading.graded_radical_compare(p, g1, g2, args.bound)
    out.kv("status", verdict)
    out.kv("bound", args.bound)
    out.human(f"{verdict} (bound {args.bound})")


# -- parser ----------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "structured"], default="human")
    parser = _Parser(prog="quivergrad", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, func, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func)
        sp.add_argument("file")
        return sp

    sp = verb("hilbert", cmd_hilbert)
    sp.add_argument("--up-to", type=_degree_arg, required=True,
                    help="degree bound; comma separated for rank-2 weights")
    sp = verb("koszul", cmd_koszul)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp = verb("almost-koszul", cmd_almost_koszul)
    sp.add_argument("--bound", type=int, required=True)
    sp = verb("ext-gen", cmd_ext_gen)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True)
    verb("qdual", cmd_qdual)
    sp = verb("preproj", cmd_preproj)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True,
                    help="largest total degree cross-checked against tensor powers")
    verb("double", cmd_double)
    verb("classical-preproj", cmd_classical)

    cuts = sub.add_parser("cuts")
    cuts_sub = cuts.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = cuts_sub.add_parser("enumerate", parents=[common])
    sp.set_defaults(func=cmd_cuts_enumerate)
    sp.add_argument("file")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)

    cut = sub.add_parser("cut")
    cut_sub = cut.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = cut_sub.add_parser("check", parents=[common])
    sp.set_defaults(func=cmd_cut_check)
    sp.add_argument("file")
    sp.add_argument("--cut", type=_cut_arg, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", type=int, default=2,
                    help="largest preprojective degree compared (printed with the verdict)")
    sp = cut_sub.add_parser("mutate", parents=[common])
    sp.set_defaults(func=cmd_cut_mutate)
    sp.add_argument("file")
    sp.add_argument("--cut", type=_cut_arg, required=True)
    sp.add_argument("--vertex", required=True)

    sp = verb("conjugate", cmd_conjugate)
    sp.add_argument("--by", required=True)
    sp.add_argument("--nil-bound", type=int, default=32)
    sp = verb("nilpotency", cmd_nilpotency)
    sp.add_argument("--elements", nargs="+", required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp = verb("gradical-compare", cmd_gradical)
    sp.add_argument("--w1", required=True)
    sp.add_argument("--w2", required=True)
    sp.add_argument("--w2-conjugate-by")
    sp.add_argument("--bound", type=int, required=True)
    return parser


def run(argv, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    fmt = "structured" if "--format=structured" in argv or (
        "--format" in argv and argv[argv.index("--format") + 1:][:1] == ["structured"]) else "human"
    old = sys.stderr
    sys.stderr = stderr
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _report(stdout, stderr, fmt, "usage", str(exc))
        return 1
    except SystemExit as exc:      # --help
        return 0 if not exc.code else 1
    finally:
        sys.stderr = old
    out = Out(args.format)
    try:
        args.func(args, out)
    except UsageError as exc:
        _report(stdout, stderr, args.format, "usage", str(exc))
        return 1
    except (ParseError, QuiverError, PresentationError, FileNotFoundError) as exc:
        reason = getattr(exc, "reason", "file-not-found")
        _report(stdout, stderr, args.format, reason, str(exc))
        return 1
    except QuiverGradError as exc:
        _report(stdout, stderr, args.format, exc.reason, str(exc))
        return 2
    stdout.write(out.text())
    return 0


def _report(stdout, stderr, fmt, reason, message):
    if fmt == "structured":
        stdout.write(f"status: error\nreason: {reason}\nmessage: {message}\n")
    else:
        stderr.write(f"error: {message}\n")


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
