"""Command line entry point: ``cmauslander <subcommand> ...``.

Exit status: 0 when every verification is certified, 1 when a mathematical
check fails, 2 for usage or parse errors and 3 when a resource bound is
exhausted before the question is settled.
"""
from __future__ import annotations

import argparse
import logging
import re
import sys

from .algebra import AlgebraError
from .bimodules import BimoduleComplex
from .complexes import BoundExceeded, ComplexError
from .homalg import PreconditionError, cm_failure, gorenstein_report, verify_gproj_list
from .kernel import QQ, GF, Field
from .pipeline import PipelineError, assemble_transfer, auslander_algebra, cm_data, ext_quiver, normal_form
from .report import tilting_document, transfer_document, verify_document
from .textio import FormatError, format_algebra, format_certificate, format_complex, load_algebra, load_complex, \
    load_certificate, load_module
from .tilt import end_algebra, verify_generation, verify_orthogonality

log = logging.getLogger("cmauslander")

OK, FAILED, USAGE, UNKNOWN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_field(text: str) -> Field:
    t = text.strip().replace(" ", "")
    if t in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"GF\(?(\d+)\)?", t)
    if not m:
        raise argparse.ArgumentTypeError(f"unknown field {text!r}; use Q or GF<p>")
    try:
        return GF(int(m.group(1)))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def parse_window(text: str) -> list[int]:
    try:
        if ":" in text:
            a, b = text.split(":")
            return list(range(int(a), int(b) + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad window {text!r}; use a:b or a,b,c") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


class Output:
    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream

    def kv(self, key, value):
        if isinstance(value, bool):
            value = str(value).lower()
        sep = "=" if self.fmt == "kv" else ": "
        print(f"{key}{sep}{value}", file=self.stream)

    def line(self, text):
        print(text, file=self.stream)


def _gproj_paths(args) -> list[str]:
    paths = []
    for item in args.gproj or []:
        paths.extend(p for p in item.split(",") if p)
    return paths


def _load_gproj(args, A):
    paths = _gproj_paths(args) + list(getattr(args, "modules", []) or [])
    if not paths:
        raise UsageError("no Gorenstein projective modules given (use --gproj)")
    return [load_module(p, A, args.field) for p in paths]


def _write(path, text):
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_gorenstein(args, out: Output) -> int:
    A = load_algebra(args.algebra, args.field)
    r = gorenstein_report(A, args.bound)
    fmt = lambda v: v if v is not None else "unknown"
    if out.fmt == "text":
        out.line(f"d_left={fmt(r.left_injective_dimension)} d_right={fmt(r.right_injective_dimension)}")
    out.kv("d_left", fmt(r.left_injective_dimension))
    out.kv("d_right", fmt(r.right_injective_dimension))
    out.kv("gorenstein", r.is_gorenstein if r.is_gorenstein else "unknown")
    out.kv("d", fmt(r.d))
    out.kv("bound", r.bound)
    return OK if r.is_gorenstein else UNKNOWN


def cmd_cm_check(args, out: Output) -> int:
    A = load_algebra(args.algebra, args.field)
    r = gorenstein_report(A, args.bound)
    status = OK
    for path in args.modules:
        X = load_module(path, A, args.field)
        why = cm_failure(X, r, args.extra_degrees)
        out.kv(f"{X.name or path}", "cm" if why is None else f"not cm: {why}")
        if why is not None:
            status = FAILED
    return status


def cmd_gproj_verify(args, out: Output) -> int:
    A = load_algebra(args.algebra, args.field)
    mods = _load_gproj(args, A)
    r = gorenstein_report(A, args.bound)
    cert = verify_gproj_list(A, mods, r, args.seed, args.extra_degrees)
    for line in cert.lines():
        key, _, val = line.partition(": ")
        out.kv(key, val)
    return OK if cert.certified else FAILED


def cmd_auslander(args, out: Output) -> int:
    A = load_algebra(args.algebra, args.field)
    mods = _load_gproj(args, A)
    cm = cm_data(A, mods, gorenstein_report(A, args.bound), args.seed, args.extra_degrees)
    E = auslander_algebra(cm)
    L = E.algebra
    arrows = ext_quiver(L)
    out.kv("dimension", L.dim)
    out.kv("vertices", L.vertex_count)
    out.kv("basic", L.is_basic())
    out.kv("arrows", sum(arrows.values()))
    for (s, t), c in sorted(arrows.items()):
        out.kv(f"arrows_{s + 1}_{t + 1}", c)
    out.kv("cartan", " ".join(",".join(str(v) for v in row) for row in L.cartan_matrix()))
    names = [m.name or f"#{i + 1}" for i, m in enumerate(E.modules)]
    out.kv("vertex_modules", " ".join(names))
    if args.out:
        _write(args.out, format_algebra(L, table=True))
    return OK


def _load_tilting(args):
    A = load_algebra(args.algebra, args.field)
    t = load_complex(args.complex, A, args.field)
    if isinstance(t, BimoduleComplex):
        raise UsageError("expected a one-sided complex, got a bimodule complex")
    return A, t


def cmd_tilting_verify(args, out: Output) -> int:
    A, t = _load_tilting(args)
    if not t.is_projective_complex:
        raise UsageError("terms of a tilting complex must be sums of standard projectives ('projective' lines)")
    orth = verify_orthogonality(t, args.window)
    for line in orth.lines():
        key, _, val = line.partition(": ")
        out.kv(key, val)
    cert = load_certificate(args.certificate, A.field) if args.certificate else None
    res = verify_generation(t, cert, budget=args.budget, seed=args.seed)
    for line in res.lines():
        key, _, val = line.partition(": ")
        out.kv(key, val)
    if args.out and res.certificate is not None:
        _write(args.out, format_certificate(res.certificate))
    if args.report == "kv" and args.document:
        _write(args.document, tilting_document(t, res, orth))
    if not orth.passed or res.status == "failed":
        return FAILED
    if res.status == "unknown":
        return UNKNOWN
    return OK


def cmd_end_algebra(args, out: Output) -> int:
    A, t = _load_tilting(args)
    E = end_algebra(t, seed=args.seed)
    L = E.algebra
    out.kv("dimension", L.dim)
    out.kv("vertices", L.vertex_count)
    out.kv("arrows", sum(ext_quiver(L).values()))
    out.kv("cartan", " ".join(",".join(str(v) for v in row) for row in L.cartan_matrix()))
    out.kv("products_checked", E.check_products())
    if args.out:
        _write(args.out, format_algebra(L, table=True))
    return OK


def _load_delta(path, field) -> BimoduleComplex:
    d = load_complex(path, None, field)
    if not isinstance(d, BimoduleComplex):
        raise UsageError(f"{path} is not a bimodule complex (needs left/right lines)")
    return d


def cmd_derived_image(args, out: Output) -> int:
    A = load_algebra(args.algebra, args.field)
    delta = _load_delta(args.delta, args.field)
    if delta.right != A:
        raise UsageError("the bimodule complex acts on a different algebra")
    status = OK
    for n, path in enumerate(args.modules):
        X = load_module(path, A, args.field)
        nf = normal_form(delta, X, seed=args.seed)
        c = nf.complex
        name = X.name or path
        out.kv(f"{name}.normal_form", " ".join(f"{i}:{c.dim(i)}" for i in c.degrees()) or "0")
        out.kv(f"{name}.degree0_cm", nf.degree0_cm)
        out.kv(f"{name}.positive_projective", nf.positive_projective)
        if nf.failure:
            out.kv(f"{name}.failure", nf.failure)
            status = FAILED
        if args.out:
            _write(args.out if len(args.modules) == 1 else f"{args.out}.{n + 1}", format_complex(c))
    return status


def cmd_cm_transfer(args, out: Output) -> int:
    A = load_algebra(args.algebra, args.field)
    delta = _load_delta(args.delta, args.field)
    B = load_algebra(args.target, args.field)
    if delta.right != A or delta.left != B:
        raise UsageError("the bimodule complex does not match the given algebras")
    mods = _load_gproj(args, A)
    report_A = gorenstein_report(A, args.bound)
    cm = cm_data(A, mods, report_A, args.seed, args.extra_degrees)
    rep = assemble_transfer(cm, delta, gorenstein_report(B, args.bound), seed=args.seed, budget=args.budget)
    doc = transfer_document(rep, A, cm.modules)
    if args.report == "kv":
        out.line(doc.rstrip("\n"))
    else:
        for line in rep.lines():
            out.line(line)
    if args.out:
        _write(args.out, doc)
    if rep.certified:
        return OK
    return UNKNOWN if rep.generation.status == "unknown" else FAILED


def cmd_verify_report(args, out: Output) -> int:
    with open(args.report_file) as fh:
        text = fh.read()
    v = verify_document(text)
    for line in v.lines():
        key, _, val = line.partition(": ")
        out.kv(key, val)
    if not v.passed:
        n, d = v.first_failure
        out.kv("first_failure", f"{n}: {d}" if d else n)
        return FAILED
    if v.claimed == "certified":
        return OK
    return UNKNOWN if v.claimed == "unknown" else FAILED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=parse_field, default=None, help="override the field of every input (Q or GF<p>)")
    common.add_argument("--bound", type=_positive, default=None, help="bound for injective and projective dimensions")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized subroutines")
    common.add_argument("--report", choices=("text", "kv"), default="text", help="output format")
    common.add_argument("--out", default=None, help="write the main artifact to this file")
    common.add_argument("--extra-degrees", type=_nonnegative, default=0, help="extra Ext degrees to check")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="cmauslander", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gorenstein", parents=[common], help="injective dimensions of the regular module")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_gorenstein)

    s = sub.add_parser("cm-check", parents=[common], help="check modules for vanishing Ext into the algebra")
    s.add_argument("algebra")
    s.add_argument("modules", nargs="+")
    s.set_defaults(func=cmd_cm_check)

    s = sub.add_parser("gproj-verify", parents=[common], help="certify a list of Gorenstein projectives")
    s.add_argument("algebra")
    s.add_argument("modules", nargs="*")
    s.add_argument("--gproj", action="append")
    s.set_defaults(func=cmd_gproj_verify)

    s = sub.add_parser("auslander", parents=[common], help="endomorphism algebra of a certified list")
    s.add_argument("algebra")
    s.add_argument("modules", nargs="*")
    s.add_argument("--gproj", action="append")
    s.set_defaults(func=cmd_auslander)

    s = sub.add_parser("tilting-verify", parents=[common], help="orthogonality and generation of a complex")
    s.add_argument("algebra")
    s.add_argument("complex")
    s.add_argument("--certificate", default=None)
    s.add_argument("--budget", type=int, default=64)
    s.add_argument("--window", type=parse_window, default=None)
    s.add_argument("--document", default=None, help="with --report kv: write a replayable report here")
    s.set_defaults(func=cmd_tilting_verify)

    s = sub.add_parser("end-algebra", parents=[common], help="endomorphism algebra in the homotopy category")
    s.add_argument("algebra")
    s.add_argument("complex")
    s.set_defaults(func=cmd_end_algebra)

    s = sub.add_parser("derived-image", parents=[common], help="normal forms of derived images of modules")
    s.add_argument("algebra")
    s.add_argument("delta")
    s.add_argument("modules", nargs="+")
    s.set_defaults(func=cmd_derived_image)

    s = sub.add_parser("cm-transfer", parents=[common], help="transfer of the Auslander algebra")
    s.add_argument("algebra")
    s.add_argument("delta")
    s.add_argument("target")
    s.add_argument("--gproj", action="append")
    s.add_argument("--budget", type=int, default=64)
    s.set_defaults(func=cmd_cm_transfer)

    s = sub.add_parser("verify-report", parents=[common], help="replay a report document")
    s.add_argument("report_file")
    s.set_defaults(func=cmd_verify_report)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=stderr,
                        format="%(levelname)s %(message)s")
    out = Output(args.report, stdout)
    try:
        return args.func(args, out)
    except (UsageError, FormatError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return USAGE
    except BoundExceeded as exc:
        print(f"unknown: {exc}", file=stderr)
        return UNKNOWN
    except (PipelineError, PreconditionError, ComplexError, AlgebraError) as exc:
        print(f"failed: {exc}", file=stderr)
        return FAILED


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
