"""Replayable report documents.

A report embeds every object a claim depends on (algebras, complexes,
certificates, chain maps and coordinate tables) so that `verify_document`
can re-check it with linear algebra alone, without resolutions or searches.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Algebra
from .complexes import ChainMap, Complex, ComplexError, direct_sum_complexes
from .kernel import Matrix, rank
from .modules import EndomorphismData
from .textio import (
    Context,
    FormatError,
    Lines,
    format_algebra,
    format_certificate,
    format_complex,
    format_matrix,
    format_module,
    parse_algebra,
    parse_certificate,
    parse_complex,
    parse_matrix,
    parse_module,
)
from .tilt import EndAlgebra, replay, verify_orthogonality


def _block(key: str, text: str) -> list[str]:
    return [f"{key} begin"] + text.rstrip("\n").splitlines() + ["end"]


def transfer_document(rep, source_algebra: Algebra | None = None, modules=None) -> str:
    """Key-value document for a `TransferReport`."""
    out = ["report cm-transfer", f"status {'certified' if rep.certified else 'failed'}"]
    if rep.failure:
        out.append(f"failure {rep.failure}")
    out.append(f"d_A {rep.report_A.d}")
    out.append(f"d_B {rep.report_B.d}")
    if source_algebra is not None and modules is not None:
        out += _block("source", format_algebra(source_algebra))
        for m in modules:
            out += _block("gproj", format_module(m, "source"))
    out += _block("lambda", format_algebra(rep.lam.algebra, table=True))
    out += _block("gamma", format_algebra(rep.gamma.algebra, table=True))
    for p in rep.t_gamma_summands:
        out += _block("part", format_complex(p, "gamma"))
    out += _block("certificate", format_certificate(rep.generation.certificate))
    out.append("orthogonality " + " ".join(f"{n}:{d}" for n, d in sorted(rep.orth_gamma.dims.items())))
    if rep.natural is not None:
        for k, f in enumerate(rep.natural.chain_maps):
            a, b = rep.lam.grading[k]
            out.append(f"natural {k + 1} {a + 1} {b + 1}")
            for i in sorted(f.comps):
                out.append(f"comp {i} {format_matrix(f.comps[i], shape=True)}")
        out.append(f"natural_matrix {format_matrix(rep.natural.matrix, shape=True)}")
    return "\n".join(out) + "\n"


def tilting_document(t: Complex, result, orth=None) -> str:
    out = ["report tilting", f"status {result.status}"]
    out += _block("algebra", format_algebra(t.algebra))
    out += _block("complex", format_complex(t, "algebra"))
    if result.certificate is not None:
        out += _block("certificate", format_certificate(result.certificate))
    if orth is not None:
        out.append("orthogonality " + " ".join(f"{n}:{d}" for n, d in sorted(orth.dims.items())))
    return "\n".join(out) + "\n"


@dataclass
class Verification:
    kind: str
    checks: list = field(default_factory=list)  # (name, passed, detail)
    claimed: str = ""

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def first_failure(self):
        return next(((n, d) for n, ok, d in self.checks if not ok), None)

    def lines(self):
        out = [f"report: {self.kind}", f"claimed_status: {self.claimed}"]
        for n, ok, d in self.checks:
            out.append(f"check {n}: {'pass' if ok else 'fail'}" + (f" ({d})" if d and not ok else ""))
        out.append(f"replay: {'pass' if self.passed else 'fail'}")
        return out


def _sections(text: str):
    lines = Lines(text, "<report>")
    kind = None
    items = []
    for n, s in lines:
        key, _, rest = s.partition(" ")
        if key == "report":
            kind = rest.strip()
        elif rest.strip() == "begin":
            items.append((key, lines.block(n), n))
        else:
            items.append((key, rest.strip(), n))
    if kind is None:
        raise FormatError("missing 'report' header")
    return kind, items


def verify_document(text: str) -> Verification:
    kind, items = _sections(text)
    if kind == "cm-transfer":
        return _verify_transfer(items)
    if kind == "tilting":
        return _verify_tilting(items)
    raise FormatError(f"unknown report kind {kind!r}")


def _check(v: Verification, name: str, fn):
    try:
        ok, detail = fn()
    except (ValueError, ComplexError, ArithmeticError) as exc:
        ok, detail = False, str(exc)
    v.checks.append((name, bool(ok), detail))
    return ok


def _verify_tilting(items) -> Verification:
    v = Verification("tilting")
    data = {}
    for key, val, _ in items:
        data[key] = val
    v.claimed = data.get("status", "")
    A = parse_algebra(data["algebra"], Context())
    t = parse_complex(data["complex"], Context(), algebra=A)
    _check(v, "complex", lambda: (t.check(), ""))
    orth = None

    def o():
        nonlocal orth
        orth = verify_orthogonality(t)
        return orth.passed, f"shift {orth.offending}"

    _check(v, "orthogonality", o)
    if "certificate" in data:
        cert = parse_certificate(data["certificate"], A.field)
        res = replay(cert, t)
        _check(v, "certificate", lambda: (res.status == "certified", res.message))
    if v.claimed == "certified" and "certificate" not in data:
        v.checks.append(("certificate", False, "certified claim without certificate"))
    return v


def _verify_transfer(items) -> Verification:
    v = Verification("cm-transfer")
    parts_txt, gproj_txt, naturals = [], [], []
    data = {}
    cur = None
    for key, val, _ in items:
        if key == "part":
            parts_txt.append(val)
        elif key == "gproj":
            gproj_txt.append(val)
        elif key == "natural":
            k, a, b = (int(t) for t in val.split())
            cur = (k, a - 1, b - 1, {})
            naturals.append(cur)
        elif key == "comp":
            if cur is None:
                raise FormatError("'comp' outside a natural entry")
            deg, _, mat = val.partition(" ")
            cur[3][int(deg)] = mat
        else:
            data[key] = val
    v.claimed = data.get("status", "")
    L = parse_algebra(data["lambda"], Context())
    G = parse_algebra(data["gamma"], Context())
    F = G.field
    _check(v, "lambda_associative", lambda: (L.is_associative(), ""))
    _check(v, "gamma_associative", lambda: (G.is_associative(), ""))
    if "source" in data:
        A = parse_algebra(data["source"], Context())
        mods = [parse_module(t, Context(), algebra=A) for t in gproj_txt]

        def lam_end():
            from .pipeline import CMData, generator_list
            from .tilt import _as_projective_vertex

            pv = [_as_projective_vertex(m) for m in mods]
            cm = CMData(A, None, mods, pv, [i for i, p in enumerate(pv) if p is None])
            E = EndomorphismData(generator_list(cm)).algebra
            return E == L, "table differs from End of the generator list"

        _check(v, "lambda_is_end", lam_end)
    parts = [parse_complex(t, Context(), algebra=G) for t in parts_txt]
    for i, p in enumerate(parts):
        _check(v, f"part{i + 1}_projective", lambda p=p: (p.is_projective_complex, ""))
    t = direct_sum_complexes(parts).complex if len(parts) > 1 else parts[0]

    def orth():
        o = verify_orthogonality(t)
        return o.passed, f"nonzero homotopy classes at shift {o.offending}"

    _check(v, "orthogonality", orth)
    cert = parse_certificate(data["certificate"], F)

    def gen():
        r = replay(cert, t)
        return r.status == "certified", r.message

    _check(v, "generation", gen)
    if not naturals:
        v.checks.append(("natural_map", False, "no natural-map table"))
        return v
    end = EndAlgebra(parts)
    M = parse_matrix(F, data["natural_matrix"])
    cols = []

    def chains():
        if len(naturals) != L.dim:
            return False, f"{len(naturals)} entries for dim {L.dim}"
        for k, a, b, comps in naturals:
            if (a, b) != L.grading[k - 1]:
                return False, f"entry {k} has grading {(a + 1, b + 1)}"
            src, tgt = parts[a], parts[b]
            mats = {i: parse_matrix(F, m, tgt.dim(i), src.dim(i)) for i, m in comps.items()}
            f = ChainMap(src, tgt, mats)
            if not f.is_chain_map():
                return False, f"entry {k} is not a chain map"
            cols.append(end.element_coords((a, b), f))
        got = Matrix.from_rows(F, [list(r) for r in zip(*cols)], L.dim)
        return got == M, "recorded coordinates do not match the chain maps"

    if not _check(v, "natural_chain_maps", chains):
        return v

    def mult():
        E = end.algebra
        for i in range(L.dim):
            for j in range(L.dim):
                lhs = [F.scalar(0)] * L.dim
                for k, c in L.products[i][j]:
                    lhs[k] += c
                a = (M @ Matrix.column(F, lhs)).entries()
                b = E.multiply(M.col(i).entries(), M.col(j).entries())
                if a != b:
                    return False, f"basis pair ({i + 1}, {j + 1})"
        if not M @ L.unit() == E.unit():
            return False, "unit"
        return True, ""

    _check(v, "natural_multiplicative", mult)
    _check(v, "natural_injective", lambda: (rank(M) == L.dim, f"rank {rank(M)} < {L.dim}"))
    _check(v, "dimensions_equal", lambda: (end.dim == L.dim, f"{end.dim} vs {L.dim}"))
    return v
