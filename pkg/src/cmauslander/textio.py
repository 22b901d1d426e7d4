"""Line-oriented text formats for algebras, modules, complexes and certificates.

Every file is a sequence of declarations, one per line; ``#`` starts a
comment when it begins a line or follows whitespace.  Wherever a file name is
expected, an inline block may be given instead: the word ``begin`` ends the
line and the block runs to the matching ``end``.

Matrices are written row by row, entries separated by spaces and rows by
``;``.  A leading ``RxC`` token gives the shape explicitly (required where the
shape cannot be inferred, e.g. inside certificates); ``-`` is an empty matrix.
"""
from __future__ import annotations

import os
import re
from fractions import Fraction

from .algebra import (
    Algebra,
    AlgebraError,
    QuiverPresentation,
    algebra_from_quiver,
    enveloping,
    linear_quiver,
    semisimple,
    tensor_product,
    truncated_polynomial,
    upper_triangular,
)
from .bimodules import BimoduleComplex
from .complexes import Complex
from .kernel import QQ, Field, Matrix, PrimeField, field_from_text
from .modules import Module, direct_sum, from_action, from_representation, standard_projective, zero_module
from .tilt import ConeOf, GenerationCertificate, Goal, ShiftOf, StalkOf, SummandOf


class FormatError(ValueError):
    """Raised for malformed input; the message names the line."""


# ---------------------------------------------------------------------------
# lines and blocks


_SHAPE = re.compile(r"^(\d+)x(\d+)$")


def _strip(line: str) -> str:
    out = []
    prev = " "
    for ch in line:
        if ch == "#" and prev.isspace():
            break
        out.append(ch)
        prev = ch
    return "".join(out).strip()


class Lines:
    """Cursor over the meaningful lines of a document."""

    def __init__(self, text: str, source: str = "<text>"):
        self.items = []
        for n, raw in enumerate(text.splitlines(), 1):
            s = _strip(raw)
            if s:
                self.items.append((n, s))
        self.pos = 0
        self.source = source

    def __iter__(self):
        return self

    def __next__(self):
        if self.pos >= len(self.items):
            raise StopIteration
        item = self.items[self.pos]
        self.pos += 1
        return item

    def error(self, n, msg) -> FormatError:
        return FormatError(f"{self.source}:{n}: {msg}")

    def block(self, n) -> str:
        """Text of the inline block opened on line ``n`` (the cursor is just past it)."""
        depth = 1
        body = []
        for m, s in self:
            if s == "end":
                depth -= 1
                if depth == 0:
                    return "\n".join(body)
            elif s.endswith(" begin") or s == "begin":
                depth += 1
            body.append(s)
        raise self.error(n, "unterminated begin block")


class Context:
    """Resolves file references relative to a directory, with an optional field override."""

    def __init__(self, base: str = ".", field: Field | None = None, cache: dict | None = None):
        self.base = base
        self.field = field
        self.cache = cache if cache is not None else {}

    def path(self, ref: str) -> str:
        return ref if os.path.isabs(ref) else os.path.join(self.base, ref)

    def derived(self, path: str) -> "Context":
        return Context(os.path.dirname(os.path.abspath(path)), self.field, self.cache)

    def algebra(self, lines: Lines, n: int, ref: str) -> Algebra:
        if ref == "begin":
            return parse_algebra(lines.block(n), self, source=f"{lines.source}:{n}")
        p = os.path.abspath(self.path(ref))
        key = ("algebra", p)
        if key not in self.cache:
            try:
                with open(p) as fh:
                    text = fh.read()
            except OSError as exc:
                raise lines.error(n, f"cannot read {ref}: {exc.strerror}") from None
            self.cache[key] = parse_algebra(text, self.derived(p), source=ref)
        return self.cache[key]

    def module(self, lines: Lines, n: int, ref: str, A: Algebra) -> Module:
        if ref == "begin":
            return parse_module(lines.block(n), self, algebra=A, source=f"{lines.source}:{n}")
        p = os.path.abspath(self.path(ref))
        try:
            with open(p) as fh:
                text = fh.read()
        except OSError as exc:
            raise lines.error(n, f"cannot read {ref}: {exc.strerror}") from None
        return parse_module(text, self.derived(p), algebra=A, source=ref)


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


# ---------------------------------------------------------------------------
# scalars and matrices


def format_scalar(F: Field, x) -> str:
    if isinstance(F, PrimeField):
        return str(int(x))
    return str(x)


def parse_scalar(F: Field, tok: str):
    try:
        return F.scalar(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad scalar {tok!r}") from None


def format_matrix(m: Matrix, shape: bool = False) -> str:
    F = m.field
    if m.rows == 0 or m.cols == 0:
        body = "-"
    else:
        body = "; ".join(" ".join(format_scalar(F, x) for x in row) for row in m.table())
    if shape:
        return f"{m.rows}x{m.cols} {body}" if body != "-" else f"{m.rows}x{m.cols}"
    return body


def parse_matrix(F: Field, text: str, rows: int | None = None, cols: int | None = None) -> Matrix:
    text = text.strip()
    toks = text.split(None, 1)
    if toks and _SHAPE.match(toks[0]):
        r, c = (int(v) for v in _SHAPE.match(toks[0]).groups())
        if (rows is not None and r != rows) or (cols is not None and c != cols):
            raise FormatError(f"matrix shape {r}x{c}, expected {rows}x{cols}")
        rows, cols = r, c
        text = toks[1] if len(toks) > 1 else "-"
    if text in ("", "-"):
        if rows is None or cols is None:
            raise FormatError("empty matrix without shape")
        if rows and cols:
            raise FormatError(f"empty matrix, expected {rows}x{cols}")
        return Matrix.zeros(F, rows, cols)
    body = [r.split() for r in text.split(";")]
    r, c = len(body), len(body[0])
    if any(len(row) != c for row in body):
        raise FormatError("ragged matrix rows")
    if (rows is not None and r != rows) or (cols is not None and c != cols):
        raise FormatError(f"matrix shape {r}x{c}, expected {rows}x{cols}")
    return Matrix.from_rows(F, [[parse_scalar(F, t) for t in row] for row in body], c)


# ---------------------------------------------------------------------------
# algebras


_CONSTRUCTS = ("truncated-polynomial", "linear", "semisimple", "triangular", "tensor", "opposite", "enveloping")


def parse_relation(text: str, F: Field) -> tuple:
    """``c1*a.b + c2*d.e`` (also accepts ``-`` between terms and bare paths)."""
    s = text.replace(" - ", " + -")
    terms = []
    for part in s.split("+"):
        part = part.strip()
        if not part:
            raise FormatError(f"empty term in relation {text!r}")
        if "*" in part:
            c, path = part.split("*", 1)
            c = c.strip()
        else:
            c, path = ("-1", part[1:]) if part.startswith("-") else ("1", part)
        names = tuple(p for p in path.strip().split(".") if p)
        if not names:
            raise FormatError(f"empty path in relation {text!r}")
        terms.append((parse_scalar(F, c), names))
    return tuple(terms)


def parse_algebra(text: str, ctx: Context | None = None, source: str = "<algebra>") -> Algebra:
    ctx = ctx or Context()
    lines = Lines(text, source)
    F = QQ
    vertices = None
    arrows, rels, bound = [], [], None
    construct = None
    table = None
    name = ""
    raw_rels = []
    labels, idem, products = None, None, []
    for n, s in lines:
        key, _, rest = s.partition(" ")
        rest = rest.strip()
        try:
            if key == "field":
                F = field_from_text(rest)
            elif key == "name":
                name = rest
            elif key == "vertices":
                vertices = int(rest)
            elif key == "arrow":
                nm, a, b = rest.split()
                arrows.append((nm, int(a), int(b)))
            elif key == "relation":
                raw_rels.append((n, rest))
            elif key == "bound":
                bound = int(rest)
            elif key == "construct":
                parts = rest.split()
                if not parts or parts[0] not in _CONSTRUCTS:
                    raise lines.error(n, f"unknown construction {rest!r}")
                subs = []
                for ref in parts[1:]:
                    if ref.isdigit():
                        subs.append(int(ref))
                    else:
                        subs.append(ctx.algebra(lines, n, ref))
                construct = (parts[0], subs)
            elif key == "table":
                table = int(rest)
            elif key == "basis":
                labels = rest.split()
            elif key == "idempotents":
                idem = tuple(int(t) - 1 for t in rest.split())
            elif key == "product":
                products.append(_parse_product(rest))
            else:
                raise lines.error(n, f"unknown declaration {key!r}")
        except FormatError:
            raise
        except (ValueError, AlgebraError) as exc:
            raise lines.error(n, str(exc)) from None
    if ctx.field is not None:
        F = ctx.field
    if table is not None:
        if labels is None or idem is None or len(labels) != table:
            raise FormatError(f"{source}: table needs {table} basis labels and the idempotents")
        prods = [[() for _ in range(table)] for _ in range(table)]
        for i, j, terms in products:
            if not (0 <= i < table and 0 <= j < table) or any(not 0 <= k < table for k, _ in terms):
                raise FormatError(f"{source}: product index out of range")
            prods[i][j] = tuple((k, F.scalar(c)) for k, c in terms)
        try:
            A = Algebra(F, labels, prods, idem, name=name)
        except AlgebraError as exc:
            raise FormatError(f"{source}: {exc}") from None
        if not A.is_associative():
            raise FormatError(f"{source}: table is not associative")
        return A
    if construct is not None:
        return _construct(construct, F, name, source)
    if vertices is None:
        raise FormatError(f"{source}: missing 'vertices'")
    for n, r in raw_rels:
        try:
            rels.append(parse_relation(r, F))
        except FormatError as exc:
            raise lines.error(n, str(exc)) from None
    if bound is None:
        raise FormatError(f"{source}: missing 'bound'")
    try:
        q = QuiverPresentation(vertices, tuple(arrows), tuple(rels), bound, F)
        return algebra_from_quiver(q, name=name)
    except AlgebraError as exc:
        raise FormatError(f"{source}: {exc}") from None


def _parse_product(rest: str):
    lhs, _, rhs = rest.partition("=")
    i, j = (int(t) - 1 for t in lhs.split())
    terms = []
    for part in rhs.replace(" - ", " + -").split("+"):
        c, _, k = part.strip().partition("*")
        terms.append((int(k) - 1, Fraction(c)))
    return i, j, tuple(terms)


def _construct(c, F: Field, name: str, source: str) -> Algebra:
    kind, args = c
    try:
        if kind == "truncated-polynomial":
            return truncated_polynomial(F, args[0])
        if kind == "linear":
            return linear_quiver(F, args[0])
        if kind == "semisimple":
            return semisimple(F, args[0])
        if kind == "triangular":
            return upper_triangular(args[0], name=name)
        if kind == "tensor":
            return tensor_product(args[0], args[1], name=name)
        if kind == "opposite":
            return args[0].opposite()
        if kind == "enveloping":
            return enveloping(args[0], args[1])
    except (IndexError, TypeError):
        raise FormatError(f"{source}: wrong arguments for construction {kind}") from None
    raise FormatError(f"{source}: unknown construction {kind}")


def format_algebra(A: Algebra, table: bool | None = None) -> str:
    """Canonical text: quiver form when a presentation is known, otherwise a product table."""
    F = A.field
    out = [f"field {_field_text(F)}"]
    if A.name:
        out.append(f"name {A.name}")
    q = A.quiver
    if q is not None and not table:
        out.append(f"vertices {q.vertex_count}")
        for nm, a, b in q.arrows:
            out.append(f"arrow {nm} {a} {b}")
        for rel in q.relations:
            out.append("relation " + " + ".join(f"{format_scalar(F, F.scalar(c))}*{'.'.join(p)}" for c, p in rel))
        out.append(f"bound {q.nilpotency_bound}")
        return "\n".join(out) + "\n"
    out.append(f"table {A.dim}")
    out.append("basis " + " ".join(_label_token(lab, k) for k, lab in enumerate(A.labels)))
    out.append("idempotents " + " ".join(str(e + 1) for e in A.idempotents))
    for i in range(A.dim):
        for j in range(A.dim):
            terms = [(k, c) for k, c in A.products[i][j] if c != 0]
            if terms:
                rhs = " + ".join(f"{format_scalar(F, F.scalar(c))}*{k+1}" for k, c in sorted(terms))
                out.append(f"product {i+1} {j+1} = {rhs}")
    return "\n".join(out) + "\n"


def _label_token(lab: str, k: int) -> str:
    lab = str(lab).replace(" ", "")
    return lab if lab and lab != "end" else f"b{k+1}"


def _field_text(F: Field) -> str:
    return "Q" if not isinstance(F, PrimeField) else f"GF {F.p}"


# ---------------------------------------------------------------------------
# modules


def parse_module(text: str, ctx: Context | None = None, algebra: Algebra | None = None,
                 source: str = "<module>") -> Module:
    ctx = ctx or Context()
    lines = Lines(text, source)
    A = algebra
    dims = labels = None
    arrows, acts = {}, {}
    name = ""
    pending = []
    projective = None
    for n, s in lines:
        key, _, rest = s.partition(" ")
        rest = rest.strip()
        if key == "module":
            ref = rest[len("over"):].strip() if rest.startswith("over") else ""
            if not ref:
                raise lines.error(n, "expected 'module over <algebra-file>'")
            if ref == "begin":
                B = ctx.algebra(lines, n, ref)
                A = A or B
            elif A is None:
                A = ctx.algebra(lines, n, ref)
        elif key == "name":
            name = rest
        elif key == "dims":
            dims = [int(t) for t in rest.split()]
        elif key == "labels":
            labels = [int(t) - 1 for t in rest.split()]
        elif key == "projective":
            projective = [int(t) - 1 for t in rest.split()]
        elif key in ("arrow", "act"):
            nm, _, mat = rest.partition(" ")
            pending.append((n, key, nm, mat))
        else:
            raise lines.error(n, f"unknown declaration {key!r}")
    if A is None:
        raise FormatError(f"{source}: module without algebra")
    F = A.field
    if projective is not None:
        return projective_sum(A, projective, name)
    if dims is not None:
        if len(dims) != A.vertex_count:
            raise FormatError(f"{source}: {len(dims)} dims for {A.vertex_count} vertices")
        labels = [v for v, d in enumerate(dims) for _ in range(d)]
    if labels is None:
        raise FormatError(f"{source}: need 'dims' or 'labels'")
    if any(not 0 <= v < A.vertex_count for v in labels):
        raise FormatError(f"{source}: vertex label out of range")
    dimv = [labels.count(v) for v in range(A.vertex_count)]
    nd = len(labels)
    for n, key, nm, mat in pending:
        try:
            if key == "arrow":
                if A.quiver is None:
                    raise lines.error(n, "arrow lines need a quiver algebra")
                idx = A.quiver.arrow_index()
                if nm not in idx:
                    raise lines.error(n, f"unknown arrow {nm}")
                _, a, b = A.quiver.arrows[idx[nm]]
                arrows[nm] = parse_matrix(F, mat, dimv[b - 1], dimv[a - 1])
            else:
                k = _basis_ref(A, nm)
                acts[k] = parse_matrix(F, mat, nd, nd)
        except FormatError as exc:
            if str(exc).startswith(source):
                raise
            raise lines.error(n, str(exc)) from None
    try:
        if acts or A.quiver is None:
            if labels != sorted(labels) and arrows:
                raise FormatError(f"{source}: arrow lines need vertex-sorted coordinates")
            gens = A.generators()
            missing = [A.labels[g] for g in gens if g not in acts]
            if missing and nd:
                raise FormatError(f"{source}: missing act lines for {', '.join(missing)}")
            if not nd:
                return zero_module(A).renamed(name or "0")
            return from_action(A, labels, {g: acts[g] for g in gens}, name=name)
        if labels != sorted(labels):
            raise FormatError(f"{source}: arrow lines need vertex-sorted coordinates ('dims')")
        return from_representation(A, dimv, arrows, name=name)
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(f"{source}: {exc}") from None


def _basis_ref(A: Algebra, tok: str) -> int:
    if tok.isdigit():
        k = int(tok) - 1
        if not 0 <= k < A.dim:
            raise FormatError(f"basis index {tok} out of range")
        return k
    if tok in A.labels:
        return A.labels.index(tok)
    raise FormatError(f"unknown basis element {tok}")


def projective_sum(A: Algebra, vertices, name: str = "") -> Module:
    if not vertices:
        return zero_module(A)
    parts = [standard_projective(A, v) for v in vertices]
    m = direct_sum(parts) if len(parts) > 1 else parts[0]
    return m.renamed(name) if name else m


def _projective_vertices(m: Module):
    """Vertices when ``m`` is literally a block sum of standard projectives."""
    if m.summands is None or not m.summands or any(not b.is_projective for b in m.summands):
        return None
    vs = [b.kind[1] for b in m.summands]
    if not modules_equal(projective_sum(m.algebra, vs), m):
        return None
    return vs


def modules_equal(x: Module, y: Module) -> bool:
    return (x.algebra == y.algebra and list(x.labels) == list(y.labels)
            and all(a == b for a, b in zip(x.action, y.action)))


def format_module(m: Module, algebra_ref: str = "algebra.alg", name: bool = True) -> str:
    """Canonical text of a module.

    Sums of standard projectives are written as ``projective``; quiver
    modules with vertex-sorted coordinates use arrow matrices, everything else
    explicit labels and the action of the algebra generators.
    """
    A = m.algebra
    out = [f"module over {algebra_ref}"]
    if name and m.name:
        out.append(f"name {m.name}")
    vs = _projective_vertices(m)
    if vs is not None:
        out.append("projective " + " ".join(str(v + 1) for v in vs))
        return "\n".join(out) + "\n"
    labels = list(m.labels)
    sorted_ = labels == sorted(labels)
    if sorted_:
        out.append("dims " + " ".join(str(labels.count(v)) for v in range(A.vertex_count)))
    else:
        out.append("labels " + " ".join(str(v + 1) for v in labels))
    if A.quiver is not None and sorted_:
        for nm, a, b in A.quiver.arrows:
            k = A.labels.index(nm)
            rows = [r for r, v in enumerate(labels) if v == b - 1]
            cols = [c for c, v in enumerate(labels) if v == a - 1]
            out.append(f"arrow {nm} {format_matrix(m.action[k].submatrix(rows, cols))}")
    elif m.dim:
        for g in A.generators():
            out.append(f"act {g+1} {format_matrix(m.action[g])}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# complexes


def parse_complex(text: str, ctx: Context | None = None, algebra: Algebra | None = None,
                  source: str = "<complex>") -> Complex | BimoduleComplex:
    ctx = ctx or Context()
    lines = Lines(text, source)
    A = algebra
    left = right = None
    envelope = False
    name = ""
    terms, raw_diffs = {}, []
    for n, s in lines:
        key, _, rest = s.partition(" ")
        rest = rest.strip()
        if key == "complex":
            ref = rest[len("over"):].strip() if rest.startswith("over") else ""
            if not ref:
                raise lines.error(n, "expected 'complex over <algebra-file>'")
            if ref == "envelope":
                envelope = True
            elif ref == "begin":
                B = ctx.algebra(lines, n, ref)
                A = A or B
            elif A is None:
                A = ctx.algebra(lines, n, ref)
        elif key == "name":
            name = rest
        elif key in ("left", "right"):
            alg = ctx.algebra(lines, n, rest)
            if key == "left":
                left = alg
            else:
                right = alg
        elif key == "term":
            deg, _, ref = rest.partition(" ")
            deg = int(deg)
            if deg in terms:
                raise lines.error(n, f"term {deg} given twice")
            if A is None and envelope:
                if left is None or right is None:
                    raise lines.error(n, "left and right algebras must precede the terms")
                A = enveloping(left, right)
            if A is None:
                raise lines.error(n, "term before 'complex over'")
            ref = ref.strip()
            if ref.startswith("projective"):
                terms[deg] = projective_sum(A, [int(t) - 1 for t in ref.split()[1:]])
            else:
                terms[deg] = ctx.module(lines, n, ref, A)
        elif key == "diff":
            deg, _, mat = rest.partition(" ")
            raw_diffs.append((n, int(deg), mat))
        else:
            raise lines.error(n, f"unknown declaration {key!r}")
    if envelope and A is None:
        if left is None or right is None:
            raise FormatError(f"{source}: bimodule complex needs left and right algebras")
        A = enveloping(left, right)
    if A is None:
        raise FormatError(f"{source}: complex without algebra")
    diffs = {}
    for n, i, mat in raw_diffs:
        src = terms.get(i)
        tgt = terms.get(i + 1)
        try:
            diffs[i] = parse_matrix(A.field, mat, tgt.dim if tgt else 0, src.dim if src else 0)
        except FormatError as exc:
            raise lines.error(n, str(exc)) from None
    try:
        c = Complex(A, terms, diffs, name=name)
        c.check()
    except ValueError as exc:
        raise FormatError(f"{source}: {exc}") from None
    if envelope:
        try:
            return BimoduleComplex(left, right, c, name=name)
        except ValueError as exc:
            raise FormatError(f"{source}: {exc}") from None
    return c


def format_complex(c: Complex, algebra_ref: str = "algebra.alg", inline: bool = True) -> str:
    out = [f"complex over {algebra_ref}"]
    if c.name:
        out.append(f"name {c.name}")
    out.extend(_complex_body(c, algebra_ref))
    return "\n".join(out) + "\n"


def _complex_body(c: Complex, algebra_ref: str) -> list[str]:
    out = []
    for i in c.degrees():
        m = c.term(i)
        vs = _projective_vertices(m)
        if vs is not None:
            out.append(f"term {i} projective " + " ".join(str(v + 1) for v in vs))
        else:
            out.append(f"term {i} begin")
            body = format_module(m, algebra_ref, name=False).splitlines()[1:]
            out.extend(body)
            out.append("end")
    for i in c.degrees():
        if (i + 1) in c.terms and not c.diff(i).is_zero():
            out.append(f"diff {i} {format_matrix(c.diff(i))}")
    return out


def format_bimodule_complex(d: BimoduleComplex, left_ref: str | None = None, right_ref: str | None = None) -> str:
    out = ["complex over envelope"]
    if d.name:
        out.append(f"name {d.name}")
    for key, alg, ref in (("left", d.left, left_ref), ("right", d.right, right_ref)):
        if ref is not None:
            out.append(f"{key} {ref}")
        else:
            out.append(f"{key} begin")
            out.extend(format_algebra(alg).splitlines())
            out.append("end")
    out.extend(_complex_body(d.complex, "envelope"))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# certificates


_STEP = re.compile(r"^(\S+)\s*=\s*(shift|cone|summand|stalk)\((.*)\)$")


def format_certificate(cert: GenerationCertificate) -> str:
    out = [f"certificate base {cert.base}"]

    def maps(tag, comps):
        for i in sorted(comps):
            out.append(f"{tag} {i} {format_matrix(comps[i], shape=True)}")

    for st in cert.steps:
        if isinstance(st, ShiftOf):
            out.append(f"step {st.name} = shift({st.prior}, {st.n})")
        elif isinstance(st, ConeOf):
            out.append(f"step {st.name} = cone({st.source}, {st.target})")
            maps("map", st.comps)
        elif isinstance(st, SummandOf):
            out.append(f"step {st.name} = summand({st.prior})")
            maps("incl", st.incl)
            maps("proj", st.proj)
        elif isinstance(st, StalkOf):
            out.append(f"step {st.name} = stalk({st.prior}, {st.vertex + 1})")
            maps("to", st.to)
            maps("back", st.back)
            maps("hprior", st.h_prior)
            maps("hstalk", st.h_stalk)
    for g in cert.goals:
        out.append(f"goal {g.vertex + 1} {g.obj}")
    return "\n".join(out) + "\n"


def parse_certificate(text: str, F: Field, source: str = "<certificate>") -> GenerationCertificate:
    lines = Lines(text, source)
    cert = None
    cur = None
    fields = {"map": "comps", "incl": "incl", "proj": "proj", "to": "to", "back": "back",
              "hprior": "h_prior", "hstalk": "h_stalk"}
    allowed = {ConeOf: {"map"}, SummandOf: {"incl", "proj"}, StalkOf: {"to", "back", "hprior", "hstalk"},
               ShiftOf: set()}
    for n, s in lines:
        key, _, rest = s.partition(" ")
        rest = rest.strip()
        try:
            if key == "certificate":
                parts = rest.split()
                cert = GenerationCertificate(base=parts[1] if len(parts) == 2 and parts[0] == "base" else "T")
            elif cert is None:
                raise lines.error(n, "expected 'certificate base <name>'")
            elif key == "step":
                m = _STEP.match(rest)
                if not m:
                    raise lines.error(n, f"malformed step {rest!r}")
                nm, kind, args = m.group(1), m.group(2), [a.strip() for a in m.group(3).split(",")]
                if kind == "shift":
                    cur = ShiftOf(nm, args[0], int(args[1]))
                elif kind == "cone":
                    cur = ConeOf(nm, args[0], args[1], {})
                elif kind == "summand":
                    cur = SummandOf(nm, args[0], {}, {})
                else:
                    cur = StalkOf(nm, args[0], int(args[1]) - 1, {}, {}, {}, {})
                cert.steps.append(cur)
            elif key in fields:
                if cur is None or key not in allowed[type(cur)]:
                    raise lines.error(n, f"'{key}' does not belong to the current step")
                deg, _, mat = rest.partition(" ")
                getattr(cur, fields[key])[int(deg)] = parse_matrix(F, mat)
            elif key == "goal":
                v, obj = rest.split()
                cert.goals.append(Goal(int(v) - 1, obj))
            else:
                raise lines.error(n, f"unknown declaration {key!r}")
        except FormatError:
            raise
        except (ValueError, IndexError) as exc:
            raise lines.error(n, str(exc)) from None
    if cert is None:
        raise FormatError(f"{source}: empty certificate")
    return cert


# ---------------------------------------------------------------------------
# file helpers


def load_algebra(path: str, field: Field | None = None) -> Algebra:
    ctx = Context(field=field).derived(path)
    return parse_algebra(_read(path), ctx, source=path)


def load_module(path: str, algebra: Algebra | None = None, field: Field | None = None) -> Module:
    ctx = Context(field=field).derived(path)
    return parse_module(_read(path), ctx, algebra=algebra, source=path)


def load_complex(path: str, algebra: Algebra | None = None, field: Field | None = None):
    ctx = Context(field=field).derived(path)
    return parse_complex(_read(path), ctx, algebra=algebra, source=path)


def load_certificate(path: str, F: Field) -> GenerationCertificate:
    return parse_certificate(_read(path), F, source=path)
