"""Tilting complexes: orthogonality, endomorphism algebras and generation certificates."""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Algebra, QuiverPresentation, algebra_from_quiver, tensor_product
from .complexes import (
    ChainMap,
    Complex,
    ComplexError,
    check_homotopy,
    cone,
    identity_map,
    k_hom,
    minimize,
    shift,
    stalk,
)
from .kernel import Matrix
from .modules import (
    Module,
    decompose,
    find_isomorphism,
    is_projective,
    restrict_to,
    simple_module,
    standard_projective,
)


class CertificateError(ValueError):
    pass


# ---------------------------------------------------------------------------
# decomposition of complexes


def _differential_algebra(F, n: int) -> Algebra:
    arrows = tuple((f"d{i}", i, i + 1) for i in range(1, n))
    rels = tuple(((1, (f"d{i}", f"d{i+1}")),) for i in range(1, n - 1))
    return algebra_from_quiver(QuiverPresentation(n, arrows, rels, 2, F), name=f"D{n}")


def complex_as_module(c: Complex):
    """``c`` as a module over ``A (x) D`` where ``D`` is the rad-square-zero path algebra of ``1 -> ... -> n``."""
    A = c.algebra
    F = c.field
    lo = c.lo
    n = c.hi - lo + 1
    D = _differential_algebra(F, n)
    E = tensor_product(A, D, name=f"{A.name}(x)D{n}")
    sD = D.vertex_count
    offs, labels = {}, []
    off = 0
    for i in range(lo, c.hi + 1):
        offs[i] = off
        labels.extend(v * sD + (i - lo) for v in c.term(i).labels)
        off += c.dim(i)
    N = off
    from .kernel import embed

    action = []
    for a in range(A.dim):
        for k in range(D.dim):
            s, t = D.grading[k]  # (target, source), zero based
            src_deg, tgt_deg = lo + t, lo + s
            X = c.term(src_deg)
            if not X.dim or not c.dim(tgt_deg):
                action.append(Matrix.zeros(F, N, N))
                continue
            blk = X.action[a]
            if s != t:
                blk = c.diff(src_deg) @ blk
            action.append(embed(F, blk, N, N, range(offs[tgt_deg], offs[tgt_deg] + c.dim(tgt_deg)),
                                range(offs[src_deg], offs[src_deg] + X.dim)))
    return Module(E, labels, action, name=c.name), E, D, offs


@dataclass
class ComplexSummand:
    complex: Complex
    incl: ChainMap
    proj: ChainMap


def decompose_complex(c: Complex, seed: int = 0) -> list[ComplexSummand]:
    """Strict indecomposable summands of ``c`` with split inclusions and projections."""
    if c.is_zero:
        return []
    A = c.algebra
    M, E, D, offs = complex_as_module(c)
    sD = D.vertex_count
    nD = D.dim
    arrow_of = {}
    for k in range(nD):
        s, t = D.grading[k]
        if s != t:
            arrow_of[t] = k
    out = []
    for s in decompose(M, seed):
        S = s.module
        degs = {}
        for j, lab in enumerate(S.labels):
            degs.setdefault(c.lo + lab % sD, []).append(j)
        terms, diffs, inc, pro = {}, {}, {}, {}
        for i, idx in degs.items():
            e = D.idempotents[i - c.lo]
            act = [S.action[a * nD + e].submatrix(idx, idx) for a in range(A.dim)]
            labs = [S.labels[j] // sD for j in idx]
            terms[i] = Module(A, labs, act, name=f"{c.name}^{i}")
            rows = range(offs[i], offs[i] + c.dim(i))
            inc[i] = s.incl.submatrix(rows, idx)
            pro[i] = s.proj.submatrix(idx, rows)
        for i, idx in degs.items():
            if (i + 1) in degs:
                k = arrow_of[i - c.lo]
                total = None
                for v in A.idempotents:
                    m = S.action[v * nD + k]
                    total = m if total is None else total + m
                diffs[i] = total.submatrix(degs[i + 1], idx)
        Y = Complex(A, terms, diffs, name=f"{c.name}.{len(out)}")
        out.append(ComplexSummand(Y, ChainMap(Y, c, inc), ChainMap(c, Y, pro)))
    return out


def projective_stalk_kind(c: Complex):
    """``(vertex, degree)`` when ``c`` is a single indecomposable projective in one degree."""
    if c.is_zero or c.lo != c.hi:
        return None
    m = c.term(c.lo)
    P = _as_projective_vertex(m)
    return None if P is None else (P, c.lo)


def _as_projective_vertex(m: Module):
    A = m.algebra
    tops = [v for v in range(A.vertex_count) if standard_projective(A, v).dim == m.dim]
    for v in tops:
        if find_isomorphism(standard_projective(A, v), m) is not None:
            return v
    return None


# ---------------------------------------------------------------------------
# orthogonality and endomorphism algebras


@dataclass
class Orthogonality:
    passed: bool
    offending: int | None
    dims: dict
    window: list
    note: str = ""

    def lines(self):
        out = [f"orthogonality: {'pass' if self.passed else 'fail'}"]
        out.append("window: " + " ".join(str(n) for n in self.window))
        out.append("dims: " + " ".join(f"{n}:{d}" for n, d in sorted(self.dims.items())))
        if self.offending is not None:
            out.append(f"offending_shift: {self.offending}")
        if self.note:
            out.append(f"note: {self.note}")
        return out


def overlap_window(x: Complex, y: Complex) -> list[int]:
    """Shifts ``n`` for which ``x`` and ``y[n]`` have overlapping supports."""
    if x.is_zero or y.is_zero:
        return []
    return list(range(y.lo - x.hi, y.hi - x.lo + 1))


def verify_orthogonality(t: Complex, window=None, require_projective: bool = True) -> Orthogonality:
    if require_projective:
        for i, m in t.terms.items():
            if not (m.is_standard_projective or is_projective(m)):
                raise ComplexError(f"term {i} is not projective")
    full = overlap_window(t, t)
    win = list(window) if window is not None else full
    dims = {}
    for n in win:
        if n == 0:
            continue
        d = k_hom(t, shift(t, n)).dim
        dims[n] = d
        if d:
            return Orthogonality(False, n, dims, win)
    note = "shifts outside the window have no overlapping support" if window is None else ""
    return Orthogonality(True, None, dims, win, note)


class EndAlgebra:
    """``End_K(t_1 + ... + t_n)`` with the product ``f * g = g o f``, basis of homotopy classes."""

    def __init__(self, summands: list[Complex], name: str = "EndK"):
        self.summands = list(summands)
        F = summands[0].field
        self.field = F
        n = len(summands)
        self.homs = {}
        self.reps: list[ChainMap] = []
        self.grading = []
        self.index = {}
        idem = [None] * n
        labels = []
        for a in range(n):
            for b in range(n):
                H = k_hom(summands[a], summands[b])
                reps = H.representatives()
                change = None
                if a == b:
                    idc = identity_map(summands[a])
                    c = H.class_coords(idc)
                    j = next((i for i, v in enumerate(c) if v != 0), None)
                    if j is None:
                        raise ComplexError(f"summand {a} is contractible")
                    others = [i for i in range(H.dim) if i != j]
                    reps = [idc] + [reps[i] for i in others]
                    cols = [c] + [[F.scalar(1 if t == i else 0) for t in range(H.dim)] for i in others]
                    change = Matrix.from_rows(F, [list(r) for r in zip(*cols)], H.dim).inverse()
                self.homs[(a, b)] = (H, change)
                ids = []
                for j, r in enumerate(reps):
                    k = len(self.reps)
                    if a == b and j == 0:
                        idem[a] = k
                        labels.append(f"e{a+1}")
                    else:
                        labels.append(f"{a+1}->{b+1}#{j}")
                    self.reps.append(r)
                    self.grading.append((a, b))
                    ids.append(k)
                self.index[(a, b)] = ids
        dim = len(self.reps)
        prods = [[() for _ in range(dim)] for _ in range(dim)]
        for i in range(dim):
            a, b = self.grading[i]
            for c in range(n):
                for j in self.index.get((b, c), []):
                    comp = self.reps[j] @ self.reps[i]
                    co = self.coords((a, c), comp)
                    prods[i][j] = tuple((self.index[(a, c)][t], v) for t, v in enumerate(co) if v != 0)
        self.algebra = Algebra(F, labels, prods, tuple(idem), self.grading, name=name)

    @property
    def dim(self):
        return self.algebra.dim

    def coords(self, ab, f: ChainMap) -> list:
        H, change = self.homs[ab]
        c = H.class_coords(f)
        if change is None:
            return c
        return (change @ Matrix.column(self.field, c)).entries()

    def element_coords(self, ab, f: ChainMap) -> list:
        out = [self.field.scalar(0)] * self.dim
        for t, v in zip(self.index[ab], self.coords(ab, f)):
            out[t] = v
        return out

    def check_products(self) -> bool:
        """Structure constants agree with composition of representatives up to homotopy."""
        A = self.algebra
        for i in range(self.dim):
            a, b = self.grading[i]
            for j in range(self.dim):
                b2, c = self.grading[j]
                if b2 != b:
                    if A.products[i][j]:
                        return False
                    continue
                comp = self.reps[j] @ self.reps[i]
                want = self.element_coords((a, c), comp)
                got = [self.field.scalar(0)] * self.dim
                for k, v in A.products[i][j]:
                    got[k] = v
                if want != got:
                    return False
        return True


def end_algebra(t, seed: int = 0, check_orthogonality: bool = True, name: str = "EndK") -> EndAlgebra:
    """Homotopy endomorphism algebra of a complex (decomposed first) or of a list of summands."""
    if isinstance(t, Complex):
        if check_orthogonality:
            res = verify_orthogonality(t, require_projective=False)
            if not res.passed:
                raise ComplexError(f"orthogonality fails at shift {res.offending}")
        parts = [s.complex for s in decompose_complex(minimize(t, seed).complex, seed)]
    else:
        parts = list(t)
        if check_orthogonality:
            total = _sum_complex(parts)
            res = verify_orthogonality(total, require_projective=False)
            if not res.passed:
                raise ComplexError(f"orthogonality fails at shift {res.offending}")
    E = EndAlgebra(parts, name=name)
    if not E.algebra.is_associative():
        raise ComplexError("homotopy endomorphism algebra is not associative")
    return E


def _sum_complex(parts):
    from .complexes import direct_sum_complexes

    return parts[0] if len(parts) == 1 else direct_sum_complexes(parts).complex


# ---------------------------------------------------------------------------
# generation certificates


@dataclass
class ShiftOf:
    name: str
    prior: str
    n: int


@dataclass
class ConeOf:
    name: str
    source: str
    target: str
    comps: dict  # degree -> matrix, a chain map source -> target


@dataclass
class SummandOf:
    name: str
    prior: str
    incl: dict  # degree -> matrix Y^i -> prior^i
    proj: dict  # degree -> matrix prior^i -> Y^i


@dataclass
class StalkOf:
    """``P_vertex`` in degree 0, homotopy equivalent to ``prior``."""

    name: str
    prior: str
    vertex: int
    to: dict  # prior -> stalk
    back: dict  # stalk -> prior
    h_prior: dict  # 1 - back to = d h + h d on prior
    h_stalk: dict  # 1 - to back = d h + h d on the stalk


@dataclass
class Goal:
    vertex: int
    obj: str


@dataclass
class GenerationCertificate:
    steps: list = field(default_factory=list)
    goals: list = field(default_factory=list)
    base: str = "T"

    def names(self):
        return [self.base] + [s.name for s in self.steps]


@dataclass
class GenerationResult:
    status: str  # certified | failed | unknown
    certificate: GenerationCertificate | None
    message: str = ""
    bad_step: str | None = None
    undetected_simples: list = field(default_factory=list)
    cones_used: int = 0

    def lines(self):
        out = [f"generation: {self.status}"]
        if self.message:
            out.append(f"message: {self.message}")
        if self.bad_step is not None:
            out.append(f"bad_step: {self.bad_step}")
        if self.undetected_simples:
            out.append("undetected_simples: " + " ".join(str(v + 1) for v in self.undetected_simples))
        out.append(f"cones_used: {self.cones_used}")
        return out


def _zeros_like(F, rows, cols):
    return Matrix.zeros(F, rows, cols)


def _chain(src: Complex, tgt: Complex, comps: dict) -> ChainMap:
    F = src.field
    full = {}
    for i in set(src.degrees()) | set(tgt.degrees()):
        m = comps.get(i)
        if m is None:
            m = Matrix.zeros(F, tgt.dim(i), src.dim(i))
        elif m.shape != (tgt.dim(i), src.dim(i)):
            raise CertificateError(f"component {i} has shape {m.shape}, need {(tgt.dim(i), src.dim(i))}")
        full[i] = m
    return ChainMap(src, tgt, full)


def _summand_object(prior: Complex, incl: dict, proj: dict, name: str) -> Complex:
    A = prior.algebra
    terms, diffs = {}, {}
    for i in prior.degrees():
        u = incl.get(i)
        if u is None or u.cols == 0:
            continue
        p = proj.get(i)
        if p is None or p.shape != (u.cols, prior.dim(i)) or u.rows != prior.dim(i):
            raise CertificateError(f"summand maps have wrong shape at degree {i}")
        terms[i] = restrict_to(prior.term(i), u, p, name=f"{name}^{i}")
    for i in terms:
        if (i + 1) in terms:
            diffs[i] = proj[i + 1] @ prior.diff(i) @ incl[i]
    return Complex(A, terms, diffs, name=name)


def replay(cert: GenerationCertificate, t: Complex) -> GenerationResult:
    """Check every step of a certificate by explicit computation, without any search."""
    A = t.algebra
    objs = {cert.base: t}
    for st in cert.steps:
        try:
            if st.name in objs:
                raise CertificateError("name defined twice")
            if isinstance(st, ShiftOf):
                objs[st.name] = shift(_get(objs, st.prior), st.n)
            elif isinstance(st, ConeOf):
                f = _chain(_get(objs, st.source), _get(objs, st.target), st.comps)
                f.check()
                objs[st.name] = cone(f).complex
            elif isinstance(st, SummandOf):
                prior = _get(objs, st.prior)
                Y = _summand_object(prior, st.incl, st.proj, st.name)
                u = _chain(Y, prior, st.incl)
                p = _chain(prior, Y, st.proj)
                if not (p @ u) == identity_map(Y):
                    raise CertificateError("proj o incl is not the identity")
                e = u @ p
                e.check()
                if not (e @ e) == e:
                    raise CertificateError("idempotent is not idempotent")
                Y.check()
                objs[st.name] = Y
            elif isinstance(st, StalkOf):
                prior = _get(objs, st.prior)
                if not 0 <= st.vertex < A.vertex_count:
                    raise CertificateError("vertex out of range")
                S = stalk(standard_projective(A, st.vertex), 0, name=st.name)
                _check_equivalence(prior, S, st.to, st.back, st.h_prior, st.h_stalk)
                objs[st.name] = S
            else:
                raise CertificateError(f"unknown step type {type(st).__name__}")
        except (CertificateError, ComplexError, ValueError) as exc:
            return GenerationResult("failed", cert, f"step {st.name}: {exc}", bad_step=st.name)
    covered = set()
    for g in cert.goals:
        obj = objs.get(g.obj)
        if obj is None:
            return GenerationResult("failed", cert, f"goal refers to unknown object {g.obj}", bad_step=g.obj)
        S = stalk(standard_projective(A, g.vertex), 0)
        if not _same_complex(obj, S):
            return GenerationResult("failed", cert, f"goal {g.obj} is not the stalk of P{g.vertex+1}",
                                    bad_step=g.obj)
        covered.add(g.vertex)
    missing = [v for v in range(A.vertex_count) if v not in covered]
    if missing:
        return GenerationResult("failed", cert, "no goal for P" + ",".join(str(v + 1) for v in missing))
    return GenerationResult("certified", cert)


def _get(objs, name):
    if name not in objs:
        raise CertificateError(f"unknown object {name}")
    return objs[name]


def _same_complex(x: Complex, y: Complex) -> bool:
    if sorted(x.terms) != sorted(y.terms):
        return False
    for i in x.degrees():
        a, b = x.term(i), y.term(i)
        if a.dim != b.dim or a.labels != b.labels or any(not (p == q) for p, q in zip(a.action, b.action)):
            return False
        if not x.diff(i) == y.diff(i):
            return False
    return True


def _check_equivalence(x: Complex, y: Complex, to: dict, back: dict, hx: dict, hy: dict):
    f = _chain(x, y, to)
    g = _chain(y, x, back)
    f.check()
    g.check()
    if not check_homotopy(identity_map(x), g @ f, hx):
        raise CertificateError("back o to is not homotopic to the identity")
    if not check_homotopy(identity_map(y), f @ g, hy):
        raise CertificateError("to o back is not homotopic to the identity")


# ---------------------------------------------------------------------------
# certificate construction


class CertificateBuilder:
    """Records steps while tracking the objects they produce.

    ``mirror`` is an optional functor object with methods ``complex``,
    ``chain`` and ``homotopy``; when given, every recorded step is also
    emitted in its image, producing a certificate for the image complex.
    """

    def __init__(self, t: Complex, base: str = "T", mirror=None, mirror_base: Complex | None = None):
        self.objects = {base: t}
        self.cert = GenerationCertificate(base=base)
        self.counter = 0
        self.mirror = mirror
        self.mcert = GenerationCertificate(base=base) if mirror is not None else None
        self.mobjects = {base: mirror_base} if mirror is not None else None

    def _fresh(self, prefix):
        self.counter += 1
        return f"{prefix}{self.counter}"

    def shift(self, name: str, n: int) -> str:
        new = self._fresh("S")
        self.objects[new] = shift(self.objects[name], n)
        self.cert.steps.append(ShiftOf(new, name, n))
        if self.mirror is not None:
            self.mobjects[new] = shift(self.mobjects[name], n)
            self.mcert.steps.append(ShiftOf(new, name, n))
        return new

    def cone(self, src: str, tgt: str, f: ChainMap) -> str:
        new = self._fresh("C")
        self.objects[new] = cone(f).complex
        self.cert.steps.append(ConeOf(new, src, tgt, dict(f.comps)))
        if self.mirror is not None:
            mf = self.mirror.chain(f, self.mobjects[src], self.mobjects[tgt])
            self.mobjects[new] = cone(mf).complex
            self.mcert.steps.append(ConeOf(new, src, tgt, dict(mf.comps)))
        return new

    def summand(self, prior: str, incl: ChainMap, proj: ChainMap, obj: Complex) -> str:
        new = self._fresh("Y")
        self.objects[new] = obj
        self.cert.steps.append(SummandOf(new, prior, _full(incl), _full(proj)))
        if self.mirror is not None:
            mobj = self.mirror.complex(obj)
            mi = self.mirror.chain(incl, mobj, self.mobjects[prior])
            mp = self.mirror.chain(proj, self.mobjects[prior], mobj)
            self.mobjects[new] = mobj
            self.mcert.steps.append(SummandOf(new, prior, _full(mi), _full(mp)))
        return new

    def stalk(self, prior: str, vertex: int, to: ChainMap, back: ChainMap, h_prior: dict, h_stalk: dict,
              obj: Complex, mirror_vertex: int | None = None) -> str:
        new = self._fresh("P")
        self.objects[new] = obj
        self.cert.steps.append(StalkOf(new, prior, vertex, _full(to), _full(back), dict(h_prior), dict(h_stalk)))
        if self.mirror is not None:
            mobj = self.mirror.complex(obj)
            src = self.mobjects[prior]
            mt = self.mirror.chain(to, src, mobj)
            mb = self.mirror.chain(back, mobj, src)
            hp = self.mirror.homotopy(h_prior, src, src)
            hs = self.mirror.homotopy(h_stalk, mobj, mobj)
            self.mobjects[new] = mobj
            mv = mirror_vertex if mirror_vertex is not None else vertex
            self.mcert.steps.append(StalkOf(new, prior, mv, _full(mt), _full(mb), hp, hs))
        return new

    def goal(self, vertex: int, obj: str, mirror_vertex: int | None = None, mirror_only: bool = False):
        if not mirror_only:
            self.cert.goals.append(Goal(vertex, obj))
        if self.mirror is not None:
            self.mcert.goals.append(Goal(mirror_vertex if mirror_vertex is not None else vertex, obj))


def _full(f: ChainMap) -> dict:
    return {i: f.comp(i) for i in sorted(set(f.source.degrees()) | set(f.target.degrees()))
            if f.source.dim(i) or f.target.dim(i)}


def stalk_goal_witness(obj: Complex, vertex: int):
    """Strict isomorphism data from a one-term complex to the standard stalk ``P_vertex`` in its degree."""
    A = obj.algebra
    deg = obj.lo
    P = standard_projective(A, vertex)
    iso = find_isomorphism(obj.term(deg), P)
    if iso is None:
        return None
    S = stalk(P, deg)
    to = ChainMap(obj, S, {deg: iso})
    back = ChainMap(S, obj, {deg: iso.inverse()})
    return S, to, back


def add_projective_goals(b: CertificateBuilder, name: str, seen: set, mirror_vertex=None) -> bool:
    """If object ``name`` is a shifted indecomposable projective stalk, record its goal."""
    obj = b.objects[name]
    kind = projective_stalk_kind(obj)
    if kind is None:
        return False
    v, deg = kind
    if v in seen:
        return True
    cur = name
    if deg != 0:
        cur = b.shift(name, deg)
    w = stalk_goal_witness(b.objects[cur], v)
    S, to, back = w
    new = b.stalk(cur, v, to, back, {}, {}, S,
                  mirror_vertex=None if mirror_vertex is None else mirror_vertex(v))
    b.goal(v, new, None if mirror_vertex is None else mirror_vertex(v))
    seen.add(v)
    return True


def split_into_pool(b: CertificateBuilder, name: str, seed: int = 0) -> list[str]:
    """Minimize object ``name`` and split it into indecomposable summands, recording steps."""
    obj = b.objects[name]
    mn = minimize(obj, seed)
    if mn.complex.total_dim() != obj.total_dim():
        cur = b.summand(name, mn.frm, mn.to, mn.complex)
    else:
        cur = name
    m = b.objects[cur]
    if m.is_zero:
        return []
    parts = decompose_complex(m, seed)
    if len(parts) == 1:
        return [cur]
    out = []
    for p in parts:
        out.append(b.summand(cur, p.incl, p.proj, p.complex))
    return out


def search_generation(t: Complex, budget: int = 64, size_cap: int = 512, seed: int = 0,
                      mirror=None, mirror_base=None, mirror_vertex=None) -> GenerationResult:
    """Breadth-first search for a generation certificate by cones of hom basis elements."""
    A = t.algebra
    b = CertificateBuilder(t, mirror=mirror, mirror_base=mirror_base)
    seen: set = set()
    pool = split_into_pool(b, "T", seed)
    for nm in pool:
        add_projective_goals(b, nm, seen, mirror_vertex)
    cones = 0
    list(pool)
    tried = set()
    while len(seen) < A.vertex_count:
        progress = False
        for x in list(pool):
            for y in list(pool):
                X, Y = b.objects[x], b.objects[y]
                for n in _shift_range(X, Y):
                    if (x, y, n) in tried:
                        continue
                    tried.add((x, y, n))
                    Yn = shift(Y, n)
                    H = k_hom(X, Yn)
                    for f in H.representatives():
                        if cones >= budget:
                            return GenerationResult("unknown", b.cert, "budget exhausted", cones_used=cones)
                        ys = b.shift(y, n) if n else y
                        f = ChainMap(X, b.objects[ys], f.comps)
                        c = b.cone(x, ys, f)
                        cones += 1
                        if b.objects[c].total_dim() > size_cap:
                            continue
                        for nm in split_into_pool(b, c, seed):
                            if add_projective_goals(b, nm, seen, mirror_vertex):
                                progress = True
                            if not _already_in(b, nm, pool):
                                pool.append(nm)
                                progress = True
                        if len(seen) == A.vertex_count:
                            break
                    if len(seen) == A.vertex_count:
                        break
                if len(seen) == A.vertex_count:
                    break
            if len(seen) == A.vertex_count:
                break
        if not progress:
            break
    if len(seen) == A.vertex_count:
        res = GenerationResult("certified", b.cert, cones_used=cones)
        if mirror is not None:
            res.mirror_certificate = b.mcert
        return res
    return GenerationResult("unknown", b.cert, "search space exhausted", cones_used=cones)


def _shift_range(X: Complex, Y: Complex):
    if X.is_zero or Y.is_zero:
        return []
    return range(Y.lo - X.hi, Y.hi - X.lo + 1)


def _already_in(b, name, pool) -> bool:
    obj = b.objects[name]
    for other in pool:
        o = b.objects[other]
        if o.signature() == obj.signature() and o.total_dim() == obj.total_dim():
            return True
    return False


def undetected_simples(t: Complex, window=None) -> list[int]:
    """Simples ``S`` with ``Hom(t, S[n]) = 0`` for every ``n`` in the window (a necessary test)."""
    A = t.algebra
    out = []
    for v in range(A.vertex_count):
        S = stalk(simple_module(A, v))
        win = window if window is not None else range(-t.hi, -t.lo + 1)
        if all(k_hom(t, shift(S, n)).dim == 0 for n in win):
            out.append(v)
    return out


def verify_generation(t: Complex, cert: GenerationCertificate | None = None, budget: int = 64,
                      size_cap: int = 512, seed: int = 0) -> GenerationResult:
    for i, m in t.terms.items():
        if not (m.is_standard_projective or is_projective(m)):
            raise ComplexError(f"term {i} is not projective")
    if cert is not None:
        return replay(cert, t)
    missing = undetected_simples(t)
    if budget <= 0:
        return GenerationResult("unknown", None, "no certificate and an empty search budget",
                                undetected_simples=missing)
    res = search_generation(t, budget, size_cap, seed)
    res.undetected_simples = missing
    if res.status == "certified":
        check = replay(res.certificate, t)
        if check.status != "certified":
            return GenerationResult("failed", res.certificate, "search produced a certificate that does not replay: "
                                    + check.message, bad_step=check.bad_step)
    return res
