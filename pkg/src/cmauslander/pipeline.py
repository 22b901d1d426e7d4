"""Cohen-Macaulay Auslander algebras and their transfer along a derived equivalence.

The derived equivalence is given by a bimodule complex ``Delta``.  Every
Gorenstein projective ``X`` is sent to a radical complex whose degree-zero
term is CM and whose positive terms are projective (its normal form).  The
degree-zero terms together with the projectives form the additive generator
``N`` on the other side, and ``Hom_B(N, -)`` turns the sum of the normal
forms into a tilting complex over ``End_B(N)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Algebra
from .bimodules import BimoduleComplex, Image, apply_bimodule, apply_bimodule_map
from .complexes import (
    ChainMap,
    Complex,
    Minimization,
    direct_sum_complexes,
    k_hom,
    minimize,
    resolve_complex,
    stalk,
    standardize_complex,
)
from .homalg import GorensteinReport, cm_failure, gorenstein_report, verify_gproj_list
from .kernel import Matrix, embed, rank, solve, unit_columns, vstack
from .modules import (
    Block,
    EndomorphismData,
    Module,
    direct_sum,
    find_isomorphism,
    is_indecomposable,
    is_projective,
    left_inverse,
    map_from_projective,
    projective_generator_position,
    quotient,
    restrict_to,
    standard_projective,
    zero_module,
)
from .tilt import (
    CertificateBuilder,
    EndAlgebra,
    GenerationResult,
    Orthogonality,
    StalkOf,
    _as_projective_vertex,
    add_projective_goals,
    decompose_complex,
    overlap_window,
    replay,
    verify_orthogonality,
)


class PipelineError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# CM data and the Auslander algebra


@dataclass
class CMData:
    algebra: Algebra
    report: GorensteinReport
    modules: list  # certified indecomposable Gorenstein projectives
    projective_vertex: list  # vertex for each projective member, None otherwise
    selected: list  # indices of the non-projective members, input order

    @property
    def nonprojective(self) -> list[Module]:
        return [self.modules[i] for i in self.selected]


def cm_data(A: Algebra, mods: Sequence[Module], report: GorensteinReport | None = None, seed: int = 0,
            extra_degrees: int = 0) -> CMData:
    report = report or gorenstein_report(A)
    cert = verify_gproj_list(A, list(mods), report, seed, extra_degrees)
    if not cert.certified:
        raise PipelineError("Gorenstein projective list not certified: " + "; ".join(cert.reasons))
    pv = [_as_projective_vertex(m) if is_projective(m) else None for m in mods]
    selected = [i for i, v in enumerate(pv) if v is None]
    return CMData(A, report, list(mods), pv, selected)


def generator_list(cm: CMData) -> list[Module]:
    """Projectives in vertex order (standard form), then the non-projective members in input order."""
    A = cm.algebra
    return [standard_projective(A, v) for v in range(A.vertex_count)] + cm.nonprojective


def auslander_algebra(cm: CMData, name: str = "Lambda") -> EndomorphismData:
    return EndomorphismData(generator_list(cm), name=name)


def ext_quiver(A: Algebra) -> dict:
    """Arrow counts ``(a, b) -> dim e_a (rad / rad^2) e_b`` of a basic algebra."""
    R1 = A.radical_power(1)
    R2 = A.radical_power(2)
    out = {}
    for (s, t), idx in A.block_indices.items():
        idx = list(idx)
        r1 = rank(R1.submatrix(idx, range(R1.cols))) if R1.cols else 0
        r2 = rank(R2.submatrix(idx, range(R2.cols))) if R2.cols else 0
        if r1 - r2:
            out[(s, t)] = r1 - r2
    return out


# ---------------------------------------------------------------------------
# normal forms


@dataclass
class NormalForm:
    source: Module
    image: Image  # Delta (x) X
    resolution: object
    W: Complex  # cokernel at 0 followed by the resolution in positive degrees
    quotient_map: Matrix  # Q^0 -> W^0
    section: Matrix  # linear right inverse of quotient_map
    minimization: Minimization
    complex: Complex
    degree0_cm: bool
    positive_projective: bool
    failure: str | None = None

    @property
    def length(self) -> int:
        return 0 if self.complex.is_zero else self.complex.hi

    def lines(self):
        c = self.complex
        sig = " ".join(f"{i}:{c.dim(i)}" for i in c.degrees())
        return [f"normal_form: {sig}", f"degree0_cm: {str(self.degree0_cm).lower()}",
                f"positive_projective: {str(self.positive_projective).lower()}"]


def normal_form(delta: BimoduleComplex, X: Module, report_B: GorensteinReport | None = None,
                seed: int = 0) -> NormalForm:
    B = delta.left
    F = B.field
    im = apply_bimodule(delta, stalk(X))
    C = im.complex
    hom = C.homology_dims()
    below = [i for i in hom if i < 0]
    if below:
        raise PipelineError(f"image of {X.name or 'module'} has homology in degree {min(below)}")
    if C.is_zero:
        raise PipelineError("image is the zero complex")
    res = resolve_complex(C, 0, keep_boundary=True)
    Q = res.Q
    K, inc, nQ = res.boundary_kernel
    Q0 = Q.term(0)
    bcols = (inc @ Matrix.identity(F, K.dim)).block(0, nQ, 0, K.dim) if K.dim else Matrix.zeros(F, Q0.dim, 0)
    Z, p = quotient(Q0, bcols, name=f"Z({X.name})")
    sec = solve(p, Matrix.identity(F, Z.dim)) if Z.dim else Matrix.zeros(F, Q0.dim, 0)
    terms = {i: m for i, m in Q.terms.items() if i >= 1}
    if Z.dim:
        terms[0] = Z
    diffs = {i: d for i, d in Q.diffs.items() if i >= 1}
    if Z.dim and 1 in terms:
        diffs[0] = Q.diff(0) @ sec
    W = Complex(B, terms, diffs, name=f"W({X.name})")
    W.check()
    mn = minimize(W, seed)
    P = mn.complex
    report_B = report_B or gorenstein_report(B)
    failure = None
    if P.is_zero:
        deg0 = True
    else:
        if P.lo < 0:
            raise PipelineError("normal form has negative degrees")
        f0 = cm_failure(P.term(0), report_B) if P.dim(0) else None
        deg0 = f0 is None
        if f0:
            failure = f"degree-0 term not CM: {f0}"
    pos = all(is_projective(P.term(i)) for i in P.degrees() if i >= 1)
    if not pos and failure is None:
        failure = "a positive term is not projective"
    return NormalForm(X, im, res, W, p, sec, mn, P, deg0, pos, failure)


def _lift_through_cover(P_src: Module, target: Matrix, pi: Matrix, Q: Module) -> Matrix:
    """``phi: P_src -> Q`` with ``pi @ phi = target`` for a standard projective ``P_src``."""
    A = P_src.algebra
    images = []
    for blk in P_src.summands:
        v = blk.kind[1]
        gp = blk.start + projective_generator_position(A, v)
        col = target.col(gp)
        idx = [c for c in range(Q.dim) if Q.labels[c] == v]
        if not idx:
            if not col.is_zero():
                raise PipelineError("lift system inconsistent")
            images.append(Matrix.zeros(A.field, Q.dim, 1))
            continue
        sol = solve(pi.submatrix(range(pi.rows), idx), col)
        if sol is None:
            raise PipelineError("lift system inconsistent: cover is not surjective on the generator")
        images.append(unit_columns(A.field, Q.dim, idx) @ sol)
    return map_from_projective(P_src, Q, images)


def lift_chain_map(delta: BimoduleComplex, nfX: NormalForm, nfY: NormalForm, f: Matrix) -> ChainMap:
    """A chain map ``P_X -> P_Y`` over ``Delta (x) f``, built by strict lifting in degrees >= 0."""
    B = delta.left
    F = B.field
    fx = ChainMap(stalk(nfX.source), stalk(nfY.source), {0: f})
    g_img = apply_bimodule_map(delta, nfX.image, nfY.image, fx)
    QX, QY = nfX.resolution.Q, nfY.resolution.Q
    qX = nfX.resolution.q
    phi = {}
    for i in sorted(QX.terms, reverse=True):
        if i < 0:
            continue
        g = g_img.comp(i) @ qX[i] if i in qX else Matrix.zeros(F, nfY.image.complex.dim(i), QX.dim(i))
        if QY.dim(i) == 0:
            if not g.is_zero() or (i + 1 in phi and not (phi[i + 1] @ QX.diff(i)).is_zero()):
                raise PipelineError("lift system inconsistent: empty target term")
            phi[i] = Matrix.zeros(F, 0, QX.dim(i))
            continue
        K, inc, pi, nQ = nfY.resolution.stages[i]
        up = phi[i + 1] @ QX.diff(i) if (i + 1) in phi else Matrix.zeros(F, nQ, QX.dim(i))
        top = up if nQ else Matrix.zeros(F, 0, QX.dim(i))
        tau = vstack(F, [top, g], cols=QX.dim(i))
        kappa = left_inverse(inc) @ tau
        if not (inc @ kappa) == tau:
            raise PipelineError("lift system inconsistent: target leaves the pullback")
        phi[i] = _lift_through_cover(QX.term(i), kappa, pi, QY.term(i))
    comps = {i: m for i, m in phi.items() if i >= 1}
    WX, WY = nfX.W, nfY.W
    if WX.dim(0) and WY.dim(0):
        comps[0] = nfY.quotient_map @ phi[0] @ nfX.section
    Phi = ChainMap(WX, WY, comps)
    Phi.check()
    return nfY.minimization.to @ Phi @ nfX.minimization.frm


@dataclass
class BetaLift:
    chain: ChainMap
    beta: Matrix


def stable_image_map(delta: BimoduleComplex, nfX: NormalForm, nfY: NormalForm, f: Matrix) -> BetaLift:
    ch = lift_chain_map(delta, nfX, nfY, f)
    F = delta.left.field
    if ch.source.dim(0) and ch.target.dim(0):
        beta = ch.comp(0)
    else:
        beta = Matrix.zeros(F, ch.target.dim(0), ch.source.dim(0))
    return BetaLift(ch, beta)


# ---------------------------------------------------------------------------
# the functor Hom_B(N, -)


class HomFunctor:
    """``Hom_B(N, -)`` on complexes whose terms are block sums of the summands of ``N``.

    A block of kind ``("P", v)`` is the standard projective ``P_v`` and a block
    of kind ``("N", k)`` is the ``k``-th summand of ``N`` in its given basis.
    ``Hom_B(N, N_k)`` is identified with the standard ``Gamma e_k``; a map
    ``N_k -> N_l`` acts by right multiplication with its element of ``Gamma``.
    The functor is strictly additive on block sums, so summands and cones
    transported through it agree on the nose with recomputed ones.
    """

    def __init__(self, data: EndomorphismData):
        self.data = data
        self.algebra = data.algebra
        self.field = data.field
        self._proj = {}

    @staticmethod
    def index(kind) -> int:
        tag, k = kind
        if tag not in ("P", "N"):
            raise PipelineError(f"block {kind} is not a summand of N")
        return k

    def proj(self, k: int) -> Module:
        if k not in self._proj:
            self._proj[k] = standard_projective(self.algebra, k)
        return self._proj[k]

    def _blocks(self, m: Module):
        if m.summands is None:
            raise PipelineError(f"term {m.name} has no block structure")
        return [self.index(b.kind) for b in m.summands]

    def module(self, m: Module) -> Module:
        mods = [self.proj(k) for k in self._blocks(m)]
        if not mods:
            return zero_module(self.algebra)
        return direct_sum(mods) if len(mods) > 1 else mods[0]

    def complex(self, c: Complex) -> Complex:
        terms = {i: self.module(m) for i, m in c.terms.items()}
        diffs = {i: self.matrix(d, c.term(i), c.term(i + 1)) for i, d in c.diffs.items()}
        return Complex(self.algebra, terms, diffs, name=f"Hom(N,{c.name})")

    def matrix(self, f: Matrix, x: Module, y: Module) -> Matrix:
        G = self.algebra
        F = self.field
        xs, ys = self._blocks(x), self._blocks(y)
        rows = sum(self.proj(k).dim for k in ys)
        cols = sum(self.proj(k).dim for k in xs)
        out = Matrix.zeros(F, rows, cols)
        c0 = 0
        for bx, k in zip(x.summands, xs):
            r0 = 0
            for by, l in zip(y.summands, ys):
                comp = f.submatrix(range(by.start, by.stop), range(bx.start, bx.stop))
                if not comp.is_zero():
                    gamma = self.data.element_coords((k, l), comp)
                    R = G.combination([G.right_matrix(j) for j in range(G.dim)], gamma)
                    blk = R.submatrix(G.right_ideal_indices(l), G.right_ideal_indices(k))
                    out = out + embed(F, blk, rows, cols, range(r0, r0 + blk.rows), range(c0, c0 + blk.cols))
                r0 += self.proj(l).dim
            c0 += self.proj(k).dim
        return out

    def chain(self, f: ChainMap, src: Complex, tgt: Complex) -> ChainMap:
        comps = {i: self.matrix(m, f.source.term(i), f.target.term(i)) for i, m in f.comps.items()}
        return ChainMap(src, tgt, comps)

    def homotopy(self, h: dict, src: Complex, tgt: Complex) -> dict:
        # only strict isomorphisms are transported, so homotopies are zero
        if any(not m.is_zero() for m in h.values()):
            raise PipelineError("non-zero homotopies are not transported")
        return {}


def retag(c: Complex, kinds: dict) -> Complex:
    """Replace block kinds according to ``kinds[(degree, block_start)]``."""
    terms = {}
    for i, m in c.terms.items():
        blocks = tuple(Block(b.start, b.stop, kinds.get((i, b.start), b.kind)) for b in m.summands)
        terms[i] = m.with_summands(blocks)
    return Complex(c.algebra, terms, dict(c.diffs), name=c.name)


# ---------------------------------------------------------------------------
# transfer


@dataclass
class NaturalMap:
    matrix: Matrix  # End coordinates (rows) of the image of each Lambda basis element (columns)
    chain_maps: list  # over Gamma, one per basis element of Lambda
    multiplicative: bool
    injective: bool
    dims_equal: bool
    failure: str | None = None

    @property
    def is_isomorphism(self):
        return self.multiplicative and self.injective and self.dims_equal


@dataclass
class TransferReport:
    lam: EndomorphismData
    gamma: EndomorphismData
    report_A: GorensteinReport
    report_B: GorensteinReport
    normal_forms: list
    Y: list
    tbar: Complex
    tbar_summands: list
    t_gamma: Complex
    t_gamma_summands: list
    orth_B: Orthogonality
    orth_gamma: Orthogonality
    generation: GenerationResult
    end: EndAlgebra
    natural: NaturalMap
    failure: str | None = None
    checks: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.failure is None

    def lines(self):
        out = [f"status: {'certified' if self.certified else 'failed'}"]
        if self.failure:
            out.append(f"failure: {self.failure}")
        out.append(f"dim_Lambda: {self.lam.algebra.dim}")
        out.append(f"dim_Gamma: {self.gamma.algebra.dim}")
        out.append(f"vertices: {self.lam.algebra.vertex_count}")
        out.append(f"d_A: {self.report_A.d}")
        out.append(f"d_B: {self.report_B.d}")
        out.append("tilting_complex: " + " ".join(f"{i}:{self.t_gamma.dim(i)}" for i in self.t_gamma.degrees()))
        out.append(f"orthogonality_B: {'pass' if self.orth_B.passed else 'fail'}")
        out.append(f"orthogonality_Gamma: {'pass' if self.orth_gamma.passed else 'fail'}")
        out.append(f"generation: {self.generation.status}")
        out.append(f"dim_End: {self.end.dim if self.end is not None else 'n/a'}")
        if self.natural is not None:
            out.append(f"natural_map_multiplicative: {str(self.natural.multiplicative).lower()}")
            out.append(f"natural_map_injective: {str(self.natural.injective).lower()}")
            out.append(f"natural_map_dims_equal: {str(self.natural.dims_equal).lower()}")
        for name, ok in self.checks:
            out.append(f"check {name}: {'pass' if ok else 'fail'}")
        return out


def _block_inclusions(parts: list[Complex], total: Complex):
    F = total.field
    incs, projs = [], []
    for k, c in enumerate(parts):
        inc, pr = {}, {}
        for i in total.degrees():
            n = total.dim(i)
            off = sum(p.dim(i) for p in parts[:k])
            U = unit_columns(F, n, range(off, off + c.dim(i)))
            inc[i] = U
            pr[i] = U.T()
        incs.append(ChainMap(c, total, inc))
        projs.append(ChainMap(total, c, pr))
    return incs, projs


def assemble_transfer(cm: CMData, delta: BimoduleComplex, report_B: GorensteinReport | None = None,
                      seed: int = 0, budget: int = 64, size_cap: int = 512) -> TransferReport:
    A = cm.algebra
    B = delta.left
    if delta.right is not A and delta.right != A:
        raise PipelineError("bimodule complex acts on a different algebra")
    report_B = report_B or gorenstein_report(B)
    if not report_B.is_gorenstein:
        raise PipelineError("target algebra is not Gorenstein within the bound")
    checks = [("gorenstein_dimensions_agree", report_B.d == cm.report.d)]
    gens = generator_list(cm)
    s = A.vertex_count
    t = B.vertex_count
    lam = EndomorphismData(gens, name="Lambda")
    nfs = [normal_form(delta, M, report_B, seed) for M in gens]
    for a, nf in enumerate(nfs):
        if nf.failure:
            raise PipelineError(f"normal form of generator {a+1}: {nf.failure}")
    # degree-zero terms: projective for projective sources, one non-projective block otherwise
    tagged = []
    Y = []
    for a, nf in enumerate(nfs):
        P = nf.complex
        kinds = {}
        if a < s:
            if P.dim(0) and not all(b.is_projective for b in P.term(0).summands):
                raise PipelineError(f"degree-0 term of the image of P{a+1} is not projective")
        else:
            blocks = [b for b in P.term(0).summands if not b.is_projective] if P.dim(0) else []
            if len(blocks) != 1:
                raise PipelineError(f"degree-0 term of the image of X{a-s+1} has {len(blocks)} non-projective "
                                    "summands; expected exactly one")
            blk = blocks[0]
            inc = unit_columns(B.field, P.dim(0), range(blk.start, blk.stop))
            Yi = restrict_to(P.term(0), inc, inc.T(), name=f"Y{a-s+1}")
            if not is_indecomposable(Yi):
                raise PipelineError(f"Y{a-s+1} is decomposable")
            if is_projective(Yi):
                raise PipelineError(f"Y{a-s+1} is projective")
            for j, other in enumerate(Y):
                if find_isomorphism(other, Yi) is not None:
                    raise PipelineError(f"Y{a-s+1} is isomorphic to Y{j+1}")
            Y.append(Yi)
            kinds[(0, blk.start)] = ("N", t + len(Y) - 1)
        tagged.append(retag(P, kinds))
    checks.append(("Y_indecomposable_nonprojective", True))
    Ndata = EndomorphismData([standard_projective(B, v) for v in range(t)] + Y, name="Gamma")
    # T-bar over B, orthogonal in the homotopy category of add(N)
    tbar = direct_sum_complexes(tagged).complex if len(tagged) > 1 else tagged[0]
    orth_B = verify_orthogonality(tbar, require_projective=False)
    functor = HomFunctor(Ndata)
    tg_parts = [functor.complex(c) for c in tagged]
    t_gamma = direct_sum_complexes(tg_parts).complex if len(tg_parts) > 1 else tg_parts[0]
    t_gamma.check()
    orth_G = verify_orthogonality(t_gamma)
    gen = canonical_certificate(tbar, tagged, t_gamma, functor, s, t, len(Y), seed, budget, size_cap)
    failure = None
    if not orth_B.passed:
        failure = f"orthogonality over B fails at shift {orth_B.offending}"
    elif not orth_G.passed:
        failure = f"orthogonality over Gamma fails at shift {orth_G.offending}"
    elif gen.status != "certified":
        failure = f"generation {gen.status}: {gen.message}"
    end = EndAlgebra(tg_parts, name="EndK")
    nat = natural_map(delta, lam, nfs, tagged, tg_parts, functor, end)
    if failure is None and not nat.is_isomorphism:
        failure = nat.failure or "natural map is not an isomorphism"
    return TransferReport(lam, Ndata, cm.report, report_B, nfs, Y, tbar, tagged, t_gamma, tg_parts,
                          orth_B, orth_G, gen, end, nat, failure, checks)


def natural_map(delta, lam: EndomorphismData, nfs, tagged, tg_parts, functor: HomFunctor,
                end: EndAlgebra) -> NaturalMap:
    L = lam.algebra
    F = L.field
    cols = []
    chains = []
    for k in range(L.dim):
        a, b = lam.grading[k]
        ch = lift_chain_map(delta, nfs[a], nfs[b], lam.maps[k])
        ch = ChainMap(tagged[a], tagged[b], ch.comps)
        g = functor.chain(ch, tg_parts[a], tg_parts[b])
        chains.append(g)
        cols.append(end.element_coords((a, b), g))
    M = Matrix.from_rows(F, [list(r) for r in zip(*cols)], L.dim) if cols else Matrix.zeros(F, end.dim, 0)
    return _natural_checks(L, end, M, chains)


def _natural_checks(L: Algebra, end: EndAlgebra, M: Matrix, chains) -> NaturalMap:
    E = end.algebra
    failure = None
    mult = True
    for i in range(L.dim):
        for j in range(L.dim):
            lhs = M @ Matrix.column(L.field, _vec(L, L.products[i][j]))
            rhs = Matrix.column(L.field, E.multiply(M.col(i).entries(), M.col(j).entries()))
            if not lhs == rhs:
                mult = False
                failure = failure or f"natural map not multiplicative on basis pair ({L.labels[i]}, {L.labels[j]})"
                break
        if not mult:
            break
    unit_ok = M @ L.unit() == E.unit()
    if not unit_ok:
        mult = False
        failure = failure or "natural map does not preserve the unit"
    inj = rank(M) == L.dim
    if not inj:
        failure = failure or "natural map has a kernel"
    eq = E.dim == L.dim
    if not eq:
        failure = failure or f"dimensions differ: {L.dim} vs {E.dim}"
    return NaturalMap(M, chains, mult, inj, eq, failure)


def _vec(A: Algebra, terms):
    out = [A.field.scalar(0)] * A.dim
    for k, c in terms:
        out[k] = A.field.scalar(c)
    return out


# ---------------------------------------------------------------------------
# the canonical generation certificate


def canonical_certificate(tbar: Complex, parts: list[Complex], t_gamma: Complex, functor: HomFunctor,
                          s: int, t: int, m: int, seed: int = 0, budget: int = 64,
                          size_cap: int = 512) -> GenerationResult:
    """Certificate over ``Gamma`` mirrored from a construction over ``B``.

    The projectives of ``B`` come from the summands of the image of ``A``
    (directly when they are stalks, otherwise by a bounded cone search).  Each
    ``Y_i`` is then split off the cone of the inclusion of the positive part
    of its normal form, which is homotopic to the degree-zero term.
    """
    b = CertificateBuilder(tbar, mirror=functor, mirror_base=t_gamma)
    incs, projs = _block_inclusions(parts, tbar)
    names = [b.summand("T", incs[a], projs[a], parts[a]) for a in range(len(parts))]
    seen: set = set()
    pool = []
    for a in range(s):
        for nm in tagged_split(b, names[a], seed):
            pool.append(nm)
            add_projective_goals(b, nm, seen, mirror_vertex=lambda v: v)
    cones = 0
    if len(seen) < t:
        cones = _cone_search(b, pool, seen, t, budget, size_cap, seed)
        if len(seen) < t:
            missing = ",".join(str(v + 1) for v in range(t) if v not in seen)
            return GenerationResult("unknown", b.mcert, f"projectives P{missing} of B not reached within the budget",
                                    cones_used=cones)
    stalks = {st.vertex: st.name for st in b.cert.steps if isinstance(st, StalkOf)}
    for i in range(m):
        P = parts[s + i]
        cur = names[s + i]
        if P.hi > 0:
            plus = _build_positive_part(b, P, stalks)
            inc = ChainMap(b.objects[plus], P, {k: Matrix.identity(P.field, P.dim(k)) for k in P.degrees() if k >= 1})
            c = b.cone(plus, cur, inc)
            mn = minimize(b.objects[c], seed)
            cur = b.summand(c, mn.frm, mn.to, mn.complex)
        obj = b.objects[cur]
        if obj.lo != 0 or obj.hi != 0:
            return GenerationResult("failed", b.mcert, f"cone for Y{i+1} is not a stalk in degree 0", cones_used=cones)
        term = obj.term(0)
        blk = next(bb for bb in term.summands if bb.kind == ("N", t + i))
        U = unit_columns(term.field, term.dim, range(blk.start, blk.stop))
        Ym = restrict_to(term, U, U.T(), summands=(Block(0, blk.size, ("N", t + i)),), name=f"Y{i+1}")
        Ys = stalk(Ym, 0, name=f"Y{i+1}")
        yn = b.summand(cur, ChainMap(Ys, obj, {0: U}), ChainMap(obj, Ys, {0: U.T()}), Ys)
        b.goal(t + i, yn, mirror_vertex=t + i, mirror_only=True)
    res = replay(b.mcert, t_gamma)
    res.cones_used = cones
    res.source_certificate = b.cert
    return res


def tagged_split(b: CertificateBuilder, name: str, seed: int = 0) -> list[str]:
    """Minimize and split an object into indecomposable summands whose terms stay block-tagged."""
    obj = b.objects[name]
    mn = minimize(obj, seed)
    cur = b.summand(name, mn.frm, mn.to, mn.complex) if mn.complex.total_dim() != obj.total_dim() else name
    m = b.objects[cur]
    if m.is_zero:
        return []
    parts = decompose_complex(m, seed)
    if len(parts) == 1:
        return [cur]
    out = []
    for p in parts:
        std, to, back = standardize_complex(p.complex, seed)
        for i in std.degrees():
            if any(not blk.is_projective for blk in std.term(i).summands):
                raise PipelineError("summand with a non-projective term in the projective pool")
        incl = p.incl @ ChainMap(std, p.complex, back)
        proj = ChainMap(p.complex, std, to) @ p.proj
        out.append(b.summand(cur, incl, proj, std))
    return out


def _cone_search(b: CertificateBuilder, pool, seen, t, budget, size_cap, seed) -> int:
    cones = 0
    tried = set()
    progress = True
    while len(seen) < t and progress:
        progress = False
        for x in list(pool):
            for y in list(pool):
                X, Yc = b.objects[x], b.objects[y]
                for n in overlap_window(X, Yc):
                    if (x, y, n) in tried:
                        continue
                    tried.add((x, y, n))
                    ys = b.shift(y, n) if n else y
                    H = k_hom(X, b.objects[ys])
                    for f in H.representatives():
                        if cones >= budget:
                            return cones
                        c = b.cone(x, ys, ChainMap(X, b.objects[ys], f.comps))
                        cones += 1
                        if b.objects[c].total_dim() > size_cap:
                            continue
                        for nm in tagged_split(b, c, seed):
                            add_projective_goals(b, nm, seen, mirror_vertex=lambda v: v)
                            pool.append(nm)
                            progress = True
                        if len(seen) >= t:
                            return cones
    return cones


def _build_positive_part(b: CertificateBuilder, P: Complex, stalks: dict) -> str:
    """Object equal to the brutal truncation of ``P`` to degrees >= 1, built from projective stalks."""
    top = None
    for k in range(P.hi, 0, -1):
        blocks = list(P.term(k).summands)
        cur = b.shift(stalks[blocks[-1].kind[1]], -k)
        for blk in reversed(blocks[:-1]):
            x = b.shift(stalks[blk.kind[1]], -(k + 1))
            cur = b.cone(x, cur, ChainMap(b.objects[x], b.objects[cur], {}))
        if top is None:
            top = cur
            continue
        x = b.shift(cur, -1)
        top = b.cone(x, top, ChainMap(b.objects[x], b.objects[top], {k + 1: P.diff(k)}))
    return top
