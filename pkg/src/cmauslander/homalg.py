"""Projective resolutions, Ext, Gorenstein detection and Cohen-Macaulay tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Algebra
from .kernel import Matrix, hstack, rank
from .modules import (
    DualModule,
    Module,
    cokernel,
    decompose,
    dual,
    evaluation_map,
    find_isomorphism,
    hom_space,
    is_indecomposable,
    is_projective,
    projective_cover,
    regular_module,
    simple_module,
    standard_projective,
    syzygy,
)


class PreconditionError(ValueError):
    pass


@dataclass
class Resolution:
    target: Module
    terms: list  # P^0, P^-1, ...
    differentials: list  # differentials[j]: terms[j+1] -> terms[j]
    augmentation: Matrix
    complete: bool  # True when the last syzygy was zero

    @property
    def length(self):
        return len(self.terms) - 1


def proj_resolution(x: Module, length: int) -> Resolution:
    """Minimal projective resolution up to ``P^-length`` (stops early at zero syzygy)."""
    if length < 0:
        raise ValueError("length must be >= 0")
    P, pi = projective_cover(x)
    terms, diffs = [P], []
    Omega, inc, _, _ = syzygy(x)
    complete = Omega.dim == 0
    cur_inc = inc  # Omega -> terms[-1]
    while len(terms) <= length and Omega.dim:
        Q, q = projective_cover(Omega)
        diffs.append(cur_inc @ q)
        terms.append(Q)
        Omega2, inc2, _, _ = syzygy(Omega)
        # inc2 is into Q (the cover of Omega) since syzygy recomputes the same cover
        Omega, cur_inc = Omega2, inc2
        complete = Omega.dim == 0
    return Resolution(x, terms, diffs, pi, complete)


def projective_dimension(x: Module, bound: int) -> int | None:
    """pd of ``x`` or ``None`` if it exceeds ``bound``."""
    cur = x
    for n in range(bound + 1):
        if is_projective(cur):
            return n
        cur, _, _, _ = syzygy(cur)
    return None


def _induced_hom_map(src: Module, tgt: Module, d: Matrix, y: Module) -> Matrix:
    """Matrix of ``Hom(tgt, y) -> Hom(src, y)``, ``h -> h o d``."""
    F = y.field
    H1 = hom_space(tgt, y)
    H0 = hom_space(src, y)
    if not H1.dim or not H0.dim:
        return Matrix.zeros(F, H0.dim, H1.dim)
    cols = [H0.coords(h @ d) for h in H1.maps]
    return Matrix.from_rows(F, [list(r) for r in zip(*cols)], H1.dim)


def ext_dim(x: Module, y: Module, i: int) -> int:
    """``dim Ext^i(x, y)`` from the minimal projective resolution of ``x``."""
    if i < 0:
        raise ValueError("degree must be >= 0")
    res = proj_resolution(x, i + 1)
    if i >= len(res.terms):
        return 0
    hom_i = hom_space(res.terms[i], y).dim
    # outgoing: Hom(P^-i, y) -> Hom(P^-(i+1), y)
    if i + 1 < len(res.terms):
        out_rank = rank(_induced_hom_map(res.terms[i + 1], res.terms[i], res.differentials[i], y))
    else:
        out_rank = 0
    if i == 0:
        return hom_i - out_rank
    in_rank = rank(_induced_hom_map(res.terms[i], res.terms[i - 1], res.differentials[i - 1], y))
    return hom_i - out_rank - in_rank


def ext_dim_by_dimension_shift(x: Module, y: Module, i: int) -> int:
    """Independent check: ``Ext^i(x,y) = Ext^1(Omega^{i-1} x, y)`` via the long exact sequence."""
    if i == 0:
        return hom_space(x, y).dim
    cur = x
    for _ in range(i - 1):
        cur, _, _, _ = syzygy(cur)
    if cur.dim == 0:
        return 0
    Om, _, P, _ = syzygy(cur)
    return hom_space(Om, y).dim - hom_space(P, y).dim + hom_space(cur, y).dim


def ext_dim_with_padding(x: Module, y: Module, i: int) -> int:
    """Ext from a resolution of ``x`` padded by the contractible ``P --id--> P`` in degrees -i-1, -i."""
    from .kernel import embed
    res = proj_resolution(x, i + 1)
    A = x.algebra
    F = x.field
    pad = standard_projective(A, 0)
    terms = list(res.terms) + [None] * (i + 2 - len(res.terms))
    diffs = list(res.differentials)
    from .modules import direct_sum, zero_module
    Z = zero_module(A)
    terms = [t if t is not None else Z for t in terms]
    while len(diffs) < len(terms) - 1:
        j = len(diffs)
        diffs.append(Matrix.zeros(F, terms[j].dim, terms[j + 1].dim))
    # add pad to terms i and i+1 with identity between them
    new_terms = list(terms)
    new_terms[i] = direct_sum([terms[i], pad]) if terms[i].dim else pad
    new_terms[i + 1] = direct_sum([terms[i + 1], pad]) if terms[i + 1].dim else pad
    new_diffs = list(diffs)
    k = pad.dim
    d = diffs[i]
    nd = Matrix.zeros(F, new_terms[i].dim, new_terms[i + 1].dim)
    nd = embed(F, d, new_terms[i].dim, new_terms[i + 1].dim, range(d.rows), range(d.cols)) + \
        embed(F, Matrix.identity(F, k), new_terms[i].dim, new_terms[i + 1].dim,
              range(terms[i].dim, terms[i].dim + k), range(terms[i + 1].dim, terms[i + 1].dim + k))
    new_diffs[i] = nd
    if i >= 1:
        d = diffs[i - 1]
        new_diffs[i - 1] = embed(F, d, terms[i - 1].dim, new_terms[i].dim, range(d.rows), range(d.cols))
    if i + 1 < len(diffs):
        d = diffs[i + 1]
        new_diffs[i + 1] = embed(F, d, new_terms[i + 1].dim, terms[i + 2].dim, range(d.rows), range(d.cols))
    hom_i = hom_space(new_terms[i], y).dim
    out_rank = rank(_induced_hom_map(new_terms[i + 1], new_terms[i], new_diffs[i], y))
    in_rank = rank(_induced_hom_map(new_terms[i], new_terms[i - 1], new_diffs[i - 1], y)) if i >= 1 else 0
    return hom_i - out_rank - in_rank


# ---------------------------------------------------------------------------
# Gorenstein algebras


@dataclass
class GorensteinReport:
    algebra: Algebra
    left_injective_dimension: int | None  # None: exceeds bound
    right_injective_dimension: int | None
    bound: int

    @property
    def is_gorenstein(self) -> bool:
        return self.left_injective_dimension is not None and self.right_injective_dimension is not None

    @property
    def d(self) -> int | None:
        if not self.is_gorenstein:
            return None
        return max(self.left_injective_dimension, self.right_injective_dimension)

    @property
    def sides_agree(self) -> bool:
        return self.is_gorenstein and self.left_injective_dimension == self.right_injective_dimension

    def lines(self) -> list[str]:
        def fmt(v):
            return str(v) if v is not None else f"exceeds bound {self.bound}"
        return [
            f"left_injective_dimension: {fmt(self.left_injective_dimension)}",
            f"right_injective_dimension: {fmt(self.right_injective_dimension)}",
            f"is_gorenstein: {str(self.is_gorenstein).lower()}",
            f"d: {self.d if self.d is not None else 'none'}",
        ]


def gorenstein_report(A: Algebra, bound: int | None = None) -> GorensteinReport:
    """Injective dimensions of ``A`` on both sides, via projective dimensions of duals."""
    if bound is None:
        bound = 2 * A.dim
    if bound < 1:
        raise ValueError("bound must be >= 1")
    left = projective_dimension(dual(regular_module(A)), bound)  # over A^op
    right = projective_dimension(dual(regular_module(A.opposite())), bound)  # over A
    return GorensteinReport(A, left, right, bound)


def ext_to_regular(x: Module, i: int) -> int:
    A = x.algebra
    return sum(ext_dim(x, standard_projective(A, v), i) for v in range(A.vertex_count))


def is_cm_module(x: Module, report: GorensteinReport, extra_degrees: int = 0) -> bool:
    """``Ext^i(x, A) = 0`` for ``1 <= i <= d`` (plus ``extra_degrees``), and ``x`` reflexive."""
    return cm_failure(x, report, extra_degrees) is None


def cm_failure(x: Module, report: GorensteinReport, extra_degrees: int = 0) -> str | None:
    if not report.is_gorenstein:
        raise PreconditionError("algebra is not Gorenstein within the bound; CM test would be incomplete")
    if report.algebra is not x.algebra and report.algebra != x.algebra:
        raise PreconditionError("report is for a different algebra")
    A = x.algebra
    top = report.d + extra_degrees
    if x.dim == 0:
        return None
    res = proj_resolution(x, top + 1)
    for v in range(A.vertex_count):
        y = standard_projective(A, v)
        homs = [hom_space(t, y).dim for t in res.terms]
        maps = [rank(_induced_hom_map(res.terms[j + 1], res.terms[j], res.differentials[j], y))
                for j in range(len(res.differentials))]
        for i in range(1, top + 1):
            if i >= len(res.terms):
                break
            e = homs[i] - (maps[i] if i < len(maps) else 0) - maps[i - 1]
            if e:
                return f"Ext^{i}(X, A) has dimension {e} at vertex {v + 1}"
    xss, ev, _, _ = evaluation_map(x)
    if xss.dim != x.dim or rank(ev) != x.dim:
        return "evaluation map into the double dual is not an isomorphism"
    return None


# ---------------------------------------------------------------------------
# cosyzygy (needs duals, lives here to keep modules.py free of homological code)


@dataclass
class CosyzygyData:
    cosyzygy: Module
    projective: Module  # P = (Q)* with x embedded
    embedding: Matrix  # x -> P
    projection: Matrix  # P -> cosyzygy


def cosyzygy(x: Module) -> CosyzygyData:
    """``0 -> x -> P -> x' -> 0`` with ``P`` projective, from the dual of a cover of ``x*``."""
    F = x.field
    xss, ev, first, second = evaluation_map(x)
    if xss.dim != x.dim or rank(ev) != x.dim:
        raise PreconditionError("module is not reflexive; cosyzygy needs a Gorenstein projective input")
    xs = first.module
    Q, pi = projective_cover(xs)  # over A^op
    Qd = DualModule(Q)  # Q* over A
    # pi^*: x** -> Q*, psi -> psi o pi
    cols = []
    for j in range(second.offsets[-1]):
        t, psi = second.element_map(j)
        cols.append(Qd.coords(t, psi @ pi))
    pis = hstack(F, cols, rows=Qd.offsets[-1]) if cols else Matrix.zeros(F, Qd.offsets[-1], 0)
    emb = pis @ ev
    P = Qd.module
    coker, proj = cokernel(emb, P, name=f"Omega^-1({x.name})")
    return CosyzygyData(coker, P, emb, proj)


# ---------------------------------------------------------------------------
# Gorenstein-projective lists


@dataclass
class GprojCertificate:
    certified: bool
    reasons: list = field(default_factory=list)
    counterexample: Module | None = None
    failed_check: str | None = None

    def lines(self) -> list[str]:
        out = [f"certified: {str(self.certified).lower()}"]
        if self.certified:
            out.append("scope: relative to closure conditions (projectives, syzygy, cosyzygy, d-th syzygies of simples, radical approximations)")
        for r in self.reasons:
            out.append(f"reason: {r}")
        return out


def _member_index(mods: Sequence[Module], m: Module, seed: int) -> int | None:
    for i, n in enumerate(mods):
        if find_isomorphism(n, m, seed, indecomposable=True) is not None:
            return i
    return None


def verify_gproj_list(A: Algebra, mods: Sequence[Module], report: GorensteinReport,
                      seed: int = 0, extra_degrees: int = 0) -> GprojCertificate:
    """Certify a list of indecomposable Gorenstein projectives against the closure conditions."""
    if not report.is_gorenstein:
        raise PreconditionError("algebra is not Gorenstein within the bound")
    names = [m.name or f"#{i+1}" for i, m in enumerate(mods)]
    # members must be indecomposable and pairwise non-isomorphic (additive generator data)
    for i, m in enumerate(mods):
        if not is_indecomposable(m):
            return GprojCertificate(False, [f"member {names[i]} is decomposable"], m, "indecomposable")
        j = _member_index(mods[:i], m, seed)
        if j is not None:
            return GprojCertificate(False, [f"members {names[j]} and {names[i]} are isomorphic"], m, "distinct")
    # (a) each member is CM
    for i, m in enumerate(mods):
        why = cm_failure(m, report, extra_degrees)
        if why is not None:
            return GprojCertificate(False, [f"member {names[i]} is not CM: {why}"], m, "cm")
    # (b) indecomposable projectives present
    for v in range(A.vertex_count):
        P = standard_projective(A, v)
        if _member_index(mods, P, seed) is None:
            return GprojCertificate(False, [f"indecomposable projective P{v+1} is missing"], P, "projectives")
    # (c) closure under syzygy and cosyzygy
    for i, m in enumerate(mods):
        if is_projective(m):
            continue
        Om, _, _, _ = syzygy(m)
        for s in decompose(Om, seed):
            if not is_projective(s.module) and _member_index(mods, s.module, seed) is None:
                return GprojCertificate(False, [f"syzygy of {names[i]} has a summand outside the list"],
                                        s.module, "syzygy")
        co = cosyzygy(m).cosyzygy
        for s in decompose(co, seed):
            if not is_projective(s.module) and _member_index(mods, s.module, seed) is None:
                return GprojCertificate(False, [f"cosyzygy of {names[i]} has a summand outside the list"],
                                        s.module, "cosyzygy")
    # (d) summands of the d-th syzygy of each simple
    d = report.d
    for v in A.representative_vertices:
        cur = simple_module(A, v)
        for _ in range(d):
            cur, _, _, _ = syzygy(cur)
        for s in decompose(cur, seed):
            if _member_index(mods, s.module, seed) is None:
                return GprojCertificate(False, [f"{d}-th syzygy of S{v+1} has a summand outside the list"],
                                        s.module, "simples")
    # (e) kernels of radical approximations into non-projective members stay in the list
    for i, m in enumerate(mods):
        if is_projective(m):
            continue
        K = sink_kernel(mods, i)
        for s in decompose(K, seed):
            if not is_projective(s.module) and _member_index(mods, s.module, seed) is None:
                return GprojCertificate(False, [f"kernel of the radical approximation of {names[i]} has a "
                                                "summand outside the list"], s.module, "sink")
    return GprojCertificate(True, [])


def sink_kernel(mods: Sequence[Module], i: int) -> Module:
    """Kernel of ``E -> X_i`` built from a basis of radical maps from every member into ``X_i``.

    For a complete list this is the kernel of a right almost split map in the
    category of Gorenstein projectives (plus summands from the list).
    """
    from .algebra import matrix_algebra_radical
    from .modules import direct_sum, kernel, zero_module
    X = mods[i]
    F = X.field
    parts, cols = [], []
    for j, Y in enumerate(mods):
        H = hom_space(Y, X)
        if not H.dim:
            continue
        if j == i:
            R = matrix_algebra_radical(H.maps, F)
            maps = [H.element(R.col(c).entries()) for c in range(R.cols)]
        else:
            maps = H.maps
        for f in maps:
            parts.append(Y)
            cols.append(f)
    if not parts:
        return zero_module(X.algebra)
    E = direct_sum(parts)
    g = hstack(F, cols, rows=X.dim)
    K, _ = kernel(g, E)
    return K


def name_missing(cert: GprojCertificate, candidates: Sequence[Module], seed: int = 0) -> str | None:
    """Name of the candidate isomorphic to the counterexample, if any."""
    if cert.counterexample is None:
        return None
    i = _member_index(candidates, cert.counterexample, seed)
    return candidates[i].name if i is not None else None
