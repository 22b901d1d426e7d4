"""Bounded complexes of modules, chain maps, homotopy categories and bimodule functors.

Differentials raise degree: ``diffs[i]`` maps ``terms[i]`` to ``terms[i+1]``.
Shifts follow ``X[n]^i = X^{i+n}`` with differential multiplied by ``(-1)^n``;
homotopies satisfy ``f - g = d s + s d``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Algebra
from .kernel import (
    Matrix,
    block_matrix,
    column_space,
    complement_columns,
    embed,
    hstack,
    nullspace,
    rank,
    solve,
    unit_columns,
    vstack,
)
from .modules import (
    Block,
    Module,
    direct_sum,
    hom_space,
    is_module_map,
    kernel,
    projective_cover,
    standardize,
    zero_module,
)


class ComplexError(ValueError):
    pass


class BoundExceeded(RuntimeError):
    pass


class Complex:
    def __init__(self, algebra: Algebra, terms: dict, diffs: dict | None = None, name: str = ""):
        self.algebra = algebra
        self.field = algebra.field
        diffs = diffs or {}
        keep = {i: m for i, m in terms.items() if m.dim}
        self.terms = dict(sorted(keep.items()))
        self.diffs = {}
        for i, d in diffs.items():
            if i in self.terms and (i + 1) in self.terms and not d.is_zero():
                self.diffs[i] = d
        self.name = name

    # structure ------------------------------------------------------------
    @property
    def lo(self):
        return min(self.terms) if self.terms else None

    @property
    def hi(self):
        return max(self.terms) if self.terms else None

    @property
    def is_zero(self):
        return not self.terms

    def degrees(self):
        if self.is_zero:
            return range(0)
        return range(self.lo, self.hi + 1)

    def term(self, i) -> Module:
        m = self.terms.get(i)
        return m if m is not None else zero_module(self.algebra)

    def dim(self, i) -> int:
        m = self.terms.get(i)
        return m.dim if m is not None else 0

    def diff(self, i) -> Matrix:
        d = self.diffs.get(i)
        if d is not None:
            return d
        return Matrix.zeros(self.field, self.dim(i + 1), self.dim(i))

    def total_dim(self):
        return sum(m.dim for m in self.terms.values())

    def __repr__(self):
        sig = " ".join(f"{i}:{self.dim(i)}" for i in self.degrees())
        return f"Complex({self.name or '?'}; {sig or 'zero'})"

    def check(self) -> bool:
        for i in self.degrees():
            d = self.diff(i)
            if d.shape != (self.dim(i + 1), self.dim(i)):
                raise ComplexError(f"differential {i} has wrong shape")
            if self.dim(i) and self.dim(i + 1) and not is_module_map(d, self.term(i), self.term(i + 1)):
                raise ComplexError(f"differential {i} is not a module map")
            dd = self.diff(i + 1) @ d
            if not dd.is_zero():
                raise ComplexError(f"d^{i+1} d^{i} != 0")
        return True

    @property
    def is_projective_complex(self) -> bool:
        return all(m.is_standard_projective for m in self.terms.values())

    def signature(self):
        """Degree-wise block kinds; a cheap invariant of minimized complexes."""
        out = []
        for i in self.degrees():
            m = self.term(i)
            kinds = tuple(sorted(b.kind for b in m.summands)) if m.summands is not None else (m.dim,)
            out.append((i, kinds))
        return tuple(out)

    def homology_dims(self) -> dict:
        out = {}
        for i in self.degrees():
            z = self.dim(i) - rank(self.diff(i))
            b = rank(self.diff(i - 1))
            if z - b:
                out[i] = z - b
        return out

    def is_acyclic(self) -> bool:
        return not self.homology_dims()


def stalk(m: Module, degree: int = 0, name: str = "") -> Complex:
    return Complex(m.algebra, {degree: m}, {}, name=name or m.name)


def zero_complex(A: Algebra) -> Complex:
    return Complex(A, {}, {})


class ChainMap:
    def __init__(self, source: Complex, target: Complex, comps: dict):
        self.source = source
        self.target = target
        self.comps = {}
        for i, m in comps.items():
            if source.dim(i) and target.dim(i) and not m.is_zero():
                self.comps[i] = m

    def comp(self, i) -> Matrix:
        m = self.comps.get(i)
        if m is not None:
            return m
        return Matrix.zeros(self.source.field, self.target.dim(i), self.source.dim(i))

    def degrees(self):
        degs = set(self.source.degrees()) | set(self.target.degrees())
        return sorted(degs)

    def check(self) -> bool:
        x, y = self.source, self.target
        for i in self.degrees():
            f = self.comp(i)
            if f.shape != (y.dim(i), x.dim(i)):
                raise ComplexError(f"component {i} has wrong shape")
            if x.dim(i) and y.dim(i) and not is_module_map(f, x.term(i), y.term(i)):
                raise ComplexError(f"component {i} is not a module map")
        for i in range(min(self.degrees(), default=0) - 1, max(self.degrees(), default=0) + 1):
            lhs = y.diff(i) @ self.comp(i)
            rhs = self.comp(i + 1) @ x.diff(i)
            if not lhs == rhs:
                raise ComplexError(f"chain condition fails at degree {i}")
        return True

    def is_chain_map(self) -> bool:
        try:
            return self.check()
        except ComplexError:
            return False

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """``self o other``."""
        return ChainMap(other.source, self.target,
                        {i: self.comp(i) @ other.comp(i) for i in other.source.degrees()})

    def __add__(self, other):
        return ChainMap(self.source, self.target, {i: self.comp(i) + other.comp(i) for i in self.degrees()})

    def __sub__(self, other):
        return ChainMap(self.source, self.target, {i: self.comp(i) - other.comp(i) for i in self.degrees()})

    def scale(self, c):
        return ChainMap(self.source, self.target, {i: m.scale(c) for i, m in self.comps.items()})

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        return all(self.comp(i) == other.comp(i) for i in set(self.degrees()) | set(other.degrees()))


def identity_map(c: Complex) -> ChainMap:
    return ChainMap(c, c, {i: Matrix.identity(c.field, c.dim(i)) for i in c.degrees()})


def zero_map(x: Complex, y: Complex) -> ChainMap:
    return ChainMap(x, y, {})


def check_homotopy(f: ChainMap, g: ChainMap, s: dict) -> bool:
    """``f - g = d s + s d`` with ``s[i]: x^i -> y^{i-1}``."""
    x, y = f.source, f.target
    F = x.field

    def S(i):
        m = s.get(i)
        return m if m is not None else Matrix.zeros(F, y.dim(i - 1), x.dim(i))

    for i in set(x.degrees()) | set(y.degrees()):
        lhs = f.comp(i) - g.comp(i)
        rhs = y.diff(i - 1) @ S(i) + S(i + 1) @ x.diff(i)
        if not lhs == rhs:
            return False
    return True


def shift(c: Complex, n: int) -> Complex:
    sign = -1 if n % 2 else 1
    terms = {i - n: m for i, m in c.terms.items()}
    diffs = {i - n: d.scale(sign) if sign < 0 else d for i, d in c.diffs.items()}
    return Complex(c.algebra, terms, diffs, name=f"{c.name}[{n}]" if n else c.name)


def shift_map(f: ChainMap, n: int, source: Complex | None = None, target: Complex | None = None) -> ChainMap:
    src = source or shift(f.source, n)
    tgt = target or shift(f.target, n)
    return ChainMap(src, tgt, {i - n: m for i, m in f.comps.items()})


@dataclass
class Cone:
    complex: Complex
    incl: ChainMap  # Y -> cone
    proj: ChainMap  # cone -> X[1]


def cone(f: ChainMap) -> Cone:
    """``cone(f)^i = X^{i+1} + Y^i`` with ``d = [[-d_X, 0], [f, d_Y]]``."""
    x, y = f.source, f.target
    A = x.algebra
    F = x.field
    degs = set(i - 1 for i in x.degrees()) | set(y.degrees())
    terms, sizes = {}, {}
    for i in degs:
        a, b = x.term(i + 1), y.term(i)
        parts = [m for m in (a, b) if m.dim]
        if parts:
            terms[i] = direct_sum(parts) if len(parts) > 1 else parts[0]
        sizes[i] = (a.dim, b.dim)
    diffs = {}
    for i in degs:
        if i + 1 not in sizes:
            continue
        (a0, b0), (a1, b1) = sizes[i], sizes[i + 1]
        blocks = [[x.diff(i + 1).scale(-1), None], [f.comp(i + 1), y.diff(i)]]
        diffs[i] = block_matrix(F, blocks, [a1, b1], [a0, b0])
    C = Complex(A, terms, diffs, name=f"cone({x.name}->{y.name})")
    X1 = shift(x, 1)
    incl, proj = {}, {}
    for i in degs:
        a, b = sizes[i]
        incl[i] = vstack(F, [Matrix.zeros(F, a, b), Matrix.identity(F, b)], cols=b)
        proj[i] = hstack(F, [Matrix.identity(F, a), Matrix.zeros(F, a, b)], rows=a)
    return Cone(C, ChainMap(y, C, incl), ChainMap(C, X1, proj))


def truncate(c: Complex, mode: str) -> Complex:
    """Brutal truncation: ``">=1"``, ``"<=0"`` or ``"<=-1"``."""
    if mode == ">=1":
        keep = lambda i: i >= 1
    elif mode == "<=0":
        keep = lambda i: i <= 0
    elif mode == "<=-1":
        keep = lambda i: i <= -1
    else:
        raise ValueError(f"unknown truncation mode {mode!r}")
    terms = {i: m for i, m in c.terms.items() if keep(i)}
    diffs = {i: d for i, d in c.diffs.items() if keep(i) and keep(i + 1)}
    return Complex(c.algebra, terms, diffs, name=f"{c.name}{mode}")


def truncate_below(c: Complex, lowest: int) -> Complex:
    terms = {i: m for i, m in c.terms.items() if i >= lowest}
    diffs = {i: d for i, d in c.diffs.items() if i >= lowest}
    return Complex(c.algebra, terms, diffs, name=c.name)


@dataclass
class DirectSum:
    complex: Complex
    incls: list
    projs: list


def direct_sum_complexes(cs: Sequence[Complex], name: str = "") -> DirectSum:
    A = cs[0].algebra
    F = cs[0].field
    degs = sorted(set(i for c in cs for i in c.degrees()))
    terms, diffs = {}, {}
    for i in degs:
        parts = [c.term(i) for c in cs if c.dim(i)]
        if parts:
            terms[i] = direct_sum(parts) if len(parts) > 1 else parts[0]
    for i in degs:
        mats = [c.diff(i) for c in cs]
        rows = [c.dim(i + 1) for c in cs]
        cols = [c.dim(i) for c in cs]
        from .kernel import block_diag
        diffs[i] = block_diag(F, mats) if sum(rows) and sum(cols) else Matrix.zeros(F, sum(rows), sum(cols))
    S = Complex(A, terms, diffs, name=name or "+".join(c.name for c in cs))
    incls, projs = [], []
    for k, c in enumerate(cs):
        inc, pr = {}, {}
        for i in degs:
            n = sum(cc.dim(i) for cc in cs)
            off = sum(cc.dim(i) for cc in cs[:k])
            U = unit_columns(F, n, range(off, off + c.dim(i)))
            inc[i] = U
            pr[i] = U.T()
        incls.append(ChainMap(c, S, inc))
        projs.append(ChainMap(S, c, pr))
    return DirectSum(S, incls, projs)


# ---------------------------------------------------------------------------
# homotopy category


class HomotopyHom:
    """``Hom_K(x, y)`` as chain maps modulo null-homotopic ones."""

    def __init__(self, x: Complex, y: Complex):
        self.source, self.target = x, y
        F = x.field
        self.field = F
        degs = sorted(set(x.degrees()) & set(y.degrees()))
        self.homs = {i: hom_space(x.term(i), y.term(i)) for i in degs}
        self.offsets = {}
        off = 0
        for i in degs:
            self.offsets[i] = off
            off += self.homs[i].dim
        self.nparams = off
        # chain condition: d_y f^i - f^{i+1} d_x lands in Hom(x^i, y^{i+1})
        cond_blocks = []
        for i in sorted(set(x.degrees()) & set(j - 1 for j in y.degrees())):
            G = hom_space(x.term(i), y.term(i + 1))
            if not G.dim:
                continue
            cols = [[F.scalar(0)] * G.dim for _ in range(off)]
            if i in self.homs:
                for j, h in enumerate(self.homs[i].maps):
                    cols[self.offsets[i] + j] = G.coords(y.diff(i) @ h)
            if (i + 1) in self.homs:
                for j, h in enumerate(self.homs[i + 1].maps):
                    c = G.coords(h @ x.diff(i))
                    prev = cols[self.offsets[i + 1] + j]
                    cols[self.offsets[i + 1] + j] = [a - b for a, b in zip(prev, c)]
            cond_blocks.append(Matrix.from_rows(F, [list(r) for r in zip(*cols)], off) if off
                               else Matrix.zeros(F, G.dim, 0))
        if cond_blocks and off:
            cond = vstack(F, cond_blocks, cols=off)
            Z, zfree = nullspace(cond)
        else:
            Z, zfree = Matrix.identity(F, off), list(range(off))
        self.Z = Z  # param coords of chain maps (columns)
        self.zfree = zfree
        # homotopies s^i: x^i -> y^{i-1}
        hcols = []
        self._hom_specs = []
        for i in sorted(set(x.degrees()) & set(j + 1 for j in y.degrees())):
            S = hom_space(x.term(i), y.term(i - 1))
            for s in S.maps:
                col = [F.scalar(0)] * off
                if i in self.homs:
                    for j, c in enumerate(self.homs[i].coords(y.diff(i - 1) @ s)):
                        col[self.offsets[i] + j] += c
                if (i - 1) in self.homs:
                    for j, c in enumerate(self.homs[i - 1].coords(s @ x.diff(i - 1))):
                        col[self.offsets[i - 1] + j] += c
                hcols.append(col)
                self._hom_specs.append((i, s))
        if hcols and off:
            self.Hfull = Matrix.from_rows(F, [list(r) for r in zip(*hcols)], len(hcols))
        else:
            self.Hfull = Matrix.zeros(F, off, len(hcols))
        nz = Z.cols
        HZ = self.Hfull.submatrix(zfree, range(self.Hfull.cols)) if nz else Matrix.zeros(F, 0, self.Hfull.cols)
        self.null_rank = rank(HZ)
        HZb = column_space(HZ) if HZ.cols and nz else Matrix.zeros(F, nz, 0)
        comp = complement_columns(HZb, nz)
        self._comp = comp
        basis = hstack(F, [HZb, unit_columns(F, nz, comp)], rows=nz)
        self._inv = basis.inverse() if nz else basis
        self.dim = nz - HZb.cols
        self.chain_dim = nz

    def _from_params(self, p: list) -> ChainMap:
        comps = {}
        for i, H in self.homs.items():
            o = self.offsets[i]
            comps[i] = H.element(p[o:o + H.dim]) if H.dim else Matrix.zeros(self.field, self.target.dim(i),
                                                                               self.source.dim(i))
        return ChainMap(self.source, self.target, comps)

    def params(self, f: ChainMap) -> list:
        out = []
        for i, H in self.homs.items():
            out.extend(H.coords(f.comp(i)))
        return out

    def representatives(self) -> list[ChainMap]:
        """Chain maps whose classes form a basis of ``Hom_K``."""
        return [self._from_params(self.Z.col(j).entries()) for j in self._comp]

    def chain_basis(self) -> list[ChainMap]:
        return [self._from_params(self.Z.col(j).entries()) for j in range(self.Z.cols)]

    def class_coords(self, f: ChainMap) -> list:
        p = self.params(f)
        z = Matrix.column(self.field, [p[j] for j in self.zfree])
        full = self._inv @ z
        return full.entries()[self.chain_dim - self.dim:]

    def is_nullhomotopic(self, f: ChainMap) -> bool:
        return all(c == 0 for c in self.class_coords(f))

    def homotopy(self, f: ChainMap):
        """``s`` with ``f = d s + s d``, or ``None``."""
        F = self.field
        p = Matrix.column(F, self.params(f))
        if self.Hfull.cols == 0:
            return {} if all(c == 0 for c in p.entries()) else None
        sol = solve(self.Hfull, p)
        if sol is None:
            return None
        s = {}
        for c, (i, m) in zip(sol.entries(), self._hom_specs):
            if c != 0:
                s[i] = s[i] + m.scale(c) if i in s else m.scale(c)
        return s

    def element(self, coeffs) -> ChainMap:
        reps = self.representatives()
        out = zero_map(self.source, self.target)
        for c, r in zip(coeffs, reps):
            if c != 0:
                out = out + r.scale(c)
        return out


def k_hom(x: Complex, y: Complex) -> HomotopyHom:
    if x.algebra is not y.algebra and x.algebra != y.algebra:
        raise ComplexError("complexes over different algebras")
    return HomotopyHom(x, y)


# ---------------------------------------------------------------------------
# resolutions of complexes


@dataclass
class ComplexResolution:
    """A surjective quasi-isomorphism ``q: Q -> C`` from projectives, built down to ``lowest``."""

    target: Complex
    Q: Complex
    q: dict  # degree -> matrix Q^i -> C^i
    lowest: int
    boundary_kernel: tuple | None = None  # (K module, inclusion into Q^lowest + C^(lowest-1), dim Q^lowest)
    stages: dict = field(default_factory=dict)  # degree -> (K, inclusion, cover map, dim Q^{i+1})


def _pullback_stage(C: Complex, Qnext: Module | None, dQnext: Matrix | None, qnext: Matrix | None, i: int):
    """Kernel ``{(y, c) in Q^{i+1} + C^i : d y = 0, q y = d c}`` with its inclusion."""
    F = C.field
    A = C.algebra
    Ci = C.term(i)
    parts = []
    if Qnext is not None and Qnext.dim:
        parts.append(Qnext)
    if Ci.dim:
        parts.append(Ci)
    if not parts:
        return zero_module(A), Matrix.zeros(F, 0, 0), 0
    W = direct_sum(parts) if len(parts) > 1 else parts[0]
    nQ = Qnext.dim if Qnext is not None else 0
    Q2 = dQnext.rows if dQnext is not None else 0
    C1 = C.dim(i + 1)
    Q2 + C1
    top = dQnext if dQnext is not None else Matrix.zeros(F, 0, nQ)
    blocks = [[top if nQ else None, None],
              [qnext if (nQ and qnext is not None) else None, C.diff(i).scale(-1) if Ci.dim else None]]
    Phi = block_matrix(F, blocks, [Q2, C1], [nQ, Ci.dim])
    K, inc = kernel(Phi, W)
    return K, inc, nQ


def resolve_complex(C: Complex, lowest: int, keep_boundary: bool = False) -> ComplexResolution:
    """Projective ``Q`` with ``q: Q -> C`` surjective and a quasi-isomorphism in degrees > lowest.

    Built from the top: ``Q^i`` is the projective cover of the pullback of
    cycles of ``Q^{i+1}`` and ``C^i`` over the cycles of ``C^{i+1}``.
    """
    A = C.algebra
    terms, diffs, q = {}, {}, {}
    hi = C.hi if not C.is_zero else lowest
    Qnext, dnext, qnext = None, None, None
    boundary = None
    stages = {}
    for i in range(hi, lowest - 2, -1):
        K, inc, nQ = _pullback_stage(C, Qnext, dnext, qnext, i)
        if i == lowest - 1:
            boundary = (K, inc, nQ)
            break
        P, pi = projective_cover(K)
        stages[i] = (K, inc, pi, nQ)
        full = inc @ pi  # P -> Q^{i+1} + C^i
        dQ = full.block(0, nQ, 0, P.dim)
        qi = full.block(nQ, full.rows, 0, P.dim)
        if P.dim:
            terms[i] = P
            q[i] = qi
            if nQ:
                diffs[i] = dQ
        Qnext, dnext, qnext = P, dQ, qi
    Q = Complex(A, terms, diffs, name=f"Q({C.name})")
    return ComplexResolution(C, Q, q, lowest, boundary if keep_boundary else None, stages)


def resolution_map(res: ComplexResolution) -> ChainMap:
    return ChainMap(res.Q, res.target, dict(res.q))


# ---------------------------------------------------------------------------
# minimization


def _restrict_module(m: Module, keep: list[int]) -> Module:
    """Restriction of a block-diagonal module to a union of its blocks."""
    if m.summands is None:
        raise ComplexError("restriction needs known summands")
    pos = {c: i for i, c in enumerate(keep)}
    blocks = []
    for b in m.summands:
        if b.start in pos:
            s = pos[b.start]
            blocks.append(Block(s, s + b.size, b.kind))
    action = [a.submatrix(keep, keep) for a in m.action]
    return Module(m.algebra, [m.labels[c] for c in keep], action, blocks, name=m.name)


@dataclass
class Minimization:
    """``to: c -> m``, ``frm: m -> c`` with ``to frm = 1`` and ``1 - frm to = d h + h d``."""

    source: Complex
    complex: Complex
    to: ChainMap
    frm: ChainMap
    homotopy: dict

    def check(self) -> bool:
        self.to.check()
        self.frm.check()
        if not (self.to @ self.frm) == identity_map(self.complex):
            return False
        return check_homotopy(identity_map(self.source), self.frm @ self.to, self.homotopy)


def standardize_complex(c: Complex, seed: int = 0):
    """Rewrite every term as a sum of indecomposables; returns ``(c', to, back)`` as dicts."""
    F = c.field
    terms, to, back = {}, {}, {}
    for i in c.degrees():
        m = c.term(i)
        if m.summands is not None:
            terms[i] = m
            to[i] = back[i] = Matrix.identity(F, m.dim)
        else:
            terms[i], to[i], back[i] = standardize(m, seed)
    diffs = {i: to[i + 1] @ d @ back[i] for i, d in c.diffs.items()}
    return Complex(c.algebra, terms, diffs, name=c.name), to, back


def _find_pivot(terms, diffs, degrees):
    for k in degrees:
        d = diffs.get(k)
        if d is None:
            continue
        for a in terms[k].summands:
            for b in terms[k + 1].summands:
                if a.size != b.size:
                    continue
                phi = d.submatrix(range(b.start, b.stop), range(a.start, a.stop))
                if phi.is_invertible():
                    return k, a, b, phi
    return None


def minimize(c: Complex, seed: int = 0) -> Minimization:
    """Strip contractible summands by Gaussian elimination on invertible components."""
    F = c.field
    A = c.algebra
    std, to, back = standardize_complex(c, seed)
    terms = dict(std.terms)
    diffs = {i: std.diff(i) for i in std.degrees() if (i + 1) in terms}
    Ft = {i: to[i] for i in c.degrees()}
    Gt = {i: back[i] for i in c.degrees()}
    H: dict = {}
    while True:
        piv = _find_pivot(terms, diffs, sorted(terms))
        if piv is None:
            break
        k, a, b, phi = piv
        Ck, C1 = terms[k], terms[k + 1]
        Ia, Ib = list(range(a.start, a.stop)), list(range(b.start, b.stop))
        Jk = [j for j in range(Ck.dim) if not a.start <= j < a.stop]
        J1 = [j for j in range(C1.dim) if not b.start <= j < b.stop]
        d = diffs[k]
        pinv = phi.inverse()
        delta = d.submatrix(Ib, Jk)
        gamma = d.submatrix(J1, Ia)
        eps = d.submatrix(J1, Jk)
        # witnesses of this step
        fk = unit_columns(F, Ck.dim, Jk).T()
        f1 = embed(F, (gamma @ pinv).scale(-1), len(J1), C1.dim, range(len(J1)), Ib) + \
            embed(F, Matrix.identity(F, len(J1)), len(J1), C1.dim, range(len(J1)), J1)
        gk = embed(F, (pinv @ delta).scale(-1), Ck.dim, len(Jk), Ia, range(len(Jk))) + \
            embed(F, Matrix.identity(F, len(Jk)), Ck.dim, len(Jk), Jk, range(len(Jk)))
        g1 = unit_columns(F, C1.dim, J1)
        h1 = embed(F, pinv, Ck.dim, C1.dim, Ia, Ib)
        # accumulate 1 - G F = d H + H d
        inc = Gt[k] @ h1 @ Ft[k + 1]
        H[k + 1] = H[k + 1] + inc if (k + 1) in H else inc
        Ft[k] = fk @ Ft[k]
        Ft[k + 1] = f1 @ Ft[k + 1]
        Gt[k] = Gt[k] @ gk
        Gt[k + 1] = Gt[k + 1] @ g1
        # new differentials
        diffs[k] = eps - gamma @ pinv @ delta
        if (k - 1) in diffs:
            diffs[k - 1] = diffs[k - 1].submatrix(Jk, range(diffs[k - 1].cols))
        if (k + 1) in diffs:
            diffs[k + 1] = diffs[k + 1].submatrix(range(diffs[k + 1].rows), J1)
        terms[k] = _restrict_module(Ck, Jk)
        terms[k + 1] = _restrict_module(C1, J1)
    m = Complex(A, terms, diffs, name=f"min({c.name})")
    to_map = ChainMap(c, m, {i: Ft[i] for i in c.degrees()})
    frm_map = ChainMap(m, c, {i: Gt[i] for i in c.degrees()})
    return Minimization(c, m, to_map, frm_map, H)


def is_radical_complex(c: Complex, seed: int = 0) -> bool:
    std, _, _ = standardize_complex(c, seed)
    diffs = {i: std.diff(i) for i in std.degrees() if (i + 1) in std.terms}
    return _find_pivot(std.terms, diffs, sorted(std.terms)) is None


def homotopy_equivalence(x: Complex, y: Complex, seed: int = 0):
    """Mutually inverse classes ``(f, g)`` between ``x`` and ``y`` found via minimal forms, or ``None``."""

    mx, my = minimize(x, seed), minimize(y, seed)
    X, Y = mx.complex, my.complex
    if sorted(X.terms) != sorted(Y.terms):
        return None
    if any(X.dim(i) != Y.dim(i) for i in X.degrees()):
        return None
    hom = k_hom(X, Y)
    back = k_hom(Y, X)
    if hom.dim != back.dim:
        return None
    rng = random.Random(seed)
    cands = []
    reps = hom.chain_basis()
    if not reps:
        if X.is_zero and Y.is_zero:
            return zero_map(x, y), zero_map(y, x)
        return None
    for _ in range(20):
        f = zero_map(X, Y)
        for r in reps:
            f = f + r.scale(X.field.random_scalar(rng))
        cands.append(f)
    for f in cands:
        if all(f.comp(i).is_invertible() for i in X.degrees()):
            g = ChainMap(Y, X, {i: f.comp(i).inverse() for i in X.degrees()})
            return my.frm @ f @ mx.to, mx.frm @ g @ my.to
    return None


# ---------------------------------------------------------------------------
# derived hom


@dataclass
class DerivedHom:
    dims: dict  # shift -> dim Hom_D(x, y[n])
    cutoffs: list
    history: list


def derived_hom(x: Complex, y: Complex, window: Sequence[int], d: int = 0,
                hard_cutoff: int = 64) -> DerivedHom:
    """``dim Hom_D(x, y[n])`` for ``n`` in ``window`` via a truncated projective resolution of ``x``.

    The cutoff depth starts at ``width(y) + d + 2`` below the lowest relevant
    degree and doubles until three consecutive depths give the same answer.
    """
    window = list(window)
    if x.is_zero or y.is_zero:
        return DerivedHom({n: 0 for n in window}, [], [])
    width = y.hi - y.lo + 1
    low_y = min(y.lo - n for n in window)
    top = min(x.lo, low_y)
    depth = width + d + 2
    if x.hi - (low_y - 1) > hard_cutoff:
        raise BoundExceeded(f"window needs resolution depth {x.hi - low_y + 1} > hard cutoff {hard_cutoff}")
    history, cutoffs = [], []
    while True:
        lowest = top - depth
        if x.hi - lowest > hard_cutoff:
            raise BoundExceeded(f"derived_hom did not stabilize within hard cutoff {hard_cutoff}")
        res = resolve_complex(x, lowest)
        Q = res.Q
        dims = {n: k_hom(Q, shift(y, n)).dim for n in window}
        history.append(dims)
        cutoffs.append(lowest)
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return DerivedHom(dims, cutoffs, history)
        depth *= 2
