"""Complexes of bimodules and the tensor functors they define.

A ``(B, A)``-bimodule is a left module over ``E = B (x) A^op``; the basis
element ``b (x) a`` sits at index ``b * dim A + a`` and a coordinate with
``E``-label ``s * |A_0| + t`` lies in ``e_s M e_t``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, enveloping, tensor_product
from .complexes import ChainMap, Complex, ComplexError
from .kernel import Matrix, embed, hstack, rref
from .modules import (
    DualModule,
    Module,
    direct_sum,
    from_action,
    is_projective,
    kernel,
    projective_cover,
)


class BimoduleError(ValueError):
    pass


def left_action(M: Module, B: Algebra, A: Algebra, b: int) -> Matrix:
    nA = A.dim
    out = None
    for e in A.idempotents:
        m = M.action[b * nA + e]
        out = m if out is None else out + m
    return out


def right_action(M: Module, B: Algebra, A: Algebra, a: int) -> Matrix:
    nA = A.dim
    out = None
    for e in B.idempotents:
        m = M.action[e * nA + a]
        out = m if out is None else out + m
    return out


def left_restriction(M: Module, B: Algebra, A: Algebra) -> Module:
    sA = A.vertex_count
    labels = [lab // sA for lab in M.labels]
    return Module(B, labels, [left_action(M, B, A, b) for b in range(B.dim)], name=f"{M.name}|B")


def right_restriction(M: Module, B: Algebra, A: Algebra) -> Module:
    """``M`` as a left ``A^op``-module."""
    sA = A.vertex_count
    labels = [lab % sA for lab in M.labels]
    Aop = A.opposite()
    return Module(Aop, labels, [right_action(M, B, A, a) for a in range(A.dim)], name=f"{M.name}|A")


class BimoduleComplex:
    """A bounded complex of ``(B, A)``-bimodules whose terms are projective as right ``A``-modules."""

    def __init__(self, left: Algebra, right: Algebra, complex: Complex, name: str = "", certify: bool = True):
        self.left = left
        self.right = right
        self.complex = complex
        self.name = name or complex.name
        E = complex.algebra
        if E.dim != left.dim * right.dim or E.vertex_count != left.vertex_count * right.vertex_count:
            raise BimoduleError("complex is not over the enveloping algebra of the given pair")
        self.certified = False
        if certify:
            self.certify()

    @property
    def envelope(self) -> Algebra:
        return self.complex.algebra

    def certify(self):
        self.complex.check()
        for i, M in self.complex.terms.items():
            if not is_projective(right_restriction(M, self.left, self.right)):
                raise BimoduleError(f"term {i} is not projective as a right module")
        self.certified = True
        return True

    def right_restricted(self) -> Complex:
        """Right restriction as a complex over ``A^op``."""
        Aop = self.right.opposite()
        c = self.complex
        terms = {i: right_restriction(m, self.left, self.right) for i, m in c.terms.items()}
        return Complex(Aop, terms, dict(c.diffs), name=f"{self.name}|A")

    def left_restricted(self) -> Complex:
        c = self.complex
        terms = {i: left_restriction(m, self.left, self.right) for i, m in c.terms.items()}
        return Complex(self.left, terms, dict(c.diffs), name=f"{self.name}|B")


# ---------------------------------------------------------------------------
# tensor products M (x)_A X


@dataclass
class _TensorData:
    module: Module
    pairs: list  # T0 coordinates (u, v)
    index: dict  # (u, v) -> position in T0
    proj: Matrix  # T0 -> module coordinates


def tensor_module(M: Module, B: Algebra, A: Algebra, X: Module) -> _TensorData:
    """``M (x)_A X`` as a left ``B``-module together with its presentation data."""
    F = A.field
    sA = A.vertex_count
    rl = [lab % sA for lab in M.labels]
    pairs = [(u, v) for u in range(M.dim) for v in range(X.dim) if rl[u] == X.labels[v]]
    index = {p: i for i, p in enumerate(pairs)}
    n0 = len(pairs)
    zero = F.scalar(0)
    rels = []
    for g in A.generators():
        s, t = A.grading[g]
        R = right_action(M, B, A, g).table()
        Xg = X.action[g].table()
        us = [u for u in range(M.dim) if rl[u] == s]
        vs = [v for v in range(X.dim) if X.labels[v] == t]
        for u in us:
            for v in vs:
                row = {}
                for u2 in range(M.dim):
                    c = R[u2][u]
                    if c != 0:
                        k = index[(u2, v)]
                        row[k] = row.get(k, zero) + c
                for v2 in range(X.dim):
                    c = Xg[v2][v]
                    if c != 0:
                        k = index[(u, v2)]
                        row[k] = row.get(k, zero) - c
                if any(val != 0 for val in row.values()):
                    rels.append(row)
    if rels and n0:
        flat = [zero] * (len(rels) * n0)
        for r, row in enumerate(rels):
            for k, val in row.items():
                flat[r * n0 + k] = val
        Rm, piv = rref(Matrix.from_entries(F, len(rels), n0, flat))
    else:
        Rm, piv = Matrix.zeros(F, 0, n0), []
    pset = set(piv)
    keep = [j for j in range(n0) if j not in pset]
    q = len(keep)
    kpos = {j: i for i, j in enumerate(keep)}
    table = Rm.table()
    pflat = [zero] * (q * n0)
    for j in keep:
        pflat[kpos[j] * n0 + j] = F.scalar(1)
    for r, p in enumerate(piv):
        row = table[r]
        for j in keep:
            c = row[j]
            if c != 0:
                pflat[kpos[j] * n0 + p] = -c
    proj = Matrix.from_entries(F, q, n0, pflat)
    labels = [M.labels[pairs[j][0]] // sA for j in keep]
    gens = {}
    for b in B.generators():
        L = left_action(M, B, A, b).table()
        flat = [zero] * (n0 * q)
        for c, j in enumerate(keep):
            u, v = pairs[j]
            for u2 in range(M.dim):
                val = L[u2][u]
                if val != 0:
                    flat[index[(u2, v)] * q + c] = val
        gens[b] = proj @ Matrix.from_entries(F, n0, q, flat)
    mod = from_action(B, labels, gens, name=f"{M.name}(x){X.name}", check=False)
    return _TensorData(mod, [pairs[j] for j in keep], index, proj), pairs


def _tensor(M, B, A, X):
    data, allpairs = tensor_module(M, B, A, X)
    data.all_pairs = allpairs
    return data


def _tensor_map(src: _TensorData, tgt: _TensorData, F, left: Matrix | None, right: Matrix | None) -> Matrix:
    """Matrix of ``left (x) right`` (either factor may be the identity, given as ``None``)."""
    n0 = len(tgt.all_pairs)
    q = len(src.pairs)
    zero = F.scalar(0)
    flat = [zero] * (n0 * q)
    Lt = left.table() if left is not None else None
    Rt = right.table() if right is not None else None
    for c, (u, v) in enumerate(src.pairs):
        us = [(u2, Lt[u2][u]) for u2 in range(len(Lt)) if Lt[u2][u] != 0] if Lt is not None else [(u, 1)]
        vs = [(v2, Rt[v2][v]) for v2 in range(len(Rt)) if Rt[v2][v] != 0] if Rt is not None else [(v, 1)]
        for u2, a in us:
            for v2, b in vs:
                k = tgt.index.get((u2, v2))
                if k is None:
                    continue
                flat[k * q + c] += F.scalar(a) * F.scalar(b)
    return tgt.proj @ Matrix.from_entries(F, n0, q, flat)


@dataclass
class Image:
    """``Delta (x)_A X`` with the bookkeeping needed to push maps through."""

    complex: Complex
    parts: dict  # degree n -> list of (p, q, _TensorData)
    offsets: dict  # (p, q) -> offset inside degree p + q


def apply_bimodule(delta: BimoduleComplex, x: Complex) -> Image:
    if not delta.certified:
        raise BimoduleError("bimodule complex is not certified")
    B, A = delta.left, delta.right
    if x.algebra is not A and x.algebra != A:
        raise ComplexError("complex is over a different algebra")
    F = A.field
    D = delta.complex
    cells = {}
    for p in D.degrees() if not D.is_zero else []:
        for q in x.degrees() if not x.is_zero else []:
            if D.dim(p) and x.dim(q):
                t = _tensor(D.term(p), B, A, x.term(q))
                if t.module.dim:
                    cells[(p, q)] = t
    parts, offsets, terms = {}, {}, {}
    for (p, q), t in sorted(cells.items()):
        parts.setdefault(p + q, []).append((p, q, t))
    for n, lst in parts.items():
        off = 0
        for p, q, t in lst:
            offsets[(p, q)] = off
            off += t.module.dim
        mods = [t.module for _, _, t in lst]
        terms[n] = direct_sum(mods) if len(mods) > 1 else mods[0]
    diffs = {}
    for n in parts:
        if n + 1 not in parts:
            continue
        rows, cols = terms[n + 1].dim, terms[n].dim
        d = Matrix.zeros(F, rows, cols)
        for p, q, t in parts[n]:
            c0 = offsets[(p, q)]
            if (p + 1, q) in cells:
                tgt = cells[(p + 1, q)]
                blk = _tensor_map(t, tgt, F, D.diff(p), None)
                r0 = offsets[(p + 1, q)]
                d = d + embed(F, blk, rows, cols, range(r0, r0 + blk.rows), range(c0, c0 + blk.cols))
            if (p, q + 1) in cells:
                tgt = cells[(p, q + 1)]
                blk = _tensor_map(t, tgt, F, None, x.diff(q))
                if p % 2:
                    blk = blk.scale(-1)
                r0 = offsets[(p, q + 1)]
                d = d + embed(F, blk, rows, cols, range(r0, r0 + blk.rows), range(c0, c0 + blk.cols))
        diffs[n] = d
    return Image(Complex(B, terms, diffs, name=f"{delta.name}(x){x.name}"), parts, offsets)


def apply_bimodule_map(delta: BimoduleComplex, src: Image, tgt: Image, f: ChainMap) -> ChainMap:
    """``Delta (x) f`` between two images."""
    F = delta.right.field
    comps = {}
    for n, lst in src.parts.items():
        if n not in tgt.parts:
            continue
        rows, cols = tgt.complex.dim(n), src.complex.dim(n)
        m = Matrix.zeros(F, rows, cols)
        tcells = {(p, q): t for p, q, t in tgt.parts[n]}
        for p, q, t in lst:
            if (p, q) not in tcells:
                continue
            blk = _tensor_map(t, tcells[(p, q)], F, None, f.comp(q))
            r0, c0 = tgt.offsets[(p, q)], src.offsets[(p, q)]
            m = m + embed(F, blk, rows, cols, range(r0, r0 + blk.rows), range(c0, c0 + blk.cols))
        comps[n] = m
    return ChainMap(src.complex, tgt.complex, comps)


# ---------------------------------------------------------------------------
# constructions


def regular_bimodule(A: Algebra, E: Algebra | None = None) -> Module:
    E = E or enveloping(A, A)
    sA = A.vertex_count
    labels = [s * sA + t for s, t in A.grading]
    action = []
    for b in range(A.dim):
        Lb = A.left_matrix(b)
        for a in range(A.dim):
            action.append(Lb @ A.right_matrix(a))
    return Module(E, labels, action, name=A.name or "A")


def identity_bimodule(A: Algebra) -> BimoduleComplex:
    E = enveloping(A, A)
    M = regular_bimodule(A, E)
    return BimoduleComplex(A, A, Complex(E, {0: M}, {}, name="id"), name="id")


def tilting_bimodule_source(A: Algebra, B: Algebra, data, mods) -> Module:
    """``T = M_1 + ... + M_n`` as an ``(A, B^op)``-bimodule, ``B = End(T)`` acting on the right."""
    Ep = tensor_product(A, B.opposite(), name=f"{A.name}-{B.name}op")
    F = A.field
    sB = B.vertex_count
    T = direct_sum(list(mods))
    offs = [0]
    for m in mods:
        offs.append(offs[-1] + m.dim)
    labels = []
    for i, m in enumerate(mods):
        labels.extend(lab * sB + i for lab in m.labels)
    maps = []
    for k, f in enumerate(data.maps):
        a, b = data.grading[k]
        maps.append(embed(F, f, T.dim, T.dim, range(offs[b], offs[b + 1]), range(offs[a], offs[a + 1])))
    action = []
    for x in range(A.dim):
        for k in range(B.dim):
            action.append(T.action[x] @ maps[k])
    return Module(Ep, labels, action, name="T")


def _bimodule_dual(Y: Module, A: Algebra, B: Algebra, E: Algebra):
    """``Hom_A(Y, A)`` for an ``(A, B^op)``-module ``Y``, as a ``(B, A)``-bimodule.

    Returns the module and the per-label dual data used to transport maps.
    """
    F = A.field
    sB = B.vertex_count
    sA = A.vertex_count
    nB = B.dim
    blabel = [lab % sB for lab in Y.labels]
    parts = []
    for s in range(sB):
        idx = [c for c in range(Y.dim) if blabel[c] == s]
        if not idx:
            parts.append((idx, None))
            continue
        sub = Module(A, [Y.labels[c] // sB for c in idx],
                     [sum((Y.action[a * nB + e] for e in B.idempotents), Matrix.zeros(F, Y.dim, Y.dim))
                      .submatrix(idx, idx) for a in range(A.dim)], name=f"{Y.name}e{s}")
        parts.append((idx, DualModule(sub)))
    offs = [0]
    for idx, dm in parts:
        offs.append(offs[-1] + (dm.module.dim if dm is not None else 0))
    n = offs[-1]
    labels = []
    for s, (idx, dm) in enumerate(parts):
        if dm is not None:
            labels.extend(s * sA + t for t in dm.module.labels)
    # right A-action: block diagonal
    R = []
    for a in range(A.dim):
        blocks = [dm.module.action[a] for _, dm in parts if dm is not None]
        from .kernel import block_diag
        R.append(block_diag(F, blocks) if blocks else Matrix.zeros(F, 0, 0))
    # left B-action: (b h)(y) = h(y b)
    L = []
    for b in range(B.dim):
        l, r = B.grading[b]
        M = Matrix.zeros(F, n, n)
        il, dl = parts[l]
        ir, dr = parts[r]
        if dl is not None and dr is not None:
            rho = sum((Y.action[e * nB + b] for e in A.idempotents), Matrix.zeros(F, Y.dim, Y.dim))
            rho = rho.submatrix(ir, il)
            cols = []
            for j in range(dr.module.dim):
                t, h = dr.element_map(j)
                cols.append(dl.coords(t, h @ rho))
            blk = hstack(F, cols, rows=dl.module.dim)
            M = embed(F, blk, n, n, range(offs[l], offs[l + 1]), range(offs[r], offs[r + 1]))
        L.append(M)
    action = [L[b] @ R[a] for b in range(B.dim) for a in range(A.dim)]
    return Module(E, labels, action, name=f"Hom({Y.name},A)"), parts, offs


def _dual_map(src_parts, src_offs, tgt_parts, tgt_offs, g: Matrix, F) -> Matrix:
    """Matrix of ``h -> h o g`` from ``Hom(Y', A)`` to ``Hom(Y, A)`` for ``g: Y -> Y'``."""
    n_out, n_in = src_offs[-1], tgt_offs[-1]
    M = Matrix.zeros(F, n_out, n_in)
    for s, ((iy, dy), (iy2, dy2)) in enumerate(zip(src_parts, tgt_parts)):
        if dy is None or dy2 is None:
            continue
        gs = g.submatrix(iy2, iy)
        cols = []
        for j in range(dy2.module.dim):
            t, h = dy2.element_map(j)
            cols.append(dy.coords(t, h @ gs))
        blk = hstack(F, cols, rows=dy.module.dim)
        M = M + embed(F, blk, n_out, n_in, range(src_offs[s], src_offs[s + 1]),
                      range(tgt_offs[s], tgt_offs[s + 1]))
    return M


def bimodule_from_tilting_module(A: Algebra, mods, name: str = "RHom(T,-)"):
    """Two-term bimodule complex computing ``RHom_A(T, -)`` for a tilting module ``T``.

    ``mods`` are the pairwise non-isomorphic indecomposable summands of ``T``.
    Returns ``(delta, B, data)`` with ``B = End_A(T)``.
    """
    from .modules import EndomorphismData

    data = EndomorphismData(list(mods), name="End(T)")
    B = data.algebra
    F = A.field
    Y = tilting_bimodule_source(A, B, data, mods)
    P0, pi = projective_cover(Y)
    K, inc = kernel(pi, P0)
    E = enveloping(B, A)
    D0, parts0, offs0 = _bimodule_dual(P0, A, B, E)
    D1, parts1, offs1 = _bimodule_dual(K, A, B, E)
    d = _dual_map(parts1, offs1, parts0, offs0, inc, F)
    c = Complex(E, {0: D0, 1: D1}, {0: d}, name=name)
    return BimoduleComplex(B, A, c, name=name), B, data
