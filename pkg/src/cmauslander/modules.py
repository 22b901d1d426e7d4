"""Finite-dimensional left modules over an `Algebra` and the maps between them.

A module stores, for each coordinate, the vertex (idempotent position) it
lives at, and one action matrix per algebra basis element.  Every module is
graded by the idempotents, so submodules, quotients and homomorphism spaces
are computed one vertex at a time.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence


from .algebra import Algebra, matrix_algebra_radical
from .kernel import (
    Matrix,
    block_diag,
    column_space,
    complement_columns,
    hstack,
    nullspace,
    rank,
    rref,
    solve,
    unit_columns,
    vstack,
)


class ModuleError(ValueError):
    pass


class DecompositionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Block:
    """A direct summand occupying coordinates ``start:stop``.

    ``kind`` is ``("P", v)`` for the standard projective ``A e_v`` in basis
    order, or ``("M", tag)`` for another indecomposable summand.
    """

    start: int
    stop: int
    kind: tuple

    @property
    def size(self):
        return self.stop - self.start

    @property
    def is_projective(self):
        return self.kind[0] == "P"


class Module:
    def __init__(self, algebra: Algebra, labels: Sequence[int], action: Sequence[Matrix],
                 summands: Sequence[Block] | None = None, name: str = ""):
        self.algebra = algebra
        self.field = algebra.field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.action = list(action)
        if len(self.action) != algebra.dim:
            raise ModuleError("need one action matrix per basis element")
        self.summands = tuple(summands) if summands is not None else None
        self.name = name

    def __repr__(self):
        return f"Module({self.name or '?'}, dim={self.dim}, dimvec={self.dim_vector})"

    @cached_property
    def vertex_coords(self) -> list[list[int]]:
        out = [[] for _ in range(self.algebra.vertex_count)]
        for c, v in enumerate(self.labels):
            out[v].append(c)
        return out

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.vertex_coords)

    def act(self, k: int) -> Matrix:
        return self.action[k]

    def act_element(self, coeffs) -> Matrix:
        return self.algebra.combination(self.action, coeffs)

    @cached_property
    def _tables(self):
        return [m.table() for m in self.action]

    @property
    def is_standard_projective(self) -> bool:
        return self.summands is not None and all(b.is_projective for b in self.summands)

    def check(self) -> bool:
        """Verify the action is a unital algebra homomorphism respecting the labels."""
        A = self.algebra
        F = self.field
        one = Matrix.identity(F, self.dim)
        if not A.combination(self.action, A.unit().entries()) == one if A.dim else True:
            raise ModuleError("unit does not act as the identity")
        for k, (s, t) in enumerate(A.grading):
            M = self._tables[k]
            for r in range(self.dim):
                for c in range(self.dim):
                    if M[r][c] != 0 and (self.labels[r] != s or self.labels[c] != t):
                        raise ModuleError(f"action of {A.labels[k]} does not respect vertex labels")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.action[i] @ self.action[j]
                rhs = A.combination(self.action, A.structure_tensor[i][j])
                if not lhs == rhs:
                    raise ModuleError(f"action is not multiplicative at ({A.labels[i]}, {A.labels[j]})")
        return True

    def with_summands(self, summands, name=None) -> "Module":
        return Module(self.algebra, self.labels, self.action, summands, name or self.name)

    def renamed(self, name) -> "Module":
        return Module(self.algebra, self.labels, self.action, self.summands, name)


# ---------------------------------------------------------------------------
# constructors


def from_representation(A: Algebra, dims: Sequence[int], arrows: dict, name: str = "") -> Module:
    """Module of a quiver algebra from arrow matrices ``M(a): M_src -> M_tgt``."""
    q = A.quiver
    if q is None:
        raise ModuleError("representation input needs a quiver algebra")
    F = A.field
    offsets = [0]
    for d in dims:
        offsets.append(offsets[-1] + d)
    n = offsets[-1]
    labels = [v for v, d in enumerate(dims) for _ in range(d)]
    arrow_full = {}
    for a, s, t in q.arrows:
        m = arrows.get(a)
        if m is None:
            m = Matrix.zeros(F, dims[t - 1], dims[s - 1])
        if m.shape != (dims[t - 1], dims[s - 1]):
            raise ModuleError(f"arrow {a} needs a {dims[t-1]}x{dims[s-1]} matrix, got {m.shape}")
        full = Matrix.zeros(F, n, n)
        from .kernel import embed
        full = embed(F, m, n, n, range(offsets[t - 1], offsets[t]), range(offsets[s - 1], offsets[s]))
        arrow_full[a] = full
    action = []
    for lab in A.labels:
        if lab.startswith("e") and lab[1:].isdigit() and lab not in arrow_full:
            v = int(lab[1:]) - 1
            action.append(unit_columns(F, n, range(offsets[v], offsets[v + 1])) @
                          unit_columns(F, n, range(offsets[v], offsets[v + 1])).T())
        else:
            m = None
            for a in lab.split("."):
                m = arrow_full[a] if m is None else arrow_full[a] @ m
            action.append(m)
    mod = Module(A, labels, action, name=name)
    mod.check()
    return mod


def from_action(A: Algebra, labels: Sequence[int], gen_action: dict, name: str = "", check: bool = True) -> Module:
    """Module from action matrices of the algebra generators (basis indices)."""
    F = A.field
    n = len(labels)
    action: list = [None] * A.dim
    for a, e in enumerate(A.idempotents):
        idx = [c for c, v in enumerate(labels) if v == a]
        U = unit_columns(F, n, idx)
        action[e] = U @ U.T()
    plan = generation_plan(A, tuple(gen_action))
    vecs = []
    mats = []
    for e in A.idempotents:
        vecs.append(A.basis_vector(e))
        mats.append(action[e])
    for kind, g, parent in plan:
        vecs.append(A.left_matrix(g) @ vecs[parent] if kind == "L" else A.right_matrix(g) @ vecs[parent])
        G = gen_action[g]
        if G.shape != (n, n):
            raise ModuleError(f"action matrix for {A.labels[g]} has shape {G.shape}, need {(n, n)}")
        mats.append(G @ mats[parent] if kind == "L" else mats[parent] @ G)
    V = hstack(F, vecs, rows=A.dim)
    coords = solve(V, Matrix.identity(F, A.dim))
    if coords is None:
        raise ModuleError("generators do not generate the algebra")
    for k in range(A.dim):
        if action[k] is None:
            action[k] = A.combination(mats, coords.col(k).entries())
    for g, G in gen_action.items():
        action[g] = G
    mod = Module(A, labels, action, name=name)
    if check:
        mod.check()
    return mod


def generation_plan(A: Algebra, gens: tuple):
    """Steps ``(side, generator, parent)`` whose vectors span the algebra.

    Vector 0..s-1 are the idempotents; each step multiplies an earlier vector
    by a generator on the left (``"L"``) or right (``"R"``).
    """
    from .algebra import _Span
    span = _Span(A.field, A.dim)
    vecs = []
    for e in A.idempotents:
        v = A.basis_vector(e)
        span.add(v)
        vecs.append(v)
    plan = []
    for g in gens:
        v = A.basis_vector(g)
        if span.add(v):
            plan.append(("L", g, _idem_parent(A, g)))
            vecs.append(v)
    frontier = list(range(len(vecs)))
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                for side in ("L", "R"):
                    M = A.left_matrix(g) if side == "L" else A.right_matrix(g)
                    w = M @ vecs[p]
                    if span.add(w):
                        plan.append((side, g, p))
                        vecs.append(w)
                        new.append(len(vecs) - 1)
        frontier = new
    return plan


def _idem_parent(A, g):
    s, t = A.grading[g]
    return t  # b_g = b_g * e_t: left multiply e_t by g


def standard_projective(A: Algebra, v: int) -> Module:
    """``P_v = A e_v`` with coordinates the basis elements of ``A e_v``."""
    idx = A.right_ideal_indices(v)
    pos = {k: c for c, k in enumerate(idx)}
    F = A.field
    n = len(idx)
    action = []
    zero = F.scalar(0)
    for b in range(A.dim):
        flat = [zero] * (n * n)
        for c, k in enumerate(idx):
            for kk, coef in A.products[b][k]:
                flat[pos[kk] * n + c] = F.scalar(coef)
        action.append(Matrix.from_entries(F, n, n, flat))
    labels = [A.grading[k][0] for k in idx]
    return Module(A, labels, action, (Block(0, n, ("P", v)),), name=f"P{v+1}")


def projective_generator_position(A: Algebra, v: int) -> int:
    """Coordinate of ``e_v`` inside the standard ``P_v``."""
    return A.right_ideal_indices(v).index(A.idempotents[v])


def regular_module(A: Algebra) -> Module:
    return direct_sum([standard_projective(A, v) for v in range(A.vertex_count)], name="A")


def zero_module(A: Algebra) -> Module:
    F = A.field
    return Module(A, [], [Matrix.zeros(F, 0, 0)] * A.dim, (), name="0")


def simple_module(A: Algebra, v: int) -> Module:
    P = standard_projective(A, v)
    S, _ = quotient(P, radical_submodule(P))
    return S.renamed(f"S{v+1}")


def direct_sum(mods: Sequence[Module], name: str = "") -> Module:
    if not mods:
        raise ModuleError("empty direct sum; use zero_module")
    A = mods[0].algebra
    F = A.field
    labels = [v for m in mods for v in m.labels]
    action = [block_diag(F, [m.action[k] for m in mods]) for k in range(A.dim)]
    summands = []
    off = 0
    ok = True
    for i, m in enumerate(mods):
        if m.summands is None:
            if m.dim:
                ok = False
        else:
            summands.extend(Block(b.start + off, b.stop + off, b.kind) for b in m.summands)
        off += m.dim
    return Module(A, labels, action, summands if ok else None, name=name or "+".join(m.name for m in mods))


def sum_inclusions(mods: Sequence[Module]):
    """Inclusion and projection matrices of a direct sum."""
    F = mods[0].field
    n = sum(m.dim for m in mods)
    incs, projs = [], []
    off = 0
    for m in mods:
        U = unit_columns(F, n, range(off, off + m.dim))
        incs.append(U)
        projs.append(U.T())
        off += m.dim
    return incs, projs


# ---------------------------------------------------------------------------
# maps, submodules and quotients


def is_module_map(f: Matrix, x: Module, y: Module) -> bool:
    if f.shape != (y.dim, x.dim):
        return False
    A = x.algebra
    for k in list(A.idempotents) + list(A.generators()):
        if not (f @ x.action[k]) == (y.action[k] @ f):
            return False
    return True


def graded_span(x: Module, cols: Matrix) -> Matrix:
    """Basis of the span of ``cols`` (a graded subspace) made of homogeneous vectors."""
    F = x.field
    pieces = []
    for v, idx in enumerate(x.vertex_coords):
        if not idx or cols.cols == 0:
            continue
        sub = cols.submatrix(idx, range(cols.cols))
        cs = column_space(sub)
        if cs.cols:
            from .kernel import embed
            pieces.append(embed(F, cs, x.dim, cs.cols, idx, range(cs.cols)))
    if not pieces:
        return Matrix.zeros(F, x.dim, 0)
    return hstack(F, pieces, rows=x.dim)


def left_inverse(B: Matrix) -> Matrix:
    """``P`` with ``P @ B = I`` supported on pivot rows of ``B``."""
    F = B.field
    n, k = B.shape
    if k == 0:
        return Matrix.zeros(F, 0, n)
    _, piv = rref(B.T())
    Bp = B.submatrix(piv, range(k))
    return Bp.inverse() @ unit_columns(F, n, piv).T()


def submodule(x: Module, cols: Matrix, name: str = ""):
    """Submodule spanned by ``cols``; returns ``(U, inclusion)``."""
    B = graded_span(x, cols)
    P = left_inverse(B)
    labels = [x.labels[next(r for r in range(x.dim) if B[r, j] != 0)] for j in range(B.cols)]
    action = [P @ x.action[k] @ B for k in range(x.algebra.dim)]
    return Module(x.algebra, labels, action, name=name), B


def quotient(x: Module, cols: Matrix, name: str = ""):
    """Quotient by the submodule spanned by ``cols``; returns ``(Q, projection)``."""
    F = x.field
    B = graded_span(x, cols)
    comp = complement_columns(B, x.dim)
    C = unit_columns(F, x.dim, comp)
    T = hstack(F, [B, C], rows=x.dim)
    Tinv = T.inverse()
    proj = Tinv.block(B.cols, x.dim, 0, x.dim)
    labels = [x.labels[c] for c in comp]
    action = [proj @ x.action[k] @ C for k in range(x.algebra.dim)]
    return Module(x.algebra, labels, action, name=name), proj


def kernel(f: Matrix, x: Module, name: str = ""):
    K, _ = nullspace(f)
    return submodule(x, K, name)


def image(f: Matrix, y: Module, name: str = ""):
    return submodule(y, column_space(f) if f.cols else Matrix.zeros(y.field, y.dim, 0), name)


def cokernel(f: Matrix, y: Module, name: str = ""):
    return quotient(y, f, name)


def restrict_to(x: Module, incl: Matrix, proj: Matrix, summands=None, name: str = "") -> Module:
    """Module structure on a direct summand given by ``incl``/``proj`` with ``proj @ incl = 1``."""
    labels = []
    for j in range(incl.cols):
        r = next(r for r in range(incl.rows) if incl[r, j] != 0)
        labels.append(x.labels[r])
    action = [proj @ x.action[k] @ incl for k in range(x.algebra.dim)]
    return Module(x.algebra, labels, action, summands, name)


# ---------------------------------------------------------------------------
# homomorphism spaces


class HomSpace:
    """Basis of ``Hom_A(x, y)`` with a coordinate function."""

    def __init__(self, source: Module, target: Module, maps: list[Matrix], coord_fn):
        self.source = source
        self.target = target
        self.maps = maps
        self._coord_fn = coord_fn

    @property
    def dim(self):
        return len(self.maps)

    def __len__(self):
        return len(self.maps)

    def coords(self, f: Matrix) -> list:
        return self._coord_fn(f)

    def coord_matrix(self, fs: Sequence[Matrix]) -> Matrix:
        F = self.source.field
        if not fs:
            return Matrix.zeros(F, self.dim, 0)
        return Matrix.from_rows(F, [list(c) for c in zip(*[self.coords(f) for f in fs])], len(fs)) \
            if self.dim else Matrix.zeros(F, 0, len(fs))

    def element(self, coeffs) -> Matrix:
        F = self.source.field
        out = Matrix.zeros(F, self.target.dim, self.source.dim)
        for c, m in zip(coeffs, self.maps):
            if c != 0:
                out = out + m.scale(c)
        return out

    def random(self, rng: random.Random) -> Matrix:
        F = self.source.field
        return self.element([F.random_scalar(rng) for _ in self.maps])


def hom_space(x: Module, y: Module) -> HomSpace:
    if x.algebra is not y.algebra and x.algebra != y.algebra:
        raise ModuleError("modules over different algebras")
    if x.is_standard_projective:
        return _hom_from_projective(x, y)
    return _hom_general(x, y)


def _hom_from_projective(x: Module, y: Module) -> HomSpace:
    A = x.algebra
    F = x.field
    ymats = y.action
    maps = []
    gens = []  # (target row, source generator column)
    zero = F.scalar(0)
    for blk in x.summands:
        v = blk.kind[1]
        idx = A.right_ideal_indices(v)
        gpos = blk.start + idx.index(A.idempotents[v])
        cols = [ymats[k] for k in idx]
        for r in y.vertex_coords[v]:
            flat = [zero] * (y.dim * x.dim)
            for c, M in enumerate(cols):
                col = blk.start + c
                for rr in range(y.dim):
                    val = M[rr, r]
                    if val != 0:
                        flat[rr * x.dim + col] = val
            maps.append(Matrix.from_entries(F, y.dim, x.dim, flat))
            gens.append((r, gpos))

    def coords(f: Matrix):
        t = f.table() if f.rows and f.cols else None
        return [t[r][c] for r, c in gens] if t else [F.scalar(0)] * len(gens)

    return HomSpace(x, y, maps, coords)


def _hom_general(x: Module, y: Module) -> HomSpace:
    A = x.algebra
    F = x.field
    unknowns = {}
    order = []
    for v in range(A.vertex_count):
        for r in y.vertex_coords[v]:
            for c in x.vertex_coords[v]:
                unknowns[(r, c)] = len(order)
                order.append((r, c))
    nu = len(order)
    if nu == 0:
        return HomSpace(x, y, [], lambda f: [])
    xt, yt = x._tables, y._tables
    rows = []
    for g in A.generators():
        s, t = A.grading[g]
        Xg, Yg = xt[g], yt[g]
        Xs, Xt_, Ys, Yt = x.vertex_coords[s], x.vertex_coords[t], y.vertex_coords[s], y.vertex_coords[t]
        for r in Ys:
            for c in Xt_:
                row = {}
                for c2 in Xs:
                    val = Xg[c2][c]
                    if val != 0:
                        u = unknowns[(r, c2)]
                        row[u] = row.get(u, 0) + val
                for r2 in Yt:
                    val = Yg[r][r2]
                    if val != 0:
                        u = unknowns[(r2, c)]
                        row[u] = row.get(u, 0) - val
                if row:
                    rows.append(row)
    zero = F.scalar(0)
    if rows:
        flat = [zero] * (len(rows) * nu)
        for i, row in enumerate(rows):
            for u, val in row.items():
                flat[i * nu + u] = F.scalar(val)
        K, free = nullspace(Matrix.from_entries(F, len(rows), nu, flat))
    else:
        K, free = Matrix.identity(F, nu), list(range(nu))
    Kt = K.table()
    maps = []
    for j in range(K.cols):
        flat = [zero] * (y.dim * x.dim)
        for u, (r, c) in enumerate(order):
            val = Kt[u][j]
            if val != 0:
                flat[r * x.dim + c] = val
        maps.append(Matrix.from_entries(F, y.dim, x.dim, flat))
    free_pos = [order[u] for u in free]

    def coords(f: Matrix):
        t = f.table()
        return [t[r][c] for r, c in free_pos]

    return HomSpace(x, y, maps, coords)


def end_matrices(x: Module) -> list[Matrix]:
    return hom_space(x, x).maps


# ---------------------------------------------------------------------------
# radical, top and projective covers


def radical_submodule(x: Module) -> Matrix:
    """Homogeneous basis of ``rad(A) x``."""
    F = x.field
    if x.dim == 0:
        return Matrix.zeros(F, 0, 0)
    mats = _radical_actions(x)
    if not mats:
        return Matrix.zeros(F, x.dim, 0)
    return graded_span(x, column_space(hstack(F, mats, rows=x.dim)))


def _radical_actions(x: Module):
    A = x.algebra
    if A.quiver is not None:
        idem = set(A.idempotents)
        return [x.action[k] for k in range(A.dim) if k not in idem]
    R = A.radical
    return [x.act_element(R.col(j).entries()) for j in range(R.cols)]


def top_generators(x: Module) -> list[tuple[int, int]]:
    """Coordinates ``(vertex, coordinate)`` whose unit vectors generate ``x`` minimally."""
    F = x.field
    rad = radical_submodule(x)
    out = []
    for v in x.algebra.representative_vertices:
        idx = x.vertex_coords[v]
        if not idx:
            continue
        sub = rad.submatrix(idx, range(rad.cols)) if rad.cols else Matrix.zeros(F, len(idx), 0)
        comp = complement_columns(column_space(sub) if sub.cols else sub, len(idx))
        out.extend((v, idx[c]) for c in comp)
    return out


def projective_cover(x: Module):
    """Minimal ``(P, pi)`` with ``P`` a sum of standard projectives and ``pi: P -> x`` onto."""
    A = x.algebra
    F = x.field
    gens = top_generators(x)
    if not gens:
        return zero_module(A), Matrix.zeros(F, x.dim, 0)
    parts = [standard_projective(A, v) for v, _ in gens]
    P = direct_sum(parts)
    cols = []
    for v, r in gens:
        for k in A.right_ideal_indices(v):
            cols.append(x.action[k].col(r))
    pi = hstack(F, cols, rows=x.dim)
    return P, pi


def map_from_projective(P: Module, y: Module, images: Sequence[Matrix]) -> Matrix:
    """Module map from a standard projective sending each block generator to ``images[i]``."""
    A = P.algebra
    F = P.field
    cols = []
    for blk, img in zip(P.summands, images):
        v = blk.kind[1]
        for k in A.right_ideal_indices(v):
            cols.append(y.action[k] @ img)
    return hstack(F, cols, rows=y.dim) if cols else Matrix.zeros(F, y.dim, 0)


def is_projective(x: Module) -> bool:
    P, _ = projective_cover(x)
    return P.dim == x.dim


def syzygy(x: Module):
    """``(Omega x, inclusion into P, P, pi)`` for the projective cover ``pi: P -> x``."""
    P, pi = projective_cover(x)
    K, inc = kernel(pi, P, name=f"Omega({x.name})")
    return K, inc, P, pi


# ---------------------------------------------------------------------------
# duality and Hom into the regular module


def dual(x: Module) -> Module:
    """``D x = Hom_k(x, k)`` as a module over the opposite algebra."""
    Aop = x.algebra.opposite()
    return Module(Aop, x.labels, [m.T() for m in x.action], name=f"D({x.name})")


def _right_mult_block(A: Algebra, b: int, s: int, t: int) -> Matrix:
    """Right multiplication by ``b`` from ``P_s`` to ``P_t`` in standard coordinates."""
    F = A.field
    src = A.right_ideal_indices(s)
    tgt = A.right_ideal_indices(t)
    pos = {k: i for i, k in enumerate(tgt)}
    zero = F.scalar(0)
    flat = [zero] * (len(tgt) * len(src))
    for c, k in enumerate(src):
        for kk, coef in A.products[k][b]:
            flat[pos[kk] * len(src) + c] = F.scalar(coef)
    return Matrix.from_entries(F, len(tgt), len(src), flat)


class DualModule:
    """``Hom_A(x, A)`` as a left module over ``A^op`` with its hom bases."""

    def __init__(self, x: Module):
        A = x.algebra
        F = x.field
        self.source = x
        self.projectives = [standard_projective(A, t) for t in range(A.vertex_count)]
        self.homs = [hom_space(x, P) for P in self.projectives]
        offsets = [0]
        for h in self.homs:
            offsets.append(offsets[-1] + h.dim)
        self.offsets = offsets
        n = offsets[-1]
        labels = [t for t, h in enumerate(self.homs) for _ in range(h.dim)]
        Aop = A.opposite()
        action = []
        for b in range(A.dim):
            s, t = A.grading[b]
            M = Matrix.zeros(F, n, n)
            hs, ht = self.homs[s], self.homs[t]
            if hs.dim and ht.dim:
                R = _right_mult_block(A, b, s, t)
                cols = [ht.coords(R @ h) for h in hs.maps]
                block = Matrix.from_rows(F, [list(r) for r in zip(*cols)], hs.dim)
                from .kernel import embed
                M = embed(F, block, n, n, range(offsets[t], offsets[t + 1]), range(offsets[s], offsets[s + 1]))
            action.append(M)
        self.module = Module(Aop, labels, action, name=f"{x.name}*")

    def element_map(self, j: int) -> tuple[int, Matrix]:
        """Vertex and matrix ``x -> P_t`` of the ``j``-th basis element."""
        for t in range(len(self.homs)):
            if self.offsets[t] <= j < self.offsets[t + 1]:
                return t, self.homs[t].maps[j - self.offsets[t]]
        raise IndexError(j)

    def coords(self, t: int, f: Matrix) -> Matrix:
        F = self.source.field
        vals = [F.scalar(0)] * self.offsets[-1]
        for i, c in enumerate(self.homs[t].coords(f)):
            vals[self.offsets[t] + i] = c
        return Matrix.column(F, vals)


def _regular_coordinates(A: Algebra, t: int, f_col: Matrix) -> list:
    """Algebra coefficient vector of an element of ``P_t`` given in standard coordinates."""
    F = A.field
    out = [F.scalar(0)] * A.dim
    for c, k in enumerate(A.right_ideal_indices(t)):
        out[k] = f_col[c, 0]
    return out


def evaluation_map(x: Module):
    """``(x**, ev)`` with ``ev: x -> x**`` the evaluation map into the double dual."""
    A = x.algebra
    F = x.field
    first = DualModule(x)
    xs = first.module
    second = DualModule(xs)
    Aop = A.opposite()
    cols = []
    for c in range(x.dim):
        unit = Matrix.column(F, [1 if i == c else 0 for i in range(x.dim)])
        # phi_k(x_c) in A, for every basis element phi_k of x*
        values = []
        for j in range(xs.dim):
            t, phi = first.element_map(j)
            values.append(_regular_coordinates(A, t, phi @ unit))
        col = Matrix.zeros(F, second.offsets[-1], 1)
        for t in range(Aop.vertex_count):
            idx = Aop.right_ideal_indices(t)
            if not second.homs[t].dim:
                continue
            flat = [values[j][k] for k in idx for j in range(xs.dim)]
            psi = Matrix.from_entries(F, len(idx), xs.dim, flat)
            col = col + second.coords(t, psi)
        cols.append(col)
    ev = hstack(F, cols, rows=second.offsets[-1])
    return second.module, ev, first, second


def is_reflexive(x: Module) -> bool:
    xss, ev, _, _ = evaluation_map(x)
    return xss.dim == x.dim and rank(ev) == x.dim


# ---------------------------------------------------------------------------
# decomposition


@dataclass
class Summand:
    module: Module
    incl: Matrix  # x.dim x k
    proj: Matrix  # k x x.dim


def _poly_eval(coeffs: list, f: Matrix) -> Matrix:
    F = f.field
    out = Matrix.zeros(F, f.rows, f.cols)
    eye = Matrix.identity(F, f.rows)
    for c in reversed(coeffs):
        out = out @ f + eye.scale(c)
    return out


def _factor_charpoly(f: Matrix):
    cp = f.m.charpoly()
    _, facs = cp.factor()
    out = []
    for g, e in facs:
        coeffs = [f.field.scalar(c) for c in g.coeffs()]
        out.append((coeffs, e))
    return out


def _local_test(x: Module, maps: list[Matrix]) -> bool:
    if len(maps) <= 1:
        return True
    rad = matrix_algebra_radical(maps, x.field)
    return len(maps) - rad.cols == 1


def _split_with(x: Module, f: Matrix):
    """Split ``x`` using the primary decomposition of ``f``; ``None`` if it does not split."""
    facs = _factor_charpoly(f)
    if len(facs) < 2:
        return None
    coeffs, e = facs[0]
    u = _poly_eval(coeffs, f).power(e)
    rest = None
    for coeffs2, e2 in facs[1:]:
        w = _poly_eval(coeffs2, f).power(e2)
        rest = w if rest is None else rest @ w
    K1, _ = nullspace(u)
    K2, _ = nullspace(rest)
    return [graded_span(x, K1), graded_span(x, K2)]


def _candidate_endos(maps, rng, F):
    for m in maps:
        yield m
    n = len(maps)
    for i in range(n):
        for j in range(i + 1, n):
            yield maps[i] + maps[j]
    for _ in range(80):
        out = None
        for m in maps:
            c = F.random_scalar(rng)
            if c != 0:
                out = m.scale(c) if out is None else out + m.scale(c)
        if out is not None:
            yield out


def decompose(x: Module, seed: int = 0) -> list[Summand]:
    """Indecomposable summands with inclusion/projection matrices.

    Summands are found by splitting along primary components of
    endomorphisms; a summand is accepted as indecomposable once its
    endomorphism algebra modulo radical is one-dimensional.
    """
    F = x.field
    if x.dim == 0:
        return []
    if x.summands is not None:
        out = []
        for b in x.summands:
            inc = unit_columns(F, x.dim, range(b.start, b.stop))
            out.append(Summand(restrict_to(x, inc, inc.T(), (Block(0, b.size, b.kind),) if b.is_projective
                                           else None), inc, inc.T()))
        if all(b.is_projective for b in x.summands):
            return out
        res = []
        for s in out:
            for t in decompose(s.module.with_summands(None), seed):
                res.append(Summand(t.module, s.incl @ t.incl, t.proj @ s.proj))
        return res
    rng = random.Random(seed)
    result = []
    stack = [(x, Matrix.identity(F, x.dim), Matrix.identity(F, x.dim))]
    while stack:
        m, inc, proj = stack.pop()
        maps = end_matrices(m)
        if _local_test(m, maps):
            result.append(Summand(m, inc, proj))
            continue
        parts = None
        for f in _candidate_endos(maps, rng, F):
            parts = _split_with(m, f)
            if parts is not None:
                break
        if parts is None:
            raise DecompositionError(f"endomorphism algebra of a {m.dim}-dimensional module is not split local "
                                     "and no splitting endomorphism was found")
        B1, B2 = parts
        T = hstack(F, [B1, B2], rows=m.dim)
        Tinv = T.inverse()
        P1 = Tinv.block(0, B1.cols, 0, m.dim)
        P2 = Tinv.block(B1.cols, m.dim, 0, m.dim)
        for B, P in ((B1, P1), (B2, P2)):
            sub = restrict_to(m, B, P)
            stack.append((sub, inc @ B, P @ proj))
    result.sort(key=lambda s: (s.module.dim, s.module.dim_vector))
    return result


def is_indecomposable(x: Module) -> bool:
    return x.dim > 0 and _local_test(x, end_matrices(x))


def find_isomorphism(x: Module, y: Module, seed: int = 0, indecomposable: bool | None = None) -> Matrix | None:
    """An isomorphism ``x -> y`` or ``None``."""
    if x.dim != y.dim or x.dim_vector != y.dim_vector:
        return None
    if x.dim == 0:
        return Matrix.zeros(x.field, 0, 0)
    hxy = hom_space(x, y)
    if not hxy.dim:
        return None
    for m in hxy.maps:
        if m.is_invertible():
            return m
    rng = random.Random(seed)
    for _ in range(20):
        m = hxy.random(rng)
        if m.is_invertible():
            return m
    if indecomposable is None:
        indecomposable = is_indecomposable(x)
    if indecomposable:
        hyx = hom_space(y, x)
        for f in hxy.maps:
            for g in hyx.maps:
                if (g @ f).is_invertible():
                    return f
        return None
    # general case: match indecomposable summands
    dx, dy = decompose(x, seed), decompose(y, seed)
    if len(dx) != len(dy):
        return None
    used = [False] * len(dy)
    pieces = []
    for s in dx:
        for j, t in enumerate(dy):
            if used[j]:
                continue
            iso = find_isomorphism(s.module, t.module, seed, indecomposable=True)
            if iso is not None:
                used[j] = True
                pieces.append(t.incl @ iso @ s.proj)
                break
        else:
            return None
    out = pieces[0]
    for p in pieces[1:]:
        out = out + p
    return out


def is_isomorphic(x: Module, y: Module, seed: int = 0) -> bool:
    return find_isomorphism(x, y, seed) is not None


def group_isomorphic(mods: Sequence[Module], seed: int = 0) -> list[list[int]]:
    """Partition indices of indecomposable modules into isomorphism classes."""
    classes: list[list[int]] = []
    for i, m in enumerate(mods):
        for cl in classes:
            if find_isomorphism(mods[cl[0]], m, seed, indecomposable=True) is not None:
                cl.append(i)
                break
        else:
            classes.append([i])
    return classes


def standardize(x: Module, seed: int = 0) -> tuple[Module, Matrix, Matrix]:
    """Rewrite ``x`` as a direct sum of indecomposables, projectives in standard form.

    Returns ``(x', to, back)`` with ``to: x -> x'`` and ``back = to^-1``.
    Projective summands come first, sorted by vertex.
    """
    F = x.field
    if x.is_standard_projective:
        eye = Matrix.identity(F, x.dim)
        return x, eye, eye
    parts = decompose(x, seed)
    proj_parts, other = [], []
    for s in parts:
        P, pi = projective_cover(s.module)
        if P.dim == s.module.dim:
            v = P.summands[0].kind[1]
            # pi: P -> s is an isomorphism
            proj_parts.append((v, P, pi.inverse() @ s.proj, s.incl @ pi))
        else:
            other.append((s.module, s.proj, s.incl))
    proj_parts.sort(key=lambda t: t[0])
    mods, tos, backs = [], [], []
    for v, P, to, back in proj_parts:
        mods.append(P)
        tos.append(to)
        backs.append(back)
    for i, (m, to, back) in enumerate(other):
        mods.append(m.with_summands((Block(0, m.dim, ("M", i)),)))
        tos.append(to)
        backs.append(back)
    if not mods:
        return zero_module(x.algebra), Matrix.zeros(F, 0, x.dim), Matrix.zeros(F, x.dim, 0)
    new = direct_sum(mods, name=x.name)
    return new, vstack(F, tos, cols=x.dim), hstack(F, backs, rows=x.dim)


# ---------------------------------------------------------------------------
# stable category


class StableHom:
    def __init__(self, hom: HomSpace, phom: Matrix):
        self.hom = hom
        self.phom = phom  # columns: hom coordinates spanning maps through projectives
        self.dim = hom.dim - phom.cols
        comp = complement_columns(phom, hom.dim)
        F = hom.source.field
        basis = hstack(F, [phom, unit_columns(F, hom.dim, comp)], rows=hom.dim)
        self._comp = comp
        self._inv = basis.inverse() if hom.dim else basis

    def class_coords(self, f: Matrix) -> list:
        """Coordinates of the stable class of ``f`` in the representative basis."""
        F = self.hom.source.field
        c = Matrix.column(F, self.hom.coords(f))
        full = self._inv @ c
        return full.entries()[self.phom.cols:]

    def is_zero(self, f: Matrix) -> bool:
        return all(c == 0 for c in self.class_coords(f))

    def representative_maps(self) -> list[Matrix]:
        """Hom basis elements whose classes form a basis of the stable Hom."""
        return [self.hom.maps[j] for j in self._comp]


def projective_maps_span(x: Module, y: Module, hom: HomSpace | None = None) -> Matrix:
    """Hom-coordinates spanning maps ``x -> y`` that factor through a projective.

    Spans the sum over indecomposable projectives ``P`` of the images of the
    composition ``Hom(P, y) x Hom(x, P) -> Hom(x, y)``.
    """
    A = x.algebra
    F = x.field
    hom = hom or hom_space(x, y)
    cols = []
    for v in A.representative_vertices:
        P = standard_projective(A, v)
        into = hom_space(x, P)
        out = hom_space(P, y)
        for g in into.maps:
            for h in out.maps:
                cols.append(hom.coords(h @ g))
    if not cols or not hom.dim:
        return Matrix.zeros(F, hom.dim, 0)
    M = Matrix.from_rows(F, [list(r) for r in zip(*cols)], len(cols))
    return column_space(M)


def stable_hom(x: Module, y: Module) -> StableHom:
    hom = hom_space(x, y)
    return StableHom(hom, projective_maps_span(x, y, hom))


def factor_through_projective(f: Matrix, x: Module, y: Module):
    """``(P, u, pi)`` with ``f = pi @ u`` through the projective cover of ``y``, or ``None``."""
    P, pi = projective_cover(y)
    into = hom_space(x, P)
    F = x.field
    if not into.dim:
        return (P, Matrix.zeros(F, P.dim, x.dim), pi) if f.is_zero() else None
    hom = hom_space(x, y)
    target = Matrix.column(F, hom.coords(f))
    cols = [hom.coords(pi @ g) for g in into.maps]
    M = Matrix.from_rows(F, [list(r) for r in zip(*cols)], len(cols)) if hom.dim else Matrix.zeros(F, 0, len(cols))
    sol = solve(M, target)
    if sol is None:
        return None
    u = into.element(sol.entries())
    if not (pi @ u) == f:
        return None
    return P, u, pi


def triangular_module(T: Algebra, x1: Module, x2: Module, phi: Matrix, name: str = "") -> Module:
    """Module ``(x1; x2)`` over ``T_2(A)`` given an ``A``-map ``phi: x2 -> x1``.

    ``T`` must come from `upper_triangular` applied to the algebra of ``x1``.
    """
    A = x1.algebra
    F = A.field
    n = A.dim
    if T.dim != 3 * n:
        raise ModuleError("T is not the triangular algebra of the module's algebra")
    if not is_module_map(phi, x2, x1):
        raise ModuleError("phi is not a module map")
    s = A.vertex_count
    d1, d2 = x1.dim, x2.dim
    labels = list(x1.labels) + [s + v for v in x2.labels]
    action = []
    for block in range(3):
        for k in range(n):
            if block == 0:
                M = block_diag(F, [x1.action[k], Matrix.zeros(F, d2, d2)])
            elif block == 1:
                from .kernel import block_matrix
                M = block_matrix(F, [[None, x1.action[k] @ phi], [None, None]], [d1, d2], [d1, d2])
            else:
                M = block_diag(F, [Matrix.zeros(F, d1, d1), x2.action[k]])
            action.append(M)
    mod = Module(T, labels, action, name=name)
    mod.check()
    return mod


class EndomorphismData:
    """``End_A(M_1 + ... + M_n)`` with the product ``f * g = g o f``.

    Basis element ``k`` is a map ``M_a -> M_b`` (``self.maps[k]``), graded
    ``(a, b)``; the identity of each ``M_a`` is a basis element, so the
    idempotents are the projections onto the summands.
    """

    def __init__(self, mods: Sequence[Module], name: str = "End"):
        self.modules = list(mods)
        F = mods[0].field
        self.field = F
        n = len(mods)
        self.homs = {}
        self.maps: list[Matrix] = []
        self.grading = []
        self.index = {}
        self._coord = {}
        idempotents = [None] * n
        labels = []
        for a in range(n):
            for b in range(n):
                h = hom_space(mods[a], mods[b])
                basis = list(h.maps)
                if a == b:
                    basis, change = _swap_in_identity(h, mods[a])
                else:
                    change = None
                self.homs[(a, b)] = (h, change)
                ids = []
                for j, m in enumerate(basis):
                    k = len(self.maps)
                    if a == b and j == 0:
                        idempotents[a] = k
                    self.maps.append(m)
                    self.grading.append((a, b))
                    ids.append(k)
                    labels.append(f"{a+1}->{b+1}#{j}" if not (a == b and j == 0) else f"e{a+1}")
                self.index[(a, b)] = ids
        dim = len(self.maps)
        prods = [[() for _ in range(dim)] for _ in range(dim)]
        for i in range(dim):
            a, b = self.grading[i]
            for c in range(n):
                for j in self.index.get((b, c), []):
                    comp = self.maps[j] @ self.maps[i]
                    coords = self.coords((a, c), comp)
                    prods[i][j] = tuple((self.index[(a, c)][t], v) for t, v in enumerate(coords) if v != 0)
        self.algebra = Algebra(F, labels, prods, tuple(idempotents), self.grading, name=name)

    def coords(self, ab, f: Matrix) -> list:
        h, change = self.homs[ab]
        c = h.coords(f)
        if change is None:
            return c
        return (change @ Matrix.column(self.field, c)).entries()

    def element_coords(self, ab, f: Matrix) -> list:
        """Full coefficient vector of the map ``f: M_a -> M_b``."""
        out = [self.field.scalar(0)] * len(self.maps)
        for t, v in zip(self.index[ab], self.coords(ab, f)):
            out[t] = v
        return out


def _swap_in_identity(h: HomSpace, m: Module):
    F = m.field
    eye = Matrix.identity(F, m.dim)
    c = h.coords(eye)
    j = next(i for i, v in enumerate(c) if v != 0)
    basis = [eye] + [h.maps[i] for i in range(h.dim) if i != j]
    # columns: coordinates (old basis) of the new basis
    cols = []
    for i in range(h.dim):
        if i == 0:
            cols.append(c)
        else:
            src = [k for k in range(h.dim) if k != j][i - 1]
            cols.append([F.scalar(1 if t == src else 0) for t in range(h.dim)])
    B = Matrix.from_rows(F, [list(r) for r in zip(*cols)], h.dim)
    return basis, B.inverse()
