"""Finite-dimensional algebras with a graded basis.

An `Algebra` is given by structure constants on a basis in which a complete
set of primitive orthogonal idempotents ``e_1..e_s`` are basis elements and
every other basis element ``b`` satisfies ``e_i b e_j = b`` for one pair
``(i, j)``.  Path algebras of bound quivers, triangular matrix algebras,
tensor products and endomorphism algebras of direct sums all come in this
form.

Paths are written left to right (``a.b`` is ``a`` followed by ``b``).  The
product is composition of functions: ``b_p * b_q`` is the path ``q.p``, so a
representation gives a left module with ``M(q.p) = M(p) @ M(q)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import flint

from .kernel import (
    QQ,
    Field,
    Matrix,
    PrimeField,
    column_space,
    hstack,
    nullspace,
    rref,
)


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class QuiverPresentation:
    vertex_count: int
    arrows: tuple  # ((name, src, tgt), ...) with 1-based vertices
    relations: tuple  # (((coeff, (name, ...)), ...), ...)
    nilpotency_bound: int
    field: Field = QQ

    def __post_init__(self):
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow names must be unique")
        for name, s, t in self.arrows:
            if not (1 <= s <= self.vertex_count and 1 <= t <= self.vertex_count):
                raise AlgebraError(f"arrow {name} has an endpoint outside 1..{self.vertex_count}")
        if self.nilpotency_bound < 1:
            raise AlgebraError("nilpotency bound must be positive")

    def arrow_index(self) -> dict:
        return {a[0]: i for i, a in enumerate(self.arrows)}


class Algebra:
    """Associative unital algebra with structure constants on a graded basis.

    ``products[i][j]`` lists ``(k, c)`` pairs: ``b_i * b_j = sum c * b_k``.
    ``grading[k] = (s, t)`` means ``e_s * b_k * e_t = b_k`` (positions in
    ``idempotents``).
    """

    def __init__(self, field: Field, labels: Sequence[str], products, idempotents: Sequence[int],
                 grading=None, name: str = "", quiver: QuiverPresentation | None = None,
                 generators: Sequence[int] | None = None, check: bool = False):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.products = [[tuple(products[i][j]) for j in range(self.dim)] for i in range(self.dim)]
        self.idempotents = tuple(idempotents)
        self.name = name
        self.quiver = quiver
        self._generators = tuple(generators) if generators is not None else None
        self._opposite = None
        self.grading = tuple(grading) if grading is not None else self._compute_grading()
        if check:
            self.check()

    # basic data -----------------------------------------------------------
    @property
    def vertex_count(self) -> int:
        return len(self.idempotents)

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, vertices={self.vertex_count}, {self.field})"

    def _compute_grading(self):
        grading = []
        for k in range(self.dim):
            found = None
            for s, es in enumerate(self.idempotents):
                left = dict(self.products[es][k])
                if left.get(k) == 1 and len(left) == 1:
                    for t, et in enumerate(self.idempotents):
                        right = dict(self.products[k][et])
                        if right.get(k) == 1 and len(right) == 1:
                            found = (s, t)
                            break
                    break
            if found is None:
                raise AlgebraError(f"basis element {self.labels[k]} is not homogeneous for the idempotents")
            grading.append(found)
        return grading

    def basis_vector(self, k) -> Matrix:
        return Matrix.column(self.field, [1 if i == k else 0 for i in range(self.dim)])

    def unit(self) -> Matrix:
        return Matrix.column(self.field, [1 if i in set(self.idempotents) else 0 for i in range(self.dim)])

    def multiply(self, u, v) -> list:
        """Product of two coefficient lists."""
        F = self.field
        out = [F.scalar(0)] * self.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            row = self.products[i]
            for j, b in enumerate(v):
                if b == 0:
                    continue
                ab = a * b
                for k, c in row[j]:
                    out[k] += ab * c
        return out

    @cached_property
    def structure_tensor(self):
        F = self.field
        return [[[F.scalar(c) for c in (dict(self.products[i][j]).get(k, 0) for k in range(self.dim))]
                 for j in range(self.dim)] for i in range(self.dim)]

    def left_matrix(self, i: int) -> Matrix:
        return self._left_mats[i]

    def right_matrix(self, i: int) -> Matrix:
        return self._right_mats[i]

    @cached_property
    def _left_mats(self):
        F, n = self.field, self.dim
        mats = []
        zero = F.scalar(0)
        for i in range(n):
            flat = [zero] * (n * n)
            for j in range(n):
                for k, c in self.products[i][j]:
                    flat[k * n + j] = F.scalar(c)
            mats.append(Matrix.from_entries(F, n, n, flat))
        return mats

    @cached_property
    def _right_mats(self):
        F, n = self.field, self.dim
        mats = []
        zero = F.scalar(0)
        for j in range(n):
            flat = [zero] * (n * n)
            for i in range(n):
                for k, c in self.products[i][j]:
                    flat[k * n + i] = F.scalar(c)
            mats.append(Matrix.from_entries(F, n, n, flat))
        return mats

    def combination(self, mats: Sequence[Matrix], coeffs) -> Matrix:
        out = None
        for m, c in zip(mats, coeffs):
            if c == 0:
                continue
            term = m.scale(c)
            out = term if out is None else out + term
        if out is None:
            return Matrix.zeros(self.field, mats[0].rows, mats[0].cols)
        return out

    # checks ---------------------------------------------------------------
    def check(self):
        """Verify associativity, idempotent relations and the unit."""
        if not self.is_associative():
            raise AlgebraError("multiplication is not associative")
        F = self.field
        es = self.idempotents
        for a, i in enumerate(es):
            for b, j in enumerate(es):
                prod = dict(self.products[i][j])
                expect = {i: 1} if a == b else {}
                if {k: c for k, c in prod.items() if c != 0} != expect:
                    raise AlgebraError("idempotents are not orthogonal")
        one = self.unit().entries()
        for k in range(self.dim):
            e = [F.scalar(1 if t == k else 0) for t in range(self.dim)]
            if self.multiply(one, e) != e or self.multiply(e, one) != e:
                raise AlgebraError("sum of idempotents is not the unit")
        return True

    def is_associative(self) -> bool:
        L = self._left_mats
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = L[i] @ L[j]
                rhs = self.combination(L, self.structure_tensor[i][j])
                if not lhs == rhs:
                    return False
        return True

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.field == other.field and self.dim == other.dim and self.idempotents == other.idempotents
                and self._norm_products() == other._norm_products())

    def __hash__(self):
        return hash((self.dim, self.idempotents, self.labels))

    def _norm_products(self):
        return tuple(tuple(tuple(sorted((k, str(c)) for k, c in self.products[i][j] if c != 0))
                           for j in range(self.dim)) for i in range(self.dim))

    # derived algebras -----------------------------------------------------
    def opposite(self) -> "Algebra":
        if self._opposite is None:
            n = self.dim
            prods = [[self.products[j][i] for j in range(n)] for i in range(n)]
            grading = [(t, s) for (s, t) in self.grading]
            quiver = _opposite_quiver(self.quiver) if self.quiver is not None else None
            labels = self.labels
            if quiver is not None:
                labels = tuple(_reverse_label(l) for l in self.labels)
            op = Algebra(self.field, labels, prods, self.idempotents, grading,
                         name=f"{self.name}^op", quiver=quiver, generators=self._generators)
            op._opposite = self
            self._opposite = op
        return self._opposite

    @cached_property
    def block_indices(self) -> dict:
        """``(s, t) -> basis indices`` of ``e_s A e_t``."""
        out = {}
        for k, st in enumerate(self.grading):
            out.setdefault(st, []).append(k)
        return out

    def right_ideal_indices(self, t: int) -> list[int]:
        """Basis indices of ``A e_t`` (the projective ``P_t``), in basis order."""
        return [k for k, (_, tt) in enumerate(self.grading) if tt == t]

    def left_ideal_indices(self, s: int) -> list[int]:
        return [k for k, (ss, _) in enumerate(self.grading) if ss == s]

    def cartan_matrix(self) -> list[list[int]]:
        """Entry ``(i, j)`` is ``dim e_j A e_i = dim Hom(P_j, P_i)``."""
        s = self.vertex_count
        return [[len(self.block_indices.get((j, i), [])) for j in range(s)] for i in range(s)]

    # generators -----------------------------------------------------------
    def generators(self) -> tuple[int, ...]:
        """Basis indices generating the algebra together with the idempotents."""
        if self._generators is None:
            self._generators = self._greedy_generators()
        return self._generators

    def _greedy_generators(self):
        F, n = self.field, self.dim
        idem = set(self.idempotents)
        gens: list[int] = []
        span = _Span(F, n)
        for e in self.idempotents:
            span.add(self.basis_vector(e))
        order = sorted((k for k in range(n) if k not in idem), key=lambda k: self._depth_key(k))
        for k in order:
            v = self.basis_vector(k)
            if span.contains(v):
                continue
            gens.append(k)
            self._close(span, gens)
        return tuple(gens)

    def _depth_key(self, k):
        if self.quiver is not None:
            return (self.labels[k].count(".") + 1, k)
        return (0, k)

    def _close(self, span, gens):
        L = self._left_mats
        frontier = list(span.vectors())
        while frontier:
            new = []
            for v in frontier:
                for g in gens:
                    w = L[g] @ v
                    if span.add(w):
                        new.append(w)
                    w2 = self._right_mats[g] @ v
                    if span.add(w2):
                        new.append(w2)
            frontier = new

    # radical --------------------------------------------------------------
    @cached_property
    def radical(self) -> Matrix:
        """Columns spanning the Jacobson radical (coefficient vectors)."""
        coeffs = matrix_algebra_radical(self._left_mats, self.field)
        return column_space(coeffs) if coeffs.cols else coeffs

    def radical_basis(self) -> list[Matrix]:
        R = self.radical
        return [R.col(j) for j in range(R.cols)]

    def radical_power(self, k: int) -> Matrix:
        """Columns spanning rad^k."""
        R = self.radical
        cur = R
        L = self._left_mats
        for _ in range(k - 1):
            if cur.cols == 0:
                break
            cols = []
            for j in range(R.cols):
                Lr = self.combination(L, R.col(j).entries())
                cols.append(Lr @ cur)
            cur = column_space(hstack(self.field, cols, rows=self.dim))
        return cur

    def quotient(self, ideal: Matrix) -> "Algebra":
        """Quotient by a two-sided ideal given by spanning columns (ungraded basis)."""
        F, n = self.field, self.dim
        ideal = column_space(ideal) if ideal.cols else ideal
        _, piv = rref(ideal.T()) if ideal.cols else (None, [])
        comp = [j for j in range(n) if j not in set(piv)]
        T = hstack(F, [ideal, _units(F, n, comp)], rows=n)
        Tinv = T.inverse()
        r = ideal.cols
        prods = []
        for a in comp:
            row = []
            for b in comp:
                v = self.multiply(self.basis_vector(a).entries(), self.basis_vector(b).entries())
                c = (Tinv @ Matrix.column(F, v)).entries()[r:]
                row.append(tuple((k, x) for k, x in enumerate(c) if x != 0))
            prods.append(row)
        labels = [self.labels[a] for a in comp]
        return _UngradedAlgebra(F, labels, prods, Tinv.block(r, n, 0, n) @ self.unit())

    def is_semisimple(self) -> bool:
        return self.radical.cols == 0

    def top_vertex_classes(self) -> list[list[int]]:
        """Groups of idempotent positions with isomorphic projectives."""
        rad = self.radical
        coords = _Span(self.field, self.dim)
        for j in range(rad.cols):
            coords.add(rad.col(j))
        s = self.vertex_count
        parent = list(range(s))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i in range(s):
            for j in range(i + 1, s):
                if find(i) == find(j):
                    continue
                if self._equivalent_idempotents(i, j, coords):
                    parent[find(j)] = find(i)
        groups = {}
        for i in range(s):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def _equivalent_idempotents(self, i, j, radspan) -> bool:
        ij = self.block_indices.get((i, j), [])
        ji = self.block_indices.get((j, i), [])
        for a in ij:
            for b in ji:
                v = self.multiply(self.basis_vector(a).entries(), self.basis_vector(b).entries())
                if not radspan.contains(Matrix.column(self.field, v)):
                    return True
        return False

    @cached_property
    def representative_vertices(self) -> tuple[int, ...]:
        return tuple(g[0] for g in self.top_vertex_classes())

    def is_basic(self) -> bool:
        return len(self.representative_vertices) == self.vertex_count


class _UngradedAlgebra(Algebra):
    """Algebra without an idempotent grading (quotients); supports radical tests only."""

    def __init__(self, field, labels, products, unit):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.products = [[tuple(products[i][j]) for j in range(self.dim)] for i in range(self.dim)]
        self.idempotents = ()
        self.grading = ()
        self.name = "quotient"
        self.quiver = None
        self._generators = None
        self._opposite = None
        self._unit = unit

    def unit(self):
        return self._unit


class _Span:
    """Incrementally grown subspace with membership test."""

    def __init__(self, field, n):
        self.field = field
        self.n = n
        self._rows: list[list] = []  # echelon rows
        self._piv: list[int] = []
        self._vecs: list[Matrix] = []

    def _reduce(self, v: list):
        v = list(v)
        for row, p in zip(self._rows, self._piv):
            c = v[p]
            if c != 0:
                for j in range(p, self.n):
                    if row[j] != 0:
                        v[j] -= c * row[j]
        return v

    def contains(self, vec: Matrix) -> bool:
        return all(x == 0 for x in self._reduce(vec.entries()))

    def add(self, vec: Matrix) -> bool:
        v = self._reduce(vec.entries())
        p = next((j for j, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        inv = 1 / v[p]
        v = [x * inv for x in v]
        for row in self._rows:
            c = row[p]
            if c != 0:
                for j in range(p, self.n):
                    if v[j] != 0:
                        row[j] -= c * v[j]
        self._rows.append(v)
        self._piv.append(p)
        self._vecs.append(vec)
        return True

    def vectors(self):
        return list(self._vecs)

    @property
    def dim(self):
        return len(self._rows)


def _units(F, n, idx):
    from .kernel import unit_columns
    return unit_columns(F, n, idx)


# ---------------------------------------------------------------------------
# radical of a matrix algebra


def matrix_algebra_radical(mats: Sequence[Matrix], field: Field) -> Matrix:
    """Coefficient columns spanning the radical of the algebra spanned by ``mats``.

    ``mats`` must be linearly independent and closed under multiplication.
    Characteristic zero (or p larger than the matrix size) uses the kernel of
    the trace form; small p uses Ronyai's iterated generalised trace ideals.
    """
    r = len(mats)
    if r == 0:
        return Matrix.zeros(field, 0, 0)
    n = mats[0].rows
    p = field.characteristic
    if p == 0 or p > n:
        G = [[_trace(mats[i] @ mats[j]) for j in range(r)] for i in range(r)]
        K, _ = nullspace(Matrix.from_rows(field, G))
        return K
    return _ronyai_radical(mats, field, n, p)


def _trace(m: Matrix):
    t = m.field.scalar(0)
    tab = m.table()
    for i in range(m.rows):
        t += tab[i][i]
    return t


def _ronyai_radical(mats, field: PrimeField, n, p):
    r = len(mats)
    # current ideal I_{i-1} as coefficient columns
    current = Matrix.identity(field, r)
    levels = int(math.floor(math.log(n, p) + 1e-9))
    lifts = [flint.fmpz_mat(n, n, [int(x) for x in m.entries()]) if n else None for m in mats]
    for i in range(levels + 1):
        q = p ** i
        cols = current.cols
        if cols == 0:
            break
        elems = []
        for c in range(cols):
            coeffs = [int(x) for x in current.col(c).entries()]
            acc = flint.fmpz_mat(n, n)
            for a, m in zip(coeffs, lifts):
                if a:
                    acc += m * a
            elems.append(acc)
        G = []
        for c in range(cols):
            row = []
            for y in lifts:
                z = elems[c] * y
                t = _fmpz_trace(_fmpz_power_mod(z, q, p ** (i + 1)), n)
                row.append((t // q) % p if q > 1 else t % p)
            G.append(row)
        Gm = Matrix.from_rows(field, G)
        K, _ = nullspace(Gm.T())
        current = current @ K
    return current


def _fmpz_power_mod(z, e, modulus):
    n = z.nrows()
    result = flint.fmpz_mat(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])
    base = _fmpz_mod(z, modulus)
    while e:
        if e & 1:
            result = _fmpz_mod(result * base, modulus)
        base = _fmpz_mod(base * base, modulus)
        e >>= 1
    return result


def _fmpz_mod(z, modulus):
    n, m = z.nrows(), z.ncols()
    return flint.fmpz_mat(n, m, [int(x) % modulus for x in z.entries()])


def _fmpz_trace(z, n):
    return sum(int(z[i, i]) for i in range(n))


# ---------------------------------------------------------------------------
# quiver algebras


def _path_label(names):
    return ".".join(names)


def _reverse_label(label: str) -> str:
    if label.startswith("e") and label[1:].isdigit():
        return label
    return ".".join(reversed(label.split(".")))


def _opposite_quiver(q: QuiverPresentation) -> QuiverPresentation:
    arrows = tuple((n, t, s) for (n, s, t) in q.arrows)
    rels = tuple(tuple((c, tuple(reversed(p))) for c, p in rel) for rel in q.relations)
    return QuiverPresentation(q.vertex_count, arrows, rels, q.nilpotency_bound, q.field)


def enumerate_paths(q: QuiverPresentation, max_len: int) -> list[tuple]:
    """All paths of length ``0..max_len``; vertex paths are ``('e', v)``."""
    out = [("e", v) for v in range(1, q.vertex_count + 1)]
    by_src = {}
    for i, (_, s, t) in enumerate(q.arrows):
        by_src.setdefault(s, []).append(i)
    layer = [((i,), q.arrows[i][2]) for i in range(len(q.arrows))]
    length = 1
    while layer and length <= max_len:
        out.extend(p for p, _ in layer)
        nxt = []
        for p, t in layer:
            for i in by_src.get(t, []):
                nxt.append((p + (i,), q.arrows[i][2]))
        layer = nxt
        length += 1
    return out


def _endpoints(q, path):
    if path[0] == "e":
        return path[1], path[1]
    return q.arrows[path[0]][1], q.arrows[path[-1]][2]


def _concat(q, p1, p2):
    """``p1`` followed by ``p2`` or ``None`` if not composable."""
    s1, t1 = _endpoints(q, p1)
    s2, t2 = _endpoints(q, p2)
    if t1 != s2:
        return None
    if p1[0] == "e":
        return p2
    if p2[0] == "e":
        return p1
    return p1 + p2


def _plen(path):
    return 0 if path[0] == "e" else len(path)


def algebra_from_quiver(q: QuiverPresentation, name: str = "") -> Algebra:
    """Path algebra modulo the relations, with basis of irreducible paths."""
    F = q.field
    N = q.nilpotency_bound
    idx = q.arrow_index()
    rels = []
    for rel in q.relations:
        terms = []
        ends = set()
        for c, names in rel:
            try:
                path = tuple(idx[nm] for nm in names)
            except KeyError as exc:
                raise AlgebraError(f"relation uses unknown arrow {exc.args[0]}") from None
            for a, b in zip(path, path[1:]):
                if q.arrows[a][2] != q.arrows[b][1]:
                    raise AlgebraError(f"relation path {'.'.join(names)} is not composable")
            if len(path) < 2:
                raise AlgebraError("relations must be combinations of paths of length >= 2")
            ends.add((q.arrows[path[0]][1], q.arrows[path[-1]][2]))
            terms.append((F.scalar(c), path))
        if len(ends) > 1:
            raise AlgebraError("relation terms have different endpoints")
        rels.append(terms)

    paths = enumerate_paths(q, N)
    # order: longest (then lexicographically largest) first so pivots are leading paths
    order = sorted(range(len(paths)), key=lambda i: (-_plen(paths[i]), paths[i]), reverse=False)
    col_of = {paths[i]: c for c, i in enumerate(order)}
    ncols = len(order)
    zero = F.scalar(0)
    rows = []
    by_end = {}
    for p in paths:
        s, t = _endpoints(q, p)
        by_end.setdefault(("src", s), []).append(p)
        by_end.setdefault(("tgt", t), []).append(p)
    for terms in rels:
        s = q.arrows[terms[0][1][0]][1]
        t = q.arrows[terms[0][1][-1]][2]
        for left in by_end.get(("tgt", s), []):
            for right in by_end.get(("src", t), []):
                row = {}
                for c, path in terms:
                    full = _concat(q, _concat(q, left, path), right)
                    if _plen(full) > N:
                        continue
                    cc = col_of[full]
                    row[cc] = row.get(cc, zero) + c
                if any(v != 0 for v in row.values()):
                    rows.append(row)
    if rows:
        flat = [zero] * (len(rows) * ncols)
        for r, row in enumerate(rows):
            for cc, v in row.items():
                flat[r * ncols + cc] = v
        R, piv = rref(Matrix.from_entries(F, len(rows), ncols, flat))
    else:
        R, piv = Matrix.zeros(F, 0, ncols), []
    pivset = set(piv)
    # every path of length N must reduce to zero (admissible within the bound)
    for p in paths:
        if _plen(p) == N and col_of[p] not in pivset:
            raise AlgebraError(f"presentation is not admissible within bound {N}: path "
                               f"{_path_label(q.arrows[i][0] for i in p)} survives")
    # rows whose pivot is a length-N path may still involve shorter paths
    Rt = R.table()
    reduce_rows = {}
    for r, pc in enumerate(piv):
        row = Rt[r]
        reduce_rows[pc] = row
        if _plen(paths[order[pc]]) == N and any(row[j] != 0 for j in range(ncols)
                                                 if j != pc and _plen(paths[order[j]]) < N):
            raise AlgebraError("relations force a short path into the ideal of long paths; "
                               "increase the bound")
    basis_paths = [p for p in paths if _plen(p) < N and col_of[p] not in pivset]
    basis_paths.sort(key=lambda p: (_plen(p), p if p[0] != "e" else (p[1],)) if p[0] != "e"
                     else (0, (p[1],)))
    vertex_paths = [("e", v) for v in range(1, q.vertex_count + 1)]
    basis_paths = vertex_paths + [p for p in basis_paths if p[0] != "e"]
    bindex = {p: k for k, p in enumerate(basis_paths)}
    n = len(basis_paths)

    def normal_form(path) -> dict:
        if path is None or _plen(path) >= N:
            return {}
        c = col_of[path]
        if c not in pivset:
            return {bindex[path]: F.scalar(1)}
        row = reduce_rows[c]
        out = {}
        for j in range(ncols):
            v = row[j]
            if v != 0 and j != c:
                pj = paths[order[j]]
                if _plen(pj) < N:
                    k = bindex[pj]
                    out[k] = out.get(k, zero) - v
        return {k: v for k, v in out.items() if v != 0}

    prods = [[() for _ in range(n)] for _ in range(n)]
    for i, pi in enumerate(basis_paths):
        for j, pj in enumerate(basis_paths):
            # b_i * b_j = path pj followed by pi
            nf = normal_form(_concat(q, pj, pi))
            prods[i][j] = tuple(sorted(nf.items()))
    labels = []
    for p in basis_paths:
        if p[0] == "e":
            labels.append(f"e{p[1]}")
        else:
            labels.append(_path_label(q.arrows[i][0] for i in p))
    grading = []
    for p in basis_paths:
        s, t = _endpoints(q, p)
        grading.append((t - 1, s - 1))
    gens = tuple(bindex[(i,)] for i in range(len(q.arrows)) if (i,) in bindex)
    return Algebra(F, labels, prods, tuple(range(q.vertex_count)), grading, name=name, quiver=q,
                   generators=gens)


def path_count_oracle(q: QuiverPresentation) -> int:
    """Dimension of kQ/I by brute force: rank of the path space modulo the ideal.

    Independent of `algebra_from_quiver`: builds the ideal as the span of all
    ``p * r * q`` inside paths of length < bound using exact fractions, then
    counts.
    """
    from fractions import Fraction
    N = q.nilpotency_bound
    idx = q.arrow_index()
    paths = [p for p in enumerate_paths(q, N - 1)]
    pos = {p: i for i, p in enumerate(paths)}
    gens = []
    for rel in q.relations:
        terms = [(Fraction(str(c)), tuple(idx[nm] for nm in names)) for c, names in rel]
        for left in paths:
            for right in paths:
                vec = {}
                for c, path in terms:
                    a = _concat(q, left, path)
                    full = _concat(q, a, right) if a is not None else None
                    if full is None or _plen(full) >= N:
                        continue
                    vec[pos[full]] = vec.get(pos[full], 0) + c
                vec = {k: v for k, v in vec.items() if v != 0}
                if vec:
                    gens.append(vec)
    # Gaussian elimination on sparse dict rows
    pivots = {}
    for v in gens:
        v = dict(v)
        while v:
            p = max(v)
            if p in pivots:
                row = pivots[p]
                c = v[p] / row[p]
                for k, x in row.items():
                    v[k] = v.get(k, 0) - c * x
                    if v[k] == 0:
                        del v[k]
            else:
                pivots[p] = v
                break
    return len(paths) - len(pivots)


# ---------------------------------------------------------------------------
# constructions


def tensor_product(A: Algebra, B: Algebra, name: str = "") -> Algebra:
    """``A (x) B`` with basis ``a_i (x) b_j`` at index ``i * dim B + j``."""
    if A.field != B.field:
        raise AlgebraError("tensor product over different fields")
    nA, nB = A.dim, B.dim
    n = nA * nB
    prods = [[() for _ in range(n)] for _ in range(n)]
    for i1 in range(nA):
        for j1 in range(nA):
            pa = A.products[i1][j1]
            if not pa:
                continue
            for i2 in range(nB):
                for j2 in range(nB):
                    pb = B.products[i2][j2]
                    if not pb:
                        continue
                    out = {}
                    for ka, ca in pa:
                        for kb, cb in pb:
                            k = ka * nB + kb
                            out[k] = out.get(k, 0) + ca * cb
                    prods[i1 * nB + i2][j1 * nB + j2] = tuple(sorted((k, v) for k, v in out.items() if v != 0))
    idem = tuple(a * nB + b for a in A.idempotents for b in B.idempotents)
    sB = B.vertex_count
    grading = []
    for i in range(nA):
        for j in range(nB):
            (s1, t1), (s2, t2) = A.grading[i], B.grading[j]
            grading.append((s1 * sB + s2, t1 * sB + t2))
    labels = [f"{a}|{b}" for a in A.labels for b in B.labels]
    return Algebra(A.field, labels, prods, idem, grading, name=name or f"{A.name}(x){B.name}")


def enveloping(B: Algebra, A: Algebra) -> Algebra:
    """``B (x) A^op``: left modules are (B, A)-bimodules."""
    return tensor_product(B, A.opposite(), name=f"{B.name}-{A.name}-bimod")


def upper_triangular(A: Algebra, name: str = "") -> Algebra:
    """``T_2(A) = [[A, A], [0, A]]`` acting on columns ``(x1; x2)``.

    Basis: ``[11]b`` for all b, then ``[12]b``, then ``[22]b``.  Idempotents
    ``[11]e_i`` come first, then ``[22]e_i``.
    """
    n = A.dim
    F = A.field
    blocks = [(0, 0), (0, 1), (1, 1)]
    N = 3 * n

    def index(block, k):
        return blocks.index(block) * n + k

    prods = [[() for _ in range(N)] for _ in range(N)]
    for bi, (r1, c1) in enumerate(blocks):
        for bj, (r2, c2) in enumerate(blocks):
            if c1 != r2:
                continue
            target = (r1, c2)
            for i in range(n):
                for j in range(n):
                    pa = A.products[i][j]
                    if pa:
                        prods[bi * n + i][bj * n + j] = tuple((index(target, k), c) for k, c in pa)
    s = A.vertex_count
    idem = tuple(index((0, 0), e) for e in A.idempotents) + tuple(index((1, 1), e) for e in A.idempotents)
    grading = []
    for (r, c) in blocks:
        for k in range(n):
            ss, tt = A.grading[k]
            grading.append((r * s + ss, c * s + tt))
    names = {(0, 0): "11", (0, 1): "12", (1, 1): "22"}
    labels = [f"[{names[b]}]{A.labels[k]}" for b in blocks for k in range(n)]
    return Algebra(F, labels, prods, idem, grading, name=name or f"T2({A.name})")


def semisimple(field: Field, count: int) -> Algebra:
    """Product of ``count`` copies of the field."""
    prods = [[((i, 1),) if i == j else () for j in range(count)] for i in range(count)]
    return Algebra(field, [f"e{i+1}" for i in range(count)], prods, tuple(range(count)),
                   [(i, i) for i in range(count)], name=f"k^{count}")


def truncated_polynomial(field: Field = QQ, n: int = 2) -> Algebra:
    """``k[x]/(x^n)`` as a one-loop quiver algebra."""
    q = QuiverPresentation(1, (("x", 1, 1),), ((((1, ("x",) * n)),),), n, field)
    return algebra_from_quiver(q, name=f"k[x]/(x^{n})")


def linear_quiver(field: Field = QQ, n: int = 2) -> Algebra:
    """Path algebra of ``1 -> 2 -> ... -> n`` (hereditary of type A_n)."""
    arrows = tuple((f"a{i}", i, i + 1) for i in range(1, n))
    q = QuiverPresentation(n, arrows, (), n, field)
    return algebra_from_quiver(q, name=f"A{n}")
