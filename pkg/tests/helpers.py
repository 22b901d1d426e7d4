"""Random objects shared by the property tests."""
import random
from pathlib import Path

import cmauslander
from cmauslander.complexes import Complex
from cmauslander.kernel import Matrix, nullspace
from cmauslander.modules import Module, direct_sum, hom_space, standard_projective, zero_module

DATA = Path(cmauslander.__file__).parent / "data"


def data(name):
    return str(DATA / name)


def random_invertible(F, n, rng):
    while True:
        g = Matrix.random(F, n, n, rng)
        if g.is_invertible():
            return g


def random_base_change(x: Module, rng):
    """An isomorphic copy ``y`` of ``x`` and the isomorphism ``g: x -> y``."""
    F = x.field
    rows = [[F.scalar(0)] * x.dim for _ in range(x.dim)]
    for coords in x.vertex_coords:
        if not coords:
            continue
        blk = random_invertible(F, len(coords), rng)
        for a, r in enumerate(coords):
            for b, c in enumerate(coords):
                rows[r][c] = blk[a, b]
    g = Matrix.from_rows(F, rows, x.dim)
    gi = g.inverse()
    y = Module(x.algebra, x.labels, [g @ a @ gi for a in x.action], name=x.name)
    return y, g


def random_sum(pool, rng, max_parts=2, allow_zero=True):
    k = rng.randint(0 if allow_zero else 1, max_parts)
    parts = [rng.choice(pool) for _ in range(k)]
    if not parts:
        return zero_module(pool[0].algebra)
    return parts[0] if len(parts) == 1 else direct_sum(parts)


def projective_pool(A):
    return [standard_projective(A, v) for v in range(A.vertex_count)]


def _random_differential(src, tgt, prev, rng):
    """A random module map ``src -> tgt`` killing the image of ``prev``."""
    F = src.field
    h = hom_space(src, tgt)
    if not h.dim:
        return Matrix.zeros(F, tgt.dim, src.dim)
    if prev is None or prev.is_zero():
        coeffs = [F.random_scalar(rng) for _ in range(h.dim)]
        return h.element(coeffs)
    cols = [(g @ prev).flatten().entries() for g in h.maps]
    M = Matrix.from_rows(F, [list(r) for r in zip(*cols)], h.dim)
    K, _ = nullspace(M)
    if not K.cols:
        return Matrix.zeros(F, tgt.dim, src.dim)
    v = K @ Matrix.column(F, [F.random_scalar(rng) for _ in range(K.cols)])
    return h.element(v.entries())


def random_complex(A, lo, hi, rng, pool, projective_above=None, max_parts=2):
    """Random complex in degrees ``lo..hi``.

    Terms are sums of modules from ``pool``; above ``projective_above`` they are
    sums of standard projectives.
    """
    proj = projective_pool(A)
    terms = {}
    for i in range(lo, hi + 1):
        src = proj if projective_above is not None and i > projective_above else pool
        terms[i] = random_sum(src, rng, max_parts)
    diffs = {}
    prev = None
    for i in range(lo, hi):
        d = _random_differential(terms[i], terms[i + 1], prev, rng)
        diffs[i] = d
        prev = d
    c = Complex(A, terms, diffs)
    c.check()
    return c


def rng_for(seed):
    return random.Random(seed)


def algebra_map_ok(M, L, E):
    """``M`` (columns indexed by the basis of ``L``) is a unital algebra map ``L -> E``."""
    F = L.field
    for i in range(L.dim):
        for j in range(L.dim):
            lhs = [F.scalar(0)] * L.dim
            for k, c in L.products[i][j]:
                lhs[k] += c
            a = (M @ Matrix.column(F, lhs)).entries()
            b = E.multiply(M.col(i).entries(), M.col(j).entries())
            if a != b:
                return False
    return M @ L.unit() == E.unit()


def stably_isomorphic(x, y, seed=0):
    """``x`` and ``y`` agree after discarding projective summands."""
    from cmauslander.modules import decompose, find_isomorphism, is_projective

    xs = [s.module for s in decompose(x, seed) if not is_projective(s.module)]
    ys = [s.module for s in decompose(y, seed) if not is_projective(s.module)]
    if len(xs) != len(ys):
        return False
    left = list(ys)
    for m in xs:
        hit = next((j for j, n in enumerate(left) if find_isomorphism(m, n, seed) is not None), None)
        if hit is None:
            return False
        left.pop(hit)
    return True
