"""Independent oracles written with Fractions only (no flint, no package code)."""
from fractions import Fraction


def _paths(vertices, arrows, max_len):
    """Paths grouped by ``(start, end, length)``; trivial paths are empty tuples."""
    groups = {}
    layer = [(v, v, ()) for v in range(1, vertices + 1)]
    for n in range(max_len + 1):
        for s, t, w in layer:
            groups.setdefault((s, t, n), []).append(w)
        layer = [(s, u, w + (a,)) for s, t, w in layer for a, src, u in arrows if src == t]
    return groups


def _rank(rows):
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        rows[rank] = [x / p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                c = rows[r][col]
                rows[r] = [x - c * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def graded_quotient(vertices, arrows, relations, max_len):
    """``dim e_s (kQ/I)_n e_t`` for every ``(s, t, n)`` with ``n <= max_len``.

    ``arrows`` are ``(name, source, target)`` and ``relations`` are lists of
    ``(coefficient, "a.b.c")`` terms of equal length, read left to right.
    """
    groups = _paths(vertices, arrows, max_len)
    ends = {}
    for arrow in arrows:
        ends[arrow[0]] = (arrow[1], arrow[2])
    rels = []
    for rel in relations:
        terms = [(Fraction(c), tuple(w.split("."))) for c, w in rel]
        lens = {len(w) for _, w in terms}
        if len(lens) != 1:
            raise ValueError("oracle needs homogeneous relations")
        first = terms[0][1]
        rels.append((ends[first[0]][0], ends[first[-1]][1], lens.pop(), terms))
    out = {}
    for (s, t, n), words in groups.items():
        index = {w: k for k, w in enumerate(words)}
        gens = []
        for rs, rt, ln, terms in rels:
            for a in range(0, n - ln + 1):
                for left in groups.get((s, rs, a), []):
                    for right in groups.get((rt, t, n - ln - a), []):
                        vec = [Fraction(0)] * len(words)
                        for c, w in terms:
                            vec[index[left + w + right]] += c
                        gens.append(vec)
        out[(s, t, n)] = len(words) - (_rank(gens) if gens else 0)
    return out


def quotient_dimension(vertices, arrows, relations, bound):
    """``(dim kQ/I, leftover)`` where ``leftover`` is the dimension in length ``bound + 1``.

    A zero leftover certifies that every path longer than ``bound`` lies in the ideal.
    """
    g = graded_quotient(vertices, arrows, relations, bound + 1)
    dim = sum(v for (s, t, n), v in g.items() if n <= bound)
    top = sum(v for (s, t, n), v in g.items() if n == bound + 1)
    return dim, top


def cartan_by_paths(vertices, arrows, relations, bound):
    g = graded_quotient(vertices, arrows, relations, bound)
    out = {(s, t): 0 for s in range(1, vertices + 1) for t in range(1, vertices + 1)}
    for (s, t, n), v in g.items():
        out[(s, t)] += v
    return out


def hom_dimension(x_action, y_action):
    """``dim Hom(X, Y)`` from action matrices (lists of rows) by solving ``Y_a F = F X_a`` directly."""
    n = len(x_action[0]) if x_action and x_action[0] else 0
    m = len(y_action[0]) if y_action and y_action[0] else 0
    if not n or not m:
        return 0
    rows = []
    # unknown F[i][j] at column i * n + j
    for xa, ya in zip(x_action, y_action):
        for i in range(m):
            for j in range(n):
                row = [Fraction(0)] * (m * n)
                for k in range(m):
                    row[k * n + j] += Fraction(ya[i][k])
                for k in range(n):
                    row[i * n + k] -= Fraction(xa[k][j])
                rows.append(row)
    return m * n - _rank(rows)
