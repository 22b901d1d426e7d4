"""Small worked samples shared by the tests, the data files and the demos."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, linear_quiver, truncated_polynomial, upper_triangular
from .bimodules import BimoduleComplex, bimodule_from_tilting_module, identity_bimodule
from .kernel import QQ, Field, Matrix
from .modules import (
    Module,
    hom_space,
    quotient,
    simple_module,
    standard_projective,
    triangular_module,
    zero_module,
)


@dataclass
class Sample:
    name: str
    algebra: Algebra
    gproj: list  # complete list of indecomposable Gorenstein projectives
    delta: BimoduleComplex
    tilting: list | None = None  # summands of the tilting module behind delta, if any


def uniserial_modules(A: Algebra) -> list[Module]:
    """``k[x]/(x^j)`` for ``j = n, ..., 1`` over ``k[x]/(x^n)`` (every indecomposable)."""
    cur = standard_projective(A, 0)
    out = []
    while cur.dim:
        out.append(cur.renamed(f"U{cur.dim}"))
        cur, _ = quotient(cur, _socle(cur))
    return out


def _socle(x: Module) -> Matrix:
    from .kernel import intersect, nullspace

    F = x.field
    span = Matrix.identity(F, x.dim)
    for k in range(x.algebra.dim):
        if k in x.algebra.idempotents:
            continue
        K, _ = nullspace(x.action[k])
        span = intersect(span, K)
    return span


def t2_modules(field: Field = QQ) -> tuple[Algebra, list[Module]]:
    """``T_2(k[x]/(x^2))`` with its five indecomposable Gorenstein projectives ``M1, ..., M5``."""
    R = truncated_polynomial(field, 2)
    T = upper_triangular(R)
    P = standard_projective(R, 0)
    S = simple_module(R, 0)
    Z = zero_module(R)
    F = field
    inc = hom_space(S, P).maps[0]
    mods = [
        triangular_module(T, S, Z, Matrix.zeros(F, 1, 0), "M1"),
        triangular_module(T, P, Z, Matrix.zeros(F, 2, 0), "M2"),
        triangular_module(T, P, P, Matrix.identity(F, 2), "M3"),
        triangular_module(T, S, S, Matrix.identity(F, 1), "M4"),
        triangular_module(T, P, S, inc, "M5"),
    ]
    return T, mods


def t2_tilting_summands(T: Algebra) -> list[Module]:
    """``(P; P)`` and ``(0; P)``: the reflection at the first vertex, tensored with ``k[x]/(x^2)``."""
    F = T.field
    R = truncated_polynomial(F, 2)
    P = standard_projective(R, 0)
    Z = zero_module(R)
    return [triangular_module(T, P, P, Matrix.identity(F, 2), "T1"),
            triangular_module(T, Z, P, Matrix.zeros(F, 0, 2), "T2")]


def kx_identity(n: int = 2, field: Field = QQ) -> Sample:
    A = truncated_polynomial(field, n)
    return Sample(f"k[x]/(x^{n}) identity", A, uniserial_modules(A), identity_bimodule(A))


def a2_tilting(field: Field = QQ) -> Sample:
    A = linear_quiver(field, 2)
    P1, P2 = standard_projective(A, 0), standard_projective(A, 1)
    T = [P1, simple_module(A, 0)]
    delta, _, _ = bimodule_from_tilting_module(A, T)
    return Sample("A2 tilting", A, [P1, P2], delta, T)


def a2_identity(field: Field = QQ) -> Sample:
    A = linear_quiver(field, 2)
    return Sample("A2 identity", A, [standard_projective(A, 0), standard_projective(A, 1)], identity_bimodule(A))


def t2_identity(field: Field = QQ) -> Sample:
    T, mods = t2_modules(field)
    return Sample("T2 identity", T, mods, identity_bimodule(T))


def t2_tilting(field: Field = QQ) -> Sample:
    T, mods = t2_modules(field)
    summ = t2_tilting_summands(T)
    delta, _, _ = bimodule_from_tilting_module(T, summ)
    return Sample("T2 tilting", T, mods, delta, summ)


def corpus(field: Field = QQ) -> list[Sample]:
    """The sample corpus used by the property suites."""
    return [kx_identity(2, field), kx_identity(3, field), a2_identity(field), a2_tilting(field),
            t2_identity(field), t2_tilting(field)]
