"""Regenerate the text files shipped in ``cmauslander/data`` from the samples."""
import pathlib

from cmauslander.complexes import ChainMap, Complex, cone, direct_sum_complexes
from cmauslander.modules import hom_space, standard_projective
from cmauslander.samples import a2_tilting, kx_identity, t2_identity, t2_modules, t2_tilting
from cmauslander.textio import format_algebra, format_bimodule_complex, format_complex, format_module

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "cmauslander" / "data"

EIGHT_ARROWS = """\
# quiver with relations read off the AR quiver of the five Gorenstein projectives
name eight-arrows
vertices 5
arrow y 1 2
arrow x 2 1
arrow v 1 3
arrow u 2 4
arrow alpha 3 4
arrow z 4 1
arrow beta 4 5
arrow gamma 5 3
relation x.y
relation v.alpha - y.u
relation alpha.z
relation alpha.beta.gamma
bound 8
"""

CORRECTED = """\
# the same five vertices with the arrow x dropped and the mesh at vertex 1 added
name corrected
vertices 5
arrow y 1 2
arrow v 1 3
arrow u 2 4
arrow al 3 4
arrow z 4 1
arrow be 4 5
arrow ga 5 3
relation v.al - y.u
relation al.z
relation al.be.ga
relation z.v - be.ga
bound 10
"""


def write(name, text):
    (OUT / name).write_text(text)
    print("wrote", name)


def main():
    s = kx_identity(2)
    write("kx2.alg", format_algebra(s.algebra))
    for m in s.gproj:
        write(f"kx2_{m.name}.mod", format_module(m, "kx2.alg"))
    write("kx2_identity.bcpx", format_bimodule_complex(s.delta, "kx2.alg", "kx2.alg"))

    s = a2_tilting()
    A = s.algebra
    write("a2.alg", format_algebra(A))
    for v, m in enumerate(s.gproj):
        write(f"a2_P{v + 1}.mod", format_module(m.renamed(f"P{v + 1}"), "a2.alg"))
    write("a2_tilting_end.alg", format_algebra(s.delta.left, table=True))
    write("a2_tilting.bcpx", format_bimodule_complex(s.delta, "a2_tilting_end.alg", "a2.alg"))
    # P1 + cone(P2 -> P1): a projective tilting complex with the simple S1 as second summand
    P1, P2 = standard_projective(A, 0), standard_projective(A, 1)
    f = hom_space(P2, P1).maps[0]
    c2 = cone(ChainMap(Complex(A, {0: P2}), Complex(A, {0: P1}), {0: f})).complex
    t = direct_sum_complexes([Complex(A, {0: P1}), c2], name="T").complex
    write("a2_tilting.cpx", format_complex(t, "a2.alg", inline=False))

    T, mods = t2_modules()
    write("t2.alg", "name T2\nconstruct triangular kx2.alg\n")
    for m in mods:
        write(f"t2_{m.name}.mod", format_module(m, "t2.alg"))
    write("t2_identity.bcpx", format_bimodule_complex(t2_identity().delta, "t2.alg", "t2.alg"))
    d = t2_tilting().delta
    write("t2_tilting_end.alg", format_algebra(d.left, table=True))
    write("t2_tilting.bcpx", format_bimodule_complex(d, "t2_tilting_end.alg", "t2.alg"))
    write("t2_auslander_eight_arrows.alg", EIGHT_ARROWS)
    write("t2_auslander_corrected.alg", CORRECTED)


if __name__ == "__main__":
    main()
