import pytest

from cmauslander.algebra import linear_quiver, truncated_polynomial
from cmauslander.complexes import shift
from cmauslander.kernel import QQ, PrimeField, Matrix
from cmauslander.samples import a2_tilting, t2_modules, t2_tilting
from cmauslander.textio import (
    Context,
    FormatError,
    format_algebra,
    format_bimodule_complex,
    format_complex,
    format_matrix,
    format_module,
    load_algebra,
    load_complex,
    load_module,
    modules_equal,
    parse_algebra,
    parse_complex,
    parse_matrix,
    parse_module,
)
from cmauslander.modules import standard_projective
from helpers import data, projective_pool, random_base_change, random_complex, rng_for


def test_matrix_round_trip_with_fractions():
    m = Matrix.from_rows(QQ, [[QQ.scalar(1), QQ.scalar(-2)], [QQ.scalar(0), QQ.scalar(3) / QQ.scalar(4)]], 2)
    text = format_matrix(m)
    assert text == "1 -2; 0 3/4"
    assert parse_matrix(QQ, text) == m
    assert parse_matrix(QQ, format_matrix(m, shape=True)) == m


def test_empty_matrix_needs_a_shape():
    z = parse_matrix(QQ, "0x3")
    assert (z.rows, z.cols) == (0, 3)
    with pytest.raises(FormatError):
        parse_matrix(QQ, "-")
    assert parse_matrix(QQ, "-", 2, 0).rows == 2


def test_bad_matrices():
    with pytest.raises(FormatError):
        parse_matrix(QQ, "1 2; 3")
    with pytest.raises(FormatError):
        parse_matrix(QQ, "1 x")
    with pytest.raises(FormatError):
        parse_matrix(QQ, "2x2 1 0; 0 1; 1 1")


def test_prime_field_scalars_reduce():
    F = PrimeField(5)
    m = parse_matrix(F, "7 -1; 1/2 0")
    assert format_matrix(m) == "2 4; 3 0"


def test_quiver_algebra_round_trip():
    A = load_algebra(data("kx2.alg"))
    assert A.dim == 2
    B = parse_algebra(format_algebra(A))
    assert B == A


def test_table_algebra_round_trip():
    A = linear_quiver(QQ, 3)
    text = format_algebra(A, table=True)
    assert "table" in text
    assert parse_algebra(text) == A


def test_constructions_and_field_override():
    A = parse_algebra("construct truncated-polynomial 3\n")
    assert A == truncated_polynomial(QQ, 3)
    F = PrimeField(3)
    B = parse_algebra("construct linear 2\n", Context(field=F))
    assert B.field == F


def test_comments_are_ignored():
    text = "# a comment\nfield Q  # trailing\nvertices 1\narrow x 1 1\nrelation x.x.x\nbound 3\n"
    assert parse_algebra(text).dim == 3


def test_errors_name_the_line():
    with pytest.raises(FormatError, match=":3:"):
        parse_algebra("vertices 1\narrow x 1 1\nwhatever 2\nbound 2\n")
    with pytest.raises(FormatError, match="missing 'bound'"):
        parse_algebra("vertices 1\narrow x 1 1\n")


def test_non_associative_table_rejected():
    # x y = x while y y = 0, so (x y) y differs from x (y y)
    unit = "product 1 1 = 1*1\nproduct 1 2 = 1*2\nproduct 2 1 = 1*2\nproduct 1 3 = 1*3\nproduct 3 1 = 1*3\n"
    text = "table 3\nbasis e x y\nidempotents 1\n" + unit + "product 2 3 = 1*2\n"
    with pytest.raises(FormatError):
        parse_algebra(text)


def test_unreadable_reference_reported():
    with pytest.raises(FormatError, match="cannot read"):
        parse_module("module over nowhere.alg\ndims 1\n")


def test_data_modules_match_samples():
    T, mods = t2_modules()
    for k, m in enumerate(mods, 1):
        loaded = load_module(data(f"t2_M{k}.mod"))
        assert modules_equal(loaded, m)


def test_module_round_trip_quiver_and_labels():
    T, mods = t2_modules()
    rng = rng_for(3)
    for m in mods:
        for y in (m, random_base_change(m, rng)[0]):
            text = format_module(y, "t2.alg")
            back = parse_module(text, algebra=T)
            assert modules_equal(back, y)


def test_projective_modules_use_short_form():
    A = linear_quiver(QQ, 2)
    P = standard_projective(A, 1)
    text = format_module(P)
    assert "projective 2" in text
    assert modules_equal(parse_module(text, algebra=A), P)


def test_complex_round_trip():
    A = linear_quiver(QQ, 3)
    rng = rng_for(7)
    for _ in range(5):
        c = random_complex(A, -1, 1, rng, projective_pool(A))
        back = parse_complex(format_complex(c), algebra=A)
        assert back.degrees() == c.degrees() or back.is_zero == c.is_zero
        for i in c.degrees():
            assert back.dim(i) == c.dim(i)
            if i + 1 in c.terms:
                assert back.diff(i) == c.diff(i)


def test_data_complex_and_shift():
    c = load_complex(data("a2_tilting.cpx"))
    s = shift(c, 1)
    back = parse_complex(format_complex(s), algebra=c.algebra)
    assert back.degrees() == s.degrees()


def test_bimodule_complex_round_trip():
    for s in (a2_tilting(), t2_tilting()):
        d = s.delta
        back = parse_complex(format_bimodule_complex(d))
        assert back.left == d.left and back.right == d.right
        for i in d.complex.degrees():
            assert back.complex.dim(i) == d.complex.dim(i)
        assert back.certified


def test_data_bimodule_files_load():
    for name in ("kx2_identity.bcpx", "a2_tilting.bcpx", "t2_identity.bcpx", "t2_tilting.bcpx"):
        d = load_complex(data(name))
        assert d.certified
