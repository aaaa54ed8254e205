from fractions import Fraction

import pytest

from astgen import random_asts
from qaxiom.errors import (
    DuplicatePair, ExpressionSyntaxError, NonInvertible, NonLinearSubstitution, NotCentral,
    ParseError, UnknownGenerator, UnknownSymbol,
)
from qaxiom.frontend import (
    Bracket, GeneratorRef, Negation, Power, Product, Rational, Sum, load_algebra,
    load_substitution, lower, parse_algebra_file, parse_expression, parse_substitution_file,
    to_text,
)
from qaxiom.symalg import (
    HBAR, I, Coefficient, NCPolynomial, gen, heisenberg, magnetic2, momentum_from_field,
)

MAG = magnetic2()


def test_bracket():
    assert parse_expression("[P1,Q1]") == Bracket(GeneratorRef("P1"), GeneratorRef("Q1"))


def test_sum_of_products():
    ast = parse_expression("(1/2)*P1^2 + i*hbar*Q2")
    assert isinstance(ast, Sum) and len(ast.terms) == 2
    first, second = ast.terms
    assert first == Product((Rational(Fraction(1, 2)), Power(GeneratorRef("P1"), 2)))
    assert isinstance(second, Product) and len(second.factors) == 3


def test_unbalanced_bracket_position():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression("[P1,Q1")
    err = info.value
    # the end of the 6-character input is position 7
    assert err.position == 7
    assert "]" in err.expected
    assert "position 7" in str(err)


@pytest.mark.parametrize("text,pos", [("P1 +", 5), ("P1 ** Q1", 5), ("3 $ 4", 3), ("P1^x", 4),
                                      ("[P1 Q1]", 5), ("", 1), ("(P1", 4), ("P1)", 3)])
def test_error_positions(text, pos):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression(text)
    assert info.value.position == pos


def test_precedence():
    assert parse_expression("-P1^2") == Negation(Power(GeneratorRef("P1"), 2))
    assert parse_expression("P1 - Q1*Q2") == Sum((GeneratorRef("P1"), Negation(
        Product((GeneratorRef("Q1"), GeneratorRef("Q2"))))))
    assert parse_expression("  P1\t*Q1 ") == parse_expression("P1*Q1")


def test_lowering():
    p = lower(parse_expression("[P1,P2]"), MAG)
    P1, P2 = (NCPolynomial.generator(gen(x)) for x in ("P1", "P2"))
    assert p == P1 * P2 - P2 * P1
    c = lower(parse_expression("-i*eps12*hbar*(e*B)^-1"), MAG)
    assert c == NCPolynomial.constant(I * HBAR * (Coefficient.const("e") * Coefficient.const("B")).inverse())
    assert lower(parse_expression("eps12"), magnetic2(+1)) == NCPolynomial.constant(Coefficient.scalar(1))


def test_lowering_errors():
    with pytest.raises(UnknownSymbol):
        lower(parse_expression("zeta*P1"), MAG)
    with pytest.raises(UnknownGenerator):
        lower(parse_expression("P3"), MAG)
    with pytest.raises(NonInvertible):
        lower(parse_expression("P1^-1"), MAG)
    with pytest.raises(NonInvertible):
        lower(parse_expression("(hbar + e)^-1"), MAG)


def test_round_trip_random():
    for ast in random_asts(11, 500):
        text = to_text(ast)
        again = parse_expression(text)
        assert lower(again, MAG) == lower(ast, MAG), text
        assert to_text(again) == text


def test_round_trip_is_structural_for_parsed_trees():
    for ast in random_asts(12, 200):
        parsed = parse_expression(to_text(ast))
        assert parse_expression(to_text(parsed)) == parsed


# files

MAG_FILE = """\
# magnetic algebra, written out by hand
k = 2
order = Q1 Q2 P1 P2
epsilon12 = -1
comm P1 Q1 = -i*hbar
comm P2 Q2 = -i*hbar
comm P1 Q2 = 0
comm P2 Q1 = 0
comm P1 P2 = i*eps12*hbar*e*B
comm Q1 Q2 = -i*eps12*hbar*(e*B)^-1
"""


def test_algebra_file_matches_preset():
    a = parse_algebra_file(MAG_FILE)
    assert a.table == MAG.table
    assert a.order == MAG.order and a.epsilon12 == -1


def test_algebra_file_epsilon_override():
    a = parse_algebra_file(MAG_FILE, epsilon12=1)
    assert a.table == magnetic2(1).table


def test_duplicate_pair_line():
    text = "comm P1 Q1 = -i*hbar\ncomm Q2 P2 = -i*hbar\n\ncomm Q1 P1 = i*hbar\n"
    with pytest.raises(DuplicatePair) as info:
        parse_algebra_file(text)
    assert info.value.line == 4


def test_non_central_and_unknown():
    with pytest.raises(NotCentral) as info:
        parse_algebra_file("k = 2\ncomm Q1 Q2 = Q1\n")
    assert info.value.line == 2
    with pytest.raises(UnknownSymbol):
        parse_algebra_file("comm Q1 Q2 = theta\n")
    a = parse_algebra_file("const theta\ncomm Q1 Q2 = i*theta\n")
    assert a.bracket(gen("Q1"), gen("Q2")) == I * Coefficient.const("theta")


@pytest.mark.parametrize("text,line", [("k = two\n", 1), ("\n\nfoo = 1\n", 3),
                                       ("comm P1 = 1\n", 1), ("epsilon12 = 2\n", 1),
                                       ("order = Q1 Q2 P1\n", 1), ("comm P1 Q1 = -i*\n", 1)])
def test_parse_errors_carry_lines(text, line):
    with pytest.raises(ParseError) as info:
        parse_algebra_file(text)
    assert info.value.line == line


def test_presets_by_name():
    assert load_algebra("heisenberg2").table == heisenberg(2).table
    assert load_algebra("magnetic2").table == MAG.table
    with pytest.raises(UnknownSymbol):
        load_algebra("no-such-preset-or-file")


def test_substitution_file():
    s = parse_substitution_file("P1 -> -e*B*Q2  # eq5\nP2 -> e*B*Q1\n", MAG)
    ref = momentum_from_field(-1)
    for g in (gen("P1"), gen("P2"), gen("Q1")):
        assert s.image(g) == ref.image(g)
    with pytest.raises(NonLinearSubstitution):
        parse_substitution_file("P1 -> Q1*Q2\n", MAG)
    with pytest.raises(ParseError) as info:
        parse_substitution_file("P1 -> Q1\nP1 -> Q2\n")
    assert info.value.line == 2


def test_substitution_presets():
    assert load_substitution("preset:eq5", MAG).image(gen("P1")) == momentum_from_field(-1).image(gen("P1"))
    with pytest.raises(UnknownSymbol):
        load_substitution("preset:nope")


def test_files_from_disk(tmp_path):
    f = tmp_path / "mag.alg"
    f.write_text(MAG_FILE, encoding="utf-8")
    assert load_algebra(str(f)).table == MAG.table
    s = tmp_path / "eq5.sub"
    s.write_text("P1 -> -e*B*Q2\nP2 -> e*B*Q1\n", encoding="utf-8")
    assert load_substitution(str(s), MAG).image(gen("P2")) == momentum_from_field(-1).image(gen("P2"))
