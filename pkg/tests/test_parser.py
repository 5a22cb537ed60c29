import pytest
from gmpy2 import mpq
from hypothesis import given, settings

from bispectral.errors import ParseError, ReservedSymbolMisuse, UnboundParameter
from bispectral.exactnum import GaussianRational
from bispectral.parser import (
    ParamEnv,
    Power,
    Product,
    Scalar,
    Sum,
    Symbol,
    parse,
    parse_op,
    parse_scalar,
    print_op,
)
from strategies import ops


def test_precedence():
    t = parse("x + 2*Dx^2")
    assert isinstance(t, Sum)
    assert t.children[0] == Symbol("x")
    assert t.children[1] == Product((Scalar(GaussianRational(2)), Power(Symbol("Dx"), 2)))


def test_scalars():
    assert parse_scalar("-3/4+1/2*i") == GaussianRational(mpq(-3, 4), mpq(1, 2))
    assert parse_scalar("(1+i)^2") == GaussianRational(0, 2)
    assert parse_scalar("s*i", {"s": "2"}) == GaussianRational(0, 2)


def test_unary_minus_binds_to_term():
    assert parse_op("-x^2") == parse_op("(-1)*x^2")
    assert parse_op("-x*Dx - 1") == parse_op("x*Dx + 1") * -1


@pytest.mark.parametrize(
    "text, exc",
    [
        ("x +", ParseError),
        ("x ** 2", ParseError),
        ("(x", ParseError),
        ("x^-1", ParseError),
        ("x^y", ParseError),
        ("t*x", UnboundParameter),
        ("y*Dx", ReservedSymbolMisuse),
        ("x $ 2", ParseError),
        ("", ParseError),
    ],
)
def test_errors(text, exc):
    with pytest.raises(exc):
        parse_op(text)


def test_error_position():
    with pytest.raises(ParseError) as info:
        parse_op("x + * 2")
    assert info.value.position == 4


def test_reserved_parameter_names():
    with pytest.raises(ReservedSymbolMisuse):
        ParamEnv({"x": "1"})
    with pytest.raises(ReservedSymbolMisuse):
        ParamEnv({"i": "1"})


def test_dialects():
    parse("BB*S + X2", "bessel")
    with pytest.raises(ReservedSymbolMisuse):
        parse("x*BB", "bessel")
    with pytest.raises(ReservedSymbolMisuse):
        parse("Dy", "exp")


def test_parameters_substituted():
    op = parse_op("(x^2 - t^2)*Dx^2 + 2*x*Dx + s^2*x^2", env={"t": "2", "s": "3"})
    assert op == parse_op("(x^2 - 4)*Dx^2 + 2*x*Dx + 9*x^2")


def test_division_by_function():
    assert parse_op("(x^2 + 1)/(x)*Dx") == parse_op("x*Dx + (1)/(x)*Dx")
    with pytest.raises(ParseError):
        parse_op("x/Dx")


@pytest.mark.parametrize(
    "text, printed",
    [
        ("Dx*x", "x*Dx + 1"),
        ("(x^2 - 1)*Dx^2 + 2*x*Dx + x^2", "(x^2 - 1)*Dx^2 + 2*x*Dx + x^2"),
        ("-x*Dx - 1", "-x*Dx - 1"),
        ("0*x", "0"),
        ("(1+i)*Dx^3", "(1+i)*Dx^3"),
    ],
)
def test_canonical_print(text, printed):
    assert print_op(parse_op(text)) == printed


@given(ops(max_order=3, rational=True))
@settings(max_examples=100, deadline=None)
def test_print_parse_roundtrip(op):
    assert parse_op(print_op(op)) == op
