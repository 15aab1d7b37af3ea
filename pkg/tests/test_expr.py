"""Expression grammar and canonical rendering."""

import random
from fractions import Fraction

import pytest

from qcohom.expr import ParseError, parse_poly, render
from qcohom.poly import GENERATOR, INSTANTON, Polynomial, VariableTable

from test_poly import QSC_TABLE, random_poly, random_table


class TestParsing:
    def test_simple_monomials(self):
        assert parse_poly("psi", QSC_TABLE) == Polynomial.variable(QSC_TABLE, "psi")
        assert parse_poly("psi^2", QSC_TABLE) == Polynomial.variable(QSC_TABLE, "psi") ** 2
        p = parse_poly("2/3*psi*psit", QSC_TABLE)
        assert p.coefficient((1, 1, 0, 0)) == Fraction(2, 3)

    def test_precedence_and_parentheses(self):
        a = parse_poly("psi + psit*q1", QSC_TABLE)
        b = parse_poly("psi + (psit*q1)", QSC_TABLE)
        c = parse_poly("(psi + psit)*q1", QSC_TABLE)
        assert a == b
        assert a != c

    def test_unary_minus(self):
        p = parse_poly("-psi^2 + 2/3*psi*psit", QSC_TABLE)
        assert p.coefficient((2, 0, 0, 0)) == -1
        assert p.coefficient((1, 1, 0, 0)) == Fraction(2, 3)
        assert parse_poly("--psi", QSC_TABLE) == Polynomial.variable(QSC_TABLE, "psi")

    def test_rational_literals(self):
        assert parse_poly("7/2", QSC_TABLE) == Polynomial.constant(QSC_TABLE, Fraction(7, 2))
        assert parse_poly("5", QSC_TABLE) == Polynomial.constant(QSC_TABLE, 5)
        assert parse_poly("0", QSC_TABLE).is_zero()

    def test_whitespace_insensitive(self):
        assert parse_poly(" psi ^ 2 + q1 ", QSC_TABLE) == parse_poly("psi^2+q1", QSC_TABLE)

    def test_unknown_variable_position(self):
        with pytest.raises(ParseError) as info:
            parse_poly("psi + foo", QSC_TABLE)
        assert "unknown variable 'foo'" in str(info.value)
        assert info.value.position == 6

    def test_exponent_must_be_literal(self):
        with pytest.raises(ParseError) as info:
            parse_poly("psi^-2", QSC_TABLE)
        assert "exponent" in str(info.value)
        with pytest.raises(ParseError):
            parse_poly("psi^q1", QSC_TABLE)

    def test_no_general_division(self):
        with pytest.raises(ParseError):
            parse_poly("psi/2", QSC_TABLE)
        with pytest.raises(ParseError):
            parse_poly("1/psi", QSC_TABLE)

    def test_zero_denominator(self):
        with pytest.raises(ParseError) as info:
            parse_poly("1/0", QSC_TABLE)
        assert "zero denominator" in str(info.value)

    def test_syntax_errors_carry_position(self):
        for text in ("psi +", "(psi", "psi psit", "*psi", ""):
            with pytest.raises(ParseError) as info:
                parse_poly(text, QSC_TABLE)
            assert info.value.position >= 0

    def test_unexpected_character(self):
        with pytest.raises(ParseError) as info:
            parse_poly("psi $ psit", QSC_TABLE)
        assert info.value.position == 4


class TestRendering:
    def test_canonical_examples(self):
        cases = [
            ("psi^2 + psi*psit - q1", "psi^2 + psi*psit - q1"),
            ("q1 + psi^2", "psi^2 + q1"),
            ("-psi^2 + 2/3*psi*psit", "-psi^2 + 2/3*psi*psit"),
            ("psit*psi", "psi*psit"),
            ("0", "0"),
            ("psi - psi", "0"),
            ("3 - 1", "2"),
            ("-1*psi", "-psi"),
        ]
        for text, expected in cases:
            assert render(parse_poly(text, QSC_TABLE)) == expected

    def test_str_uses_render(self):
        p = parse_poly("psi^2 - q1", QSC_TABLE)
        assert str(p) == "psi^2 - q1"

    def test_parse_render_round_trip_random(self):
        rng = random.Random(37)
        for _ in range(500):
            table = random_table(rng)
            p = random_poly(rng, table)
            assert parse_poly(render(p), table) == p

    def test_render_parse_round_trip_on_canonical_text(self):
        rng = random.Random(41)
        for _ in range(200):
            table = random_table(rng)
            text = render(random_poly(rng, table))
            assert render(parse_poly(text, table)) == text
