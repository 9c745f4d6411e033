"""Unit tests for parsing and printing of presentations, forms and assignments."""

import fractions
import pathlib
import tempfile
import unittest

from pklab.coeffs import ParamKind, ScalarField
from pklab.errors import DimensionMismatch, ParseError, UnknownParameter
from pklab.exterior import ExteriorAlgebra
from pklab.parse import (
    load_presentation, parse_assignment, parse_degree, parse_form, parse_locus, parse_names,
    parse_params, parse_presentation, parse_range, parse_scalar)
from pklab.unparse import unparse
from .examples import CATALOG_IDS, catalog_presentation

ECCCUS_T = """# deformed ecccus
label ecccus-t
dim 3
param t complex
d w3 = w1^w2~ - t*w2^w1~
"""


class Tests(unittest.TestCase):

    def test_presentation_headers(self):
        presentation = parse_presentation(ECCCUS_T)
        self.assertEqual(presentation.label, 'ecccus-t')
        self.assertEqual(presentation.n, 3)
        self.assertEqual(presentation.field.symbols, ('t', 'tbar'))
        algebra = presentation.algebra
        self.assertFalse(presentation.d_omega[0])
        self.assertFalse(presentation.d_omega[1])
        expected = (algebra.omega(1) ^ algebra.omega_bar(2)) \
            - (algebra.omega(2) ^ algebra.omega_bar(1)).scale(presentation.field.gen('t'))
        self.assertEqual(presentation.d_omega[2], expected)

    def test_locus_header(self):
        presentation = parse_presentation(
            'dim 3\nparam t complex\nlocus tbar = -t\nd w3 = w1^w2~ - tbar*w2^w1~\n')
        field = presentation.field
        t = field.gen('t')
        self.assertEqual(field.conj(t), -t)
        algebra = presentation.algebra
        self.assertEqual(presentation.d_omega[2], (algebra.omega(1) ^ algebra.omega_bar(2))
                         + (algebra.omega(2) ^ algebra.omega_bar(1)).scale(t))

    def test_real_and_partnered_params(self):
        presentation = parse_presentation('dim 2\nparam r real\nparam t complex s\n'
                                          'd w2 = r*w1^w1~ + t*w1^w1~\n')
        self.assertEqual(presentation.field.symbols, ('r', 't', 's'))
        self.assertEqual(presentation.field.params[0].kind, ParamKind.REAL)

    def test_twist_and_character(self):
        presentation = catalog_presentation('nakamura')
        algebra = presentation.algebra
        self.assertEqual(presentation.twist, algebra.omega(1) - algebra.omega_bar(1))
        form = parse_form(algebra, 'f^-1*w2 + f*w3')
        self.assertEqual(form.weights, {-1, 1})
        self.assertEqual(form.weight_component(-1),
                         algebra.twist_character(-1) ^ algebra.omega(2))

    def test_tilde_and_bar_spellings(self):
        algebra = ExteriorAlgebra(2, ScalarField())
        self.assertEqual(parse_form(algebra, 'w1~^w2'), parse_form(algebra, 'wb1*w2'))
        self.assertEqual(parse_form(algebra, 'w1^w1~'), algebra.omega(1) ^ algebra.omega_bar(1))

    def test_scalars(self):
        field = ScalarField()
        self.assertEqual(parse_scalar(field, '1/2 + I'), field.rational(1, 2) + field.i)
        self.assertEqual(parse_scalar(field, '(1 + I)^2'), 2 * field.i)
        self.assertEqual(parse_scalar(field, '0.25'), field.rational(1, 4))
        with self.assertRaises(ParseError):
            parse_scalar(field, 'w1')

    def test_errors_carry_location(self):
        algebra = ExteriorAlgebra(3, ScalarField())
        with self.assertRaises(UnknownParameter) as context:
            parse_form(algebra, 'w1 + t*w2', 3)
        self.assertEqual(context.exception.line, 3)
        self.assertEqual(context.exception.column, 6)
        with self.assertRaises(UnknownParameter) as context:
            parse_form(algebra, 'w1~ + q')
        self.assertEqual(context.exception.column, 7)
        with self.assertRaises(DimensionMismatch):
            parse_form(algebra, 'w4')
        with self.assertRaises(ParseError) as context:
            parse_form(algebra, 'w1 +* w2', 5)
        self.assertEqual(context.exception.line, 5)
        self.assertIn('line 5', str(context.exception))

    def test_presentation_errors(self):
        cases = {
            'd w1 = 0\n': ParseError,
            'dim 2\ndim 3\n': ParseError,
            'dim 0\n': DimensionMismatch,
            'dim x\n': ParseError,
            'dim 2\nd w3 = w1^w2\n': DimensionMismatch,
            'dim 2\nd w2 = w1^w1~\nd w2 = 0\n': ParseError,
            'dim 2\nd w2 = w1^w1~\nlabel late\n': ParseError,
            'dim 2\nd w2 = t*w1^w1~\n': UnknownParameter,
            'dim 2\ncolour red\n': ParseError,
            'dim 2\ntwist mu = w1\n': ParseError,
            'dim 2\nparam I complex\n': ParseError,
            '': ParseError}
        for text, error in cases.items():
            with self.subTest(text=text):
                with self.assertRaises(error):
                    parse_presentation(text)

    def test_equation_line_numbers(self):
        with self.assertRaises(UnknownParameter) as context:
            parse_presentation('# header\ndim 2\n\nd w2 = s*w1^w1~\n')
        self.assertEqual(context.exception.line, 4)

    def test_assignment_and_locus(self):
        field = catalog_presentation('ecccus-t').field
        assignment = parse_assignment(field, 't=1/2')
        self.assertEqual(assignment.values['tbar'], assignment.values['t'])
        self.assertTrue(assignment.target.is_constant_field)
        assignment = parse_assignment(field, ['t=(1+I)/2'])
        self.assertEqual(assignment.values['tbar'], field.rational(1, 2) - field.i / 2)
        locus = parse_locus(field, 'tbar=-t')
        self.assertEqual(locus.target.conj(locus.target.gen('t')), -locus.target.gen('t'))
        with self.assertRaises(ParseError):
            parse_assignment(field, 't=1,t=2')
        with self.assertRaises(ParseError):
            parse_assignment(field, 't')
        with self.assertRaises(UnknownParameter):
            parse_assignment(field, 's=1')

    def test_names_degrees_and_ranges(self):
        self.assertEqual(parse_names(['r=1,s=-1', 'u=(1,2)']), ['r', 's', 'u'])
        with self.assertRaises(ParseError):
            parse_names('r')
        self.assertEqual(parse_degree('2'), 2)
        self.assertEqual(parse_degree('1, 1'), (1, 1))
        for text in ('1,1,1', 'p,q', ''):
            with self.subTest(text=text):
                with self.assertRaises(ParseError):
                    parse_degree(text)
        half = fractions.Fraction(1, 2)
        self.assertEqual(parse_range('0:1:1/2'), [0, half, 1])
        self.assertEqual(parse_range('0:2/3:1/2'), [0, half])
        self.assertEqual(parse_range('-1/2'), [-half])
        self.assertEqual(parse_range('1:0:1'), [])
        for text in ('0:1:0', '0:1:-1', '0:1', 'a:b:c', '0:1:1:1'):
            with self.subTest(text=text):
                with self.assertRaises(ParseError):
                    parse_range(text)

    def test_params(self):
        params = parse_params(['r:real', 't', 'u:complex:v'])
        self.assertEqual([param.symbols for param in params], [('r',), ('t', 'tbar'), ('u', 'v')])
        with self.assertRaises(ParseError):
            parse_params(['r:imaginary'])
        with self.assertRaises(ParseError):
            parse_params(['a:b:c:d'])

    def test_unparse_form(self):
        algebra = ExteriorAlgebra(3, ScalarField())
        self.assertEqual(unparse(algebra.zero), '0')
        self.assertEqual(unparse(-(algebra.omega(1) ^ algebra.omega_bar(2))), '-w1^w2~')
        form = parse_form(algebra, 'I*w1^w1~ + (1 + I)*w2^w3~')
        self.assertEqual(parse_form(algebra, unparse(form)), form)

    def test_unparse_catalog(self):
        for id_ in CATALOG_IDS:
            presentation = catalog_presentation(id_)
            with self.subTest(id=id_):
                self.assertEqual(parse_presentation(unparse(presentation)), presentation)

    def test_load_presentation(self):
        with tempfile.TemporaryDirectory() as directory:
            path = pathlib.Path(directory, 'unnamed.eqs')
            path.write_text('dim 2\nd w2 = w1^w1~\n', encoding='utf-8')
            presentation = load_presentation(path)
        self.assertEqual(presentation.label, 'unnamed')
        self.assertEqual(presentation.n, 2)
