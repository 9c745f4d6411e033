"""Unit tests for deformations by a change of (1,0) coframe."""

import unittest

from pklab.deform import CoframeSubstitution, compare, deform, transport
from pklab.errors import DimensionMismatch, NotIntegrable, NotInvertible, ParseError
from pklab.parse import parse_form, parse_params
from .examples import catalog_presentation

DEFORMATIONS = (
    ('ecccus', 'h3 = w3 + t*w3~', 'ecccus-t'),
    ('nakamura', 'h1 = w1 - t*w1~', 'nakamura-t'),
    ('eleccion', 'h2 = w2 - t*w1~', 'eleccion-t'))


def substitution(id_: str, *texts: str, params=('t:complex',)) -> CoframeSubstitution:
    return CoframeSubstitution.parse(catalog_presentation(id_), texts, parse_params(params))


class Tests(unittest.TestCase):

    def test_catalog_deformations(self):
        for base, text, expected in DEFORMATIONS:
            with self.subTest(base=base, sub=text):
                deformed = deform(catalog_presentation(base), substitution(base, text))
                comparison = compare(deformed, catalog_presentation(expected))
                self.assertTrue(comparison.equal, msg=comparison.diff)
                self.assertTrue(deformed.validate().ok)

    def test_transport(self):
        sub = substitution('ecccus', 'h3 = w3 + t*w3~')
        algebra = sub.presentation.algebra
        self.assertEqual(transport(catalog_presentation('ecccus').algebra.omega(3), sub),
                         parse_form(algebra, '(w3 - t*w3~)/(1 - t*tbar)'))
        self.assertEqual(transport(algebra.omega(1), sub), algebra.omega(1))

    def test_inverse(self):
        sub = substitution('ecccus', 'h3 = w3 + t*w3~')
        inverse = sub.inverse()
        self.assertEqual(inverse.forms[2],
                         parse_form(sub.presentation.algebra, '(w3 - t*w3~)/(1 - t*tbar)'))
        self.assertEqual(inverse.inverse().forms, sub.forms)

    def test_dbar_closed_pieces(self):
        for base, text, _ in DEFORMATIONS[::2]:
            with self.subTest(base=base):
                pieces = substitution(base, text).dbar_closed_pieces()
                self.assertTrue(all(pieces.values()))
                self.assertEqual(sorted(pieces), list(range(1, catalog_presentation(base).n + 1)))

    def test_identity(self):
        presentation = catalog_presentation('X-gen-ecus')
        identity = CoframeSubstitution.identity(presentation)
        self.assertTrue(identity.is_identity())
        self.assertEqual(deform(presentation, identity), presentation)
        self.assertFalse(substitution('ecccus', 'h3 = w3 + t*w3~').is_identity())

    def test_not_invertible(self):
        sub = substitution('torus-1', 'h1 = w1 + w1~', params=())
        with self.assertRaises(NotInvertible):
            sub.inverse_matrix()
        with self.assertRaises(NotInvertible):
            deform(catalog_presentation('torus-1'), sub)

    def test_not_integrable(self):
        sub = substitution('iwasawa', 'h1 = w1 + 1/2*w1~', 'h2 = w2 + 1/2*w2~', params=())
        with self.assertRaises(NotIntegrable):
            deform(catalog_presentation('iwasawa'), sub)

    def test_parse_errors(self):
        for texts, error in ((['x3 = w3'], ParseError),
                             (['h3 = w3', 'h3 = w3~'], ParseError),
                             (['h4 = w1'], DimensionMismatch),
                             (['h3 = w1^w2'], ValueError)):
            with self.subTest(texts=texts):
                with self.assertRaises(error):
                    substitution('ecccus', *texts, params=())

    def test_parameters_must_be_known(self):
        with self.assertRaises(ValueError):
            deform(catalog_presentation('ecccus-t'),
                   CoframeSubstitution.identity(catalog_presentation('ecccus')))
        with self.assertRaises(DimensionMismatch):
            deform(catalog_presentation('KT'),
                   CoframeSubstitution.identity(catalog_presentation('ecccus')))

    def test_compare(self):
        comparison = compare(catalog_presentation('ecccus'), catalog_presentation('iwasawa'))
        self.assertFalse(comparison)
        self.assertEqual(list(comparison.diff), ['d w3'])
        self.assertEqual(compare(catalog_presentation('KT'),
                                 catalog_presentation('ecccus')).diff, {'dim': '2 != 3'})
        twisted = compare(catalog_presentation('nakamura'), catalog_presentation('ecccus'))
        self.assertEqual(twisted.diff['twist'], 'present in only one presentation')
        self.assertEqual(compare(catalog_presentation('ecccus'),
                                 catalog_presentation('ecccus')).to_dict(),
                         {'equal': True, 'diff': {}})
