"""Unit tests for the Levi-Civita connection and its curvature."""

import unittest

from pklab.coeffs import ParamDecl, ParamKind
from pklab.connection import (
    check_parallel, complex_metric, curvature, is_flat, is_ricci_flat, levi_civita, ricci)
from pklab.errors import NotInvariant, NotType11, SingularMetric
from pklab.parse import parse_form
from .examples import catalog_presentation

CATALOG_METRICS = (
    ('KT', 'I*w1^w1~ + w1^w2~ - w2^w1~'),
    ('ecccus', 'I*w1^w1~ + w2^w3~ - w3^w2~'),
    ('X-gen-ecus', 'I*(w1^w3~ + w3^w1~) + I*w2^w2~'),
    ('torus-2', 'I*w1^w1~ - I*w2^w2~'))

ELECCION_FAMILY = 'I*(r*w1^w1~ + s*w4^w4~) + u*(w1^w2~ - w2^w1~) + v*(w1^w3~ - w3^w1~)' \
    ' - s*(w2^w3~ - w3^w2~)'


class Tests(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        eleccion = catalog_presentation('eleccion')
        cls.eleccion = eleccion.with_field(eleccion.field.extend(
            [ParamDecl(name, ParamKind.REAL) for name in ('r', 's', 'u', 'v')]))
        cls.eleccion_form = parse_form(cls.eleccion.algebra, ELECCION_FAMILY)
        cls.eleccion_connection = levi_civita(cls.eleccion, cls.eleccion_form)

    def test_complex_metric(self):
        presentation = catalog_presentation('torus-1')
        field = presentation.field
        half = field.rational(1, 2)
        self.assertEqual(complex_metric(presentation, [[1, 0], [0, 1]]),
                         [[field.zero, half], [half, field.zero]])
        self.assertEqual(complex_metric(presentation, parse_form(presentation.algebra,
                                                                 'I*w1^w1~')),
                         complex_metric(presentation, [[2, 0], [0, 2]]))
        with self.assertRaises(ValueError):
            complex_metric(presentation, [[1]])
        with self.assertRaises(NotType11):
            complex_metric(catalog_presentation('torus-2'),
                           parse_form(catalog_presentation('torus-2').algebra, 'w1^w2'))

    def test_identities_on_catalog_metrics(self):
        for id_, text in CATALOG_METRICS:
            presentation = catalog_presentation(id_)
            connection = levi_civita(presentation, parse_form(presentation.algebra, text))
            with self.subTest(id=id_):
                self.assertTrue(connection.check_torsion())
                self.assertTrue(connection.check_metric())
                self.assertTrue(connection.check_conjugation())
                self.assertTrue(curvature(presentation, connection).check_symmetries())
                self.assertTrue(connection.to_dict()['torsion_free'])

    def test_torus_is_flat(self):
        presentation = catalog_presentation('torus-2')
        connection = levi_civita(presentation,
                                 parse_form(presentation.algebra, 'I*w1^w1~ + I*w2^w2~'))
        self.assertFalse(any(any(vector) for vector in connection.gamma.values()))
        self.assertTrue(is_flat(curvature(presentation, connection)))

    def test_kodaira_surface(self):
        presentation = catalog_presentation('KT')
        form = parse_form(presentation.algebra, 'I*w1^w1~ + w1^w2~ - w2^w1~')
        connection = levi_civita(presentation, form)
        table = curvature(presentation, connection)
        self.assertTrue(is_ricci_flat(table))
        self.assertTrue(check_parallel(presentation, connection, 'J'))
        self.assertTrue(check_parallel(presentation, connection, form))
        metric_ricci = ricci(table, connection.metric)
        self.assertFalse(any(any(row) for row in metric_ricci))

    def test_eleccion_christoffel_symbols(self):
        connection = self.eleccion_connection
        field = self.eleccion.field
        r, s, u, v = (field.gen(name) for name in ('r', 's', 'u', 'v'))
        i = field.i
        self.assertEqual(connection.gamma[5, 0], connection.basis_vector(2))
        self.assertEqual(connection.gamma[1, 1],
                         [-i * s / r, -i * v / r, i * u / r] + [field.zero] * 5)
        self.assertTrue(connection.check_torsion())
        self.assertTrue(connection.check_metric())
        self.assertEqual(connection.symbol_text(5, 0), '(1)*Z3')

    def test_eleccion_curvature(self):
        connection = self.eleccion_connection
        table = curvature(self.eleccion, connection)
        field = self.eleccion.field
        r, s = field.gen('r'), field.gen('s')
        self.assertEqual(table.component(1, 5, 1, 5), -s ** 2 / r)
        self.assertFalse(is_flat(table))
        self.assertTrue(is_ricci_flat(table))
        self.assertIn('Z2,Z2~,Z2,Z2~', table.to_dict()['components'])

    def test_eleccion_parallel_tensors(self):
        connection = self.eleccion_connection
        self.assertTrue(check_parallel(self.eleccion, connection, 'J'))
        phi = parse_form(self.eleccion.algebra, 'w1^w2^w3^w4')
        self.assertTrue(check_parallel(self.eleccion, connection, phi))
        self.assertTrue(check_parallel(self.eleccion, connection, self.eleccion_form))
        with self.assertRaises(ValueError):
            check_parallel(self.eleccion, connection, 'K')

    def test_errors(self):
        presentation = catalog_presentation('KT')
        with self.assertRaises(SingularMetric):
            levi_civita(presentation, parse_form(presentation.algebra, 'I*w1^w1~'))
        nakamura = catalog_presentation('nakamura')
        with self.assertRaises(NotInvariant):
            levi_civita(nakamura, parse_form(nakamura.algebra, 'I*w1^w1~ + I*w2^w2~'))
        connection = levi_civita(presentation, parse_form(
            presentation.algebra, 'I*w1^w1~ + w1^w2~ - w2^w1~'))
        with self.assertRaises(ValueError):
            curvature(catalog_presentation('ecccus'), connection)
        with self.assertRaises(NotInvariant):
            check_parallel(nakamura, connection, nakamura.algebra.twist_character(1))
