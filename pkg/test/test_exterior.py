"""Unit tests for forms, differentials and validation of structure equations."""

import random
import unittest

from pklab.coeffs import ParamDecl, ParamKind, ScalarField
from pklab.errors import DimensionMismatch, MixedBidegree, TwistWithoutLambda
from pklab.exterior import PARAMETRIC_RATIONALITY_NOTE, ExteriorAlgebra, Presentation
from pklab.parse import parse_form, parse_presentation
from .examples import CATALOG_IDS, catalog_presentation, random_form

RANDOM_FORMS = 500


class Tests(unittest.TestCase):

    def setUp(self):
        self.algebra = ExteriorAlgebra(3, ScalarField())
        self.w = self.algebra.omega
        self.wb = self.algebra.omega_bar

    def test_wedge_signs(self):
        w, wb = self.w, self.wb
        self.assertFalse(w(1) ^ w(1))
        self.assertEqual(w(2) ^ w(1), -(w(1) ^ w(2)))
        self.assertEqual(wb(1) ^ w(2), -(w(2) ^ wb(1)))
        two_form = w(1) ^ wb(2)
        self.assertEqual(two_form ^ w(3), w(3) ^ two_form)
        self.assertEqual((w(1) ^ w(2)) ^ w(3), w(1) ^ (w(2) ^ w(3)))

    def test_conjugation(self):
        w, wb = self.w, self.wb
        i = self.algebra.field.i
        self.assertEqual(w(1).conj(), wb(1))
        self.assertEqual((w(1) ^ wb(1)).conj(), -(w(1) ^ wb(1)))
        self.assertTrue((w(1) ^ wb(1)).scale(i).is_real())
        self.assertTrue(((w(1) ^ wb(2)) - (w(2) ^ wb(1))).is_real())

    def test_components(self):
        w, wb = self.w, self.wb
        form = (w(1) ^ w(2)) + (w(1) ^ wb(3)) + (wb(1) ^ wb(2))
        self.assertEqual(form.component(2, 0), w(1) ^ w(2))
        self.assertEqual(form.component(1, 1), w(1) ^ wb(3))
        self.assertEqual(form.bidegrees, {(2, 0), (1, 1), (0, 2)})
        self.assertEqual(form.degree, 2)
        with self.assertRaises(MixedBidegree):
            form.bidegree
        self.assertIsNone(self.algebra.zero.bidegree)

    def test_top_coefficient(self):
        w, wb = self.w, self.wb
        volume = w(1) ^ w(2) ^ w(3) ^ wb(1) ^ wb(2) ^ wb(3)
        self.assertEqual(volume.top_coefficient(), self.algebra.field.one)
        reordered = w(1) ^ wb(1) ^ w(2) ^ wb(2) ^ w(3) ^ wb(3)
        self.assertEqual(reordered.top_coefficient(), -self.algebra.field.one)

    def test_index_checks(self):
        with self.assertRaises(DimensionMismatch):
            self.algebra.omega(4)
        with self.assertRaises(DimensionMismatch):
            ExteriorAlgebra(0, ScalarField())
        with self.assertRaises(ValueError):
            self.algebra.monomial(((2, 1), (), 0))
        other = ExteriorAlgebra(2, ScalarField())
        with self.assertRaises(DimensionMismatch):
            self.w(1) + other.omega(1)

    def test_differential_ecccus(self):
        presentation = catalog_presentation('ecccus')
        algebra = presentation.algebra
        self.assertEqual(presentation.d(algebra.omega(3)), algebra.omega(1) ^ algebra.omega_bar(2))
        self.assertEqual(presentation.d(algebra.omega_bar(3)),
                         algebra.omega_bar(1) ^ algebra.omega(2))
        self.assertFalse(presentation.d(algebra.omega(1)))
        self.assertFalse(presentation.d(algebra.one))

    def test_del_delbar(self):
        presentation = catalog_presentation('X-gen-ecus')
        algebra = presentation.algebra
        self.assertEqual(presentation.del_(algebra.omega(3)), algebra.omega(1) ^ algebra.omega(2))
        self.assertFalse(presentation.delbar(algebra.omega(3)))
        self.assertEqual(presentation.delbar(algebra.omega(2)),
                         algebra.omega(1) ^ algebra.omega_bar(1))

    def test_properties_on_random_forms(self):
        """d^2 = 0, del^2 = 0, delbar^2 = 0, anticommutation, Leibniz and conjugation."""
        rng = random.Random(20240611)
        for number in range(RANDOM_FORMS):
            id_ = rng.choice(CATALOG_IDS)
            presentation = catalog_presentation(id_)
            algebra = presentation.algebra
            weights = presentation.default_weights
            p, q = rng.randint(0, 2), rng.randint(0, 2)
            left = random_form(rng, algebra, 1, 2, weights).component(1, 0) \
                + random_form(rng, algebra, 1, 2, weights).component(0, 1)
            pure = random_form(rng, algebra, p + q, 3, weights).component(p, q)
            mixed = random_form(rng, algebra, 2, 4, weights)
            with self.subTest(number=number, id=id_, form=str(mixed)):
                self.assertFalse(presentation.d(presentation.d(mixed)))
                self.assertFalse(presentation.del_(presentation.del_(pure)))
                self.assertFalse(presentation.delbar(presentation.delbar(pure)))
                self.assertFalse(presentation.del_(presentation.delbar(pure))
                                 + presentation.delbar(presentation.del_(pure)))
                self.assertEqual(presentation.d(left ^ mixed),
                                 (presentation.d(left) ^ mixed) - (left ^ presentation.d(mixed)))
                self.assertEqual(presentation.d(mixed.conj()), presentation.d(mixed).conj())

    def test_real_form_splits(self):
        """dF = del F + conj(del F) for real (1,1) forms."""
        presentation = catalog_presentation('eleccion')
        form = parse_form(presentation.algebra,
                          'I*(w1^w1~ + 2*w2^w2~) + (1 + I)*w1^w3~ - (1 - I)*w3^w1~ + w2^w4~'
                          ' - w4^w2~')
        self.assertTrue(form.is_real())
        theta = presentation.del_(form)
        self.assertEqual(presentation.d(form), theta + theta.conj())

    def test_del_of_general_real_form(self):
        """del of the general real (1,1) form on eleccion, term by term."""
        eleccion = catalog_presentation('eleccion')
        params = [ParamDecl('x{0}{0}'.format(k), ParamKind.REAL) for k in range(1, 5)]
        params += [ParamDecl('x{}{}'.format(k, l)) for k in range(1, 5) for l in range(k + 1, 5)]
        presentation = eleccion.with_field(eleccion.field.extend(params))
        algebra = presentation.algebra
        form = parse_form(algebra, ' + '.join(
            ['I*x{0}{0}*w{0}^w{0}~'.format(k) for k in range(1, 5)]
            + ['x{0}{1}*w{0}^w{1}~ - x{0}{1}bar*w{1}^w{0}~'.format(k, l)
               for k in range(1, 5) for l in range(k + 1, 5)]))
        self.assertTrue(form.is_real())
        theta = presentation.del_(form)
        expected = parse_form(
            algebra,
            '(x13 - x13bar)*w1^w2^w1~ + (x23 - x23bar)*w1^w2^w2~ - (x24 - I*x33)*w1^w2^w3~'
            ' + x34*w1^w2^w4~ - x14*w1^w3^w1~ + I*x33*w1^w3^w2~ - x34*w1^w3^w3~'
            ' - I*(x12 - x12bar)*w1^w4^w1~ + (x22 - x34bar)*w1^w4^w2~'
            ' - I*(x23 + x44)*w1^w4^w3~ - I*x24*w1^w4^w4~ - (x24 + I*x33)*w2^w3^w1~'
            ' + (x22 + x34bar)*w2^w4^w1~ + I*(x44 + x23bar)*w3^w4^w1~')
        self.assertEqual(theta, expected)
        self.assertEqual(len(theta.keys()), 14)
        self.assertEqual(presentation.d(form), theta + theta.conj())

    def test_twist(self):
        presentation = catalog_presentation('nakamura')
        algebra = presentation.algebra
        f = algebra.twist_character(1)
        lambda_ = presentation.twist
        self.assertEqual(presentation.d(f), lambda_ ^ f)
        self.assertEqual(presentation.d(algebra.twist_character(-1)),
                         -(lambda_.shift_weight(-1)))
        untwisted = catalog_presentation('ecccus')
        with self.assertRaises(TwistWithoutLambda):
            untwisted.d(untwisted.algebra.twist_character(1))

    def test_validate_catalog(self):
        for id_ in CATALOG_IDS:
            with self.subTest(id=id_):
                report = catalog_presentation(id_).validate()
                self.assertTrue(report.ok, msg=report.failures)

    def test_validate_failures(self):
        not_integrable = parse_presentation('dim 2\nd w2 = w1~^w2~\n')
        report = not_integrable.validate()
        self.assertFalse(report.ok)
        self.assertFalse(report.integrable[2])
        not_jacobi = parse_presentation('dim 3\nd w1 = w1^w2\nd w3 = w1^w3\n')
        report = not_jacobi.validate()
        self.assertFalse(report.ok)
        self.assertFalse(report.jacobi[3])
        self.assertFalse(all(report.jacobi.values()))
        bad_twist = parse_presentation('dim 2\ntwist lambda = w1 + w1~\nd w2 = w1^w2\n')
        self.assertFalse(bad_twist.validate().twist)

    def test_rational(self):
        self.assertTrue(catalog_presentation('ecccus').validate().rational)
        self.assertFalse(catalog_presentation('ecccus').validate().notes)
        report = catalog_presentation('ecccus-t').validate()
        self.assertIs(report.rational, True)
        self.assertEqual(report.notes, [PARAMETRIC_RATIONALITY_NOTE])
        self.assertEqual(report.to_dict()['notes'], [PARAMETRIC_RATIONALITY_NOTE])

    def test_specialize_and_compare(self):
        presentation = catalog_presentation('ecccus-t')
        field = presentation.field
        self.assertEqual(presentation.with_field(field.extend([ParamDecl('s')])).n, 3)
        self.assertNotEqual(presentation, catalog_presentation('ecccus'))
        self.assertIsInstance(presentation.relabel('x'), Presentation)
        self.assertEqual(presentation.relabel('x').label, 'x')
