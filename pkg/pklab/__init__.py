"""Exact verification of pseudo-Kahler and neutral Calabi-Yau metrics on nilmanifolds."""

from .coeffs import Assignment, Locus, ParamDecl, ParamKind, ScalarField
from .exterior import ExteriorAlgebra, Form, Presentation
from .parse import load_presentation, parse_form, parse_presentation
from .unparse import unparse
from .cohomology import Theory, cohomology, delta_k
from .lie import realize
from .pksolver import neutral_cy_check, pk_exists, symplectic_exists
from .connection import curvature, levi_civita
from .deform import CoframeSubstitution, compare, deform

__all__ = [
    'Assignment', 'Locus', 'ParamDecl', 'ParamKind', 'ScalarField',
    'ExteriorAlgebra', 'Form', 'Presentation',
    'load_presentation', 'parse_form', 'parse_presentation', 'unparse',
    'Theory', 'cohomology', 'delta_k', 'realize',
    'neutral_cy_check', 'pk_exists', 'symplectic_exists',
    'curvature', 'levi_civita', 'CoframeSubstitution', 'compare', 'deform']
