"""Exceptions raised by pklab."""

import typing as t


class PklabError(Exception):

    """Base class of all errors raised by pklab."""


class DenominatorVanishes(PklabError, ZeroDivisionError):

    """Specialization maps a denominator to zero."""


class ParseError(PklabError, ValueError):

    """Malformed presentation, form or scalar text."""

    def __init__(self, message: str, line: t.Optional[int] = None,
                 column: t.Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        location = []
        if line is not None:
            location.append('line {}'.format(line))
        if column is not None:
            location.append('column {}'.format(column))
        if location:
            message = '{}: {}'.format(', '.join(location), message)
        super().__init__(message)


class UnknownParameter(ParseError):

    """Identifier is neither a declared parameter nor a generator."""


class DimensionMismatch(ParseError):

    """Generator index outside of the declared dimension, or incompatible algebras."""


class TwistWithoutLambda(PklabError, ValueError):

    """Differential of a twisted term in a presentation without twist 1-form."""


class MixedBidegree(PklabError, ValueError):

    """Operation requires a form of pure bidegree."""


class ParametricInput(PklabError, ValueError):

    """Operation requires all parameters to be specialized."""


class UnresolvedCaseSplit(PklabError, ArithmeticError):

    """A pivot assumed nonzero on the generic branch vanishes in the requested context."""

    def __init__(self, pivot, text: str):
        self.pivot = pivot
        self.text = text
        super().__init__('pivot {} vanishes, re-run under the locus substitution'.format(text))


class NotReal(PklabError, ValueError):

    """Form is not fixed by conjugation."""


class NotType11(PklabError, ValueError):

    """Form is not of bidegree (1,1)."""


class NotClosed(PklabError, ValueError):

    """Form is not d-closed."""


class NotInvariant(PklabError, ValueError):

    """Form has terms of nonzero twist weight."""


class SingularMetric(PklabError, ArithmeticError):

    """Metric is degenerate."""


class NotInvertible(PklabError, ValueError):

    """Coframe substitution is not invertible."""


class NotIntegrable(PklabError, ValueError):

    """Coframe substitution does not define an integrable complex structure."""


class UnknownEntry(PklabError, LookupError):

    """Catalog has no entry of a given id."""
