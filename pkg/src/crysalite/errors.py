"""Exception types.

Input problems (bad polynomial text, unknown variables) derive from
``InputError``; a violated mathematical hypothesis derives from
``HypothesisError`` and names the hypothesis it guards.
"""

from __future__ import annotations


class InputError(ValueError):
    """Malformed user input."""


class PolySyntaxError(InputError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}" if text else message)


class UnknownVariable(PolySyntaxError):
    pass


class ZeroPolynomial(PolySyntaxError):
    pass


class HypothesisError(Exception):
    """A computation was requested outside the hypotheses that license it."""

    hypothesis = ""

    def __init__(self, detail: str = ""):
        msg = self.hypothesis
        if detail:
            msg = f"{msg}: {detail}" if msg else detail
        super().__init__(msg)


class NotSmooth(HypothesisError):
    hypothesis = "f must define a smooth projective hypersurface"


class CharacteristicDividesDegree(HypothesisError):
    hypothesis = "the characteristic p must not divide deg f"


class IndexTooSmall(HypothesisError):
    hypothesis = "the wedge index n must exceed N = (number of variables) - 1"


class NoSingularity(HypothesisError):
    hypothesis = "deg f must be at least 2 so the origin is a singular point"


class ComplexError(ValueError):
    """A graded complex failed d∘d = 0 or the homogeneity rule."""


class ConditionalCertificateWarning(UserWarning):
    """Growth was certified only for the graded pieces; no splitting license holds."""
