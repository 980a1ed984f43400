"""Codebreaking games on finite and infinite words: engine, strategies,
adversaries, simulation arena and HTTP service."""

from .cardinal import Cardinal, Fin, OMEGA, ZERO, OrdinalStage, STAGE_OMEGA
from .positions import PositionSet
from .words import (
    Alphabet,
    ClosedFormWord,
    ColorCensus,
    Constant,
    FiniteWord,
    LazyWord,
    LengthMismatch,
    Periodic,
    Shift,
    Word,
    agreement_census,
    agreement_set,
    check_injective,
    color_census,
    letters,
    truncation_bound,
)

__all__ = [
    "Alphabet", "Cardinal", "ClosedFormWord", "ColorCensus", "Constant",
    "Fin", "FiniteWord", "LazyWord", "LengthMismatch", "OMEGA", "OrdinalStage",
    "Periodic", "PositionSet", "STAGE_OMEGA", "Shift", "Word", "ZERO",
    "agreement_census", "agreement_set", "check_injective", "color_census",
    "letters", "truncation_bound",
]
