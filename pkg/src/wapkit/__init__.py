"""Weak abelian periodicity of infinite words.

Generators for morphic, Toeplitz and block-built words, exact lattice-path
(discrepancy) analysis, deciders for fixed points of binary uniform
morphisms, and return-word tools for shift orbit closures.
"""

from .errors import BudgetError, PreconditionError, WordError
from .words import (
    BlockSpec,
    Morphism,
    ToeplitzPattern,
    WordStream,
    abelian_equivalent,
    apply_morphism,
    block_word_stream,
    fixed_point_stream,
    named_word,
    parikh,
    periodic_stream,
    prefix,
    toeplitz_stream,
    unify_letters,
)

__version__ = "0.1.0"

__all__ = [
    "BlockSpec",
    "BudgetError",
    "Morphism",
    "PreconditionError",
    "ToeplitzPattern",
    "WordError",
    "WordStream",
    "abelian_equivalent",
    "apply_morphism",
    "block_word_stream",
    "fixed_point_stream",
    "named_word",
    "parikh",
    "periodic_stream",
    "prefix",
    "toeplitz_stream",
    "unify_letters",
]
