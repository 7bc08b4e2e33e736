"""Braid-group calculus: words, moves, quasipositive factorizations, certificates."""

from .words import BraidWord, Permutation, parse_braid, writhe, mirror, free_reduce
from .garside import CanonicalForm, to_normal_form, words_equal, from_normal_form

__all__ = [
    "BraidWord",
    "Permutation",
    "CanonicalForm",
    "parse_braid",
    "writhe",
    "mirror",
    "free_reduce",
    "to_normal_form",
    "words_equal",
    "from_normal_form",
]
