"""Finitely presented groups."""
from .words import Word, commutator, cyclic_relators, cyclic_reduce, free_reduce, is_cyclic_conjugate
from .presentation import Presentation, WordSyntaxError, format_word, parse_word
from .cosets import BoundExceeded, CosetTable, coset_enumerate, group_order
from .ops import (
    NotEliminable,
    PermutationModel,
    RelatorCertificate,
    abelian_invariants,
    b23_presentation,
    check_relator_certificate,
    dump_certificates,
    elimination_value,
    evaluate_images,
    generated_order,
    load_certificates,
    quotient_by_normal_closure,
    tietze_eliminate,
    verify_homomorphism,
)

__all__ = [
    "Word", "commutator", "cyclic_relators", "cyclic_reduce", "free_reduce", "is_cyclic_conjugate",
    "Presentation", "WordSyntaxError", "format_word", "parse_word",
    "BoundExceeded", "CosetTable", "coset_enumerate", "group_order",
    "NotEliminable", "PermutationModel", "RelatorCertificate", "abelian_invariants",
    "b23_presentation", "check_relator_certificate", "dump_certificates", "elimination_value", "evaluate_images",
    "generated_order", "load_certificates", "quotient_by_normal_closure", "tietze_eliminate", "verify_homomorphism",
]
