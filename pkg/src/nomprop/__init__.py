"""Symmetric and nominal monoidal theories: terms, models and translations."""
from .nominal import FreshNames, Perm, perm_apply, perm_compose, perm_inverse
from .terms import (
    Delta, Dia, DuplicateWireName, Empty, Gen, GenDecl, Id, NEmpty, NGen, NId, NmtTerm, NSeq,
    NTensor, PermApp, Seq, SeqArityMismatch, SeqDomainMismatch, Signature, SmtTerm, Sym,
    Tensor, TensorOverlap, TermError, UnknownGenerator, nmt_perm_action, nmt_support,
    nmt_typecheck, perm_as_nmt_term, smt_canonical_symmetry, smt_typecheck,
)
from .theories import (
    Arrow, Equation, FiniteFunction, ModelMismatch, NamedArrow, NamedFunction,
    NamedPartialFunction, NamedRelation, PartialFunction, Relation, TheoryPresentation,
    UnknownTheory, builtin_theory, check_soundness, eval_boxed, eval_dia, eval_nmt, eval_smt,
    load_theory,
)
from .translate import (
    box_equations, dia_equations, iota_nmt, iota_smt, nf_nmt, nf_smt, translate_theory_nmt,
    translate_theory_smt,
)
from .equiv import (
    BijNormalForm, ClosureUniverse, TypeMismatch, completeness_probe, normalize_bijection_nmt,
    semantic_equiv, th_closure,
)
from .syntax import ParseError, SourceSpan, parse_nmt, parse_smt, print_term

__version__ = "0.1.0"
