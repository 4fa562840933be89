"""Kernel type checker for a dependent type theory over erased, Curry-style lambda terms."""

from .checker import Checker, kind_synth, rho_rewrite, type_check, type_synth, wf_kind
from .conversion import Conv, convert_kinds, convert_types, type_beta_normalize, type_whnf
from .diagnostics import Code, Diagnostic, TypeCheckError
from .elaborate import Elaborator, elaborate
from .erasure import embed, erase
from .lam import (DEFAULT_FUEL, Equiv, Exhausted, Fuel, Normal, beta_eta_equal,
                  normalize, oracle_equal, step)
from .parser import ParseError, parse_file, parse_kind, parse_term, parse_type
from .printer import show, show_decl, show_file
from .syntax import Context, Name, alpha_eq, ctx_lookup, fv, subst_term, subst_type

__all__ = [
    "Checker", "Code", "Context", "Conv", "DEFAULT_FUEL", "Diagnostic", "Elaborator",
    "Equiv", "Exhausted", "Fuel", "Name", "Normal", "ParseError", "TypeCheckError",
    "alpha_eq", "beta_eta_equal", "convert_kinds", "convert_types", "ctx_lookup",
    "elaborate", "embed", "erase", "fv", "kind_synth", "normalize", "oracle_equal",
    "parse_file", "parse_kind", "parse_term", "parse_type", "rho_rewrite", "show",
    "show_decl", "show_file", "step", "subst_term", "subst_type", "type_beta_normalize",
    "type_check", "type_synth", "type_whnf", "wf_kind",
]
