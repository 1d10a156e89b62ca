"""Nondeterministic lambda calculus, its resource calculus and Taylor expansion."""

from .groupoid import aut_card, hom_count, hom_set, perm_subst, restriction, sub_stabilizer
from .lambda_oplus import bohm_approx, ebt, iterate_L, step_L
from .oracles import LemmaReport, check_lemma, commutation_check, msubst_oracle
from .perm import Perm, decompose_perm, multiplex
from .resource import msubst, multiplicity, normal_form, step_L_res, step_L_sum
from .rigid import enumerate_rigids, readback, rigid_nf, rigid_step_L, rigid_subst
from .sums import FormalSum
from .syntax import (
    ParseError, parse_lambda, parse_resource, parse_rigid, parse_sum, show_lambda,
    show_resource, show_rigid, show_sum,
)
from .taylor import nf_taylor, taylor_coeff, taylor_slice, taylor_support, taysup_bt

__version__ = "0.1.0"

__all__ = [
    "FormalSum", "LemmaReport", "ParseError", "Perm",
    "aut_card", "bohm_approx", "check_lemma", "commutation_check", "decompose_perm",
    "ebt", "enumerate_rigids", "hom_count", "hom_set", "iterate_L", "msubst",
    "msubst_oracle", "multiplex", "multiplicity", "nf_taylor", "normal_form",
    "parse_lambda", "parse_resource", "parse_rigid", "parse_sum", "perm_subst",
    "readback", "restriction", "rigid_nf", "rigid_step_L", "rigid_subst",
    "show_lambda", "show_resource", "show_rigid", "show_sum", "step_L",
    "step_L_res", "step_L_sum", "sub_stabilizer", "taylor_coeff", "taylor_slice",
    "taylor_support", "taysup_bt",
]
