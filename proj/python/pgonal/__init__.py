"""Pseudo-real cyclic p-gonal Riemann surfaces.

Signatures and groups are passed as text, e.g. ``"(1;-;[3,3,2])"`` and
``"M(n=4,p=3,r=2)"``. Maps and records come back as plain dicts in the same JSON
layout the command-line tool prints.
"""

import json
import sys
from fractions import Fraction

from . import _core
from ._core import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    DegenerateSignature,
    InconsistentPresentation,
    InvalidParameters,
    InvalidSignature,
    OutOfScope,
    ParseError,
    PgonalError,
    SpecMismatch,
    canonical_fuchsian,
    canonical_group,
    canonical_signature,
    element_order,
    genus_of_surface_kernel,
    group_order,
    is_isomorphic,
    multiply,
    validate_signature,
)

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "DegenerateSignature",
    "InconsistentPresentation",
    "InvalidParameters",
    "InvalidSignature",
    "OutOfScope",
    "ParseError",
    "PgonalError",
    "SpecMismatch",
    "canonical_fuchsian",
    "canonical_group",
    "canonical_signature",
    "check",
    "classify_genus",
    "construct_family_i_action",
    "construct_family_ii_action",
    "cross_validate",
    "element_order",
    "enumerate_maps",
    "exists_cyclic",
    "exists_semidirect_general",
    "exists_semidirect_r1_pm1",
    "family_signature",
    "genus_of_surface_kernel",
    "group_order",
    "is_isomorphic",
    "l1_obstruction",
    "main",
    "maximal_order",
    "multiply",
    "normalized_area",
    "run_cli",
    "validate_signature",
    "verify_p_gonal",
]


def _load(text):
    return None if text is None else json.loads(text)


def _dump(map_):
    return map_ if isinstance(map_, str) else json.dumps(map_)


def normalized_area(signature):
    return Fraction(_core.normalized_area(signature))


def family_signature(p, n, g, family):
    """(signature, l) for family "i" or "ii", or None when l is not a positive integer."""
    return _core.family_signature(p, n, g, family)


def check(map_):
    return _load(_core.check(_dump(map_)))


def enumerate_maps(signature, group, pseudo_real=False, budget=DEFAULT_BUDGET, workers=1):
    return [json.loads(m) for m in _core.enumerate(signature, group, pseudo_real, budget, workers)]


def construct_family_i_action(p, n, r, l):
    return _load(_core.construct_family_i_action(p, n, r, l))


def construct_family_ii_action(p, n, r, l):
    return _load(_core.construct_family_ii_action(p, n, r, l))


def verify_p_gonal(map_, p):
    return _load(_core.verify_p_gonal(_dump(map_), p))


def exists_cyclic(p, n, g):
    return _load(_core.exists_cyclic(p, n, g))


def exists_semidirect_r1_pm1(p, n, g):
    return _load(_core.exists_semidirect_r1_pm1(p, n, g))


def exists_semidirect_general(p, n, g):
    return _load(_core.exists_semidirect_general(p, n, g))


def classify_genus(p, g, witnesses=False, budget=DEFAULT_BUDGET, workers=1):
    return _load(_core.classify_genus(p, g, witnesses, budget, workers))


def maximal_order(p, g):
    return _load(_core.maximal_order(p, g))


def cross_validate(p, g_from, g_to, budget=DEFAULT_BUDGET, workers=1):
    return _load(_core.cross_validate(p, g_from, g_to, budget, workers))


def l1_obstruction(p, n, family, group, budget=DEFAULT_BUDGET):
    return _load(_core.l1_obstruction(p, n, family, group, budget))


def run_cli(args):
    """(exit_code, stdout, stderr) of the command-line tool."""
    return _core.run_cli([str(a) for a in args])


def main():
    code, out, err = run_cli(sys.argv[1:])
    sys.stdout.write(out)
    sys.stderr.write(err)
    sys.exit(code)
