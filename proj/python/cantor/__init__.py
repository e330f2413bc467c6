"""Exact arithmetic for Diophantine approximation on missing-digit sets in F_p((X^-1))."""

import json
from fractions import Fraction

from . import _cantor
from ._cantor import (
    InvariantError,
    PreconditionError,
    cf_eval,
    cf_rational,
    construct_digits,
    fold,
    gamma,
    laurent_digits,
    schedule,
    theta,
)

__version__ = _cantor.version


def cylinder_measure(prefixes, p=3, alphabet=(0, 2)):
    return Fraction(_cantor.cylinder_measure([list(w) for w in prefixes], p, list(alphabet)))


def astar_measure(n, psi, p=3, alphabet=(0, 2)):
    """(enumerated measure, closed form) of A_n*."""
    measure, formula = _cantor.astar_measure(n, psi, p, list(alphabet))
    return Fraction(measure), Fraction(formula)


def bc_ratio(N, psi, closed_form=False):
    return Fraction(_cantor.bc_ratio(N, psi, closed_form))


def estimate_tau(a0, quotients, p=3):
    return Fraction(_cantor.estimate_tau(a0, quotients, p))


def run(subcommand, **options):
    """Runs a CLI subcommand in-process; returns (exit_code, report dict or error text)."""
    code, text = _cantor.run(subcommand, **options)
    return code, json.loads(text) if code == 0 else text
