"""Closed meadow terms: exact evaluation, normal forms, a decision procedure
for provable equality, and the initial meadow as a datatype."""

from .element import MeadowElement, from_term
from .evaluate import phi, phi_n, profile, psi
from .exactnum import prime
from .normal import Verdict, build_normal_term, decide_equal, g_term, normal_form_of, z_term
from .term import Add, Inv, Lit, Mul, Neg, parse, random_term, to_text

__version__ = "0.1.0"
