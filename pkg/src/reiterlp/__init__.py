"""Relational theories with null values as ground logic programs.

Theories are parsed (``theory``), compiled with the equality rewrite
(``translate``), solved under the stable model semantics (``solver``) and
read back as diagrams (``diagrams``); ``fo`` holds the first-order side and
the brute-force oracles every route is checked against.
"""
from .diagrams import answer_set_to_diagram, quotient
from .fo import enumerate_dca_models, minimal_dca_models, stable_dca_models
from .solver import enumerate_stable_models, is_stable
from .theory import parse_theory, print_theory
from .translate import compile_program, compile_theory, delta_to_pi, eq_rewrite, parse_program

__version__ = "0.1.0"
