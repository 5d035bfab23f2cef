"""Asymptotic ramp secret sharing over probability vectors."""

from .circle import circle_decode, matrix_circle_mul, scalar_circle_mul
from .generator import GeneratorMatrix, check_rank_conditions, construct, score
from .prob import ProbSequence, ProbVector, make_prob_vector
from .scheme import encode, make_auxiliary, plan_mixture, recover

__version__ = "0.1.0"

__all__ = [
    "GeneratorMatrix",
    "ProbSequence",
    "ProbVector",
    "check_rank_conditions",
    "circle_decode",
    "construct",
    "encode",
    "make_auxiliary",
    "make_prob_vector",
    "matrix_circle_mul",
    "plan_mixture",
    "recover",
    "scalar_circle_mul",
    "score",
]
