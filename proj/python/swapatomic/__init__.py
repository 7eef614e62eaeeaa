"""Atomicity decisions, reductions and protocol simulation for cross-chain swap systems."""

from ._core import (
    ModelError,
    ParseError,
    SwapSystem,
    cnf_to_swap,
    decide,
    eadnf_bruteforce,
    eadnf_to_swap,
    figure4_h_swap,
    fixture,
    h_swap_system,
    sat_bruteforce,
    simulate,
    verify_witness,
)

__all__ = [
    "ModelError",
    "ParseError",
    "SwapSystem",
    "cnf_to_swap",
    "decide",
    "eadnf_bruteforce",
    "eadnf_to_swap",
    "figure4_h_swap",
    "fixture",
    "h_swap_system",
    "sat_bruteforce",
    "simulate",
    "verify_witness",
]
