# flake8: noqa: F401

from .ideals import (
    IdealSubset,
    RadicalLemmaResult,
    enumerate_ideals,
    enumerate_primes,
    generated_ideal,
    ideal_intersection,
    ideal_sum,
    is_gamma_ideal,
    is_binary_prime,
    is_prime,
    is_ternary_prime,
    radical,
    verify_radical_lemma,
)
