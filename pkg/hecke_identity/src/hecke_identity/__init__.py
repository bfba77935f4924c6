"""
hecke_identity: character theory of PSL2(F_q) and modular forms on Gamma_1(q)
used to check m+ - m- = h(-q) for primes q = 3 (mod 4), q > 3.
"""

__version__ = "0.1.0"
