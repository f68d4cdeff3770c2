"""Explicit coefficient formulas for genus 2."""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .foundation import a_alpha, factorial, monomial_sym, theta

__all__ = ["nu_from_multiplicities", "psi_monomial_coefficient", "mu2_explicit", "mu2_unramified"]


def nu_from_multiplicities(j) -> tuple[int, ...]:
    """``(1^{j_1} 2^{j_2} ...)`` from ``j = (j_1, j_2, ...)``."""
    parts = []
    for i, ji in enumerate(j, start=1):
        parts.extend([i] * ji)
    return tuple(sorted(parts, reverse=True))


def psi_monomial_coefficient(n: int, alpha, j) -> Fraction:
    """``[x^n p_alpha] (1 - psi_1)^{-1} prod_i psi_i^{j_i} / j_i!``."""
    alpha = tuple(sorted(alpha, reverse=True))
    if sum(alpha) != n:
        raise ValueError("alpha must be a partition of n")
    nu = nu_from_multiplicities(j)
    return (a_alpha(alpha) / theta(alpha) * Fraction(n) ** (len(alpha) - len(nu))
            * monomial_sym(nu, alpha))


def mu2_explicit(alpha) -> Fraction:
    """``mu^{(2)}(alpha)`` as a combination of monomial symmetric functions."""
    alpha = tuple(sorted(alpha, reverse=True))
    n, m = sum(alpha), len(alpha)
    N = Fraction(n)
    total = Fraction(0)
    # m_nu vanishes once nu has more parts than alpha
    for k in range(m + 1):
        ones = (1,) * k
        total += (Fraction(factorial(k + 1)) / N ** (k + 1)
                  * (5 * monomial_sym((4,) + ones, alpha) - 12 * monomial_sym((3,) + ones, alpha)
                     + 7 * monomial_sym((2,) + ones, alpha)))
        total += (Fraction(factorial(k + 2)) / N ** (k + 2)
                  * (Fraction(29, 2) * monomial_sym((3, 2) + ones, alpha)
                     - 25 * monomial_sym((2, 2) + ones, alpha)))
        total += Fraction(factorial(k + 3)) / N ** (k + 3) * 28 * monomial_sym((2, 2, 2) + ones, alpha)
    return factorial(n + m + 2) * a_alpha(alpha) / theta(alpha) * N ** m / 5760 * total


def mu2_unramified(n: int) -> Fraction:
    """``mu^{(2)}(1^n)`` in closed form; empty ``A_k`` sums are 0."""
    if n < 1:
        raise ValueError("n must be >= 1")

    def A(k):
        return sum((comb(i + 5, 5) * Fraction(n ** (n - i - k), factorial(n - i - k))
                    for i in range(n - k + 1)), Fraction(0))

    return Fraction(factorial(2 * n + 2), 1440 * n) * (12 * A(4) + 21 * A(3) + 2 * A(2))
