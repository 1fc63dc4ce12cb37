"""Newton identities in the power-sum generators of a symmetric product.

Power sums ``p_k = x_1^k + ... + x_n^k`` become generators ``p1..pn`` of
degree ``2k``; the mixed sums ``q_k = x_1^(k-1) y_1 + ... + x_n^(k-1) y_n``
become odd generators ``q1..qn`` of degree ``2k - 1``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra import Element, FreeAlgebra, Generator


@lru_cache(maxsize=None)
def power_sum_algebra(n: int) -> FreeAlgebra:
    gens = [Generator(f"p{k}", 2 * k) for k in range(1, n + 1)]
    gens += [Generator(f"q{k}", 2 * k - 1) for k in range(1, n + 1)]
    return FreeAlgebra(gens)


@lru_cache(maxsize=None)
def newton_elementary(n: int) -> tuple[Element, ...]:
    """e_1..e_n written in the power sums, via k e_k = sum (-1)^(i-1) e_(k-i) p_i."""
    if n < 1:
        raise ValueError("n must be at least 1")
    alg = power_sum_algebra(n)
    es = [alg.one()]
    for k in range(1, n + 1):
        acc = alg.zero()
        for i in range(1, k + 1):
            sign = 1 if i % 2 else -1
            acc = acc + es[k - i] * alg.gen(f"p{i}") * sign
        es.append(acc * Fraction(1, k))
    return tuple(es[1:])


def _reduce(k: int, n: int, letter: str) -> Element:
    if n < 1:
        raise ValueError("n must be at least 1")
    if k <= n:
        raise ValueError(f"nothing to reduce: {letter}_{k} is already a generator (n = {n})")
    alg = power_sum_algebra(n)
    es = newton_elementary(n)
    known = {j: alg.gen(f"{letter}{j}") for j in range(1, n + 1)}
    for m in range(n + 1, k + 1):
        # x_i^m = sum_j (-1)^(j-1) e_j x_i^(m-j), summed over i
        acc = alg.zero()
        for j in range(1, n + 1):
            sign = 1 if j % 2 else -1
            acc = acc + es[j - 1] * known[m - j] * sign
        known[m] = acc
    return known[k]


@lru_cache(maxsize=None)
def reduce_power_sum(k: int, n: int) -> Element:
    """p_k for k > n as a polynomial in p_1..p_n."""
    return _reduce(k, n, "p")


@lru_cache(maxsize=None)
def reduce_mixed_power_sum(k: int, n: int) -> Element:
    """q_k for k > n as a polynomial in p_1..p_n and q_1..q_n."""
    return _reduce(k, n, "q")
