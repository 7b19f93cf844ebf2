"""
Multi-indices in d variables.

A multi-index is a plain tuple of nonnegative integers ``(a_1, ..., a_d)``.
All sets used here are the full simplices ``{a : |a| <= k}`` enumerated in
graded lexicographic order: total degree first, lexicographic within a
degree.  The order is prefix stable, so the index set for order ``k`` is a
prefix of the set for ``k + 1`` and coefficients can be reused as ``k`` grows.
"""

from functools import lru_cache
from math import comb, factorial, prod
from typing import Sequence

import numpy as np

MultiIndex = tuple[int, ...]

# Exact counts are kept below the unsigned 128-bit range.
COUNT_LIMIT = 2**128 - 1
# Largest n with n! representable as a double.
MAX_FACTORIAL = 170

_FACTORIALS = tuple(factorial(n) for n in range(MAX_FACTORIAL + 1))


def order(alpha: Sequence[int]) -> int:
    """Total degree ``|alpha|``."""
    return sum(alpha)


def count(d: int, k: int) -> int:
    """
    Number of multi-indices ``alpha`` in ``d`` variables with ``|alpha| <= k``.

    This is ``C(d + k, k)``.  Raises ``OverflowError`` when the value exceeds
    the 128-bit range; use :func:`smoothtract.tractability.log_count` there.
    """
    _check_dk(d, k)
    n = comb(d + k, k)
    if n > COUNT_LIMIT:
        raise OverflowError(
            f"C({d}+{k},{k}) exceeds the 128-bit range; use log_count instead"
        )
    return n


def count_by_degree(d: int, k: int) -> int:
    """``sum_{j<=k} C(d+j-1, j)``: the same count built degree by degree."""
    _check_dk(d, k)
    return sum(comb(d + j - 1, j) for j in range(k + 1))


def _check_dk(d, k):
    if int(d) != d or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")
    if int(k) != k or k < 0:
        raise ValueError(f"order must be a nonnegative integer, got {k!r}")


def _compositions(total: int, parts: int):
    # lexicographically increasing compositions of `total` into `parts` parts
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def degree_block(d: int, m: int) -> list[MultiIndex]:
    """All multi-indices of total degree exactly ``m``, in lexicographic order."""
    _check_dk(d, m)
    return list(_compositions(m, d))


def enumerate_indices(d: int, k: int) -> list[MultiIndex]:
    """
    All multi-indices with ``|alpha| <= k`` in graded lexicographic order.

    Examples
    --------
    >>> enumerate_indices(2, 2)
    [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
    """
    count(d, k)  # overflow guard
    out = []
    for m in range(k + 1):
        out.extend(_compositions(m, d))
    return out


def rank(alpha: Sequence[int]) -> int:
    """Position of ``alpha`` in the graded lexicographic order (zero based)."""
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative entry in multi-index {alpha}")
    d = len(alpha)
    m = sum(alpha)
    # indices of lower degree come first
    r = comb(d + m - 1, m - 1) if m > 0 else 0
    remaining = m
    for i, a in enumerate(alpha[:-1]):
        tail = d - i - 1
        # compositions with the same prefix and a smaller entry at position i
        for v in range(a):
            r += comb(remaining - v + tail - 1, tail - 1)
        remaining -= a
    return r


def unrank(r: int, d: int) -> MultiIndex:
    """Inverse of :func:`rank` for dimension ``d``."""
    if r < 0:
        raise ValueError("rank must be nonnegative")
    m = 0
    while comb(d + m, m) <= r:
        m += 1
    r -= comb(d + m - 1, m - 1) if m > 0 else 0
    alpha = []
    remaining = m
    for i in range(d - 1):
        tail = d - i - 1
        v = 0
        while True:
            block = comb(remaining - v + tail - 1, tail - 1)
            if r < block:
                break
            r -= block
            v += 1
        alpha.append(v)
        remaining -= v
    alpha.append(remaining)
    return tuple(alpha)


def factorial_mi(alpha: Sequence[int]) -> int:
    """``alpha! = prod(alpha_i!)`` as an exact integer."""
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative entry in multi-index {tuple(alpha)}")
    if any(a > MAX_FACTORIAL for a in alpha):
        raise OverflowError(f"entry above {MAX_FACTORIAL} in {tuple(alpha)}")
    value = prod(_FACTORIALS[a] for a in alpha)
    if value > 1.7976931348623157e308:
        raise OverflowError(f"{tuple(alpha)}! is not representable as a double")
    return value


def monomial(x, alpha: Sequence[int]):
    """``x**alpha = prod(x_i**alpha_i)`` with ``0**0 == 1``.

    ``x`` may be a single point of shape ``(d,)`` or a stack ``(n, d)``.
    """
    x = np.asarray(x, dtype=float)
    alpha = np.asarray(alpha, dtype=int)
    if x.shape[-1] != alpha.shape[0]:
        raise ValueError("dimension mismatch between point and multi-index")
    return np.prod(x**alpha, axis=-1)


@lru_cache(maxsize=64)
def exponent_array(d: int, k: int) -> np.ndarray:
    """Read-only ``(count(d, k), d)`` integer array of :func:`enumerate_indices`."""
    arr = np.array(enumerate_indices(d, k), dtype=np.int64).reshape(-1, d)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=64)
def rank_table(d: int, k: int) -> dict:
    """Mapping multi-index -> rank for ``|alpha| <= k``."""
    return {alpha: i for i, alpha in enumerate(enumerate_indices(d, k))}


@lru_cache(maxsize=64)
def degree_offsets(d: int, k: int) -> tuple[int, ...]:
    """Rank of the first index of each degree 0..k+1 (the last is the total count)."""
    return tuple(comb(d + m - 1, m - 1) if m > 0 else 0 for m in range(k + 2))


@lru_cache(maxsize=64)
def parent_table(d: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """
    For every nonzero index, a parent of degree one less and the variable
    that was removed: ``alpha = parent + e_var``.  The parent is obtained by
    decrementing the first nonzero entry.  Entry 0 (the zero index) maps to
    itself with variable -1.
    """
    table = rank_table(d, k)
    n = len(table)
    parent = np.zeros(n, dtype=np.int64)
    var = np.full(n, -1, dtype=np.int64)
    for alpha, r in table.items():
        if r == 0:
            continue
        i = next(j for j, a in enumerate(alpha) if a)
        p = list(alpha)
        p[i] -= 1
        parent[r] = table[tuple(p)]
        var[r] = i
    parent.setflags(write=False)
    var.setflags(write=False)
    return parent, var
