"""
Seeded constructions of functions with vanishing averages
"""

from __future__ import annotations

import itertools
import math
from typing import Mapping, Optional, Sequence

import numpy as np
from singer import get_logger

from vanishing_averages.errors import InvalidInputError
from vanishing_averages.exact import RationalComplex, Scalar
from vanishing_averages.prng import SplitMix64
from vanishing_averages.stepfn import (
    AlphaVector,
    StepFunction,
    antisymmetrize,
    check_mask,
    extend,
    full_mask,
    is_alternating,
    make_step_function,
    members,
    size,
    subset,
    swap_coords,
    symmetrize,
    zero_function,
)
from vanishing_averages.symmetric import compute_K
from vanishing_averages.walsh import WalshExpansion, component, is_walsh, reconstruct

LOGGER = get_logger("vanishing_averages")

RAW_LOW = -9
RAW_HIGH = 9

# a nonzero target space is hit with overwhelming probability long before this
MAX_DRAWS = 64


def alternating_walsh_dimension(n: int, k: int) -> int:
    """
    Dimension of the space of Walsh functions on a k-subset that are
    alternating in its coordinates, at resolution n

    >>> alternating_walsh_dimension(3, 2)
    1
    >>> alternating_walsh_dimension(2, 2)
    0
    """
    return math.comb(n - 1, k)


def _draw(generator: SplitMix64, m: int, n: int) -> StepFunction:
    return make_step_function(m, n, generator.integers(n**m, RAW_LOW, RAW_HIGH))


def random_walsh_alternating(m: int, n: int, mask: int, seed: int) -> StepFunction:
    """
    Random Walsh function on S, alternating in the coordinates of S

    Cell values are drawn from [-9, 9] with splitmix64 in row-major order,
    reduced to the F_S component and antisymmetrized over S. Draws that
    project to zero are replaced by the next draw of the same generator.

    :param m: arity
    :param n: resolution, at least |S| + 1
    :param mask: subset S, not empty
    :param seed: 64-bit seed
    """
    check_mask(mask, m)
    if mask == 0:
        raise InvalidInputError("alternating Walsh functions need a nonempty subset")
    dimension = alternating_walsh_dimension(n, size(mask))
    if dimension == 0:
        raise InvalidInputError(
            f"no nonzero alternating Walsh function on {size(mask)} coordinates at resolution {n}: "
            f"the space has dimension C({n - 1},{size(mask)}) = 0, need n >= {size(mask) + 1}"
        )
    generator = SplitMix64(seed)
    for draw in range(MAX_DRAWS):
        candidate = antisymmetrize(component(_draw(generator, m, n), mask), mask)
        if not candidate.is_zero():
            return candidate
        LOGGER.debug("Draw %s for subset %s projected to zero, redrawing", draw, list(members(mask)))
    raise InvalidInputError(f"{MAX_DRAWS} draws for subset {list(members(mask))} all projected to zero")


def random_symmetric_walsh(k: int, n: int, seed: int) -> StepFunction:
    """
    Random symmetric arity-k function with zero mean along every coordinate
    """
    if k < 1:
        raise InvalidInputError(f"level must be positive, got {k}")
    if n < 2:
        raise InvalidInputError(f"resolution {n} admits no nonzero Walsh function")
    generator = SplitMix64(seed)
    mask = full_mask(k)
    for _ in range(MAX_DRAWS):
        candidate = symmetrize(component(_draw(generator, k, n), mask))
        if not candidate.is_zero():
            return candidate
    raise InvalidInputError(f"{MAX_DRAWS} draws at level {k} all projected to zero")


def _top_masks(m: int):
    top = subset(m)
    return [mask for mask in range(1 << m) if mask & top]


def complete_expansion(
    top: Mapping[int, StepFunction], alpha: AlphaVector, n: Optional[int] = None
) -> WalshExpansion:
    """
    Fill in the components on subsets of {1..m-1} from components on the
    subsets containing m, solving the level relation with ell = m:

        F_S = alpha(S) * sum over i in S of swap(F_{S_i}, i, m) / alpha(S_i)

    with S_i = S + {m} - {i}, and F_empty = 0

    :param top: components keyed by subsets containing m; missing ones are zero
    :param alpha: measures adding up to 1
    :param n: resolution, needed only when top is empty
    """
    m = alpha.m
    if not alpha.is_complete():
        raise InvalidInputError(f"alpha sums to {alpha.total}, completion needs a total of 1")
    if n is None:
        if not top:
            raise InvalidInputError("resolution is needed when no component is given")
        n = next(iter(top.values())).n
    alpha.check_resolution(n)
    components = {}
    for mask in _top_masks(m):
        fn = top.get(mask, zero_function(m, n))
        if fn.shape != (m, n):
            raise InvalidInputError(f"component {list(members(mask))} has shape {fn.shape}, expected {(m, n)}")
        if not is_walsh(fn, mask):
            raise InvalidInputError(f"component {list(members(mask))} is not a Walsh function on its subset")
        if not is_alternating(fn, mask):
            raise InvalidInputError(f"component {list(members(mask))} is not alternating")
        components[mask] = fn
    extra = set(top) - set(components)
    if extra:
        raise InvalidInputError(f"components {[list(members(mask)) for mask in sorted(extra)]} do not contain {m}")
    for mask in range(1, 1 << (m - 1)):
        total = zero_function(m, n)
        for coord in members(mask):
            shifted = (mask | subset(m)) & ~subset(coord)
            total = total + swap_coords(components[shifted], coord, m).scale(1 / alpha.product(shifted))
        components[mask] = total.scale(alpha.product(mask))
    return WalshExpansion(m, n, components)


def construct_solution(m: int, n: int, alpha: AlphaVector, seed: int) -> StepFunction:
    """
    Sum of a completed expansion whose top components are seeded random
    alternating Walsh functions, subset S drawn with seed ^ S; subsets too
    large for the resolution get the zero component
    """
    if alpha.m != m:
        raise InvalidInputError(f"alpha has {alpha.m} entries but m = {m}")
    if n < 2:
        raise InvalidInputError(f"resolution must be at least 2, got {n}")
    if not alpha.is_complete():
        raise InvalidInputError(f"alpha sums to {alpha.total}, constructions need a total of 1")
    alpha.check_resolution(n)
    LOGGER.info("Constructing a solution for m=%s n=%s seed=%s", m, n, seed)
    top = {}
    for mask in _top_masks(m):
        if alternating_walsh_dimension(n, size(mask)):
            top[mask] = random_walsh_alternating(m, n, mask, seed ^ mask)
        else:
            LOGGER.debug("Subset %s has no alternating Walsh functions at n=%s", list(members(mask)), n)
    return reconstruct(complete_expansion(top, alpha, n))


def construct_symmetric_solution(m: int, r: int, alpha: Scalar, n: int, seed: int) -> StepFunction:
    """
    Symmetric f = sum over k in K(m, r, alpha) and |S| = k of g_k(x_S), each
    g_k a symmetric Walsh function drawn with seed ^ (2^k - 1)
    """
    kset = compute_K(m, r, alpha)
    if (kset.alpha * n).denominator != 1:
        raise InvalidInputError(f"alpha = {kset.alpha} is incompatible with resolution {n}")
    if not kset.members:
        raise InvalidInputError(
            f"K({m},{r},{kset.alpha}) is empty: only the zero function satisfies the condition"
        )
    LOGGER.info("Constructing a symmetric solution on levels %s", list(kset.members))
    total = zero_function(m, n)
    for k in kset.members:
        g = random_symmetric_walsh(k, n, seed ^ full_mask(k))
        for coords in itertools.combinations(range(1, m + 1), k):
            total = total + extend(g, m, coords)
    return total


def exact_rank(vectors: Sequence[Sequence[Scalar]]) -> int:
    """
    Rank of a list of vectors by Gaussian elimination over the rationals
    (complex entries allowed)

    >>> exact_rank([[1, 2], [2, 4]])
    1
    """
    if not vectors:
        return 0
    rows = np.array([[RationalComplex.of(value) for value in vector] for vector in vectors], dtype=object)
    rank = 0
    for col in range(rows.shape[1]):
        pivot = next((row for row in range(rank, rows.shape[0]) if not rows[row, col].is_zero()), None)
        if pivot is None:
            continue
        rows[[rank, pivot]] = rows[[pivot, rank]]
        for row in range(rows.shape[0]):
            if row != rank and not rows[row, col].is_zero():
                rows[row] = rows[row] - rows[rank] * (rows[row, col] / rows[rank, col])
        rank += 1
        if rank == rows.shape[0]:
            break
    return rank
