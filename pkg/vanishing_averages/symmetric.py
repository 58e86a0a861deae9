"""
Symmetric functions integrated over A^(m-r) x (complement of A)^r

For symmetric f the integral over every set A of measure alpha vanishes iff
F_[k] = 0 at every level k whose coefficient

    c_k = sum over i = 0..k of C(m-r, k-i) C(r, i) (-alpha / (1 - alpha))^i

is nonzero. c_0 = 1, so the mean must vanish. K(m, r, alpha) collects the
levels 1..m with c_k = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from singer import get_logger

from vanishing_averages.characterize import Certificate, CertificateKind, Verdict, decide_vanishing
from vanishing_averages.errors import InvalidInputError
from vanishing_averages.exact import RationalComplex, Scalar, parse_rational
from vanishing_averages.oracle import GridPartition, contract
from vanishing_averages.stepfn import AlphaVector, StepFunction, full_mask, is_symmetric
from vanishing_averages.walsh import expand

LOGGER = get_logger("vanishing_averages")


@dataclass(frozen=True)
class KSet:
    m: int
    r: int
    alpha: Fraction
    members: Tuple[int, ...]
    coefficients: Tuple[Fraction, ...]

    def coefficient(self, k: int) -> Fraction:
        """
        c_k for k in 0..m
        """
        return Fraction(1) if k == 0 else self.coefficients[k - 1]


def _check_family(m: int, r: int, alpha: Fraction) -> None:
    if m < 1:
        raise InvalidInputError(f"arity must be positive, got {m}")
    if not 0 <= r <= m:
        raise InvalidInputError(f"r = {r} out of range 0..{m}")
    if not 0 < alpha < 1:
        raise InvalidInputError(f"alpha = {alpha} is not strictly between 0 and 1")


def level_coefficient(m: int, r: int, alpha: Scalar, k: int) -> Fraction:
    """
    Exact c_k(m, r, alpha)

    >>> level_coefficient(6, 3, Fraction(1, 2), 3)
    Fraction(0, 1)
    >>> level_coefficient(6, 3, Fraction(1, 2), 2)
    Fraction(-3, 1)
    """
    alpha = parse_rational(alpha)
    _check_family(m, r, alpha)
    if not 0 <= k <= m:
        raise InvalidInputError(f"level k = {k} out of range 0..{m}")
    ratio = -alpha / (1 - alpha)
    return sum(
        (math.comb(m - r, k - i) * math.comb(r, i) * ratio**i for i in range(k + 1)),
        Fraction(0),
    )


def compute_K(m: int, r: int, alpha: Scalar) -> KSet:
    """
    Levels k in 1..m with a vanishing coefficient, all coefficients kept

    >>> compute_K(6, 3, Fraction(1, 2)).members
    (1, 3, 5)
    """
    alpha = parse_rational(alpha)
    _check_family(m, r, alpha)
    coefficients = tuple(level_coefficient(m, r, alpha, k) for k in range(1, m + 1))
    members = tuple(k for k, value in enumerate(coefficients, start=1) if value == 0)
    LOGGER.debug("K(%s,%s,%s) = %s", m, r, alpha, list(members))
    return KSet(m, r, alpha, members, coefficients)


def decide_symmetric_vanishing(f: StepFunction, r: int, alpha: Scalar) -> Verdict:
    """
    Decide whether the integral of a symmetric f over A^(m-r) x (complement of A)^r
    vanishes for every A of measure alpha

    :param f: symmetric step function
    :param r: number of complement factors
    :param alpha: measure of A, alpha * n must be an integer
    :return: verdict; a failure names the smallest level k with c_k != 0 and F_[k] != 0
    """
    alpha = parse_rational(alpha)
    if not is_symmetric(f):
        raise InvalidInputError("f is not symmetric under coordinate interchanges")
    _check_family(f.m, r, alpha)
    if (alpha * f.n).denominator != 1:
        raise InvalidInputError(f"alpha = {alpha} is incompatible with resolution {f.n}")
    kset = compute_K(f.m, r, alpha)
    expansion = expand(f)
    for k in range(f.m + 1):
        if kset.coefficient(k) == 0:
            continue
        mask = full_mask(k)
        cell = expansion[mask].first_nonzero()
        if cell is not None:
            LOGGER.info("Level %s has coefficient %s and a nonzero component", k, kset.coefficient(k))
            return Verdict.failure(
                Certificate(CertificateKind.NONZERO_LEVEL, mask, cell, expansion[mask](cell), level=k)
            )
    return Verdict.success()


def family_integral_by_levels(f: StepFunction, r: int, partition: GridPartition) -> RationalComplex:
    """
    ((1 - alpha) / alpha)^r * sum over k of c_k times the integral of F_[k] over A^m,
    where A is the set of cells labelled 1 and alpha its measure
    """
    if not is_symmetric(f):
        raise InvalidInputError("f is not symmetric under coordinate interchanges")
    alpha = Fraction(partition.count(1), partition.n_cells)
    kset = compute_K(f.m, r, alpha)
    inside = partition.weights(f.n, 1)
    expansion = expand(f)
    total = RationalComplex(0)
    for k in range(f.m + 1):
        coefficient = kset.coefficient(k)
        if coefficient:
            total = total + contract(expansion[full_mask(k)], [inside] * f.m) * coefficient
    return total * ((1 - alpha) / alpha) ** r


def decide_symmetric_function(f: StepFunction, alpha: AlphaVector) -> Verdict:
    """
    Decision for a symmetric f against the measures alpha

    With measures adding up to 1 that are not all equal the property holds
    only for f = 0. A nonzero f still gets the certificate decide_vanishing
    finds, so failures read like those of the general decision.

    :param f: symmetric step function of arity alpha.m
    :param alpha: measures compatible with the resolution of f
    :return: verdict
    """
    if not is_symmetric(f):
        raise InvalidInputError("f is not symmetric under coordinate interchanges")
    if alpha.m != f.m:
        raise InvalidInputError(f"alpha has {alpha.m} entries but the function has arity {f.m}")
    alpha.check_resolution(f.n)
    if alpha.is_complete() and len(set(alpha.entries)) > 1:
        if f.is_zero():
            return Verdict.success()
        LOGGER.info("Symmetric f is nonzero and the measures differ, locating the failed condition")
    return decide_vanishing(f, alpha)
