"""
Decide whether every average of f over a product of disjoint sets of
measures alpha_1..alpha_m vanishes, using the Walsh expansion of f
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Tuple

from singer import get_logger

from vanishing_averages.errors import InvalidInputError
from vanishing_averages.exact import RationalComplex
from vanishing_averages.oracle import GridPartition, product_set_integral
from vanishing_averages.stepfn import (
    AlphaVector,
    CellIndex,
    StepFunction,
    alternation_defect,
    check_mask,
    extend,
    fiber,
    full_mask,
    members,
    size,
    subset,
    swap_coords,
    zero_function,
)
from vanishing_averages.walsh import WalshExpansion, expand

LOGGER = get_logger("vanishing_averages")


class CertificateKind(str, Enum):
    NONZERO_MEAN = "nonzero_mean"
    NOT_ALTERNATING = "not_alternating"
    LEVEL_RELATION = "level_relation"
    NONZERO_FUNCTION = "nonzero_function"
    NONZERO_LEVEL = "nonzero_level"
    COUNTEREXAMPLE_PARTITION = "counterexample_partition"


@dataclass(frozen=True)
class Certificate:
    """
    Location of a failed condition

    Which optional fields are set depends on the kind: pair for
    not_alternating, ell for level_relation, level for nonzero_level,
    partition and refinement for counterexample_partition. value is the
    nonzero quantity found at cell (or the nonzero integral for a partition).
    """

    kind: CertificateKind
    subset: int = 0
    cell: Optional[CellIndex] = None
    value: Optional[RationalComplex] = None
    pair: Optional[Tuple[int, int]] = None
    ell: Optional[int] = None
    level: Optional[int] = None
    partition: Optional[GridPartition] = None
    refinement: Optional[int] = None


@dataclass(frozen=True)
class Verdict:
    holds: bool
    certificate: Optional[Certificate] = None

    def __post_init__(self) -> None:
        if not self.holds and self.certificate is None:
            raise InvalidInputError("a failing verdict needs a certificate")

    @classmethod
    def success(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def failure(cls, certificate: Certificate) -> "Verdict":
        return cls(False, certificate)


def _check_pairing(m: int, n: int, alpha: AlphaVector) -> None:
    if alpha.m != m:
        raise InvalidInputError(f"alpha has {alpha.m} entries but the function has arity {m}")
    alpha.check_resolution(n)


def _check_coord(coord: int, m: int) -> None:
    if not 1 <= coord <= m:
        raise InvalidInputError(f"coordinate {coord} out of range 1..{m}")


def check_level_relation(expansion: WalshExpansion, alpha: AlphaVector, mask: int, ell: int) -> StepFunction:
    """
    Residual of the level relation between F_S and the components F_{S_i},
    S_i = S + {ell} - {i}:

        F_S / alpha(S) - sum over i in S of swap(F_{S_i}, i, ell) / alpha(S_i)

    where alpha(T) is the product of alpha_j over T

    :param expansion: Walsh expansion of f
    :param alpha: measures paired with the coordinates
    :param mask: subset S, neither empty nor the full set
    :param ell: coordinate outside S
    :return: the exact residual, the zero function iff the relation holds
    """
    _check_pairing(expansion.m, expansion.n, alpha)
    check_mask(mask, expansion.m)
    if mask == 0 or mask == full_mask(expansion.m):
        raise InvalidInputError(f"level relation needs 1 <= |S| <= m-1, got S={list(members(mask))}")
    _check_coord(ell, expansion.m)
    if mask & subset(ell):
        raise InvalidInputError(f"ell = {ell} lies in S={list(members(mask))}")
    residual = expansion[mask].scale(1 / alpha.product(mask))
    for coord in members(mask):
        shifted = (mask | subset(ell)) & ~subset(coord)
        residual = residual - swap_coords(expansion[shifted], coord, ell).scale(1 / alpha.product(shifted))
    return residual


def _first_failure(f: StepFunction, alpha: AlphaVector, expansion: WalshExpansion) -> Optional[Certificate]:
    m = f.m
    for mask in range(1 << m):
        fn = expansion[mask]
        if mask == 0:
            if not fn.is_zero():
                cell = (0,) * m
                return Certificate(CertificateKind.NONZERO_MEAN, mask, cell, fn(cell))
            continue
        if size(mask) >= 2:
            defect = alternation_defect(fn, mask)
            if defect is not None:
                (i, j), cell = defect
                value = fn(cell) + swap_coords(fn, i, j)(cell)
                return Certificate(CertificateKind.NOT_ALTERNATING, mask, cell, value, pair=(i, j))
        if size(mask) < m:
            for ell in range(1, m + 1):
                if mask & subset(ell):
                    continue
                residual = check_level_relation(expansion, alpha, mask, ell)
                cell = residual.first_nonzero()
                if cell is not None:
                    return Certificate(CertificateKind.LEVEL_RELATION, mask, cell, residual(cell), ell=ell)
        LOGGER.debug("Subset %s passes", list(members(mask)))
    return None


def decide_vanishing(f: StepFunction, alpha: AlphaVector) -> Verdict:
    """
    Exact decision of the vanishing-average property

    When the measures add up to 1 the property holds iff F_empty = 0, every
    F_S with |S| >= 2 is alternating and every level relation has a zero
    residual. When they add up to less than 1 it holds iff f = 0.

    :param f: step function of arity alpha.m
    :param alpha: measures compatible with the resolution of f
    :return: verdict, the certificate naming the first failure in increasing
        subset order, then increasing ell
    """
    _check_pairing(f.m, f.n, alpha)
    LOGGER.info("Deciding vanishing averages for m=%s n=%s alpha=%s", f.m, f.n, [str(a) for a in alpha.entries])
    if not alpha.is_complete():
        cell = f.first_nonzero()
        if cell is None:
            return Verdict.success()
        return Verdict.failure(Certificate(CertificateKind.NONZERO_FUNCTION, full_mask(f.m), cell, f(cell)))
    certificate = _first_failure(f, alpha, expand(f))
    if certificate is None:
        LOGGER.info("Property holds")
        return Verdict.success()
    LOGGER.info("Property fails: %s on subset %s", certificate.kind.value, list(members(certificate.subset)))
    return Verdict.failure(certificate)


def partial_diff(f: StepFunction, alpha: AlphaVector, coord: int, y: int, z: int) -> StepFunction:
    """
    First variation along one coordinate: (f with x_i fixed at z minus f
    with x_i fixed at y) / alpha_i
    """
    _check_pairing(f.m, f.n, alpha)
    _check_coord(coord, f.m)
    mask = subset(coord)
    return (fiber(f, mask, {coord: z}) - fiber(f, mask, {coord: y})).scale(1 / alpha[coord])


def _check_steps(
    f: StepFunction, k_mask: int, ys: Sequence[Mapping[int, int]], zs: Sequence[Mapping[int, int]]
) -> None:
    check_mask(k_mask, f.m)
    if k_mask == 0:
        raise InvalidInputError("K must not be empty")
    if len(ys) != len(zs):
        raise InvalidInputError(f"{len(ys)} y-vectors but {len(zs)} z-vectors")
    if not ys:
        raise InvalidInputError("at least one (y, z) step is needed")
    for vector in itertools.chain(ys, zs):
        missing = set(members(k_mask)) - set(vector)
        if missing:
            raise InvalidInputError(f"cell vector {dict(vector)} misses coordinates {sorted(missing)} of K")


def partial_diff_multi(
    f: StepFunction,
    alpha: AlphaVector,
    k_mask: int,
    ys: Sequence[Mapping[int, int]],
    zs: Sequence[Mapping[int, int]],
) -> StepFunction:
    """
    Iterated operator: step t applies sum over i in K of the first variation
    along i from ys[t][i] to zs[t][i], starting with t = 0

    :param k_mask: the coordinate set K
    :param ys: k cell vectors, each mapping every coordinate of K to a cell
    :param zs: k cell vectors, same shape as ys
    """
    _check_pairing(f.m, f.n, alpha)
    _check_steps(f, k_mask, ys, zs)
    result = f
    for y, z in zip(ys, zs):
        step = zero_function(f.m, f.n)
        for coord in members(k_mask):
            step = step + partial_diff(result, alpha, coord, y[coord], z[coord])
        result = step
    return result


def k_operator_expansion(
    fn: StepFunction,
    alpha: AlphaVector,
    mask: int,
    k_mask: int,
    ys: Sequence[Mapping[int, int]],
    zs: Sequence[Mapping[int, int]],
) -> StepFunction:
    """
    Closed form of partial_diff_multi for a function depending only on S:

        sum over D in S and K with |D| = k, bijections pi: D -> {1..k} and
        B in {1..k} of (-1)^|B| / alpha(D) times fn with x_d fixed at
        ys[pi(d)][d] when pi(d) is in B and at zs[pi(d)][d] otherwise

    It is zero whenever |S and K| < k.
    """
    _check_pairing(fn.m, fn.n, alpha)
    _check_steps(fn, k_mask, ys, zs)
    check_mask(mask, fn.m)
    steps = len(ys)
    total = zero_function(fn.m, fn.n)
    for chosen in itertools.combinations(members(mask & k_mask), steps):
        scale = Fraction(1) / alpha.product(subset(*chosen))
        for image in itertools.permutations(range(steps)):
            for b_mask in range(1 << steps):
                cells = {}
                for coord, position in zip(chosen, image):
                    source = ys if b_mask >> position & 1 else zs
                    cells[coord] = source[position][coord]
                term = fiber(fn, subset(*chosen), cells)
                sign = -1 if size(b_mask) % 2 else 1
                total = total + term.scale(sign * scale)
    return total


def lift(f: StepFunction, alpha: AlphaVector) -> Tuple[StepFunction, AlphaVector]:
    """
    Add a dummy coordinate m+1 of measure 1 - sum(alpha) that f does not
    depend on, turning a slack problem into one whose measures add up to 1
    """
    _check_pairing(f.m, f.n, alpha)
    if alpha.is_complete():
        raise InvalidInputError("alpha already sums to 1, nothing to lift")
    lifted = extend(f, f.m + 1, list(range(1, f.m + 1)))
    return lifted, AlphaVector(alpha.entries + (1 - alpha.total,))


def replay_certificate(f: StepFunction, alpha: AlphaVector, certificate: Certificate) -> bool:
    """
    Re-evaluate the condition a certificate names and confirm it reproduces
    the recorded nonzero value
    """
    kind = certificate.kind
    if kind is CertificateKind.COUNTEREXAMPLE_PARTITION:
        if certificate.partition is None:
            return False
        value = product_set_integral(f, certificate.partition)
    elif certificate.cell is None:
        return False
    elif kind is CertificateKind.NONZERO_FUNCTION:
        value = f(certificate.cell)
    elif kind in (CertificateKind.NONZERO_MEAN, CertificateKind.NONZERO_LEVEL):
        value = expand(f)[certificate.subset](certificate.cell)
    elif kind is CertificateKind.NOT_ALTERNATING:
        i, j = certificate.pair
        fn = expand(f)[certificate.subset]
        value = fn(certificate.cell) + swap_coords(fn, i, j)(certificate.cell)
    else:
        residual = check_level_relation(expand(f), alpha, certificate.subset, certificate.ell)
        value = residual(certificate.cell)
    return not value.is_zero() and value == certificate.value
