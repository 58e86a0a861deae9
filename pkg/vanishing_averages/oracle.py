"""
Brute-force ground truth: integrate a step function over every product
A_1 x ... x A_m of grid-aligned disjoint sets of the prescribed measures
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import more_itertools
from singer import get_logger

from vanishing_averages.errors import InvalidInputError
from vanishing_averages.exact import ZERO, RationalComplex
from vanishing_averages.prng import SplitMix64
from vanishing_averages.stepfn import AlphaVector, StepFunction, is_symmetric

LOGGER = get_logger("vanishing_averages")

DEFAULT_BUDGET = 1_000_000
PROGRESS_EVERY = 100_000

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"

SLACK = 0


@dataclass(frozen=True)
class GridPartition:
    """
    Labelling of the n_cells axis cells: label t in 1..m puts the cell in A_t,
    label 0 leaves it unused
    """

    n_cells: int
    labels: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != self.n_cells:
            raise InvalidInputError(f"{len(self.labels)} labels for {self.n_cells} cells")

    def count(self, label: int) -> int:
        return self.labels.count(label)

    def cells(self, label: int) -> Tuple[int, ...]:
        return tuple(cell for cell, value in enumerate(self.labels) if value == label)

    def refinement(self, n: int) -> int:
        """
        Number of partition cells per cell of a resolution-n step function
        """
        if self.n_cells % n:
            raise InvalidInputError(f"partition on {self.n_cells} cells does not refine resolution {n}")
        return self.n_cells // n

    def weights(self, n: int, label: int) -> List[Fraction]:
        """
        Measure of A_label inside each of the n coarse cells
        """
        factor = self.refinement(n)
        counts = [0] * n
        for cell, value in enumerate(self.labels):
            if value == label:
                counts[cell // factor] += 1
        return [Fraction(count, self.n_cells) for count in counts]


@dataclass(frozen=True)
class OracleReport:
    """
    Outcome of a brute-force search; a failed search carries the first
    partition with a nonzero integral and that integral

    factor_modes records how each searched factor was covered. mode is
    sampled as soon as one of them was sampled, exhaustive otherwise.
    """

    all_zero: bool
    partitions_checked: int
    refinement: int
    mode: str
    counterexample: Optional[Tuple[GridPartition, RationalComplex]] = None
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    factors: Tuple[int, ...] = field(default_factory=tuple)
    factor_modes: Tuple[Tuple[int, str], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not self.all_zero and self.counterexample is None:
            raise InvalidInputError("a failed oracle report needs a counterexample")


def multinomial(n_cells: int, counts: Sequence[int]) -> int:
    """
    Number of labellings of n_cells cells with the given label counts, the
    remaining cells being slack

    >>> multinomial(3, [1, 1])
    6
    """
    slack = n_cells - sum(counts)
    if slack < 0:
        raise InvalidInputError(f"label counts {list(counts)} exceed {n_cells} cells")
    result = math.factorial(n_cells) // math.factorial(slack)
    for count in counts:
        result //= math.factorial(count)
    return result


def _base_labels(n_cells: int, counts: Sequence[int]) -> List[int]:
    if any(count < 0 for count in counts):
        raise InvalidInputError(f"negative label count in {list(counts)}")
    slack = n_cells - sum(counts)
    if slack < 0:
        raise InvalidInputError(f"label counts {list(counts)} sum to {sum(counts)} > {n_cells} cells")
    labels = [SLACK] * slack
    for label, count in enumerate(counts, start=1):
        labels.extend([label] * count)
    return labels


def enumerate_partitions(n_cells: int, counts: Sequence[int]) -> Iterator[GridPartition]:
    """
    Every labelling with the given counts exactly once, in lexicographic
    order of the label string

    :param n_cells: number of axis cells
    :param counts: cells carrying label 1..m; the rest get the slack label 0
    :return: generator of GridPartition
    """
    labels = _base_labels(n_cells, counts)
    for permutation in more_itertools.distinct_permutations(labels):
        yield GridPartition(n_cells, permutation)


def sample_partitions(n_cells: int, counts: Sequence[int], seed: int, budget: int) -> Iterator[GridPartition]:
    """
    budget uniformly random labellings drawn with splitmix64 (repeats allowed)
    """
    labels = _base_labels(n_cells, counts)
    generator = SplitMix64(seed)
    for _ in range(budget):
        drawn = list(labels)
        generator.shuffle(drawn)
        yield GridPartition(n_cells, drawn)


def contract(f: StepFunction, weights: Sequence[Sequence[Fraction]]) -> RationalComplex:
    """
    Sum over cells c of f(c) * prod_t weights[t][c_t]
    """
    if len(weights) != f.m:
        raise InvalidInputError(f"{len(weights)} weight vectors for arity {f.m}")
    values = f.values
    for axis_weights in weights:
        total = None
        for cell, weight in enumerate(axis_weights):
            if weight:
                term = values[cell] * weight
                total = term if total is None else total + term
        if total is None:
            return ZERO
        values = total
    return values


def product_set_integral(f: StepFunction, partition: GridPartition) -> RationalComplex:
    """
    Exact integral of f over A_1 x ... x A_m
    """
    return contract(f, [partition.weights(f.n, label) for label in range(1, f.m + 1)])


def family_integral(f: StepFunction, r: int, partition: GridPartition) -> RationalComplex:
    """
    Exact integral of f over A^{m-r} x (complement of A)^r where A is the
    set of cells labelled 1 and every other cell lies in the complement
    """
    if not 0 <= r <= f.m:
        raise InvalidInputError(f"r = {r} out of range 0..{f.m}")
    inside = partition.weights(f.n, 1)
    factor = partition.refinement(f.n)
    outside = [Fraction(factor, partition.n_cells) - weight for weight in inside]
    return contract(f, [inside] * (f.m - r) + [outside] * r)


def default_refinements(m: int) -> List[int]:
    return list(range(1, max(2, m) + 1))


def resolve_refinements(alpha: AlphaVector, n: int, refine: Optional[Sequence[int]]) -> List[int]:
    """
    Explicit factors must all be compatible with alpha; the default 1..max(2, m)
    keeps only the compatible ones
    """
    if refine is not None:
        factors = list(refine)
        if not factors or any(factor < 1 for factor in factors):
            raise InvalidInputError(f"refinement factors must be positive, got {factors}")
        for factor in factors:
            alpha.check_resolution(n * factor)
        return factors
    factors = [factor for factor in default_refinements(alpha.m) if alpha.is_compatible(n * factor)]
    if not factors:
        raise InvalidInputError(
            f"no default refinement factor makes alpha {[str(a) for a in alpha.entries]} compatible with resolution {n}"
        )
    return factors


def _overlap_key(partition: GridPartition, factor: int, labels: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    key = []
    for label in labels:
        counts = [0] * (partition.n_cells // factor)
        for cell, value in enumerate(partition.labels):
            if value == label:
                counts[cell // factor] += 1
        key.append(tuple(counts))
    return tuple(key)


def _search(
    partitions: Iterator[GridPartition],
    integrate,
    factor: int,
    labels: Sequence[int],
) -> Tuple[int, Optional[Tuple[GridPartition, RationalComplex]]]:
    # integrals only depend on how much of each label lands in each coarse cell
    cache: Dict[Tuple[Tuple[int, ...], ...], RationalComplex] = {}
    checked = 0
    for partition in partitions:
        checked += 1
        key = _overlap_key(partition, factor, labels)
        value = cache.get(key)
        if value is None:
            value = integrate(partition)
            cache[key] = value
        if value != ZERO:
            return checked, (partition, value)
        if checked % PROGRESS_EVERY == 0:
            LOGGER.info("Checked %s partitions at refinement %s", checked, factor)
    return checked, None


def _overall_mode(modes: Sequence[Tuple[int, str]]) -> str:
    return SAMPLED if any(mode == SAMPLED for _, mode in modes) else EXHAUSTIVE


def brute_force_vanishes(
    f: StepFunction,
    alpha: AlphaVector,
    refine: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> OracleReport:
    """
    Check that the integral of f over every grid-aligned product of disjoint
    sets of measures alpha vanishes

    :param f: step function of arity alpha.m
    :param alpha: measures; cells left over when they sum below 1 are slack
    :param refine: refinement factors r, partitions live on n*r cells
    :param budget: above this many partitions per factor, sample instead of enumerating
    :param seed: splitmix64 seed for sampling
    :return: report, stopping at the first nonzero integral
    """
    if alpha.m != f.m:
        raise InvalidInputError(f"alpha has {alpha.m} entries but f has arity {f.m}")
    if budget < 1:
        raise InvalidInputError(f"budget must be positive, got {budget}")
    factors = resolve_refinements(alpha, f.n, refine)
    labels = list(range(1, f.m + 1))
    checked = 0
    modes: List[Tuple[int, str]] = []
    for factor in factors:
        n_cells = f.n * factor
        *counts, slack = partition_counts(alpha, n_cells)
        total = multinomial(n_cells, counts)
        if total <= budget:
            modes.append((factor, EXHAUSTIVE))
            partitions = enumerate_partitions(n_cells, counts)
            LOGGER.info(
                "Enumerating all %s partitions of %s cells, %s of them slack (refinement %s)",
                total,
                n_cells,
                slack,
                factor,
            )
        else:
            modes.append((factor, SAMPLED))
            partitions = sample_partitions(n_cells, counts, seed, budget)
            LOGGER.warning(
                "%s partitions of %s cells exceed the budget of %s, sampling instead (seed %s)",
                total,
                n_cells,
                budget,
                seed,
            )
        found, counterexample = _search(partitions, lambda p: product_set_integral(f, p), factor, labels)
        checked += found
        if counterexample is not None:
            LOGGER.info("Nonzero integral %s found at refinement %s", counterexample[1], factor)
            return OracleReport(
                False, checked, factor, _overall_mode(modes), counterexample, budget, seed, tuple(factors), tuple(modes)
            )
    return OracleReport(
        True, checked, factors[-1], _overall_mode(modes), None, budget, seed, tuple(factors), tuple(modes)
    )


def symmetric_family_check(
    f: StepFunction,
    r: int,
    alpha: Fraction,
    refine: int = 1,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> OracleReport:
    """
    Check that the integral of a symmetric f over A^{m-r} x (complement of A)^r
    vanishes for every grid set A of measure alpha

    Counterexamples are reported as partitions labelling A with 1 and its complement with 0.
    """
    if not is_symmetric(f):
        raise InvalidInputError("symmetric family check needs a symmetric function")
    if not 0 <= r <= f.m:
        raise InvalidInputError(f"r = {r} out of range 0..{f.m}")
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise InvalidInputError(f"alpha = {alpha} is not strictly between 0 and 1")
    if refine < 1:
        raise InvalidInputError(f"refinement factor must be positive, got {refine}")
    n_cells = f.n * refine
    chosen = alpha * n_cells
    if chosen.denominator != 1:
        raise InvalidInputError(f"alpha = {alpha} is incompatible with {n_cells} cells")
    total = math.comb(n_cells, int(chosen))
    mode = EXHAUSTIVE
    if total <= budget:
        partitions = enumerate_partitions(n_cells, [int(chosen)])
    else:
        mode = SAMPLED
        partitions = sample_partitions(n_cells, [int(chosen)], seed, budget)
        LOGGER.warning("%s sets exceed the budget of %s, sampling instead (seed %s)", total, budget, seed)
    found, counterexample = _search(partitions, lambda p: family_integral(f, r, p), refine, [1])
    return OracleReport(
        counterexample is None, found, refine, mode, counterexample, budget, seed, (refine,), ((refine, mode),)
    )


def partition_counts(alpha: AlphaVector, n_cells: int) -> List[int]:
    """
    Cells per label 1..m on an n_cells grid, followed by the slack count

    >>> partition_counts(AlphaVector.of("1/4", "1/2"), 4)
    [1, 2, 1]
    """
    counts = alpha.cell_counts(n_cells)
    return counts + [n_cells - sum(counts)]

