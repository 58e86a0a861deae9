"""
Generalized Walsh (Hoeffding) expansion f = sum over S of F_S
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional

from singer import get_logger

from vanishing_averages.errors import InvalidInputError
from vanishing_averages.stepfn import (
    StepFunction,
    check_mask,
    complement,
    depends_only_on,
    full_mask,
    marginalize,
    members,
    size,
    subset,
    submasks,
    zero_function,
)

LOGGER = get_logger("vanishing_averages")

LevelSelector = Callable[[int], bool]

SELECTOR_PATTERN = re.compile(r"^\s*(<=|>=|=|==|<|>)\s*(\d+)\s*$")
SELECTOR_OPERATORS = {
    "=": operator.eq,
    "==": operator.eq,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}


@dataclass(frozen=True, eq=False)
class WalshExpansion:
    """
    Components F_S of a step function, one per subset bitmask S, each stored
    at full arity m and constant along the complement of S
    """

    m: int
    n: int
    components: Mapping[int, StepFunction]

    def __post_init__(self) -> None:
        components = dict(self.components)
        for mask, component_fn in components.items():
            check_mask(mask, self.m)
            if component_fn.shape != (self.m, self.n):
                raise InvalidInputError(
                    f"component {list(members(mask))} has shape {component_fn.shape}, expected {(self.m, self.n)}"
                )
        for mask in range(1 << self.m):
            components.setdefault(mask, zero_function(self.m, self.n))
        object.__setattr__(self, "components", dict(sorted(components.items())))

    def __getitem__(self, mask: int) -> StepFunction:
        return self.components[mask]

    def __eq__(self, other) -> bool:
        if not isinstance(other, WalshExpansion):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and all(
            self.components[mask] == other.components[mask] for mask in self.components
        )

    def level(self, k: int) -> StepFunction:
        """
        f^{=k}: the sum of all components on subsets of size k
        """
        return self.select(lambda level: level == k)

    def select(self, selector: LevelSelector) -> StepFunction:
        total = zero_function(self.m, self.n)
        for mask, component_fn in self.components.items():
            if selector(size(mask)):
                total = total + component_fn
        return total


def _marginals(f: StepFunction, mask: int, cache: Dict[int, StepFunction]) -> Dict[int, StepFunction]:
    # marginal over the complement of T for every T inside mask: integral of f(y_T, x_Tbar) dx_Tbar
    for sub in submasks(mask):
        if sub not in cache:
            cache[sub] = marginalize(f, complement(sub, f.m))
    return cache


def _inclusion_exclusion(mask: int, marginals: Mapping[int, StepFunction]) -> StepFunction:
    values = None
    for sub in submasks(mask):
        term = marginals[sub].values
        if size(mask & ~sub) % 2:
            term = -term
        values = term if values is None else values + term
    first = marginals[mask]
    return StepFunction(first.m, first.n, values)


def component(f: StepFunction, mask: int) -> StepFunction:
    """
    F_S(y) = sum over T inside S of (-1)^{|S minus T|} times the average of f(y_T, x) over the other coordinates
    """
    check_mask(mask, f.m)
    return _inclusion_exclusion(mask, _marginals(f, mask, {}))


def expand(f: StepFunction) -> WalshExpansion:
    """
    The unique Walsh expansion of f, computed exactly by inclusion-exclusion
    over the subset lattice
    """
    LOGGER.debug("Expanding step function m=%s n=%s", f.m, f.n)
    marginals = _marginals(f, full_mask(f.m), {})
    components = {mask: _inclusion_exclusion(mask, marginals) for mask in range(1 << f.m)}
    return WalshExpansion(f.m, f.n, components)


def reconstruct(expansion: WalshExpansion) -> StepFunction:
    """
    Cell-wise sum of all components
    """
    return expansion.select(lambda _: True)


def level_selector(text: str) -> LevelSelector:
    """
    Parse "=k", "<=k", "<k", ">=k" or ">k" into a predicate on levels

    >>> level_selector("<=1")(1), level_selector("<=1")(2)
    (True, False)
    """
    match = SELECTOR_PATTERN.match(text)
    if not match:
        raise InvalidInputError(f"invalid level selector {text!r}, expected e.g. '=1' or '<=2'")
    compare = SELECTOR_OPERATORS[match.group(1)]
    bound = int(match.group(2))
    return lambda level: compare(level, bound)


def project(f: StepFunction, selector: LevelSelector, expansion: Optional[WalshExpansion] = None) -> StepFunction:
    """
    Sum of the components F_S whose level |S| satisfies the selector
    """
    expansion = expansion if expansion is not None else expand(f)
    return expansion.select(selector)


def is_walsh(fn: StepFunction, mask: int) -> bool:
    """
    True iff fn depends only on the coordinates of mask and averages to zero
    along each of them
    """
    check_mask(mask, fn.m)
    if not depends_only_on(fn, mask):
        return False
    return all(marginalize(fn, subset(coord)).is_zero() for coord in members(mask))
