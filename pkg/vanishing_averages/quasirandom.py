"""
Graphons as step functions: homomorphism densities and the product-set
property P(F, alpha_1..alpha_m) for a graph F on vertices 1..m
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Optional, Sequence, Tuple

import numpy as np
from singer import get_logger

from vanishing_averages.characterize import Certificate, CertificateKind, Verdict, decide_vanishing
from vanishing_averages.errors import InvalidInputError
from vanishing_averages.exact import RationalComplex, Scalar, parse_rational
from vanishing_averages.oracle import DEFAULT_BUDGET, brute_force_vanishes
from vanishing_averages.stepfn import AlphaVector, StepFunction, constant_function, full_mask, symmetrize

LOGGER = get_logger("vanishing_averages")

ORACLE = "oracle"
THEOREM = "theorem"
METHODS = (ORACLE, THEOREM)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class GraphSpec:
    """
    Simple graph on vertices 1..m, edges stored as sorted pairs
    """

    m: int
    edges: Tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise InvalidInputError(f"a graph needs at least one vertex, got m={self.m}")
        normalized = []
        for edge in self.edges:
            i, j = edge
            if i == j:
                raise InvalidInputError(f"self-loop at vertex {i}")
            if not (1 <= i <= self.m and 1 <= j <= self.m):
                raise InvalidInputError(f"edge {list(edge)} leaves the vertex range 1..{self.m}")
            normalized.append((min(i, j), max(i, j)))
        if len(set(normalized)) != len(normalized):
            raise InvalidInputError("duplicate edge")
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    def neighbors(self, vertex: int) -> FrozenSet[int]:
        return frozenset(j if i == vertex else i for i, j in self.edges if vertex in (i, j))

    def disjoint_union(self, other: "GraphSpec") -> "GraphSpec":
        """
        Vertices of other are shifted by self.m
        """
        shifted = tuple((i + self.m, j + self.m) for i, j in other.edges)
        return GraphSpec(self.m + other.m, self.edges + shifted)


def complete_graph(m: int) -> GraphSpec:
    return GraphSpec(m, tuple((i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)))


def path_graph(m: int) -> GraphSpec:
    return GraphSpec(m, tuple((i, i + 1) for i in range(1, m)))


def cycle_graph(m: int) -> GraphSpec:
    if m < 3:
        raise InvalidInputError(f"a cycle needs at least 3 vertices, got {m}")
    return GraphSpec(m, path_graph(m).edges + ((1, m),))


def star_graph(leaves: int) -> GraphSpec:
    """
    Center 1 joined to the vertices 2..leaves+1
    """
    return GraphSpec(leaves + 1, tuple((1, leaf) for leaf in range(2, leaves + 2)))


@dataclass(frozen=True, eq=False)
class Graphon:
    """
    Symmetric n x n block graphon with exact entries in [0, 1]
    """

    n: int
    values: np.ndarray

    def __post_init__(self) -> None:
        raw = np.asarray(self.values, dtype=object)
        if raw.shape != (self.n, self.n):
            raise InvalidInputError(f"graphon values of shape {raw.shape}, expected {(self.n, self.n)}")
        values = np.empty(raw.shape, dtype=object)
        for index, entry in np.ndenumerate(raw):
            values[index] = parse_rational(entry)
        for a in range(self.n):
            for b in range(self.n):
                if not 0 <= values[a, b] <= 1:
                    raise InvalidInputError(f"graphon entry {values[a, b]} at {(a, b)} is outside [0, 1]")
                if values[a, b] != values[b, a]:
                    raise InvalidInputError(f"graphon is not symmetric at {(a, b)}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "Graphon":
        return cls(len(rows), np.array(rows, dtype=object))

    @classmethod
    def constant(cls, p: Scalar, n: int = 1) -> "Graphon":
        return cls(n, np.full((n, n), parse_rational(p), dtype=object))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graphon):
            return NotImplemented
        return self.n == other.n and bool((self.values == other.values).all())

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.values.flat)))

    def is_constant(self) -> bool:
        return len(set(self.values.flat)) == 1

    def as_step_function(self) -> StepFunction:
        return StepFunction(2, self.n, _to_complex(self.values))


def _to_complex(values: np.ndarray) -> np.ndarray:
    converted = np.empty(values.shape, dtype=object)
    for index, value in np.ndenumerate(values):
        converted[index] = RationalComplex.of(value)
    return converted


def edge_product(graph: GraphSpec, graphon: Graphon) -> StepFunction:
    """
    Arity-m step function x -> product over edges ij of W(x_i, x_j)
    """
    n = graphon.n
    weights = _to_complex(graphon.values)
    values = constant_function(graph.m, n, 1).values
    for i, j in graph.edges:
        shape = [1] * graph.m
        shape[i - 1] = n
        shape[j - 1] = n
        values = values * weights.reshape(shape)
    return StepFunction(graph.m, n, values)


def hom_density(graph: GraphSpec, graphon: Graphon) -> Fraction:
    """
    t(F, W): the cube average of the edge product
    """
    return edge_product(graph, graphon).total().re


def _integrand(graph: GraphSpec, graphon: Graphon, p: Fraction, symmetrized: bool) -> StepFunction:
    product = edge_product(graph, graphon)
    if symmetrized:
        product = symmetrize(product)
    return product - constant_function(graph.m, graphon.n, p ** len(graph.edges))


def _compatible_factor(alpha: AlphaVector, n: int) -> int:
    denominator = math.lcm(*(entry.denominator for entry in alpha.entries))
    return denominator // math.gcd(denominator, n)


def _decide(
    integrand: StepFunction,
    alpha: AlphaVector,
    refine: Optional[Sequence[int]],
    budget: int,
    seed: int,
    method: str,
) -> Verdict:
    if method == THEOREM:
        factor = _compatible_factor(alpha, integrand.n)
        LOGGER.debug("Refining the integrand by %s to match alpha", factor)
        return decide_vanishing(integrand.refine(factor), alpha)
    if method != ORACLE:
        raise InvalidInputError(f"unknown method {method!r}, expected one of {list(METHODS)}")
    report = brute_force_vanishes(integrand, alpha, refine, budget, seed)
    if report.all_zero:
        return Verdict.success()
    partition, value = report.counterexample
    return Verdict.failure(
        Certificate(
            CertificateKind.COUNTEREXAMPLE_PARTITION,
            full_mask(integrand.m),
            value=value,
            partition=partition,
            refinement=report.refinement,
        )
    )


def _check_graph_alpha(graph: GraphSpec, alpha: AlphaVector) -> None:
    if alpha.m != graph.m:
        raise InvalidInputError(f"alpha has {alpha.m} entries but F has {graph.m} vertices")


def test_property_P(
    graph: GraphSpec,
    alpha: AlphaVector,
    p: Scalar,
    graphon: Graphon,
    refine: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    method: str = ORACLE,
) -> Verdict:
    """
    Does the integral of the edge product over every A_1 x ... x A_m equal
    p^|E(F)| times the product of the alpha_i?

    :param graph: F on vertices 1..m
    :param alpha: measures of the disjoint sets
    :param p: target edge density
    :param graphon: W
    :param refine: oracle refinement factors
    :param method: "oracle" searches grid partitions, "theorem" decides exactly
    :return: verdict; oracle failures carry the counterexample partition
    """
    _check_graph_alpha(graph, alpha)
    integrand = _integrand(graph, graphon, parse_rational(p), symmetrized=False)
    return _decide(integrand, alpha, refine, budget, seed, method)


def test_property_P_sym(
    graph: GraphSpec,
    alpha: AlphaVector,
    p: Scalar,
    graphon: Graphon,
    refine: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    method: str = ORACLE,
) -> Verdict:
    """
    test_property_P with the edge product averaged over all m! relabellings
    of the vertices
    """
    _check_graph_alpha(graph, alpha)
    integrand = _integrand(graph, graphon, parse_rational(p), symmetrized=True)
    return _decide(integrand, alpha, refine, budget, seed, method)


# not collected as tests
test_property_P.__test__ = False
test_property_P_sym.__test__ = False


def find_twins(graph: GraphSpec) -> Optional[Edge]:
    """
    Smallest pair u < v of vertices with the same neighbors
    """
    neighbors = {vertex: graph.neighbors(vertex) for vertex in range(1, graph.m + 1)}
    for u in range(1, graph.m + 1):
        for v in range(u + 1, graph.m + 1):
            if neighbors[u] == neighbors[v]:
                return (u, v)
    return None
