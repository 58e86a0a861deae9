"""
JSON documents for step functions, expansions, graphs, graphons and reports

Rationals are written as lowest-terms "p/q" strings, integers as "p".
"""

from __future__ import annotations

from typing import IO, Dict, Optional

import ujson

from vanishing_averages.characterize import Certificate, Verdict
from vanishing_averages.config import EXPANSION_CONTRACT, GRAPH_CONTRACT, GRAPHON_CONTRACT, STEP_FUNCTION_CONTRACT
from vanishing_averages.errors import InvalidInputError
from vanishing_averages.exact import RationalComplex, format_rational
from vanishing_averages.oracle import OracleReport
from vanishing_averages.quasirandom import Graphon, GraphSpec
from vanishing_averages.stepfn import StepFunction, make_step_function, members, subset
from vanishing_averages.symmetric import KSet
from vanishing_averages.walsh import WalshExpansion


def complex_to_dict(value: RationalComplex) -> Dict:
    return {"re": format_rational(value.re), "im": format_rational(value.im)}


def step_function_to_dict(f: StepFunction) -> Dict:
    return {"m": f.m, "n": f.n, "values": [complex_to_dict(value) for value in f.flat()]}


def step_function_from_dict(document: Dict) -> StepFunction:
    """
    Validate a step function document and build the function
    """
    document = STEP_FUNCTION_CONTRACT(document)
    return make_step_function(document["m"], document["n"], document["values"])


def expansion_to_dict(expansion: WalshExpansion) -> Dict:
    return {
        "m": expansion.m,
        "n": expansion.n,
        "components": [
            {"S": list(members(mask)), "fn": step_function_to_dict(fn)}
            for mask, fn in sorted(expansion.components.items())
        ],
    }


def expansion_from_dict(document: Dict) -> WalshExpansion:
    document = EXPANSION_CONTRACT(document)
    components = {}
    for entry in document["components"]:
        mask = subset(*entry["S"])
        if mask in components:
            raise InvalidInputError(f"component {entry['S']} appears twice")
        components[mask] = step_function_from_dict(entry["fn"])
    return WalshExpansion(document["m"], document["n"], components)


def certificate_to_dict(certificate: Certificate) -> Dict:
    detail = {}
    if certificate.cell is not None:
        detail["cell"] = list(certificate.cell)
    if certificate.value is not None:
        detail["value"] = complex_to_dict(certificate.value)
    if certificate.pair is not None:
        detail["pair"] = list(certificate.pair)
    if certificate.ell is not None:
        detail["ell"] = certificate.ell
    if certificate.level is not None:
        detail["level"] = certificate.level
    if certificate.partition is not None:
        detail["partition"] = list(certificate.partition.labels)
    if certificate.refinement is not None:
        detail["refinement"] = certificate.refinement
    return {"kind": certificate.kind.value, "subset": list(members(certificate.subset)), "detail": detail}


def verdict_to_dict(verdict: Verdict) -> Dict:
    certificate: Optional[Dict] = None
    if verdict.certificate is not None:
        certificate = certificate_to_dict(verdict.certificate)
    return {"holds": verdict.holds, "certificate": certificate}


def oracle_report_to_dict(report: OracleReport) -> Dict:
    counterexample = None
    if report.counterexample is not None:
        partition, value = report.counterexample
        counterexample = {
            "n_cells": partition.n_cells,
            "labels": list(partition.labels),
            "integral": complex_to_dict(value),
        }
    return {
        "all_zero": report.all_zero,
        "partitions_checked": report.partitions_checked,
        "refinement": report.refinement,
        "factors": list(report.factors),
        "mode": report.mode,
        "factor_modes": [{"refinement": factor, "mode": mode} for factor, mode in report.factor_modes],
        "seed": report.seed,
        "budget": report.budget,
        "counterexample": counterexample,
    }


def kset_to_dict(kset: KSet) -> Dict:
    return {
        "m": kset.m,
        "r": kset.r,
        "alpha": format_rational(kset.alpha),
        "members": list(kset.members),
        "coefficients": [format_rational(value) for value in kset.coefficients],
    }


def graph_from_dict(document: Dict) -> GraphSpec:
    document = GRAPH_CONTRACT(document)
    return GraphSpec(document["m"], tuple(tuple(edge) for edge in document["edges"]))


def graph_to_dict(graph: GraphSpec) -> Dict:
    return {"m": graph.m, "edges": [list(edge) for edge in graph.edges]}


def graphon_from_dict(document: Dict) -> Graphon:
    document = GRAPHON_CONTRACT(document)
    return Graphon(document["n"], document["values"])


def graphon_to_dict(graphon: Graphon) -> Dict:
    return {"n": graphon.n, "values": [[format_rational(value) for value in row] for row in graphon.values]}


def load_json(path: str) -> Dict:
    with open(path, "r", encoding="utf-8") as handle:
        return ujson.load(handle)


def dump_json(document: Dict, handle: IO[str]) -> None:
    handle.write(ujson.dumps(document, indent=2, escape_forward_slashes=False))
    handle.write("\n")


def write_json(document: Dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        dump_json(document, handle)
