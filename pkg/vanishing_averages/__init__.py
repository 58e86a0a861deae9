"""
vanishing-averages command line entry point
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Dict, List, Optional, Tuple

import singer
from singer import get_logger
from voluptuous import Invalid

from vanishing_averages import codec
from vanishing_averages.characterize import decide_vanishing
from vanishing_averages.config import CONFIG_CONTRACT
from vanishing_averages.construct import construct_solution, construct_symmetric_solution
from vanishing_averages.errors import InvalidInputError
from vanishing_averages.exact import parse_rational, parse_rational_list
from vanishing_averages.oracle import brute_force_vanishes, symmetric_family_check
from vanishing_averages.quasirandom import METHODS, ORACLE, find_twins, test_property_P, test_property_P_sym
from vanishing_averages.stepfn import AlphaVector
from vanishing_averages.symmetric import compute_K, decide_symmetric_function, decide_symmetric_vanishing
from vanishing_averages.walsh import expand, level_selector, project

__version__ = "1.0.0"

LOGGER = get_logger("vanishing_averages")

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_INPUT = 2

Result = Tuple[Dict, int]


def _alpha_vector(text: str) -> AlphaVector:
    return AlphaVector(tuple(parse_rational_list(text)))


def _require_r(args: argparse.Namespace) -> int:
    if args.r is None:
        raise InvalidInputError("--symmetric needs -r")
    return args.r


def _write_output(args: argparse.Namespace, document: Dict) -> None:
    if args.output:
        codec.write_json(document, args.output)
        LOGGER.info("Wrote %s", args.output)


def do_decompose(args: argparse.Namespace, config: Dict) -> Result:  # pylint: disable=unused-argument
    """
    Walsh expansion of a step function, or a single level projection with --level
    :param args: parsed command line
    :param config: resolved configuration
    :return: report fields and exit code
    """
    f = codec.step_function_from_dict(codec.load_json(args.input))
    if args.level:
        document = codec.step_function_to_dict(project(f, level_selector(args.level)))
        _write_output(args, document)
        return {"level": args.level, "function": document}, EXIT_OK
    document = codec.expansion_to_dict(expand(f))
    _write_output(args, document)
    return {"expansion": document}, EXIT_OK


def do_check(args: argparse.Namespace, config: Dict) -> Result:  # pylint: disable=unused-argument
    """
    Exact verdict for a step function read from a file

    --symmetric with -r checks the A^(m-r) x complement^r family, without -r
    it decides a symmetric f against the full alpha vector
    """
    f = codec.step_function_from_dict(codec.load_json(args.input))
    if args.symmetric and args.r is not None:
        verdict = decide_symmetric_vanishing(f, args.r, parse_rational(args.alpha))
    elif args.symmetric:
        verdict = decide_symmetric_function(f, _alpha_vector(args.alpha))
    else:
        verdict = decide_vanishing(f, _alpha_vector(args.alpha))
    return codec.verdict_to_dict(verdict), EXIT_OK if verdict.holds else EXIT_FAILS


def do_construct(args: argparse.Namespace, config: Dict) -> Result:
    """
    Seeded solution, written to -o when given and always echoed in the report
    """
    if args.symmetric:
        f = construct_symmetric_solution(args.m, _require_r(args), parse_rational(args.alpha), args.n, config["seed"])
    else:
        f = construct_solution(args.m, args.n, _alpha_vector(args.alpha), config["seed"])
    document = codec.step_function_to_dict(f)
    _write_output(args, document)
    return {"function": document}, EXIT_OK


def do_oracle(args: argparse.Namespace, config: Dict) -> Result:
    """
    Brute-force search over grid partitions
    """
    f = codec.step_function_from_dict(codec.load_json(args.input))
    if args.symmetric:
        r = _require_r(args)
        alpha = parse_rational(args.alpha)
        for factor in config.get("refine") or [1]:
            report = symmetric_family_check(f, r, alpha, factor, config["budget"], config["sample_seed"])
            if not report.all_zero:
                break
    else:
        report = brute_force_vanishes(
            f, _alpha_vector(args.alpha), config.get("refine"), config["budget"], config["sample_seed"]
        )
    return codec.oracle_report_to_dict(report), EXIT_OK if report.all_zero else EXIT_FAILS


def do_kset(args: argparse.Namespace, config: Dict) -> Result:  # pylint: disable=unused-argument
    """
    Levels with vanishing coefficient, with every coefficient listed
    """
    return codec.kset_to_dict(compute_K(args.m, args.r, parse_rational(args.alpha))), EXIT_OK


def do_graphon_test(args: argparse.Namespace, config: Dict) -> Result:
    """
    Product-set property of a graph and a graphon
    """
    graph = codec.graph_from_dict(codec.load_json(args.graph))
    graphon = codec.graphon_from_dict(codec.load_json(args.graphon))
    test = test_property_P_sym if args.symmetrized else test_property_P
    verdict = test(
        graph,
        _alpha_vector(args.alpha),
        parse_rational(args.p),
        graphon,
        refine=config.get("refine"),
        budget=config["budget"],
        seed=config["sample_seed"],
        method=args.method,
    )
    result = codec.verdict_to_dict(verdict)
    twins = find_twins(graph)
    result["twins"] = list(twins) if twins else None
    return result, EXIT_OK if verdict.holds else EXIT_FAILS


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from err


def _add_parser(
    subparsers, name: str, handler: Callable[[argparse.Namespace, Dict], Result], common: argparse.ArgumentParser
) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(name, parents=[common], help=(handler.__doc__ or "").strip().splitlines()[0])
    parser.set_defaults(handler=handler)
    return parser


def _add_symmetric(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--symmetric", action="store_true", help="use the A^(m-r) x complement^r family")
    parser.add_argument("-r", type=int, help="number of complement factors with --symmetric")


def _add_oracle_settings(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--refine", type=_int_list, help="refinement factors, e.g. 1,2,3")
    parser.add_argument("--budget", type=int, help="largest partition count enumerated exhaustively")
    parser.add_argument("--sample-seed", dest="sample_seed", type=int, help="seed for sampled oracle runs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vanishing-averages",
        description="Functions with vanishing averages over products of disjoint sets",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="JSON configuration file")
    common.add_argument("-o", "--output", help="write the produced function to this file")
    subparsers = parser.add_subparsers(dest="command", required=True)

    decompose = _add_parser(subparsers, "decompose", do_decompose, common)
    decompose.add_argument("-i", "--input", required=True)
    decompose.add_argument("--level", help="level selector: =k, <=k, <k, >=k or >k")

    check = _add_parser(subparsers, "check", do_check, common)
    check.add_argument("-i", "--input", required=True)
    check.add_argument("--alpha", required=True)
    _add_symmetric(check)

    construct = _add_parser(subparsers, "construct", do_construct, common)
    construct.add_argument("-m", type=int, required=True)
    construct.add_argument("-n", type=int, required=True)
    construct.add_argument("--alpha", required=True)
    construct.add_argument("--seed", type=int)
    _add_symmetric(construct)

    oracle = _add_parser(subparsers, "oracle", do_oracle, common)
    oracle.add_argument("-i", "--input", required=True)
    oracle.add_argument("--alpha", required=True)
    _add_symmetric(oracle)
    _add_oracle_settings(oracle)

    kset = _add_parser(subparsers, "kset", do_kset, common)
    kset.add_argument("-m", type=int, required=True)
    kset.add_argument("-r", type=int, required=True)
    kset.add_argument("--alpha", required=True)

    graphon = _add_parser(subparsers, "graphon-test", do_graphon_test, common)
    graphon.add_argument("--graph", required=True)
    graphon.add_argument("--graphon", required=True)
    graphon.add_argument("--alpha", required=True)
    graphon.add_argument("-p", "--p", required=True)
    graphon.add_argument("--method", choices=METHODS, default=ORACLE)
    graphon.add_argument("--symmetrized", action="store_true")
    _add_oracle_settings(graphon)
    return parser


def resolve_config(args: argparse.Namespace) -> Dict:
    """
    Configuration file values overridden by command line flags
    :param args: parsed command line
    :return: validated configuration with defaults filled in
    """
    config = codec.load_json(args.config) if args.config else {}
    for key in ("budget", "refine", "seed", "sample_seed"):
        value = getattr(args, key, None)
        if value is not None:
            config[key] = value
    return CONFIG_CONTRACT(config)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse argv, dispatch and print the JSON report
    :param argv: arguments without the program name
    :return: 0 when the verdict holds, 1 when it fails, 2 on bad input
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else EXIT_INPUT
    try:
        config = resolve_config(args)
        result, code = args.handler(args, config)
    except (ValueError, Invalid, OSError) as err:
        LOGGER.error("%s", err)
        return EXIT_INPUT
    report = {
        "version": __version__,
        "command": args.command,
        "config": {key: config.get(key) for key in ("budget", "refine", "seed", "sample_seed")},
    }
    report.update(result)
    codec.dump_json(report, sys.stdout)
    return code


@singer.utils.handle_top_exception(LOGGER)
def main() -> None:
    """
    Main function
    :return: None
    """
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
