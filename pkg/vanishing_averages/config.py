"""
Configuration and document contracts
"""

from __future__ import annotations

from voluptuous import ALLOW_EXTRA, All, Any, Invalid, Length, Optional, Range, Required, Schema

from vanishing_averages.errors import InvalidInputError
from vanishing_averages.exact import RationalComplex, parse_rational
from vanishing_averages.oracle import DEFAULT_BUDGET


def Rational(value):  # pylint: disable=invalid-name
    """
    Coerce a "p/q" string or an integer into a Fraction
    """
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise Invalid(f"expected a rational string like '1/3', got {value!r}")
    try:
        return parse_rational(value)
    except InvalidInputError as err:
        raise Invalid(str(err)) from err


def _complex(document):
    return RationalComplex(document["re"], document["im"])


def _real(value):
    return RationalComplex(value)


POSITIVE = All(int, Range(min=1))
NON_NEGATIVE = All(int, Range(min=0))

COMPLEX_VALUE = Any(
    All({Required("re"): Rational, Optional("im", default=0): Rational}, _complex),
    All(Rational, _real),
)

CONFIG_CONTRACT = Schema(
    {
        Optional("budget", default=DEFAULT_BUDGET): POSITIVE,
        Optional("refine"): All([POSITIVE], Length(min=1)),
        Optional("seed", default=0): NON_NEGATIVE,
        Optional("sample_seed", default=0): NON_NEGATIVE,
    }
)

STEP_FUNCTION_CONTRACT = Schema(
    {
        Required("m"): POSITIVE,
        Required("n"): POSITIVE,
        Required("values"): [COMPLEX_VALUE],
    },
    extra=ALLOW_EXTRA,
)

EXPANSION_CONTRACT = Schema(
    {
        Required("m"): POSITIVE,
        Required("n"): POSITIVE,
        Required("components"): [
            {
                Required("S"): [POSITIVE],
                Required("fn"): STEP_FUNCTION_CONTRACT,
            }
        ],
    },
    extra=ALLOW_EXTRA,
)

GRAPH_CONTRACT = Schema(
    {
        Required("m"): POSITIVE,
        Required("edges"): [All([POSITIVE], Length(min=2, max=2))],
    }
)

GRAPHON_CONTRACT = Schema(
    {
        Required("n"): POSITIVE,
        Required("values"): [[Rational]],
    }
)
