from __future__ import annotations

import os

from vanishing_averages.oracle import DEFAULT_BUDGET


def get_config():
    # --------------------------------------------------------------------------
    # Default settings for the integration sweeps.
    # --------------------------------------------------------------------------
    # Override with environment variables to run narrower or wider sweeps
    # --------------------------------------------------------------------------
    config = {
        "seeds": int(os.environ.get("VANISHING_AVERAGES_SEEDS", "20")),
        "expansion_cases": int(os.environ.get("VANISHING_AVERAGES_EXPANSION_CASES", "100")),
        "closure_cases": int(os.environ.get("VANISHING_AVERAGES_CLOSURE_CASES", "50")),
        "budget": int(os.environ.get("VANISHING_AVERAGES_BUDGET", str(DEFAULT_BUDGET))),
        "max_m": int(os.environ.get("VANISHING_AVERAGES_MAX_M", "4")),
    }

    return config


def get_test_config():
    return get_config()
