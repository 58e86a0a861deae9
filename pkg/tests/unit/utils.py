from __future__ import annotations

from hypothesis import strategies as st

from vanishing_averages.stepfn import StepFunction, make_step_function

ANTISYMMETRIC_3 = [0, 1, -1, -1, 0, 1, 1, -1, 0]


def step(m: int, n: int, *values) -> StepFunction:
    return make_step_function(m, n, list(values))


@st.composite
def step_functions(draw, min_m=1, max_m=3, min_n=1, max_n=3, fixed_m=None, fixed_n=None):
    m = fixed_m if fixed_m is not None else draw(st.integers(min_m, max_m))
    n = fixed_n if fixed_n is not None else draw(st.integers(min_n, max_n))
    values = draw(st.lists(st.integers(-5, 5), min_size=n**m, max_size=n**m))
    return make_step_function(m, n, values)


@st.composite
def same_shape_pairs(draw, max_m=3, max_n=3):
    first = draw(step_functions(max_m=max_m, max_n=max_n))
    second = draw(step_functions(fixed_m=first.m, fixed_n=first.n))
    return first, second
