"""
Exact m-variate step functions on the unit cube

A step function is constant on the cells of a uniform n x ... x n grid. Its
values live in a numpy object array of shape (n,) * m whose axis 0 is
coordinate 1, so the row-major flattening has coordinate 1 varying slowest.
Coordinate subsets are int bitmasks with coordinate 1 as the least
significant bit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from vanishing_averages.errors import InvalidInputError
from vanishing_averages.exact import ZERO, RationalComplex, Scalar, parse_rational

CellIndex = Tuple[int, ...]


def subset(*coords: int) -> int:
    """
    Bitmask of the given 1-based coordinates

    >>> subset(1, 3)
    5
    """
    mask = 0
    for coord in coords:
        if coord < 1:
            raise InvalidInputError(f"coordinates are 1-based, got {coord}")
        mask |= 1 << (coord - 1)
    return mask


def members(mask: int) -> Tuple[int, ...]:
    """
    Sorted 1-based coordinates of a bitmask

    >>> members(6)
    (2, 3)
    """
    return tuple(bit + 1 for bit in range(mask.bit_length()) if mask >> bit & 1)


def size(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(m: int) -> int:
    return (1 << m) - 1


def complement(mask: int, m: int) -> int:
    return full_mask(m) & ~mask


def submasks(mask: int) -> Iterator[int]:
    """
    Every submask of mask, including 0 and mask itself, in increasing order
    """
    return (sub for sub in range(mask + 1) if sub & mask == sub)


def check_mask(mask: int, m: int) -> None:
    if mask < 0 or mask >= 1 << m:
        raise InvalidInputError(f"subset bitmask {mask} is not valid for arity {m}")


def permutation_sign(permutation: Sequence[int]) -> int:
    """
    Sign of a permutation given as a sequence of distinct sortable items
    """
    sign = 1
    items = list(permutation)
    for i, _ in enumerate(items):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class AlphaVector:
    """
    Measures alpha_1..alpha_m, each strictly between 0 and 1, summing to at most 1
    """

    entries: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        entries = tuple(parse_rational(entry) for entry in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise InvalidInputError("alpha needs at least one entry")
        for entry in entries:
            if not 0 < entry < 1:
                raise InvalidInputError(f"alpha entry {entry} is not strictly between 0 and 1")
        if self.total > 1:
            raise InvalidInputError(f"alpha sums to {self.total} > 1")

    @classmethod
    def of(cls, *entries) -> "AlphaVector":
        return cls(tuple(entries))

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    def is_complete(self) -> bool:
        """
        True when the measures add up to exactly 1
        """
        return self.total == 1

    def __getitem__(self, coord: int) -> Fraction:
        """
        alpha of a 1-based coordinate
        """
        return self.entries[coord - 1]

    def product(self, mask: int) -> Fraction:
        """
        Product of alpha_i over the coordinates of a subset (1 for the empty set)
        """
        result = Fraction(1)
        for coord in members(mask):
            result *= self[coord]
        return result

    def is_compatible(self, n: int) -> bool:
        return all((entry * n).denominator == 1 for entry in self.entries)

    def check_resolution(self, n: int) -> None:
        """
        Raise when some alpha_i * n is not an integer
        """
        for coord, entry in enumerate(self.entries, start=1):
            if (entry * n).denominator != 1:
                raise InvalidInputError(
                    f"alpha_{coord} = {entry} is incompatible with resolution {n}: "
                    f"{n}*{entry} is not an integer"
                )

    def cell_counts(self, n: int) -> List[int]:
        self.check_resolution(n)
        return [int(entry * n) for entry in self.entries]


def _object_array(values: Sequence, shape: Tuple[int, ...]) -> np.ndarray:
    array = np.empty(len(values), dtype=object)
    for position, value in enumerate(values):
        array[position] = value
    return array.reshape(shape)


@dataclass(frozen=True, eq=False)
class StepFunction:
    """
    m-variate step function on an n^m grid with exact rational-complex values
    """

    m: int
    n: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise InvalidInputError(f"arity and resolution must be positive, got m={self.m}, n={self.n}")
        if self.values.shape != (self.n,) * self.m:
            raise InvalidInputError(f"values of shape {self.values.shape} do not match m={self.m}, n={self.n}")
        values = self.values
        if values.dtype != object or values.flags.writeable:
            values = np.array(values, dtype=object)
            values.flags.writeable = False
            object.__setattr__(self, "values", values)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.m, self.n)

    def __call__(self, cell: Sequence[int]) -> RationalComplex:
        cell = tuple(cell)
        if len(cell) != self.m or any(not 0 <= c < self.n for c in cell):
            raise InvalidInputError(f"cell {cell} is not a valid cell of an arity {self.m}, resolution {self.n} grid")
        return self.values[cell]

    def flat(self) -> List[RationalComplex]:
        """
        Cell values in row-major order, coordinate 1 slowest
        """
        return list(self.values.reshape(-1))

    def cells(self) -> Iterator[CellIndex]:
        return itertools.product(range(self.n), repeat=self.m)

    def is_zero(self) -> bool:
        return all(value == ZERO for value in self.values.flat)

    def first_nonzero(self) -> Optional[CellIndex]:
        """
        Row-major first cell holding a nonzero value, None for the zero function
        """
        for cell in self.cells():
            if self.values[cell] != ZERO:
                return cell
        return None

    def same_shape(self, other: "StepFunction") -> bool:
        return self.m == other.m and self.n == other.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self.same_shape(other) and all(a == b for a, b in zip(self.values.flat, other.values.flat))

    def __hash__(self) -> int:
        return hash((self.m, self.n, tuple(self.values.flat)))

    def _check_same_shape(self, other: "StepFunction") -> None:
        if not self.same_shape(other):
            raise InvalidInputError(f"shape mismatch: (m={self.m}, n={self.n}) vs (m={other.m}, n={other.n})")

    def __add__(self, other: "StepFunction") -> "StepFunction":
        self._check_same_shape(other)
        return StepFunction(self.m, self.n, self.values + other.values)

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        self._check_same_shape(other)
        return StepFunction(self.m, self.n, self.values - other.values)

    def __neg__(self) -> "StepFunction":
        return StepFunction(self.m, self.n, -self.values)

    def scale(self, factor: Scalar) -> "StepFunction":
        return StepFunction(self.m, self.n, self.values * RationalComplex.of(factor))

    def total(self) -> RationalComplex:
        """
        Average over the whole cube (every cell has mass n^-m)
        """
        return sum(self.values.flat, ZERO) / self.n**self.m

    def refine(self, factor: int) -> "StepFunction":
        """
        The same function written on the finer grid of resolution n * factor
        """
        if factor < 1:
            raise InvalidInputError(f"refinement factor must be positive, got {factor}")
        values = self.values
        for axis in range(self.m):
            values = np.repeat(values, factor, axis=axis)
        return StepFunction(self.m, self.n * factor, values)

    def __repr__(self) -> str:
        return f"StepFunction(m={self.m}, n={self.n}, values=[{', '.join(str(v) for v in self.values.flat)}])"


def make_step_function(m: int, n: int, values: Sequence[Scalar]) -> StepFunction:
    """
    Build a step function from its n^m cell values listed in row-major order
    """
    if m < 1 or n < 1:
        raise InvalidInputError(f"arity and resolution must be positive, got m={m}, n={n}")
    expected = n**m
    if len(values) != expected:
        raise InvalidInputError(f"expected {expected} values for m={m}, n={n}, got {len(values)}")
    return StepFunction(m, n, _object_array([RationalComplex.of(value) for value in values], (n,) * m))


def constant_function(m: int, n: int, value: Scalar) -> StepFunction:
    return make_step_function(m, n, [RationalComplex.of(value)] * n**m)


def zero_function(m: int, n: int) -> StepFunction:
    return constant_function(m, n, ZERO)


def _axes(mask: int) -> Tuple[int, ...]:
    return tuple(coord - 1 for coord in members(mask))


def _broadcast(f: StepFunction, values: np.ndarray) -> StepFunction:
    return StepFunction(f.m, f.n, np.broadcast_to(values, (f.n,) * f.m).copy())


def marginalize(f: StepFunction, mask: int) -> StepFunction:
    """
    Average f over the coordinates in mask; the result keeps arity m and is
    constant along those coordinates
    """
    check_mask(mask, f.m)
    if mask == 0:
        return f
    axes = _axes(mask)
    summed = f.values.sum(axis=axes, keepdims=True)
    return _broadcast(f, summed / f.n ** len(axes))


def fiber(f: StepFunction, mask: int, y: Mapping[int, int]) -> StepFunction:
    """
    f_y: fix the coordinates of mask to the cells in y, keep arity m

    :param f: step function
    :param mask: coordinates being fixed
    :param y: 1-based coordinate -> cell index, for exactly the coordinates of mask
    :return: f_y extended to [0,1]^m, constant along mask
    """
    check_mask(mask, f.m)
    fixed = set(members(mask))
    outside = set(y) - fixed
    if outside:
        raise InvalidInputError(f"fiber assigns coordinates {sorted(outside)} outside of subset {sorted(fixed)}")
    missing = fixed - set(y)
    if missing:
        raise InvalidInputError(f"fiber misses coordinates {sorted(missing)}")
    if mask == 0:
        return f
    index = []
    for coord in range(1, f.m + 1):
        if coord in fixed:
            cell = y[coord]
            if not 0 <= cell < f.n:
                raise InvalidInputError(f"cell {cell} out of range for resolution {f.n}")
            index.append(slice(cell, cell + 1))
        else:
            index.append(slice(None))
    return _broadcast(f, f.values[tuple(index)])


def _check_coord(f: StepFunction, coord: int) -> None:
    if not 1 <= coord <= f.m:
        raise InvalidInputError(f"coordinate {coord} out of range 1..{f.m}")


def swap_coords(f: StepFunction, i: int, j: int) -> StepFunction:
    """
    g(x) = f(x with x_i and x_j interchanged)
    """
    _check_coord(f, i)
    _check_coord(f, j)
    if i == j:
        return f
    return StepFunction(f.m, f.n, np.swapaxes(f.values, i - 1, j - 1))


def permute_coords(f: StepFunction, axes: Sequence[int]) -> StepFunction:
    """
    Reorder coordinates: axis k of the result is coordinate axes[k] of f

    :param axes: a permutation of 1..m
    """
    if sorted(axes) != list(range(1, f.m + 1)):
        raise InvalidInputError(f"{list(axes)} is not a permutation of 1..{f.m}")
    return StepFunction(f.m, f.n, np.transpose(f.values, [axis - 1 for axis in axes]))


def _permutations_of(f: StepFunction, mask: int) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    coords = members(mask)
    for image in itertools.permutations(coords):
        axes = list(range(1, f.m + 1))
        for source, target in zip(coords, image):
            axes[source - 1] = target
        yield permutation_sign(image), tuple(axes)


def antisymmetrize(f: StepFunction, mask: int) -> StepFunction:
    """
    Projection onto functions alternating in the coordinates of mask:
    (1/|S|!) sum over permutations pi of S of sign(pi) f o pi
    """
    check_mask(mask, f.m)
    if size(mask) <= 1:
        return f
    total = None
    for sign, axes in _permutations_of(f, mask):
        term = np.transpose(f.values, [axis - 1 for axis in axes])
        term = term if sign > 0 else -term
        total = term if total is None else total + term
    return StepFunction(f.m, f.n, total / math.factorial(size(mask)))


def symmetrize(f: StepFunction, mask: Optional[int] = None) -> StepFunction:
    """
    Average of f over all permutations of the coordinates in mask (all coordinates by default)
    """
    mask = full_mask(f.m) if mask is None else mask
    check_mask(mask, f.m)
    if size(mask) <= 1:
        return f
    total = None
    for _, axes in _permutations_of(f, mask):
        term = np.transpose(f.values, [axis - 1 for axis in axes])
        total = term if total is None else total + term
    return StepFunction(f.m, f.n, total / math.factorial(size(mask)))


def _transpositions(mask: int) -> Iterator[Tuple[int, int]]:
    return itertools.combinations(members(mask), 2)


def is_alternating(f: StepFunction, mask: int) -> bool:
    """
    True iff interchanging any two coordinates of mask flips the sign of f exactly
    """
    check_mask(mask, f.m)
    return all(swap_coords(f, i, j) == -f for i, j in _transpositions(mask))


def alternation_defect(f: StepFunction, mask: int) -> Optional[Tuple[Tuple[int, int], CellIndex]]:
    """
    First transposition (i, j) of mask and row-major first cell c with
    f(c) + f(c with c_i, c_j interchanged) != 0, None when f is alternating
    """
    check_mask(mask, f.m)
    for i, j in _transpositions(mask):
        cell = (swap_coords(f, i, j) + f).first_nonzero()
        if cell is not None:
            return (i, j), cell
    return None


def is_symmetric(f: StepFunction, mask: Optional[int] = None) -> bool:
    mask = full_mask(f.m) if mask is None else mask
    check_mask(mask, f.m)
    return all(swap_coords(f, i, j) == f for i, j in _transpositions(mask))


def depends_only_on(f: StepFunction, mask: int) -> bool:
    """
    True iff f is constant along every coordinate outside mask
    """
    rest = complement(mask, f.m)
    return marginalize(f, rest) == f


def linear_combine(coeffs: Sequence[Scalar], fns: Sequence[StepFunction]) -> StepFunction:
    """
    Exact cell-wise sum of coeffs[k] * fns[k]
    """
    if len(coeffs) != len(fns):
        raise InvalidInputError(f"{len(coeffs)} coefficients for {len(fns)} functions")
    if not fns:
        raise InvalidInputError("linear_combine needs at least one function")
    first = fns[0]
    total = None
    for coeff, fn in zip(coeffs, fns):
        first._check_same_shape(fn)  # pylint: disable=protected-access
        term = fn.values * RationalComplex.of(coeff)
        total = term if total is None else total + term
    return StepFunction(first.m, first.n, total)


def extend(f: StepFunction, m: int, coords: Sequence[int]) -> StepFunction:
    """
    Extension of an arity-k function to [0,1]^m: coordinate t of f becomes
    coordinate coords[t] of the result, which is constant along the others
    """
    if len(coords) != f.m or len(set(coords)) != f.m:
        raise InvalidInputError(f"need {f.m} distinct target coordinates, got {list(coords)}")
    if any(not 1 <= coord <= m for coord in coords):
        raise InvalidInputError(f"target coordinates {list(coords)} out of range 1..{m}")
    order = sorted(range(f.m), key=lambda t: coords[t])
    values = np.transpose(f.values, order)
    shape = [1] * m
    for coord in coords:
        shape[coord - 1] = f.n
    values = values.reshape(shape)
    return StepFunction(m, f.n, np.broadcast_to(values, (f.n,) * m).copy())


def inner_product(f: StepFunction, g: StepFunction) -> RationalComplex:
    """
    Cube average of f * conj(g)
    """
    f._check_same_shape(g)  # pylint: disable=protected-access
    total = ZERO
    for a, b in zip(f.values.flat, g.values.flat):
        total = total + a * b.conjugate()
    return total / f.n**f.m

