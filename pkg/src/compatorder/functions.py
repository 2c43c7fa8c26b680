"""Exact rational-valued continuous functions on finite spaces.

A function on a finite space is continuous iff each of its fibers is open:
only finitely many values are attained, so every fiber is the preimage of a
small open interval around its value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    DiscontinuousError,
    FamilyOverflowError,
    GridError,
    NotOrthogonalError,
    SpaceMismatch,
    WidthMismatch,
)
from .topology import FiniteSpace, PointSet, closure, connected_components, interior

Rational = Fraction

DEFAULT_FAMILY_CAP = 10**6


def parse_rational(text) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, float):
        raise TypeError("floats are not accepted; pass a string like '1/3'")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class ValueGrid:
    """Finite set of rationals containing 0, kept in ascending order."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(parse_rational(v) for v in self.values)
        if len(set(vals)) != len(vals):
            raise GridError(f"duplicate grid values in {vals}")
        if 0 not in vals:
            raise GridError("grid must contain 0")
        object.__setattr__(self, "values", tuple(sorted(vals)))

    @classmethod
    def parse(cls, text: str) -> ValueGrid:
        return cls(tuple(Fraction(tok.strip()) for tok in text.split(",") if tok.strip()))

    @classmethod
    def of(cls, *values) -> ValueGrid:
        return cls(tuple(values))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __contains__(self, v):
        return v in self.values

    def nonzero(self) -> tuple[Fraction, ...]:
        return tuple(v for v in self.values if v != 0)

    def __str__(self):
        return ",".join(map(str, self.values))


def fibers(values) -> dict[Fraction, list[int]]:
    out = {}
    for x, v in enumerate(values):
        out.setdefault(v, []).append(x)
    return out


def discontinuous_fiber(space: FiniteSpace, values) -> tuple[Fraction, PointSet] | None:
    """First (value, fiber) whose fiber is not open, or ``None``."""
    if len(values) != space.n:
        raise WidthMismatch(f"{len(values)} values for a {space.n}-point space")
    for v, pts in fibers(values).items():
        fiber = PointSet.of(space.n, pts)
        if not space.is_open(fiber):
            return v, fiber
    return None


def is_continuous(space: FiniteSpace, raw_values) -> bool:
    values = [parse_rational(v) for v in raw_values]
    return discontinuous_fiber(space, values) is None


class ScalarFn:
    """A continuous function ``range(n) -> Q`` on a :class:`FiniteSpace`.

    Continuity is enforced on construction.  Supports and the
    sigma/rho sets are cached on first use.
    """

    def __init__(self, space: FiniteSpace, values, *, check: bool = True):
        vals = tuple(parse_rational(v) for v in values)
        if check:
            bad = discontinuous_fiber(space, vals)
            if bad is not None:
                raise DiscontinuousError(
                    f"fiber of {bad[0]} is {bad[1]!r}, which is not open",
                    fiber=bad[1],
                    value=bad[0],
                )
        elif len(vals) != space.n:
            raise WidthMismatch(f"{len(vals)} values for a {space.n}-point space")
        self.space = space
        self.values = vals

    @classmethod
    def constant(cls, space: FiniteSpace, c) -> ScalarFn:
        return cls(space, [c] * space.n, check=False)

    @classmethod
    def zero(cls, space: FiniteSpace) -> ScalarFn:
        return cls.constant(space, 0)

    @classmethod
    def indicator(cls, space: FiniteSpace, s: PointSet, scale=1) -> ScalarFn:
        return cls(space, [scale if x in s else 0 for x in range(space.n)])

    def __eq__(self, other):
        return (
            isinstance(other, ScalarFn)
            and self.values == other.values
            and self.space == other.space
        )

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return "ScalarFn(" + ", ".join(map(str, self.values)) + ")"

    def __getitem__(self, x: int) -> Fraction:
        return self.values[x]

    def __len__(self):
        return len(self.values)

    @cached_property
    def nonzero_set(self) -> PointSet:
        return PointSet.of(self.space.n, (x for x, v in enumerate(self.values) if v != 0))

    @property
    def zero_set(self) -> PointSet:
        return ~self.nonzero_set

    @cached_property
    def support(self) -> PointSet:
        return closure(self.space, self.nonzero_set)

    @cached_property
    def sigma(self) -> PointSet:
        return interior(self.space, self.support)

    @cached_property
    def rho(self) -> PointSet:
        return closure(self.space, interior(self.space, self.zero_set))

    def is_zero(self) -> bool:
        return not self.nonzero_set

    def is_nowhere_zero(self) -> bool:
        return all(v != 0 for v in self.values)

    def restrict(self, s: PointSet) -> tuple[Fraction, ...]:
        return tuple(self.values[x] for x in s)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __neg__(self):
        return neg(self)

    def __abs__(self):
        return abs_(self)


def support(f: ScalarFn) -> PointSet:
    """Closure of the nonzero set."""
    return f.support


def sigma(f: ScalarFn) -> PointSet:
    """Interior of the support; always regularly open."""
    return f.sigma


def rho(f: ScalarFn) -> PointSet:
    """Closure of the interior of the zero set; the complement of ``sigma(f)``."""
    return f.rho


def _same_space(f: ScalarFn, g: ScalarFn) -> None:
    if f.space is not g.space and f.space != g.space:
        raise SpaceMismatch("functions live on different spaces")


def compat_le(f: ScalarFn, g: ScalarFn) -> bool:
    """``f ⪯ g``: ``g`` agrees with ``f`` on the support of ``f``."""
    _same_space(f, g)
    fv, gv = f.values, g.values
    return all(fv[x] == gv[x] for x in f.support)


def compat_le_alg(f: ScalarFn, g: ScalarFn) -> bool:
    """Algebraic form of the compatibility ordering: ``f·g == f·f`` pointwise."""
    _same_space(f, g)
    return all(a * b == a * a for a, b in zip(f.values, g.values))


def _pointwise(op, f: ScalarFn, g: ScalarFn | None = None) -> ScalarFn:
    if g is None:
        vals = [op(a) for a in f.values]
    else:
        _same_space(f, g)
        vals = [op(a, b) for a, b in zip(f.values, g.values)]
    # fibers of the result are unions of intersections of input fibers
    return ScalarFn(f.space, vals)


def add(f, g):
    return _pointwise(lambda a, b: a + b, f, g)


def sub(f, g):
    return _pointwise(lambda a, b: a - b, f, g)


def mul(f, g):
    return _pointwise(lambda a, b: a * b, f, g)


def neg(f):
    return _pointwise(lambda a: -a, f)


def abs_(f):
    return _pointwise(abs, f)


def scale(f, c):
    c = parse_rational(c)
    return _pointwise(lambda a: c * a, f)


def pos_part(f):
    return _pointwise(lambda a: max(a, Fraction(0)), f)


def neg_part(f):
    return _pointwise(lambda a: -min(a, Fraction(0)), f)


def pmin(f, g):
    return _pointwise(min, f, g)


def pmax(f, g):
    return _pointwise(max, f, g)


def pointwise_le(f: ScalarFn, g: ScalarFn) -> bool:
    _same_space(f, g)
    return all(a <= b for a, b in zip(f.values, g.values))


def is_orthogonal(f: ScalarFn, g: ScalarFn) -> bool:
    _same_space(f, g)
    return all(a * b == 0 for a, b in zip(f.values, g.values))


def compat_sup(f: ScalarFn, g: ScalarFn) -> ScalarFn:
    """Least upper bound of two orthogonal functions, namely ``f + g``."""
    if not is_orthogonal(f, g):
        raise NotOrthogonalError(f"{f!r} and {g!r} are not orthogonal")
    return add(f, g)


# families


class FnFamily:
    """An ordered, duplicate-free family of functions on one space containing 0.

    Enumerated families carry the grid they were built from; derived families
    (images of maps) carry the grid of values they actually attain.  The
    codomain of a pointwise-order map need not contain 0, hence
    ``require_zero``.
    """

    def __init__(
        self,
        space: FiniteSpace,
        functions,
        grid: ValueGrid | None = None,
        *,
        require_zero: bool = True,
    ):
        fns = tuple(functions)
        index = {}
        for i, f in enumerate(fns):
            if f.space != space:
                raise SpaceMismatch(f"function {i} is on a different space")
            if f.values in index:
                raise ValueError(f"duplicate function {f!r}")
            index[f.values] = i
        zero = tuple(Fraction(0) for _ in range(space.n))
        if require_zero and zero not in index:
            raise ValueError("family does not contain the zero function")
        if grid is None:
            grid = ValueGrid(tuple({v for f in fns for v in f.values} | {Fraction(0)}))
        self.space = space
        self.grid = grid
        self.functions = fns
        self._index = index
        self.zero_index = index.get(zero)

    def __len__(self):
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def __getitem__(self, i) -> ScalarFn:
        return self.functions[i]

    def __repr__(self):
        return f"FnFamily(n={self.space.n}, size={len(self)}, grid={{{self.grid}}})"

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, FnFamily)
            and self.space == other.space
            and self.functions == other.functions
        )

    def __hash__(self):
        return hash((self.space, len(self.functions)))

    def index_of(self, f) -> int | None:
        values = f.values if isinstance(f, ScalarFn) else tuple(map(parse_rational, f))
        return self._index.get(values)

    def __contains__(self, f) -> bool:
        return self.index_of(f) is not None

    @property
    def zero(self) -> ScalarFn:
        if self.zero_index is None:
            raise ValueError("family does not contain the zero function")
        return self.functions[self.zero_index]

    def gl_indices(self) -> list[int]:
        """Indices of the nowhere-vanishing members."""
        return [i for i, f in enumerate(self.functions) if f.is_nowhere_zero()]

    @cached_property
    def _codes(self) -> tuple[np.ndarray, np.ndarray]:
        code = {}
        vals = np.array(
            [[code.setdefault(v, len(code)) for v in f.values] for f in self.functions],
            dtype=np.int64,
        ).reshape(len(self.functions), self.space.n)
        supp = np.array(
            [[x in f.support for x in range(self.space.n)] for f in self.functions],
            dtype=bool,
        ).reshape(len(self.functions), self.space.n)
        return vals, supp

    @cached_property
    def compat_matrix(self) -> np.ndarray:
        """``M[i, j]`` is ``functions[i] ⪯ functions[j]``."""
        vals, supp = self._codes
        out = np.empty((len(self), len(self)), dtype=bool)
        for i in range(len(self)):
            agree = vals == vals[i]
            out[i] = np.all(agree | ~supp[i], axis=1)
        return out

    def _op_table(self, op) -> np.ndarray:
        n = len(self)
        out = np.full((n, n), -1, dtype=np.intp)
        for i, f in enumerate(self.functions):
            for j, g in enumerate(self.functions):
                k = self._index.get(tuple(op(a, b) for a, b in zip(f.values, g.values)))
                if k is not None:
                    out[i, j] = k
        return out

    @cached_property
    def sum_table(self) -> np.ndarray:
        """Index of ``f_i + f_j`` in the family, or -1."""
        return self._op_table(lambda a, b: a + b)

    @cached_property
    def product_table(self) -> np.ndarray:
        """Index of ``f_i · f_j`` in the family, or -1."""
        return self._op_table(lambda a, b: a * b)

    @cached_property
    def pointwise_matrix(self) -> np.ndarray:
        """``M[i, j]`` is ``functions[i] <= functions[j]`` pointwise."""
        n = len(self)
        out = np.empty((n, n), dtype=bool)
        for i, f in enumerate(self.functions):
            out[i] = [all(a <= b for a, b in zip(f.values, g.values)) for g in self.functions]
        return out


def family_size(space: FiniteSpace, grid: ValueGrid) -> int:
    """Number of continuous grid-valued functions: one free value per component."""
    return len(grid) ** len(connected_components(space))


def enumerate_family(
    space: FiniteSpace, grid: ValueGrid, cap: int = DEFAULT_FAMILY_CAP
) -> FnFamily:
    if not isinstance(grid, ValueGrid):
        grid = ValueGrid(tuple(grid))
    return _enumerate_family(space, grid, cap)


@lru_cache(maxsize=256)
def _enumerate_family(space: FiniteSpace, grid: ValueGrid, cap: int) -> FnFamily:
    """All continuous ``grid``-valued functions, lexicographic in grid index.

    A continuous function is constant on every component, and any function
    constant on components has clopen fibers; so the family is one grid choice
    per component.  Each result is still validated by the fiber test.
    """
    size = family_size(space, grid)
    if size > cap:
        raise FamilyOverflowError(f"family of {size} functions exceeds cap {cap}")
    comps = connected_components(space)
    owner = [0] * space.n
    for c, comp in enumerate(comps):
        for x in comp:
            owner[x] = c
    keys = []
    for choice in itertools.product(range(len(grid)), repeat=len(comps)):
        keys.append(tuple(choice[owner[x]] for x in range(space.n)))
    keys.sort()
    fns = [ScalarFn(space, [grid.values[k] for k in key]) for key in keys]
    return FnFamily(space, fns, grid)
