"""
Description: Exact arithmetic layer for the Segre cubic verifier. Rational linear algebra
(row reduction, rank, null spaces), projective points and linear subspaces with canonical
forms, and sparse multivariate polynomials over the rationals. Nothing here touches floating
point: every value is a `fractions.Fraction` or a Python integer.

All objects are immutable once built and every operation is pure, so the module is safe to
use from worker processes without coordination.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .exceptions import DimensionMismatch, NotLinearError, NotOnVarietyError

logger = logging.getLogger(__name__)

Rational = Fraction
Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


def format_rational(value) -> str:
    """Render a rational as the report string "num/den" (denominator always present)."""
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


# =========================================================================
# ROW REDUCTION
# =========================================================================

def rref(rows: Sequence[Sequence], n_cols: int | None = None) -> tuple[Matrix, tuple[int, ...]]:
    """
    Reduced row-echelon form over the rationals.

    Returns the nonzero rows of the reduced matrix and the pivot column of each row.
    `n_cols` is only needed when `rows` is empty.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return (), ()
    width = len(m[0])
    if n_cols is not None and n_cols != width:
        raise DimensionMismatch(f"expected {n_cols} columns, got {width}")
    if any(len(row) != width for row in m):
        raise DimensionMismatch("ragged matrix")

    pivots = []
    piv_r = 0
    for piv_c in range(width):
        if piv_r == len(m):
            break
        pivot_row = next((r for r in range(piv_r, len(m)) if m[r][piv_c] != 0), None)
        if pivot_row is None:
            continue
        m[piv_r], m[pivot_row] = m[pivot_row], m[piv_r]
        fp = m[piv_r][piv_c]
        m[piv_r] = [x / fp for x in m[piv_r]]
        for r in range(len(m)):
            fr = m[r][piv_c]
            if r != piv_r and fr != 0:
                m[r] = [a - fr * b for a, b in zip(m[r], m[piv_r])]
        pivots.append(piv_c)
        piv_r += 1

    return tuple(tuple(row) for row in m[:piv_r]), tuple(pivots)


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], n_cols: int) -> Matrix:
    """Basis of {v : M v = 0} as rows, one per free column, in increasing free-column order."""
    reduced, pivots = rref(rows, n_cols)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return tuple(basis)


# =========================================================================
# PROJECTIVE POINTS
# =========================================================================

def _primitive_integer_vector(coords: Sequence[Fraction]) -> tuple[int, ...]:
    denominator = reduce(lcm, (c.denominator for c in coords), 1)
    ints = [int(c * denominator) for c in coords]
    divisor = reduce(gcd, ints, 0)
    ints = [x // divisor for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


class ProjPoint:
    """
    A point of projective space given by one exact representative.

    Equality and hashing go through the canonical form: coprime integers whose first
    nonzero entry is positive. The stored representative is kept as given so that
    homogeneity properties can be checked on arbitrary scalings.
    """

    def __init__(self, coords: Iterable):
        coords = tuple(Fraction(c) for c in coords)
        if not coords or all(c == 0 for c in coords):
            raise ValueError('projective point needs a nonzero coordinate')
        self.coords = coords

    @classmethod
    def of(cls, *coords) -> ProjPoint:
        return cls(coords)

    @property
    def n_coords(self) -> int:
        return len(self.coords)

    @cached_property
    def canonical(self) -> tuple[int, ...]:
        return _primitive_integer_vector(self.coords)

    @property
    def is_canonical(self) -> bool:
        return self.coords == tuple(Fraction(x) for x in self.canonical)

    def normalized(self) -> ProjPoint:
        return ProjPoint(self.canonical)

    def scaled(self, factor) -> ProjPoint:
        factor = Fraction(factor)
        if factor == 0:
            raise ValueError('cannot scale a projective point by zero')
        return ProjPoint(c * factor for c in self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(self.canonical)

    def __repr__(self) -> str:
        return '(' + ':'.join(str(x) for x in self.canonical) + ')'


# =========================================================================
# LINEAR SUBSPACES
# =========================================================================

class LinearSubspace:
    """
    Projective linear subspace spanned by independent points of a common ambient space.

    `dim` is the projective dimension (-1 for the empty subspace). Two subspaces are equal
    iff their reduced row-echelon basis matrices coincide.
    """

    def __init__(self, basis: Iterable[ProjPoint], n_coords: int | None = None):
        basis = tuple(basis)
        if n_coords is None:
            if not basis:
                raise DimensionMismatch('empty subspace needs an explicit ambient size')
            n_coords = basis[0].n_coords
        if any(p.n_coords != n_coords for p in basis):
            raise DimensionMismatch('basis points live in different ambient spaces')
        if rank([p.coords for p in basis]) != len(basis):
            raise ValueError('basis points are linearly dependent')
        self.basis = basis
        self.n_coords = n_coords

    @classmethod
    def span(cls, points: Iterable[ProjPoint], n_coords: int | None = None) -> LinearSubspace:
        points = list(points)
        if n_coords is None and points:
            n_coords = points[0].n_coords
        reduced, _ = rref([p.coords for p in points], n_coords)
        return cls((ProjPoint(row) for row in reduced), n_coords)

    @classmethod
    def from_equations(cls, equations: Sequence[Sequence], n_coords: int) -> LinearSubspace:
        """Subspace cut out by the linear forms whose coefficient rows are `equations`."""
        return cls((ProjPoint(v) for v in nullspace(equations, n_coords)), n_coords)

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    @property
    def ambient_dim(self) -> int:
        return self.n_coords - 1

    @cached_property
    def canonical(self) -> Matrix:
        return rref([p.coords for p in self.basis], self.n_coords)[0]

    def equations(self) -> Matrix:
        """Coefficient rows of linear forms cutting out this subspace (its annihilator)."""
        return nullspace([p.coords for p in self.basis], self.n_coords)

    def contains(self, pt: ProjPoint) -> bool:
        if pt.n_coords != self.n_coords:
            raise DimensionMismatch(f'point has {pt.n_coords} coordinates, subspace {self.n_coords}')
        return rank([p.coords for p in self.basis] + [pt.coords]) == len(self.basis)

    def intersection(self, other: LinearSubspace) -> LinearSubspace:
        if other.n_coords != self.n_coords:
            raise DimensionMismatch('subspaces live in different ambient spaces')
        return LinearSubspace.from_equations(self.equations() + other.equations(), self.n_coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearSubspace):
            return NotImplemented
        return self.n_coords == other.n_coords and self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash((self.n_coords, self.canonical))

    def __repr__(self) -> str:
        return f'LinearSubspace(dim={self.dim}, basis={list(self.basis)})'


def subspace_contains(s: LinearSubspace, pt: ProjPoint) -> bool:
    return s.contains(pt)


def subspace_intersection(s: LinearSubspace, t: LinearSubspace) -> LinearSubspace:
    return s.intersection(t)


# =========================================================================
# SPARSE MULTIVARIATE POLYNOMIALS
# =========================================================================

Exponents = tuple[int, ...]


class MultiPoly:
    """
    Sparse polynomial over Q in `nvars` variables x1..xn.

    Terms are a read-only map from exponent vectors to nonzero Fraction coefficients.
    """

    __slots__ = ('nvars', 'terms')

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise DimensionMismatch(f'exponent vector {exps} does not have {nvars} entries')
            if any(e < 0 for e in exps):
                raise ValueError(f'negative exponent in {exps}')
            clean[exps] = clean.get(exps, Fraction(0)) + Fraction(coeff)
        self.nvars = nvars
        self.terms = MappingProxyType({e: c for e, c in clean.items() if c != 0})

    def __reduce__(self):
        return MultiPoly, (self.nvars, dict(self.terms))

    # ----- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> MultiPoly:
        return cls(nvars)

    @classmethod
    def constant(cls, value, nvars: int) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, index: int, nvars: int) -> MultiPoly:
        """The coordinate x_index (1-based, as in the equations of the cubic)."""
        if not 1 <= index <= nvars:
            raise DimensionMismatch(f'x{index} is not one of x1..x{nvars}')
        exps = [0] * nvars
        exps[index - 1] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def linear_form(cls, coefficients: Sequence) -> MultiPoly:
        n = len(coefficients)
        terms = {}
        for i, c in enumerate(coefficients):
            exps = [0] * n
            exps[i] = 1
            terms[tuple(exps)] = c
        return cls(n, terms)

    @classmethod
    def power_sum(cls, k: int, nvars: int) -> MultiPoly:
        """x1^k + ... + xn^k."""
        terms = {}
        for i in range(nvars):
            exps = [0] * nvars
            exps[i] = k
            terms[tuple(exps)] = 1
        return cls(nvars, terms)

    # ----- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_linear_form(self) -> bool:
        return all(sum(e) == 1 for e in self.terms)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def linear_coefficients(self) -> tuple[Fraction, ...]:
        if not self.is_linear_form():
            raise NotLinearError(f'{self} is not a linear form')
        coeffs = [Fraction(0)] * self.nvars
        for exps, c in self.terms.items():
            coeffs[exps.index(1)] = c
        return tuple(coeffs)

    # ----- ring operations ----------------------------------------------

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DimensionMismatch(f'{self.nvars} vs {other.nvars} variables')
            return other
        return MultiPoly.constant(other, self.nvars)

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> MultiPoly:
        other = self._coerce(other)
        terms: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise ValueError('negative powers are not polynomials')
        result = MultiPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    # ----- calculus and evaluation -----------------------------------------

    def derivative(self, index: int) -> MultiPoly:
        """Partial derivative with respect to x_index (1-based)."""
        i = index - 1
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            d = list(e)
            d[i] -= 1
            terms[tuple(d)] = c * e[i]
        return MultiPoly(self.nvars, terms)

    def evaluate(self, values: Sequence) -> Fraction:
        if len(values) != self.nvars:
            raise DimensionMismatch(f'{len(values)} values for {self.nvars} variables')
        values = [Fraction(v) for v in values]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def substitute_linear(self, images: Sequence[MultiPoly]) -> MultiPoly:
        """Compose with the linear map x_i -> images[i-1]; images may use another variable count."""
        if len(images) != self.nvars:
            raise DimensionMismatch(f'{len(images)} images for {self.nvars} variables')
        if not images:
            return MultiPoly(0, dict(self.terms))
        m = images[0].nvars
        for img in images:
            if img.nvars != m:
                raise DimensionMismatch('substitution images use different variable counts')
            if not img.is_linear_form():
                raise NotLinearError(f'substitution image {img} is not homogeneous linear')

        powers: dict[tuple[int, int], MultiPoly] = {}
        result = MultiPoly.zero(m)
        for e, c in self.terms.items():
            term = MultiPoly.constant(c, m)
            for i, k in enumerate(e):
                if not k:
                    continue
                if (i, k) not in powers:
                    powers[(i, k)] = images[i] ** k
                term = term * powers[(i, k)]
            result = result + term
        return result

    def __repr__(self) -> str:
        if not self.terms:
            return '0'
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = '*'.join(
                f'x{i + 1}' if k == 1 else f'x{i + 1}^{k}' for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f'-{mono}')
            else:
                parts.append(f'{c}*{mono}')
        return ' + '.join(parts).replace('+ -', '- ')


# =========================================================================
# OPERATIONS
# =========================================================================

def _values_of(pt) -> tuple[Fraction, ...]:
    return pt.coords if isinstance(pt, ProjPoint) else tuple(Fraction(v) for v in pt)


def poly_eval(p: MultiPoly, pt) -> Fraction:
    """Exact value of `p` at the stored representative of `pt` (a ProjPoint or a raw vector)."""
    return p.evaluate(_values_of(pt))


def poly_substitute_linear(p: MultiPoly, images: Sequence[MultiPoly]) -> MultiPoly:
    return p.substitute_linear(images)


def verify_identity(p: MultiPoly, q: MultiPoly) -> bool:
    """True iff p - q is the zero polynomial."""
    if p.nvars != q.nvars:
        raise DimensionMismatch(f'{p.nvars} vs {q.nvars} variables')
    return (p - q).is_zero()


def _check_on_variety(system: Sequence[MultiPoly], values) -> None:
    for eq in system:
        value = eq.evaluate(values)
        if value != 0:
            raise NotOnVarietyError(f'{eq} takes value {value} at {values}')


def jacobian_matrix(system: Sequence[MultiPoly], pt) -> Matrix:
    values = _values_of(pt)
    return tuple(
        tuple(eq.derivative(i).evaluate(values) for i in range(1, eq.nvars + 1))
        for eq in system
    )


def jacobian_rank(system: Sequence[MultiPoly], pt) -> int:
    """Rank over Q of the Jacobian of `system` at `pt`, which must lie on the variety."""
    values = _values_of(pt)
    _check_on_variety(system, values)
    return rank(jacobian_matrix(system, values))


def hessian_matrix(p: MultiPoly, pt) -> Matrix:
    values = _values_of(pt)
    n = p.nvars
    first = [p.derivative(i) for i in range(1, n + 1)]
    return tuple(
        tuple(first[i].derivative(j).evaluate(values) for j in range(1, n + 1))
        for i in range(n)
    )


def restricted_form_rank(matrix: Sequence[Sequence], basis: Sequence[Sequence]) -> int:
    """Rank of the bilinear form `matrix` restricted to the span of `basis` rows (B M B^T)."""
    m = [[Fraction(x) for x in row] for row in matrix]
    b = [[Fraction(x) for x in row] for row in basis]
    mb = [[sum(m[i][k] * row[k] for k in range(len(row))) for i in range(len(m))] for row in b]
    gram = [[sum(u[k] * v[k] for k in range(len(u))) for v in mb] for u in b]
    return rank(gram)
