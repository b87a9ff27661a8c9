import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from qhopf import settings
from qhopf.api.exception import (BadOrder, DivisionByZero, NonCanonicalScalar,
                                 NotInvertible, ShapeMismatch)

logger = logging.getLogger(__name__)

Index = Tuple[int, ...]
Coords = Dict[Index, object]
LinearTable = Dict[Index, List[Tuple[Index, object]]]


class CyclotomicField:
    '''
    Q(zeta_L) in the power basis 1, zeta, ..., zeta^(phi(L)-1).
    `powers[k]` holds the integer coordinates of zeta^k, k < L
    '''

    def __init__(self, order: int) -> None:
        if order < 1:
            raise BadOrder(f"The cyclotomic order must be positive, got {order}")
        self.order = order
        self.symbol = sympy.Symbol("x")
        self.minpoly = sympy.Poly(sympy.cyclotomic_poly(order, self.symbol), self.symbol, domain=sympy.QQ)
        self.modulus = [int(c) for c in reversed(self.minpoly.all_coeffs())]
        self.degree = len(self.modulus) - 1
        self.powers = self._reduce_powers()

    def _reduce_powers(self) -> List[Tuple[int, ...]]:
        table = []
        current = [0] * self.degree
        current[0] = 1
        for _ in range(self.order):
            table.append(tuple(current))
            overflow = current[-1]
            shifted = [0] + current[:-1]
            if overflow:
                shifted = [s - overflow * m for s, m in zip(shifted, self.modulus[:-1])]
            current = shifted
        return table

    def power(self, k: int) -> Tuple[int, ...]:
        return self.powers[k % self.order]

    def reduce(self, poly: Sequence) -> Tuple[Fraction, ...]:
        out = [Fraction(0)] * self.degree
        for k, c in enumerate(poly):
            if not c:
                continue
            for t, v in enumerate(self.power(k)):
                if v:
                    out[t] += c * v
        return tuple(out)


_FIELD: Optional[CyclotomicField] = None


def get_field() -> CyclotomicField:
    global _FIELD
    if _FIELD is None:
        _FIELD = CyclotomicField(settings.QHOPF_CYCLOTOMIC_ORDER)
        logger.debug(f"Cyclotomic field of order {_FIELD.order} and degree {_FIELD.degree} initialized")
    return _FIELD


def set_cyclotomic_order(order: int) -> CyclotomicField:
    '''
    Replace the global field. Scalars built before the switch must not
    be mixed with the ones built after it
    '''
    global _FIELD
    _FIELD = CyclotomicField(order)
    logger.info(f"Cyclotomic order set to {order}")
    return _FIELD


def _make(coeffs: Tuple[Fraction, ...]) -> "CycScalar":
    obj = object.__new__(CycScalar)
    obj.coeffs = coeffs
    return obj


def _coerce(value):
    if isinstance(value, CycScalar):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        degree = get_field().degree
        return _make((Fraction(value),) + (Fraction(0),) * (degree - 1))
    return NotImplemented


class CycScalar:
    '''
    Exact element of Q(zeta_L). The coefficient tuple is the canonical
    form: Fraction keeps every coordinate reduced with positive denominator
    '''
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = (0,)) -> None:
        self.coeffs = get_field().reduce([Fraction(c) for c in coeffs])

    @classmethod
    def zero(cls) -> "CycScalar":
        return _coerce(0)

    @classmethod
    def one(cls) -> "CycScalar":
        return _coerce(1)

    @classmethod
    def rational(cls, numerator: int, denominator: int = 1) -> "CycScalar":
        if denominator == 0:
            raise DivisionByZero()
        return _coerce(Fraction(numerator, denominator))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "CycScalar":
        return _make(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _make(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _make(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if other.is_rational():
            return _make(tuple(c * b[0] for c in a))
        if self.is_rational():
            return _make(tuple(c * a[0] for c in b))
        field = get_field()
        acc = [Fraction(0)] * field.degree
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                prod = ai * bj
                for t, v in enumerate(field.power(i + j)):
                    if v:
                        acc[t] += prod * v
        return _make(tuple(acc))

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        if not self:
            raise DivisionByZero()
        if self.is_rational():
            return _coerce(1 / self.coeffs[0])
        field = get_field()
        poly = sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)],
            field.symbol,
            domain=sympy.QQ,
        )
        inverse = poly.invert(field.minpoly)
        return CycScalar([Fraction(int(c.p), int(c.q)) for c in reversed(inverse.all_coeffs())])

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "CycScalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = CycScalar.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def to_wire(self) -> List[List[int]]:
        return [[k, c.numerator, c.denominator] for k, c in enumerate(self.coeffs) if c]

    @classmethod
    def from_wire(cls, triples: Iterable[Sequence[int]]) -> "CycScalar":
        '''
        Only the canonical form is accepted: powers strictly increasing,
        nonzero numerators, reduced fractions with positive denominators
        '''
        degree = get_field().degree
        coeffs = [Fraction(0)] * degree
        last = -1
        for power, numerator, denominator in triples:
            if not 0 <= power < degree:
                raise BadOrder(f"Scalar power {power} outside [0, {degree})")
            if denominator <= 0:
                raise DivisionByZero(f"Scalar denominator must be positive, got {denominator}")
            if power <= last:
                raise NonCanonicalScalar(f"Scalar powers must be strictly increasing, got {power} after {last}")
            value = Fraction(numerator, denominator)
            if not numerator or value.denominator != denominator:
                raise NonCanonicalScalar(f"Coefficient {numerator}/{denominator} of power {power} is zero or not reduced")
            coeffs[power] = value
            last = power
        return _make(tuple(coeffs))

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            terms.append(str(c) if k == 0 else f"{c}*z^{k}")
        return f"CycScalar({' + '.join(terms) or '0'})"


def root_of_unity(n: int, k: int = 1) -> CycScalar:
    '''
    zeta_L^(k L / n): the k-th power of the fixed primitive n-th root
    '''
    field = get_field()
    if n < 1 or field.order % n:
        raise BadOrder(f"{n} does not divide the cyclotomic order {field.order}")
    power = (k * (field.order // n)) % field.order
    return _make(tuple(Fraction(v) for v in field.power(power)))


class Tensor:
    '''
    Dense order-k array of scalars backed by a numpy object array.
    Entries are CycScalar, or PolyExpr while a constraint system is
    being generated. The nonzero coordinates are cached on first use
    '''
    __slots__ = ("entries", "_coords")

    def __init__(self, entries: np.ndarray) -> None:
        self.entries = entries
        self._coords = None

    @classmethod
    def zeros(cls, dims: Sequence[int]) -> "Tensor":
        if not dims or any(d < 1 for d in dims):
            raise ShapeMismatch(f"Invalid tensor dims {tuple(dims)}")
        arr = np.empty(tuple(dims), dtype=object)
        arr.fill(CycScalar.zero())
        return cls(arr)

    @classmethod
    def from_coords(cls, dims: Sequence[int], coords: Coords) -> "Tensor":
        tensor = cls.zeros(dims)
        for idx, value in coords.items():
            if len(idx) != len(dims):
                raise ShapeMismatch(f"Index {idx} does not fit dims {tuple(dims)}")
            tensor.entries[idx] = value
        return tensor

    @classmethod
    def vector(cls, values: Sequence) -> "Tensor":
        return cls.from_coords((len(values),), {(i,): _as_scalar(v) for i, v in enumerate(values)})

    @classmethod
    def basis_vector(cls, dim: int, i: int) -> "Tensor":
        return cls.from_coords((dim,), {(i,): CycScalar.one()})

    @classmethod
    def identity(cls, dim: int) -> "Tensor":
        return cls.from_coords((dim, dim), {(i, i): CycScalar.one() for i in range(dim)})

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(self.entries.shape)

    @property
    def order(self) -> int:
        return self.entries.ndim

    @property
    def coords(self) -> Coords:
        if self._coords is None:
            self._coords = {
                tuple(int(i) for i in idx): value
                for idx, value in np.ndenumerate(self.entries)
                if value
            }
        return self._coords

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.dims == other.dims and self.coords == other.coords

    __hash__ = None

    def _check_same(self, other: "Tensor") -> None:
        if self.dims != other.dims:
            raise ShapeMismatch(f"Dims {self.dims} and {other.dims} differ")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check_same(other)
        return Tensor(self.entries + other.entries)

    def __sub__(self, other: "Tensor") -> "Tensor":
        self._check_same(other)
        return Tensor(self.entries - other.entries)

    def __neg__(self) -> "Tensor":
        return Tensor(-self.entries)

    def scale(self, c) -> "Tensor":
        c = _as_scalar(c)
        return Tensor.from_coords(self.dims, {idx: v * c for idx, v in self.coords.items()})

    def __repr__(self) -> str:
        return f"Tensor(dims={self.dims}, nonzero={len(self.coords)})"


def _as_scalar(value):
    coerced = _coerce(value)
    return value if coerced is NotImplemented else coerced


# sparse coordinate calculus shared by every axiom checker

def accumulate(target: Coords, key: Index, value) -> None:
    if key in target:
        target[key] = target[key] + value
    else:
        target[key] = value


def prune(coords: Coords) -> Coords:
    return {k: v for k, v in coords.items() if v}


def outer(*elements: Coords) -> Coords:
    result: Coords = {(): CycScalar.one()}
    for element in elements:
        step: Coords = {}
        for a, x in result.items():
            for b, y in element.items():
                accumulate(step, a + b, x * y)
        result = prune(step)
    return result


def add(u: Coords, v: Coords, scale=None) -> Coords:
    out = dict(u)
    for k, val in v.items():
        accumulate(out, k, val if scale is None else val * scale)
    return prune(out)


def map_leg(u: Coords, leg: int, table: LinearTable) -> Coords:
    '''
    Apply a linear map on one leg. `table[(i,)]` lists the output
    index tuples, possibly empty (counit) or longer than one (comultiplication)
    '''
    out: Coords = {}
    for idx, val in u.items():
        terms = table.get((idx[leg],))
        if not terms:
            continue
        head, tail = idx[:leg], idx[leg + 1:]
        for out_idx, c in terms:
            accumulate(out, head + out_idx + tail, val * c)
    return prune(out)


def fuse(u: Coords, first: int, second: int, table: LinearTable, at: Optional[int] = None) -> Coords:
    '''
    Replace legs `first` and `second` by table[(i_first, i_second)].
    The output lands where `first` was unless `at` is given
    '''
    if at is None:
        at = first if first < second else first - 1
    out: Coords = {}
    for idx, val in u.items():
        terms = table.get((idx[first], idx[second]))
        if not terms:
            continue
        rest = tuple(i for p, i in enumerate(idx) if p != first and p != second)
        head, tail = rest[:at], rest[at:]
        for out_idx, c in terms:
            accumulate(out, head + out_idx + tail, val * c)
    return prune(out)


def permute(u: Coords, order: Sequence[int]) -> Coords:
    return {tuple(idx[o] for o in order): val for idx, val in u.items()}


def linear_table(tensor: Tensor, n_in: int) -> LinearTable:
    table: LinearTable = {}
    for idx, val in tensor.coords.items():
        table.setdefault(idx[:n_in], []).append((idx[n_in:], val))
    return table


def _trie(coords: Coords) -> dict:
    root: dict = {}
    for idx, val in coords.items():
        node = root
        for i in idx[:-1]:
            node = node.setdefault(i, {})
        node[idx[-1]] = val
    return root


def _multiply_tries(tables: Sequence[Dict[int, Dict[int, list]]], level: int, a: dict, b: dict) -> Coords:
    table = tables[level]
    last = level == len(tables) - 1
    out: Coords = {}
    for i, a_sub in a.items():
        row = table.get(i)
        if not row:
            continue
        for j, b_sub in b.items():
            terms = row.get(j)
            if not terms:
                continue
            if last:
                prod = a_sub * b_sub
                for k, c in terms:
                    accumulate(out, (k,), prod * c)
                continue
            inner = _multiply_tries(tables, level + 1, a_sub, b_sub)
            for k, c in terms:
                for suffix, val in inner.items():
                    accumulate(out, (k,) + suffix, val * c)
    return prune(out)


def multiply_legs(tables: Sequence[Dict[int, Dict[int, list]]], u: Coords, v: Coords) -> Coords:
    '''
    Product in A_1⊗...⊗A_k; tables[l][i][j] lists (k, c) with e_i e_j = Σ c e_k
    '''
    if not u or not v:
        return {}
    return _multiply_tries(tables, 0, _trie(u), _trie(v))


def _check_element(alg, k: int, *tensors: Tensor) -> None:
    expected = (alg.dim,) * k
    for t in tensors:
        if t.dims != expected:
            raise ShapeMismatch(f"Expected dims {expected}, got {t.dims}")


def unit_power(alg, k: int) -> Coords:
    return outer(*([alg.unit.coords] * k))


def tensor_element_mul(alg, k: int, u: Tensor, v: Tensor) -> Tensor:
    _check_element(alg, k, u, v)
    tables = [alg.product_table()] * k
    return Tensor.from_coords((alg.dim,) * k, multiply_legs(tables, u.coords, v.coords))


def tensor_element_invert(alg, k: int, u: Tensor) -> Tensor:
    '''
    Solve u·v = 1 in A^{⊗k} as one linear system in the coordinates of v,
    then check both products
    '''
    _check_element(alg, k, u)
    n = alg.dim
    tables = [alg.product_table()] * k
    positions = list(itertools.product(range(n), repeat=k))
    column_of = {idx: c for c, idx in enumerate(positions)}
    rows: List[Dict[int, CycScalar]] = [dict() for _ in positions]
    one = CycScalar.one()
    for col, idx in enumerate(positions):
        for out_idx, val in multiply_legs(tables, u.coords, {idx: one}).items():
            rows[column_of[out_idx]][col] = val
    target = unit_power(alg, k)
    rhs = [target.get(idx, CycScalar.zero()) for idx in positions]
    solution = solve_rows(rows, rhs, len(positions))
    if solution.particular is None:
        raise NotInvertible(f"No inverse for the element in A^(⊗{k})")
    v = {positions[i]: val for (i,), val in solution.particular.coords.items()}
    if multiply_legs(tables, u.coords, v) != target or multiply_legs(tables, v, u.coords) != target:
        raise NotInvertible("The one-sided inverse is not two-sided")
    return Tensor.from_coords((n,) * k, v)


@dataclass
class LinearSolution:
    particular: Optional[Tensor]
    kernel_basis: List[Tensor] = field(default_factory=list)
    rank: int = 0
    inconsistent: List[Tuple[int, object]] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.particular is not None


def _reduce_row(row: Dict[int, object], value, pivots: Dict[int, list]):
    for col in [c for c in row if c in pivots]:
        factor = row.get(col)
        if not factor:
            continue
        pivot_row, pivot_value = pivots[col]
        for k, v in pivot_row.items():
            accumulate(row, k, -(factor * v))
        value = value - factor * pivot_value
        for k in [k for k, v in row.items() if not v]:
            del row[k]
    return row, value


def row_reduce(rows: Sequence[Dict[int, object]], rhs: Optional[Sequence] = None):
    '''
    Sparse Gauss-Jordan elimination. Returns the pivot rows sorted by
    pivot column (reduced echelon form) and the indices of the input rows
    that reduced to 0 = c with c nonzero
    '''
    if rhs is None:
        rhs = [CycScalar.zero()] * len(rows)
    pivots: Dict[int, list] = {}
    inconsistent = []
    for position, (source, value) in enumerate(zip(rows, rhs)):
        row, value = _reduce_row({k: v for k, v in source.items() if v}, value, pivots)
        if not row:
            if value:
                inconsistent.append((position, value))
            continue
        col = min(row)
        inv = row[col].inverse()
        row = {k: v * inv for k, v in row.items()}
        value = value * inv
        for other_col, entry in pivots.items():
            other_row, other_value = entry
            factor = other_row.get(col)
            if not factor:
                continue
            for k, v in row.items():
                accumulate(other_row, k, -(factor * v))
            for k in [k for k, v in other_row.items() if not v]:
                del other_row[k]
            entry[1] = other_value - factor * value
        pivots[col] = [row, value]
    return _canonical_echelon(list(pivots.values())), inconsistent


def _canonical_echelon(entries: List[list]) -> List[Tuple[int, Dict[int, object], object]]:
    # column sweep over an independent set: the reduced echelon form is unique
    remaining = [[dict(row), value] for row, value in entries]
    placed: List[list] = []
    for col in sorted({c for row, _ in remaining for c in row}):
        pick = next((entry for entry in remaining if entry[0].get(col)), None)
        if pick is None:
            continue
        remaining.remove(pick)
        row, value = pick
        inv = row[col].inverse()
        row = {k: v * inv for k, v in row.items()}
        value = value * inv
        for entry in remaining:
            _eliminate_column(entry, col, row, value)
        for entry in placed:
            _eliminate_column(entry, col, row, value)
        placed.append([row, value, col])
    return [(col, row, value) for row, value, col in placed]


def _eliminate_column(entry: list, col: int, row: Dict[int, object], value) -> None:
    factor = entry[0].get(col)
    if not factor:
        return
    target = entry[0]
    for k, v in row.items():
        accumulate(target, k, -(factor * v))
    for k in [k for k, v in target.items() if not v]:
        del target[k]
    entry[1] = entry[1] - factor * value


def solve_rows(rows: Sequence[Dict[int, object]], rhs: Sequence, ncols: int) -> LinearSolution:
    ordered, inconsistent = row_reduce(rows, rhs)
    if inconsistent:
        logger.debug(f"Linear system inconsistent on rows {[p for p, _ in inconsistent]}")
        return LinearSolution(particular=None, rank=len(ordered), inconsistent=inconsistent)
    particular = Tensor.from_coords((ncols,), {(col,): value for col, _, value in ordered if value})
    pivot_cols = {col for col, _, _ in ordered}
    raw_kernel = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = {free: CycScalar.one()}
        for col, row, _ in ordered:
            if free in row:
                vec[col] = -row[free]
        raw_kernel.append(vec)
    reduced, _ = row_reduce(raw_kernel)
    kernel = [Tensor.from_coords((ncols,), {(k,): v for k, v in row.items()}) for _, row, _ in reduced]
    return LinearSolution(particular=particular, kernel_basis=kernel, rank=len(ordered))


def solve_linear(A: Tensor, b: Tensor) -> LinearSolution:
    if A.order != 2 or b.order != 1 or A.dims[0] != b.dims[0]:
        raise ShapeMismatch(f"Cannot solve A{A.dims} x = b{b.dims}")
    m, n = A.dims
    rows: List[Dict[int, object]] = [dict() for _ in range(m)]
    for (i, j), val in A.coords.items():
        rows[i][j] = val
    rhs = [b[i] for i in range(m)]
    return solve_rows(rows, rhs, n)


def span_basis(vectors: Iterable[Dict[int, object]]) -> List[Dict[int, object]]:
    reduced, _ = row_reduce(list(vectors))
    return [row for _, row, _ in reduced]


def reduce_against(vector: Dict[int, object], basis: Sequence[Dict[int, object]]) -> Dict[int, object]:
    '''
    Remainder of `vector` modulo a reduced echelon basis
    '''
    pivots = {min(row): [row, CycScalar.zero()] for row in basis}
    row, _ = _reduce_row({k: v for k, v in vector.items() if v}, CycScalar.zero(), pivots)
    return row
