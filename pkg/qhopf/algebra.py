import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import sympy

from qhopf.api.exception import (CertificateFailure, NonSplit, NotAnIdeal,
                                 ShapeMismatch)
from qhopf.exactcore import (CycScalar, Coords, LinearTable, Tensor, accumulate,
                             get_field, linear_table, map_leg, multiply_legs,
                             prune, reduce_against, root_of_unity, row_reduce,
                             solve_rows, span_basis)
from qhopf.models import Identity, VerificationReport, collect

logger = logging.getLogger(__name__)

ALGEBRA_ANCHORS = {
    "unit_left": "1·a = a",
    "unit_right": "a·1 = a",
    "associativity": "(ab)c = a(bc)",
}


@dataclass
class AlgebraPresentation:
    '''
    Finite-dimensional algebra given by structure constants:
    mult[i, j, k] is the coefficient of e_k in e_i e_j
    '''
    dim: int
    basis_labels: List[str]
    unit: Tensor
    mult: Tensor
    name: str = ""
    associative: Optional[bool] = None
    section: Optional[List[int]] = None
    _products: Optional[Dict[int, Dict[int, list]]] = field(default=None, init=False, repr=False, compare=False)
    _table: Optional[LinearTable] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.basis_labels) != self.dim:
            raise ShapeMismatch(f"{len(self.basis_labels)} labels for dimension {self.dim}")
        if self.unit.dims != (self.dim,):
            raise ShapeMismatch(f"Unit dims {self.unit.dims} do not match dimension {self.dim}")
        if self.mult.dims != (self.dim,) * 3:
            raise ShapeMismatch(f"Structure constants dims {self.mult.dims} do not match dimension {self.dim}")

    def product_table(self) -> Dict[int, Dict[int, list]]:
        if self._products is None:
            table: Dict[int, Dict[int, list]] = {}
            for (i, j, k), c in self.mult.coords.items():
                table.setdefault(i, {}).setdefault(j, []).append((k, c))
            self._products = table
        return self._products

    def mult_table(self) -> LinearTable:
        if self._table is None:
            self._table = linear_table(self.mult, 2)
        return self._table

    def multiply(self, u: Coords, v: Coords) -> Coords:
        return multiply_legs([self.product_table()], u, v)

    def basis(self, i: int) -> Coords:
        return {(i,): CycScalar.one()}

    def label_of(self, i: int) -> str:
        return self.basis_labels[i]


@dataclass
class SubspaceBasis:
    '''
    Subspace in reduced echelon form, rows as {column: value}
    '''
    ambient_dim: int
    rows: List[Dict[int, object]]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return [min(row) for row in self.rows]

    def vectors(self) -> List[Tensor]:
        return [Tensor.from_coords((self.ambient_dim,), {(k,): v for k, v in row.items()}) for row in self.rows]

    def contains(self, vector: Dict[int, object]) -> bool:
        return not reduce_against(vector, self.rows)

    @classmethod
    def span(cls, ambient_dim: int, vectors: Sequence[Dict[int, object]]) -> "SubspaceBasis":
        return cls(ambient_dim, span_basis(vectors))


@dataclass
class RadicalResult:
    radical: SubspaceBasis
    certificates: Dict[str, bool]
    nilpotency_index: int

    @property
    def dim(self) -> int:
        return self.radical.dim


def _vec(coords: Coords) -> Dict[int, object]:
    return {idx[0]: v for idx, v in coords.items()}


def _coords(vec: Dict[int, object]) -> Coords:
    return {(k,): v for k, v in vec.items() if v}


def algebra_from_products(labels: Sequence[str], unit: Sequence, products: Dict, name: str = "") -> AlgebraPresentation:
    '''
    `products[(i, j)]` is either a basis index or a {k: scalar} dict
    '''
    n = len(labels)
    coords: Coords = {}
    for (i, j), value in products.items():
        if isinstance(value, int):
            coords[(i, j, value)] = CycScalar.one()
            continue
        for k, c in value.items():
            if c:
                coords[(i, j, k)] = c if isinstance(c, CycScalar) else CycScalar.rational(Fraction(c).numerator, Fraction(c).denominator)
    return AlgebraPresentation(n, list(labels), Tensor.vector(unit), Tensor.from_coords((n, n, n), coords), name=name)


def group_algebra(group, name: str = "") -> AlgebraPresentation:
    n = group.order
    products = {(a, b): group.mul(a, b) for a in range(n) for b in range(n)}
    unit = [1 if a == group.identity else 0 for a in range(n)]
    return algebra_from_products(group.labels, unit, products, name=name or f"k[{group.name}]")


def function_algebra(group, name: str = "") -> AlgebraPresentation:
    n = group.order
    products = {(a, a): a for a in range(n)}
    labels = [f"P_{label}" for label in group.labels]
    return algebra_from_products(labels, [1] * n, products, name=name or f"k^{group.name}")


def _algebra_identities(A: AlgebraPresentation):
    n = A.dim
    unit = A.unit.coords
    for a in range(n):
        e = A.basis(a)
        yield Identity("unit_left", (a,), A.multiply(unit, e), e)
        yield Identity("unit_right", (a,), A.multiply(e, unit), e)
    for a in range(n):
        for b in range(n):
            ab = A.multiply(A.basis(a), A.basis(b))
            for c in range(n):
                ec = A.basis(c)
                yield Identity("associativity", (a, b, c), A.multiply(ab, ec), A.multiply(A.basis(a), A.multiply(A.basis(b), ec)))


def verify_algebra(A: AlgebraPresentation) -> VerificationReport:
    report = collect(A.name or "algebra", ALGEBRA_ANCHORS, _algebra_identities(A))
    rec = report.record("associativity")
    if rec.witness is not None:
        # every failing triple, not only the first one
        rec.witness["triples"] = [
            list(identity.basis)
            for identity in _algebra_identities(A)
            if identity.check_id == "associativity" and identity.lhs != identity.rhs
        ]
    A.associative = rec.witness is None
    logger.info(f"Algebra {A.name} verified: {report.summary()}")
    return report


def _left_traces(A: AlgebraPresentation) -> List[object]:
    # trace of left multiplication by each basis element
    traces = [CycScalar.zero() for _ in range(A.dim)]
    for (i, j, k), c in A.mult.coords.items():
        if j == k:
            traces[i] = traces[i] + c
    return traces


def trace_form(A: AlgebraPresentation) -> List[Dict[int, object]]:
    '''
    Gram matrix of (a, b) -> tr(L_ab), as sparse rows
    '''
    traces = _left_traces(A)
    rows: List[Dict[int, object]] = [dict() for _ in range(A.dim)]
    for (i, j, k), c in A.mult.coords.items():
        if traces[k]:
            accumulate(rows[i], j, c * traces[k])
    return [prune_row(r) for r in rows]


def prune_row(row: Dict[int, object]) -> Dict[int, object]:
    return {k: v for k, v in row.items() if v}


def _is_ideal(A: AlgebraPresentation, ideal: SubspaceBasis) -> bool:
    for row in ideal.rows:
        v = _coords(row)
        for a in range(A.dim):
            e = A.basis(a)
            if not ideal.contains(_vec(A.multiply(e, v))) or not ideal.contains(_vec(A.multiply(v, e))):
                return False
    return True


def _nilpotency_index(A: AlgebraPresentation, ideal: SubspaceBasis) -> Optional[int]:
    if ideal.dim == 0:
        return 0
    power = ideal.rows
    for k in range(1, A.dim + 2):
        if not power:
            return k
        products = [
            _vec(A.multiply(_coords(u), _coords(v)))
            for u in power
            for v in ideal.rows
        ]
        power = span_basis(p for p in products if p)
    return None


def jacobson_radical(A: AlgebraPresentation) -> RadicalResult:
    '''
    Radical of a characteristic zero algebra as the kernel of the trace
    form, certified three ways: it is an ideal, it is nilpotent and the
    quotient has a nondegenerate trace form
    '''
    if A.associative is None:
        verify_algebra(A)
    if not A.associative:
        raise CertificateFailure(f"{A.name} is not associative")
    gram = trace_form(A)
    solution = solve_rows(gram, [CycScalar.zero()] * A.dim, A.dim)
    radical = SubspaceBasis.span(A.dim, [_vec(t.coords) for t in solution.kernel_basis])
    certificates = {"ideal": _is_ideal(A, radical)}
    index = _nilpotency_index(A, radical)
    certificates["nilpotent"] = index is not None
    if certificates["ideal"]:
        quotient = quotient_algebra(A, radical)
        reduced, _ = row_reduce(trace_form(quotient))
        certificates["nondegenerate_quotient"] = len(reduced) == quotient.dim
    else:
        certificates["nondegenerate_quotient"] = False
    if not all(certificates.values()):
        raise CertificateFailure(f"Radical certificates failed for {A.name}: {certificates}")
    logger.info(f"Radical of {A.name} has dimension {radical.dim}, nilpotency index {index}")
    return RadicalResult(radical, certificates, index)


def is_semisimple(A: AlgebraPresentation) -> bool:
    return jacobson_radical(A).dim == 0


def quotient_algebra(A: AlgebraPresentation, ideal: SubspaceBasis) -> AlgebraPresentation:
    '''
    A/I on the basis images of the non-pivot columns of I
    '''
    if not _is_ideal(A, ideal):
        raise NotAnIdeal(f"The subspace of dimension {ideal.dim} is not an ideal of {A.name}")
    pivots = set(ideal.pivots)
    section = [i for i in range(A.dim) if i not in pivots]
    position = {c: p for p, c in enumerate(section)}

    def project(vec: Dict[int, object]) -> Dict[int, object]:
        return {position[k]: v for k, v in reduce_against(vec, ideal.rows).items()}

    m = len(section)
    coords: Coords = {}
    for p, a in enumerate(section):
        for q, b in enumerate(section):
            for k, v in project(_vec(A.multiply(A.basis(a), A.basis(b)))).items():
                coords[(p, q, k)] = v
    unit = project(_vec(A.unit.coords))
    return AlgebraPresentation(
        dim=m,
        basis_labels=[A.basis_labels[c] for c in section],
        unit=Tensor.from_coords((m,), {(k,): v for k, v in unit.items()}),
        mult=Tensor.from_coords((m, m, m), coords),
        name=f"{A.name}/J",
        section=section,
    )


def _poly_eval(coeffs: Sequence, x):
    acc = CycScalar.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_divide_root(coeffs: Sequence, root) -> List[object]:
    # synthetic division of an ascending polynomial by (t - root)
    degree = len(coeffs) - 1
    out = [CycScalar.zero()] * degree
    carry = CycScalar.zero()
    for k in range(degree, 0, -1):
        carry = coeffs[k] + carry * root
        out[k - 1] = carry
    return out


def _to_sympy(value: CycScalar, zeta):
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * zeta ** k for k, c in enumerate(value.coeffs) if c),
        sympy.Integer(0),
    )


def _factor_roots(coeffs: Sequence) -> List[CycScalar]:
    field = get_field()
    zeta = sympy.exp(2 * sympy.pi * sympy.I / field.order)
    domain = sympy.QQ.algebraic_field(zeta)
    t = sympy.Symbol("t")
    expr = sum((_to_sympy(c, zeta) * t ** k for k, c in enumerate(coeffs)), sympy.Integer(0))
    poly = sympy.Poly(expr, t, domain=domain)
    roots = []
    for factor, multiplicity in poly.factor_list()[1]:
        if factor.degree() != 1:
            raise NonSplit(f"Irreducible factor of degree {factor.degree()} over Q(zeta_{field.order})")
        lead, const = factor.rep.to_list()
        root = domain.quo(domain.neg(const), lead)
        values = [Fraction(int(q.numerator), int(q.denominator)) for q in reversed(root.to_list())]
        roots.extend([CycScalar(values or [0])] * multiplicity)
    return roots


def split_roots(coeffs: Sequence) -> List[CycScalar]:
    '''
    Roots of a monic ascending polynomial in Q(zeta_L). Zero and the
    roots of unity are tried first, the rest is factored with sympy
    '''
    remaining = list(coeffs)
    roots: List[CycScalar] = []
    order = get_field().order
    candidates = [CycScalar.zero()] + [root_of_unity(order, k) for k in range(order)]
    for candidate in candidates:
        while len(remaining) > 1 and not _poly_eval(remaining, candidate):
            roots.append(candidate)
            remaining = _poly_divide_root(remaining, candidate)
    if len(remaining) > 1:
        try:
            roots.extend(_factor_roots(remaining))
        except NonSplit:
            raise
        except Exception as e:
            raise NonSplit(f"Could not factor the minimal polynomial: {e}")
    return roots


def _minimal_polynomial(Q: AlgebraPresentation, element: Coords, unit: Coords) -> List[object]:
    powers = [unit]
    while True:
        nxt = Q.multiply(powers[-1], element)
        rows: List[Dict[int, object]] = [dict() for _ in range(Q.dim)]
        for col, p in enumerate(powers):
            for (k,), v in p.items():
                rows[k][col] = v
        rhs = [nxt.get((k,), CycScalar.zero()) for k in range(Q.dim)]
        solution = solve_rows(rows, rhs, len(powers))
        if solution.feasible:
            coeffs = [-solution.particular[i] for i in range(len(powers))]
            return coeffs + [CycScalar.one()]
        powers.append(nxt)


def primitive_idempotents(Q: AlgebraPresentation) -> List[Coords]:
    '''
    Split the unit of a commutative semisimple algebra by the
    eigenvalues of the basis elements. NonSplit if some eigenvalue
    leaves Q(zeta_L)
    '''
    idempotents = [Q.unit.coords]
    for b in range(Q.dim):
        refined = []
        for e in idempotents:
            be = Q.multiply(Q.basis(b), e)
            roots = []
            for r in split_roots(_minimal_polynomial(Q, be, e)):
                if r not in roots:
                    roots.append(r)
            for r in roots:
                piece = e
                for other in roots:
                    if other == r:
                        continue
                    shifted = prune({k: be.get(k, CycScalar.zero()) - other * e.get(k, CycScalar.zero()) for k in set(be) | set(e)})
                    inv = (r - other).inverse()
                    piece = {k: v * inv for k, v in Q.multiply(piece, shifted).items()}
                if piece:
                    refined.append(piece)
        idempotents = refined
    return idempotents


def is_commutative(A: AlgebraPresentation) -> bool:
    return all(A.mult[i, j, k] == A.mult[j, i, k] for i in range(A.dim) for j in range(A.dim) for k in range(A.dim))


def is_basic(A: AlgebraPresentation) -> bool:
    '''
    A/J(A) is a product of copies of the ground field
    '''
    radical = jacobson_radical(A)
    Q = quotient_algebra(A, radical.radical)
    if not is_commutative(Q):
        return False
    return len(primitive_idempotents(Q)) == Q.dim


MORPHISM_ANCHORS = {
    "multiplicative": "f(ab) = f(a)f(b)",
    "unital": "f(1) = 1",
}


def _morphism_table(mapping: Tensor) -> LinearTable:
    # mapping[k, j] is the coefficient of f_k in f(e_j)
    table: LinearTable = {}
    for (k, j), c in mapping.coords.items():
        table.setdefault((j,), []).append(((k,), c))
    return table


def apply_map(mapping: Tensor, u: Coords, legs: Optional[Sequence[int]] = None) -> Coords:
    table = _morphism_table(mapping)
    legs = range(len(next(iter(u)))) if legs is None and u else (legs or ())
    for leg in legs:
        u = map_leg(u, leg, table)
    return u


def _morphism_identities(A, B, mapping: Tensor, coalgebra: bool, quasi_hopf: bool):
    source = getattr(A, "alg", A)
    target = getattr(B, "alg", B)
    n = source.dim
    table = _morphism_table(mapping)
    image = {j: map_leg(source.basis(j), 0, table) for j in range(n)}
    for i in range(n):
        for j in range(n):
            lhs = map_leg(source.multiply(source.basis(i), source.basis(j)), 0, table)
            yield Identity("multiplicative", (i, j), lhs, target.multiply(image[i], image[j]))
    yield Identity("unital", (), map_leg(source.unit.coords, 0, table), target.unit.coords)
    if coalgebra:
        for i in range(n):
            lhs = apply_map(mapping, map_leg(source.basis(i), 0, A.comult_table()))
            yield Identity("comultiplicative", (i,), lhs, map_leg(image[i], 0, B.comult_table()))
            yield Identity(
                "counital", (i,),
                map_leg(image[i], 0, B.counit_table()),
                map_leg(source.basis(i), 0, A.counit_table()),
            )
        yield Identity("reassociator", (), apply_map(mapping, A.phi.coords), B.phi.coords)
    if quasi_hopf:
        for i in range(n):
            lhs = map_leg(map_leg(source.basis(i), 0, A.antipode_table()), 0, table)
            yield Identity("antipode", (i,), lhs, map_leg(image[i], 0, B.antipode_table()))
        yield Identity("alpha", (), map_leg(A.alpha.coords, 0, table), B.alpha.coords)
        yield Identity("beta", (), map_leg(A.beta.coords, 0, table), B.beta.coords)


def verify_algebra_morphism(
    A,
    B,
    mapping: Tensor,
    bijective: bool = False,
    coalgebra: bool = False,
    quasi_hopf: bool = False,
) -> VerificationReport:
    '''
    Check that `mapping` (columns are images of the basis of A) is a
    morphism of algebras, optionally of quasi-bialgebras or quasi-Hopf
    algebras. `coalgebra` and `quasi_hopf` expect quasi-Hopf data on
    both sides
    '''
    source = getattr(A, "alg", A)
    target = getattr(B, "alg", B)
    if mapping.dims != (target.dim, source.dim):
        raise ShapeMismatch(f"Map dims {mapping.dims} do not match {target.dim}x{source.dim}")
    anchors = dict(MORPHISM_ANCHORS)
    if coalgebra or quasi_hopf:
        anchors.update({
            "comultiplicative": "(f⊗f)Δ = Δf",
            "counital": "εf = ε",
            "reassociator": "(f⊗f⊗f)Φ = Φ'",
        })
        coalgebra = True
    if quasi_hopf:
        anchors.update({"antipode": "fS = S'f", "alpha": "f(α) = α'", "beta": "f(β) = β'"})
    report = collect(
        f"{source.name} -> {target.name}",
        anchors,
        _morphism_identities(A, B, mapping, coalgebra, quasi_hopf),
    )
    if bijective:
        rows = [dict() for _ in range(target.dim)]
        for (k, j), c in mapping.coords.items():
            rows[k][j] = c
        reduced, _ = row_reduce(rows)
        full = source.dim == target.dim and len(reduced) == source.dim
        report.add("bijective", "f is invertible", None if full else {"rank": len(reduced)})
    return report
