import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from qhopf.algebra import AlgebraPresentation
from qhopf.api.exception import (AntipodeNotInvertible, CertificateFailure,
                                 Infeasible, NotInvertible, ShapeMismatch)
from qhopf.exactcore import (CycScalar, Coords, LinearSolution, LinearTable,
                             Tensor, accumulate, fuse, linear_table, map_leg,
                             multiply_legs, outer, prune, solve_rows,
                             tensor_element_invert, unit_power)
from qhopf.models import Identity, VerificationReport, collect, terms_to_coords

logger = logging.getLogger(__name__)

QUASI_BIALGEBRA_ANCHORS = {
    "delta_algebra_morphism": "Δ(ab) = Δ(a)Δ(b), Δ(1) = 1⊗1",
    "counit_algebra_morphism": "ε(ab) = ε(a)ε(b), ε(1) = 1",
    "q1": "quasi-coassociativity: (id⊗Δ)Δ(h) = Φ(Δ⊗id)Δ(h)Φ^-1",
    "q2": "counit laws: (ε⊗id)Δ = id = (id⊗ε)Δ",
    "q3": "pentagon for the reassociator",
    "q4": "counital reassociator: (id⊗ε⊗id)Φ = 1⊗1",
}

QUASI_HOPF_ANCHORS = {
    "antipode_anti_morphism": "S(ab) = S(b)S(a), S(1) = 1",
    "q5": "S(h1)αh2 = ε(h)α and h1βS(h2) = ε(h)β",
    "q6": "X1βS(X2)αX3 = 1 and S(x1)αx2βS(x3) = 1",
}


@dataclass
class QuasiBialgebraData:
    '''
    Algebra with a quasi-coassociative comultiplication.
    comult[i, j, k]: coefficient of e_j⊗e_k in Δ(e_i).
    The inverse reassociator is checked against phi when supplied
    and computed otherwise
    '''
    alg: AlgebraPresentation
    comult: Tensor
    counit: Tensor
    phi: Tensor
    phi_inv: Optional[Tensor] = None
    name: str = ""
    _tables: Dict[str, LinearTable] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.alg.dim
        for label, tensor, dims in (
            ("comultiplication", self.comult, (n, n, n)),
            ("counit", self.counit, (n,)),
            ("reassociator", self.phi, (n, n, n)),
        ):
            if tensor.dims != dims:
                raise ShapeMismatch(f"The {label} has dims {tensor.dims}, expected {dims}")
        self.name = self.name or self.alg.name
        eps_unit = sum((self.counit[k] * c for (k,), c in self.alg.unit.coords.items()), CycScalar.zero())
        if eps_unit != 1:
            raise CertificateFailure(f"{self.name}: ε(1) = {eps_unit}")
        if self.phi_inv is None:
            self.phi_inv = tensor_element_invert(self.alg, 3, self.phi)
        else:
            tables = [self.alg.product_table()] * 3
            one = unit_power(self.alg, 3)
            if (multiply_legs(tables, self.phi.coords, self.phi_inv.coords) != one
                    or multiply_legs(tables, self.phi_inv.coords, self.phi.coords) != one):
                raise NotInvertible(f"{self.name}: the supplied Φ^-1 is not the inverse of Φ")

    @property
    def dim(self) -> int:
        return self.alg.dim

    def comult_table(self) -> LinearTable:
        if "comult" not in self._tables:
            self._tables["comult"] = linear_table(self.comult, 1)
        return self._tables["comult"]

    def counit_table(self) -> LinearTable:
        if "counit" not in self._tables:
            self._tables["counit"] = linear_table(self.counit, 1)
        return self._tables["counit"]

    def coproduct(self, i: int) -> Coords:
        return terms_to_coords(self.comult_table().get((i,)))

    def counit_of(self, u: Coords) -> object:
        return map_leg(u, 0, self.counit_table()).get((), CycScalar.zero())


@dataclass
class QuasiHopfData:
    '''
    Quasi-bialgebra with antipode and distinguished elements.
    antipode[i, j]: coefficient of e_j in S(e_i)
    '''
    qb: QuasiBialgebraData
    antipode: Tensor
    alpha: Tensor
    beta: Tensor
    antipode_inverse: Optional[Tensor] = None
    name: str = ""
    _tables: Dict[str, LinearTable] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.qb.dim
        if self.antipode.dims != (n, n):
            raise ShapeMismatch(f"The antipode has dims {self.antipode.dims}, expected {(n, n)}")
        if self.alpha.dims != (n,) or self.beta.dims != (n,):
            raise ShapeMismatch("α and β must be elements of the algebra")
        self.name = self.name or self.qb.name

    @property
    def alg(self) -> AlgebraPresentation:
        return self.qb.alg

    @property
    def dim(self) -> int:
        return self.qb.dim

    @property
    def phi(self) -> Tensor:
        return self.qb.phi

    @property
    def phi_inv(self) -> Tensor:
        return self.qb.phi_inv

    def comult_table(self) -> LinearTable:
        return self.qb.comult_table()

    def counit_table(self) -> LinearTable:
        return self.qb.counit_table()

    def antipode_table(self) -> LinearTable:
        if "antipode" not in self._tables:
            self._tables["antipode"] = linear_table(self.antipode, 1)
        return self._tables["antipode"]

    def antipode_inverse_table(self) -> LinearTable:
        if "antipode_inverse" not in self._tables:
            if self.antipode_inverse is None:
                self.antipode_inverse = invert_antipode(self)
            self._tables["antipode_inverse"] = linear_table(self.antipode_inverse, 1)
        return self._tables["antipode_inverse"]


def _structure(H):
    return H.qb if isinstance(H, QuasiHopfData) else H


def collapse(alg: AlgebraPresentation, u: Coords) -> Coords:
    '''
    Multiply all legs of u from left to right
    '''
    table = alg.mult_table()
    while u and len(next(iter(u))) > 1:
        u = fuse(u, 0, 1, table)
    return u


def insert_leg(u: Coords, position: int, element: Coords) -> Coords:
    out: Coords = {}
    for idx, val in u.items():
        for (e,), c in element.items():
            accumulate(out, idx[:position] + (e,) + idx[position:], val * c)
    return prune(out)


def _quasi_bialgebra_identities(Q: QuasiBialgebraData):
    A = Q.alg
    n = A.dim
    tables = [A.product_table()] * 2
    delta, eps = Q.comult_table(), Q.counit_table()
    phi, phi_inv = Q.phi.coords, Q.phi_inv.coords
    unit = A.unit.coords
    unit2 = unit_power(A, 2)
    one = {(): CycScalar.one()}

    yield Identity("delta_algebra_morphism", ("unit",), map_leg(unit, 0, delta), unit2)
    yield Identity("counit_algebra_morphism", ("unit",), map_leg(unit, 0, eps), one)
    for i in range(n):
        for j in range(n):
            prod = A.multiply(A.basis(i), A.basis(j))
            yield Identity(
                "delta_algebra_morphism", (i, j),
                map_leg(prod, 0, delta),
                multiply_legs(tables, Q.coproduct(i), Q.coproduct(j)),
            )
            yield Identity(
                "counit_algebra_morphism", (i, j),
                map_leg(prod, 0, eps),
                outer(map_leg(A.basis(i), 0, eps), map_leg(A.basis(j), 0, eps)),
            )

    triple = [A.product_table()] * 3
    for h in range(n):
        dh = Q.coproduct(h)
        lhs = map_leg(dh, 1, delta)
        rhs = multiply_legs(triple, multiply_legs(triple, phi, map_leg(dh, 0, delta)), phi_inv)
        yield Identity("q1", (h,), lhs, rhs)
        e_h = A.basis(h)
        yield Identity("q2", (h, "left"), map_leg(dh, 0, eps), e_h)
        yield Identity("q2", (h, "right"), map_leg(dh, 1, eps), e_h)

    quad = [A.product_table()] * 4
    lhs = multiply_legs(
        quad,
        multiply_legs(quad, outer(unit, phi), map_leg(phi, 1, delta)),
        outer(phi, unit),
    )
    rhs = multiply_legs(quad, map_leg(phi, 2, delta), map_leg(phi, 0, delta))
    yield Identity("q3", (), lhs, rhs)
    yield Identity("q4", (), map_leg(phi, 1, eps), unit2)


def verify_quasi_bialgebra(Q) -> VerificationReport:
    Q = _structure(Q)
    report = collect(Q.name, QUASI_BIALGEBRA_ANCHORS, _quasi_bialgebra_identities(Q))
    logger.info(f"Quasi-bialgebra {Q.name}: {report.summary()}")
    return report


def alpha_sandwich(H: QuasiHopfData, h: int, alpha: Coords) -> Coords:
    # S(h1) α h2
    return collapse(H.alg, insert_leg(map_leg(H.qb.coproduct(h), 0, H.antipode_table()), 1, alpha))


def beta_sandwich(H: QuasiHopfData, h: int, beta: Coords) -> Coords:
    # h1 β S(h2)
    return collapse(H.alg, insert_leg(map_leg(H.qb.coproduct(h), 1, H.antipode_table()), 1, beta))


def phi_alpha_beta(H: QuasiHopfData, alpha: Coords, beta: Coords) -> Coords:
    # X1 β S(X2) α X3
    u = map_leg(H.phi.coords, 1, H.antipode_table())
    return collapse(H.alg, insert_leg(insert_leg(u, 1, beta), 3, alpha))


def phi_inv_alpha_beta(H: QuasiHopfData, alpha: Coords, beta: Coords) -> Coords:
    # S(x1) α x2 β S(x3)
    S = H.antipode_table()
    u = map_leg(map_leg(H.phi_inv.coords, 0, S), 2, S)
    return collapse(H.alg, insert_leg(insert_leg(u, 1, alpha), 3, beta))


def _quasi_hopf_identities(H: QuasiHopfData):
    A = H.alg
    S = H.antipode_table()
    unit = A.unit.coords
    alpha, beta = H.alpha.coords, H.beta.coords
    yield Identity("antipode_anti_morphism", ("unit",), map_leg(unit, 0, S), unit)
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = map_leg(A.multiply(A.basis(i), A.basis(j)), 0, S)
            rhs = A.multiply(map_leg(A.basis(j), 0, S), map_leg(A.basis(i), 0, S))
            yield Identity("antipode_anti_morphism", (i, j), lhs, rhs)
    for h in range(A.dim):
        eps = H.qb.counit[h]
        yield Identity("q5", (h, "alpha"), alpha_sandwich(H, h, alpha), prune({k: v * eps for k, v in alpha.items()}))
        yield Identity("q5", (h, "beta"), beta_sandwich(H, h, beta), prune({k: v * eps for k, v in beta.items()}))
    yield Identity("q6", ("phi",), phi_alpha_beta(H, alpha, beta), unit)
    yield Identity("q6", ("phi_inv",), phi_inv_alpha_beta(H, alpha, beta), unit)


def verify_quasi_hopf(H: QuasiHopfData) -> VerificationReport:
    '''
    The quasi-bialgebra records come first, followed by the antipode axioms
    '''
    report = verify_quasi_bialgebra(H.qb)
    report.subject = H.name
    collect(H.name, QUASI_HOPF_ANCHORS, _quasi_hopf_identities(H), report=report)
    logger.info(f"Quasi-Hopf algebra {H.name}: {report.summary()}")
    return report


def invert_antipode(H: QuasiHopfData) -> Tensor:
    n = H.dim
    rows: List[Dict[int, object]] = [dict() for _ in range(n)]
    # column j of the matrix holds S(e_j)
    for (j, k), c in H.antipode.coords.items():
        rows[k][j] = c
    inverse: Dict[tuple, object] = {}
    for i in range(n):
        rhs = [CycScalar.one() if k == i else CycScalar.zero() for k in range(n)]
        solution = solve_rows(rows, rhs, n)
        if not solution.feasible or solution.kernel_basis:
            raise AntipodeNotInvertible(f"The antipode of {H.name} is singular")
        # S^-1(e_i) = Σ_j x_j e_j
        for (j,), v in solution.particular.coords.items():
            inverse[(i, j)] = v
    return Tensor.from_coords((n, n), inverse)


@dataclass
class CanonicalElements:
    antipode_inverse: Tensor
    p_right: Coords
    q_right: Coords
    p_left: Coords


def canonical_elements(H: QuasiHopfData) -> CanonicalElements:
    '''
    p_R = x1 ⊗ x2 β S(x3), q_R = X1 ⊗ S^-1(α X3) X2, p_L = X2 S^-1(X1 β) ⊗ X3
    '''
    A = H.alg
    m = A.mult_table()
    S = H.antipode_table()
    S_inv = H.antipode_inverse_table()
    alpha, beta = H.alpha.coords, H.beta.coords

    u = insert_leg(map_leg(H.phi_inv.coords, 2, S), 2, beta)
    p_right = fuse(fuse(u, 1, 2, m), 1, 2, m)

    u = fuse(insert_leg(H.phi.coords, 2, alpha), 2, 3, m)
    q_right = fuse(map_leg(u, 2, S_inv), 2, 1, m)

    u = fuse(insert_leg(H.phi.coords, 1, beta), 0, 1, m)
    p_left = fuse(map_leg(u, 0, S_inv), 1, 0, m)
    return CanonicalElements(H.antipode_inverse, p_right, q_right, p_left)


@dataclass
class TwistData:
    '''
    Gauge transformation F with its inverse. Counitality is certified
    against the comultiplication it will act on
    '''
    F: Tensor
    inverse: Tensor


def make_twist(H, F: Tensor) -> TwistData:
    Q = _structure(H)
    n = Q.dim
    if F.dims != (n, n):
        raise ShapeMismatch(f"Twist dims {F.dims}, expected {(n, n)}")
    unit = Q.alg.unit.coords
    eps = Q.counit_table()
    if map_leg(F.coords, 0, eps) != unit or map_leg(F.coords, 1, eps) != unit:
        raise CertificateFailure("The twist is not counital")
    return TwistData(F, tensor_element_invert(Q.alg, 2, F))


def inverse_twist(twist: TwistData) -> TwistData:
    '''
    F^-1 undoes F: twisting H_F by it gives back H
    '''
    return TwistData(twist.inverse, twist.F)


def apply_twist(H, twist: TwistData):
    '''
    Δ_F = FΔF^-1, Φ_F = (1⊗F)(id⊗Δ)(F)Φ(Δ⊗id)(F^-1)(F^-1⊗1),
    α_F = S(G1)αG2 and β_F = F1βS(F2) for G = F^-1. S is unchanged
    '''
    Q = _structure(H)
    A = Q.alg
    n = A.dim
    pair = [A.product_table()] * 2
    triple = [A.product_table()] * 3
    delta = Q.comult_table()
    F, G = twist.F.coords, twist.inverse.coords
    unit = A.unit.coords

    comult: Coords = {}
    for i in range(n):
        for idx, v in multiply_legs(pair, multiply_legs(pair, F, Q.coproduct(i)), G).items():
            comult[(i,) + idx] = v

    def chain(*factors):
        acc = factors[0]
        for f in factors[1:]:
            acc = multiply_legs(triple, acc, f)
        return acc

    phi = chain(outer(unit, F), map_leg(F, 1, delta), Q.phi.coords, map_leg(G, 0, delta), outer(G, unit))
    phi_inv = chain(outer(F, unit), map_leg(F, 0, delta), Q.phi_inv.coords, map_leg(G, 1, delta), outer(unit, G))
    twisted = QuasiBialgebraData(
        alg=A,
        comult=Tensor.from_coords((n, n, n), comult),
        counit=Q.counit,
        phi=Tensor.from_coords((n, n, n), phi),
        phi_inv=Tensor.from_coords((n, n, n), phi_inv),
        name=f"{Q.name}^F",
    )
    if not isinstance(H, QuasiHopfData):
        return twisted
    S = H.antipode_table()
    alpha = collapse(A, insert_leg(map_leg(G, 0, S), 1, H.alpha.coords))
    beta = collapse(A, insert_leg(map_leg(F, 1, S), 1, H.beta.coords))
    return QuasiHopfData(
        qb=twisted,
        antipode=H.antipode,
        alpha=Tensor.from_coords((n,), alpha),
        beta=Tensor.from_coords((n,), beta),
        antipode_inverse=H.antipode_inverse,
        name=twisted.name,
    )


def counit_kernel(Q) -> List[Coords]:
    Q = _structure(Q)
    row = {k: v for (k,), v in Q.counit.coords.items()}
    solution = solve_rows([row], [CycScalar.zero()], Q.dim)
    return [t.coords for t in solution.kernel_basis]


def random_twist(H, rng: random.Random, terms: int = 2, attempts: int = 20) -> TwistData:
    '''
    F = 1⊗1 + Σ r k_a⊗k_b with k_a in the kernel of ε, so F is counital
    by construction; redrawn until invertible
    '''
    Q = _structure(H)
    kernel = counit_kernel(Q)
    unit2 = unit_power(Q.alg, 2)
    n = Q.dim
    for _ in range(attempts):
        F = dict(unit2)
        for _ in range(terms if kernel else 0):
            a, b = rng.choice(kernel), rng.choice(kernel)
            r = rng.choice([-3, -2, -1, 1, 2, 3])
            for idx, v in outer(a, b).items():
                accumulate(F, idx, v * r)
        try:
            return make_twist(Q, Tensor.from_coords((n, n), prune(F)))
        except NotInvertible:
            continue
    raise NotInvertible(f"No invertible twist found for {Q.name} after {attempts} attempts")


def distinguished_system(qb: QuasiBialgebraData, antipode: Tensor, beta: Tensor):
    '''
    Linear system in the coordinates of α:
    S(h1)αh2 = ε(h)α for every h, X1βS(X2)αX3 = 1, S(x1)αx2βS(x3) = 1
    '''
    n = qb.dim
    probe = QuasiHopfData(qb, antipode, Tensor.zeros((n,)), beta)
    unit = qb.alg.unit.coords
    rows: List[Dict[int, object]] = []
    rhs: List[object] = []
    columns = {m: {} for m in range(n)}
    for m in range(n):
        e_m = qb.alg.basis(m)
        for h in range(n):
            eps = qb.counit[h]
            value = alpha_sandwich(probe, h, e_m)
            if eps:
                accumulate(value, (m,), -eps)
            for (k,), v in prune(value).items():
                columns[m][("q5", h, k)] = v
        for (k,), v in phi_alpha_beta(probe, e_m, beta.coords).items():
            columns[m][("q6_phi", k)] = v
        for (k,), v in phi_inv_alpha_beta(probe, e_m, beta.coords).items():
            columns[m][("q6_phi_inv", k)] = v
    keys = [("q5", h, k) for h in range(n) for k in range(n)]
    keys += [("q6_phi", k) for k in range(n)] + [("q6_phi_inv", k) for k in range(n)]
    for key in keys:
        rows.append({m: columns[m][key] for m in range(n) if key in columns[m]})
        if key[0] == "q5":
            rhs.append(CycScalar.zero())
        else:
            rhs.append(unit.get((key[-1],), CycScalar.zero()))
    return rows, rhs


def solve_distinguished_detailed(qb: QuasiBialgebraData, antipode: Tensor, beta: Tensor) -> LinearSolution:
    rows, rhs = distinguished_system(qb, antipode, beta)
    return solve_rows(rows, rhs, qb.dim)


def solve_distinguished(qb: QuasiBialgebraData, antipode: Tensor, beta: Tensor) -> Tensor:
    solution = solve_distinguished_detailed(qb, antipode, beta)
    if not solution.feasible:
        raise Infeasible(
            f"No α exists for {qb.name} with the given S and β",
            certificate={"rank": solution.rank, "inconsistent": [p for p, _ in solution.inconsistent]},
        )
    if solution.kernel_basis:
        logger.warning(f"α for {qb.name} is not unique: kernel of dimension {len(solution.kernel_basis)}")
    return solution.particular


def with_distinguished(qb: QuasiBialgebraData, antipode: Tensor, beta: Optional[Tensor] = None, name: str = "") -> QuasiHopfData:
    beta = beta if beta is not None else qb.alg.unit
    alpha = solve_distinguished(qb, antipode, beta)
    return QuasiHopfData(qb, antipode, alpha, beta, name=name or qb.name)
