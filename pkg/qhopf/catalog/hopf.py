import logging
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from qhopf import settings
from qhopf.algebra import (AlgebraPresentation, algebra_from_products,
                           function_algebra, group_algebra)
from qhopf.api.exception import CertificateFailure, Infeasible, UnknownEntry
from qhopf.cocycle import (Cocycle3Table, GroupTable, build_psi,
                           build_s3_cocycle, c6_reassociator_cocycle,
                           idempotent_basis, reassociator_from_cocycle,
                           transport)
from qhopf.exactcore import (CycScalar, Coords, Tensor, accumulate, map_leg,
                             multiply_legs, outer, prune, solve_rows,
                             unit_power)
from qhopf.quasihopf import (QuasiBialgebraData, QuasiHopfData, collapse,
                             insert_leg, verify_quasi_hopf,
                             with_distinguished)

logger = logging.getLogger(__name__)

HALF = CycScalar.rational(1, 2)

# checks the printed D(H(2)) coproduct is known to violate
DH2_PRINTED_FAILURES = ["delta_algebra_morphism", "q1", "q2", "q5"]


def sign_reassociator(alg: AlgebraPresentation, x: int) -> Tensor:
    '''
    Φ = 1⊗1⊗1 - 2 p⊗p⊗p with p = (1 - x)/2 for a basis element x, x² = 1
    '''
    p: Coords = {}
    for idx, c in alg.unit.coords.items():
        accumulate(p, idx, c * HALF)
    accumulate(p, (x,), -HALF)
    phi = dict(unit_power(alg, 3))
    for idx, c in outer(p, p, p).items():
        accumulate(phi, idx, c * -2)
    return Tensor.from_coords((alg.dim,) * 3, prune(phi))


def grouplike_comultiplication(n: int) -> Tensor:
    return Tensor.from_coords((n, n, n), {(g, g, g): CycScalar.one() for g in range(n)})


def group_quasi_hopf(group: GroupTable, phi: Optional[Tensor] = None, name: str = "") -> QuasiHopfData:
    '''
    k[G] with grouplike comultiplication, S(g) = g^-1, β = 1 and α solved
    '''
    alg = group_algebra(group, name=name)
    n = group.order
    phi = phi if phi is not None else Tensor.from_coords((n, n, n), unit_power(alg, 3))
    qb = QuasiBialgebraData(
        alg=alg,
        comult=grouplike_comultiplication(n),
        counit=Tensor.vector([1] * n),
        phi=phi,
        name=alg.name,
    )
    antipode = Tensor.from_coords((n, n), {(g, group.inv(g)): CycScalar.one() for g in range(n)})
    return with_distinguished(qb, antipode, name=alg.name)


def dual_quasi_hopf(group: GroupTable, cocycle: Optional[Cocycle3Table] = None, name: str = "") -> QuasiHopfData:
    '''
    k^G with Δ(P_g) = Σ_(ab=g) P_a⊗P_b, S(P_g) = P_(g^-1) and the
    reassociator read off the cocycle. β = 1 is tried first, the
    idempotent β = Σ φ(g, g^-1, g)^-1 P_g second
    '''
    alg = function_algebra(group, name=name)
    n = group.order
    one = CycScalar.one()
    comult = {(group.mul(a, b), a, b): one for a in range(n) for b in range(n)}
    if cocycle is None:
        phi = Tensor.from_coords((n, n, n), {(g, h, k): one for g in range(n) for h in range(n) for k in range(n)})
    else:
        phi = reassociator_from_cocycle(cocycle)
    qb = QuasiBialgebraData(
        alg=alg,
        comult=Tensor.from_coords((n, n, n), comult),
        counit=Tensor.basis_vector(n, group.identity),
        phi=phi,
        name=alg.name,
    )
    antipode = Tensor.from_coords((n, n), {(g, group.inv(g)): one for g in range(n)})
    try:
        H = with_distinguished(qb, antipode, name=alg.name)
        logger.info(f"{alg.name}: β = 1 admits a solution for α")
        return H
    except Infeasible:
        logger.info(f"{alg.name}: β = 1 is infeasible, retrying with the idempotent β")
    beta = Tensor.from_coords((n,), {(g,): phi[g, group.inv(g), g].inverse() for g in range(n)})
    return with_distinguished(qb, antipode, beta, name=alg.name)


@lru_cache(maxsize=None)
def build_kc2() -> QuasiHopfData:
    return group_quasi_hopf(GroupTable.cyclic(2), name="kC2")


@lru_cache(maxsize=None)
def build_h2() -> QuasiHopfData:
    '''
    k[C2] with Φ = 1 - 2p-⊗p-⊗p-, S = id, α = g, β = 1
    '''
    alg = group_algebra(GroupTable.cyclic(2), name="H2")
    phi = sign_reassociator(alg, 1)
    qb = QuasiBialgebraData(alg, grouplike_comultiplication(2), Tensor.vector([1, 1]), phi, phi_inv=phi, name="H2")
    return QuasiHopfData(qb, Tensor.identity(2), Tensor.basis_vector(2, 1), Tensor.basis_vector(2, 0), name="H2")


BASES = {"H2": build_h2, "kC2": build_kc2}


def base_by_name(name: str) -> QuasiHopfData:
    try:
        return BASES[name]()
    except KeyError:
        raise UnknownEntry(f"Unknown base {name}, expected one of {sorted(BASES)}")


# the classification families in dimension 6

def kc6_phi(a: int, divisor: Optional[int] = None) -> QuasiHopfData:
    '''
    k[C6] with the reassociator of the cyclic cocycle transported to the
    group basis through the idempotents 1_i
    '''
    divisor = divisor or settings.QHOPF_C6_FLOOR_DIVISOR
    cocycle = c6_reassociator_cocycle(a, divisor)
    phi = transport(reassociator_from_cocycle(cocycle), idempotent_basis(6))
    suffix = "" if divisor == 6 else f",d={divisor}"
    return group_quasi_hopf(GroupTable.cyclic(6), phi, name=f"kC6_Phi[{a}{suffix}]")


def kc6_phi_printed(a: int) -> QuasiBialgebraData:
    '''
    The floor divisor 3 as printed; Φ is then not counital for a != 0,
    so only the quasi-bialgebra data is assembled
    '''
    cocycle = c6_reassociator_cocycle(a, 3)
    phi = transport(reassociator_from_cocycle(cocycle), idempotent_basis(6))
    alg = group_algebra(GroupTable.cyclic(6), name=f"kC6_Phi_printed[{a}]")
    return QuasiBialgebraData(alg, grouplike_comultiplication(6), Tensor.vector([1] * 6), phi, name=alg.name)


def ks3() -> QuasiHopfData:
    return group_quasi_hopf(GroupTable.s3(), name="kS3")


def ks3_psi(a: int, variant: Optional[str] = None) -> QuasiHopfData:
    '''
    k[S3] with a reassociator supported on the rotation subalgebra k[C3]
    '''
    variant = variant or settings.QHOPF_PSI_VARIANT
    if variant != "as_printed":
        logger.warning(f"Ψ variant {variant} differs from the printed exponent")
    rotations = transport(reassociator_from_cocycle(build_psi(a, variant)), idempotent_basis(3))
    # s^t sits at index t of S3
    phi = Tensor.from_coords((6, 6, 6), rotations.coords)
    return group_quasi_hopf(GroupTable.s3(), phi, name=f"kS3_Psi[{a}]")


def ks3_dual_phi(p: int) -> QuasiHopfData:
    return dual_quasi_hopf(GroupTable.s3(), build_s3_cocycle(p), name=f"kS3dual_Phi[{p}]")


# the double D(H(2)) on k[C4] = span(Y^k), X = Y²

DH2_LABELS = ["1", "Y", "Y^2", "Y^3"]


def _c4_algebra(name: str) -> AlgebraPresentation:
    return algebra_from_products(DH2_LABELS, [1, 0, 0, 0], {(a, b): (a + b) % 4 for a in range(4) for b in range(4)}, name=name)


def _dh2(alg: AlgebraPresentation, coproducts: List[Coords], name: str) -> QuasiHopfData:
    comult: Coords = {}
    for k, delta in enumerate(coproducts):
        for (a, b), c in delta.items():
            comult[(k, a, b)] = c
    phi = sign_reassociator(alg, 2)
    qb = QuasiBialgebraData(alg, Tensor.from_coords((4, 4, 4), prune(comult)), Tensor.vector([1, -1, 1, -1]),
                            phi, phi_inv=phi, name=name)
    return QuasiHopfData(qb, Tensor.identity(4), Tensor.basis_vector(4, 2), Tensor.basis_vector(4, 0), name=name)


def dh2_printed() -> QuasiHopfData:
    '''
    Δ(Y) = -½(Y⊗Y + Y³⊗Y + Y⊗Y³ - Y²⊗Y³), Δ(X) = X⊗X, Δ(Y³) = Δ(X)Δ(Y)
    '''
    alg = _c4_algebra("DH2_printed")
    tables = [alg.product_table()] * 2
    one = CycScalar.one()
    delta_y = {(1, 1): -HALF, (3, 1): -HALF, (1, 3): -HALF, (2, 3): HALF}
    delta_x = {(2, 2): one}
    coproducts = [{(0, 0): one}, delta_y, delta_x, multiply_legs(tables, delta_x, delta_y)]
    return _dh2(alg, coproducts, "DH2_printed")


ODD_PAIRS = [(1, 1), (1, 3), (3, 1), (3, 3)]


def derive_dh2_comultiplication(H: Optional[QuasiHopfData] = None) -> Coords:
    '''
    Δ(Y) in span(Y^a⊗Y^b, a and b odd) from the linear conditions the
    counit laws and the α, β identities impose with ε, S, α, β, Φ kept
    '''
    H = H or dh2_printed()
    alg = H.alg
    S = H.antipode_table()
    one = CycScalar.one()
    eps = H.qb.counit
    columns: Dict[Tuple, Dict[int, object]] = {}
    for col, (a, b) in enumerate(ODD_PAIRS):
        term = {(a, b): one}
        contributions = [
            (("counit_left", b), eps[a]),
            (("counit_right", a), eps[b]),
        ]
        for (k,), v in collapse(alg, insert_leg(map_leg(term, 0, S), 1, H.alpha.coords)).items():
            contributions.append((("alpha", k), v))
        for (k,), v in collapse(alg, insert_leg(map_leg(term, 1, S), 1, H.beta.coords)).items():
            contributions.append((("beta", k), v))
        for key, v in contributions:
            if v:
                columns.setdefault(key, {})[col] = v
    eps_y = eps[1]
    targets = {("counit_left", 1): one, ("counit_right", 1): one}
    for (k,), v in H.alpha.coords.items():
        targets[("alpha", k)] = v * eps_y
    for (k,), v in H.beta.coords.items():
        targets[("beta", k)] = v * eps_y
    keys = sorted(set(columns) | set(targets), key=repr)
    rows = [columns.get(key, {}) for key in keys]
    rhs = [targets.get(key, CycScalar.zero()) for key in keys]
    solution = solve_rows(rows, rhs, len(ODD_PAIRS))
    if not solution.feasible or solution.kernel_basis:
        raise CertificateFailure(
            f"Δ(Y) is not determined by the linear conditions: rank {solution.rank}, "
            f"kernel {len(solution.kernel_basis)}"
        )
    delta_y = {ODD_PAIRS[c]: v for (c,), v in solution.particular.coords.items()}
    logger.info(f"Derived Δ(Y) for D(H(2)): {delta_y}")
    return delta_y


def dh2() -> QuasiHopfData:
    '''
    D(H(2)) with the derived Δ(Y) and Δ(Y^k) = Δ(Y)^k. Δ(Y)² = X⊗X and
    Δ(Y)⁴ = 1⊗1 are certified before the data is returned
    '''
    printed = dh2_printed()
    report = verify_quasi_hopf(printed)
    if report.failed_checks:
        logger.warning(f"The printed coproduct of D(H(2)) fails {report.failed_checks}")
    alg = _c4_algebra("DH2")
    tables = [alg.product_table()] * 2
    one = CycScalar.one()
    powers = [{(0, 0): one}, derive_dh2_comultiplication(printed)]
    for _ in range(3):
        powers.append(multiply_legs(tables, powers[-1], powers[1]))
    if powers[2] != {(2, 2): one} or powers[4] != powers[0]:
        raise CertificateFailure("The derived Δ(Y) does not square to X⊗X or is not of order 4")
    return _dh2(alg, powers[:4], "DH2")


def dh2_group_map() -> Tuple[AlgebraPresentation, Tensor]:
    '''
    Y^k -> g^k into k[C4]
    '''
    return group_algebra(GroupTable.cyclic(4), name="kC4"), Tensor.identity(4)
