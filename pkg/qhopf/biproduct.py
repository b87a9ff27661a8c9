import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple, Union

from qhopf.algebra import AlgebraPresentation, verify_algebra
from qhopf.api.exception import CertificateFailure, MissingAntipode
from qhopf.exactcore import (CycScalar, Coords, Tensor, accumulate, fuse,
                             map_leg, outer, permute, prune)
from qhopf.quasihopf import (QuasiBialgebraData, QuasiHopfData, insert_leg,
                             verify_quasi_bialgebra, verify_quasi_hopf)
from qhopf.yd import BraidedBialgebraData, braided_transport

logger = logging.getLogger(__name__)


@dataclass
class BiproductData:
    '''
    B×H on the basis b_u × h_v, indexed u*dim(H) + v
    '''
    braided: BraidedBialgebraData
    base: QuasiHopfData
    assembled: Union[QuasiBialgebraData, QuasiHopfData]
    generators: Dict[str, Coords] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.braided.dim * self.base.dim

    def embed_braided(self, b: Coords) -> Coords:
        return lift(b, self.base.alg.unit.coords, self.base.dim)

    def embed_base(self, h: Coords) -> Coords:
        return lift(self.braided.unit.coords, h, self.base.dim)


def lift(b: Coords, h: Coords, n_base: int) -> Coords:
    # b × h for one-leg b and h
    out: Coords = {}
    for (u,), x in b.items():
        for (v,), y in h.items():
            accumulate(out, (u * n_base + v,), x * y)
    return prune(out)


def lift_legs(B: BraidedBialgebraData, element: Coords, n_base: int) -> Coords:
    '''
    1_B×h^1 ⊗ ... ⊗ 1_B×h^k for an element of H^(⊗k)
    '''
    out: Coords = {}
    for idx, val in element.items():
        partial: Coords = {(): val}
        for h in idx:
            partial = outer(partial, lift(B.unit.coords, {(h,): CycScalar.one()}, n_base))
        for key, v in partial.items():
            accumulate(out, key, v)
    return prune(out)


def smash_product_algebra(B: BraidedBialgebraData, H: QuasiHopfData) -> AlgebraPresentation:
    '''
    (b#h)(b'#h') = (x1·b)(x2h1·b') # x3h2h', certified associative
    '''
    nB, nH = B.dim, H.dim
    Hm = H.alg.mult_table()
    Bm = B.alg.mult_table()
    act = B.module.action_table()
    mult: Coords = {}
    for h in range(nH):
        head = outer(H.phi_inv.coords, H.qb.coproduct(h))
        head = fuse(head, 1, 3, Hm)
        head = fuse(head, 2, 3, Hm)
        for b in range(nB):
            for c in range(nB):
                v = outer(head, {(b, c): CycScalar.one()})
                v = fuse(v, 0, 3, act, at=2)
                v = fuse(v, 0, 3, act, at=2)
                v = fuse(v, 1, 2, Bm)
                for k in range(nH):
                    w = fuse(outer(v, {(k,): CycScalar.one()}), 0, 2, Hm, at=1)
                    for (u, t), val in w.items():
                        mult[(b * nH + h, c * nH + k, u * nH + t)] = val
    n = nB * nH
    unit = lift(B.unit.coords, H.alg.unit.coords, nH)
    labels = [f"{bl}#{hl}" for bl in B.labels for hl in H.alg.basis_labels]
    A = AlgebraPresentation(n, labels, Tensor.from_coords((n,), unit), Tensor.from_coords((n, n, n), mult),
                            name=f"{B.name}#{H.name}")
    report = verify_algebra(A)
    if not report.passed:
        raise CertificateFailure(f"The smash product {A.name} fails {report.failed_checks}")
    return A


def smash_coproduct(B: BraidedBialgebraData, H: QuasiHopfData) -> Tuple[Tensor, Tensor]:
    nB, nH = B.dim, H.dim
    Hm = H.alg.mult_table()
    comult: Coords = {}
    counit: Coords = {}
    for b in range(nB):
        e_b = {(b,): CycScalar.one()}
        transported = braided_transport(B, B.coproduct(e_b))
        eps_b = B.counit_of(e_b)
        for h in range(nH):
            v = outer(transported, H.qb.coproduct(h))
            v = fuse(v, 0, 4, Hm)
            v = fuse(v, 1, 4, Hm)
            v = permute(v, [2, 0, 3, 1])
            source = b * nH + h
            for (a, l, c, r), val in v.items():
                accumulate(comult, (source, a * nH + l, c * nH + r), val)
            value = eps_b * H.qb.counit[h]
            if value:
                counit[(source,)] = value
    n = nB * nH
    return Tensor.from_coords((n, n, n), prune(comult)), Tensor.from_coords((n,), counit)


def assemble_biproduct(B: BraidedBialgebraData, H: QuasiHopfData, name: str = "") -> BiproductData:
    algebra = smash_product_algebra(B, H)
    comult, counit = smash_coproduct(B, H)
    n = algebra.dim
    qb = QuasiBialgebraData(
        alg=algebra,
        comult=comult,
        counit=counit,
        phi=Tensor.from_coords((n, n, n), lift_legs(B, H.phi.coords, H.dim)),
        phi_inv=Tensor.from_coords((n, n, n), lift_legs(B, H.phi_inv.coords, H.dim)),
        name=name or f"{B.name}×{H.name}",
    )
    report = verify_quasi_bialgebra(qb)
    if not report.passed:
        raise CertificateFailure(f"The biproduct {qb.name} fails {report.failed_checks}")
    logger.info(f"Assembled biproduct quasi-bialgebra {qb.name} of dimension {n}")
    return BiproductData(B, H, qb)


def _antipode_kernel(H: QuasiHopfData) -> Coords:
    # X1x1_1 ⊗ X2x1_2 ⊗ X3x2βS(x3)
    Hm = H.alg.mult_table()
    v = outer(H.phi.coords, H.phi_inv.coords)
    v = map_leg(v, 3, H.comult_table())
    v = fuse(v, 0, 3, Hm)
    v = fuse(v, 1, 3, Hm)
    v = fuse(v, 2, 3, Hm)
    v = map_leg(v, 3, H.antipode_table())
    v = insert_leg(v, 3, H.beta.coords)
    v = fuse(v, 2, 3, Hm)
    return fuse(v, 2, 3, Hm)


def biproduct_antipode(B: BraidedBialgebraData, H: QuasiHopfData, algebra: AlgebraPresentation) -> Tensor:
    '''
    S(b×h) = (1_B×S(X1x1_1 b_[-1] h)α)(X2x1_2·S_B(b_[0]) × X3x2βS(x3))
    '''
    nB, nH = B.dim, H.dim
    Hm = H.alg.mult_table()
    S = H.antipode_table()
    act = B.module.action_table()
    theta = _antipode_kernel(H)
    out: Coords = {}
    for b in range(nB):
        head = outer(theta, B.module.coact({(b,): CycScalar.one()}))
        head = fuse(head, 0, 3, Hm)
        for h in range(nH):
            v = fuse(outer(head, {(h,): CycScalar.one()}), 0, 4, Hm)
            v = map_leg(v, 0, S)
            v = fuse(insert_leg(v, 1, H.alpha.coords), 0, 1, Hm)
            v = map_leg(v, 3, B.antipode_table())
            v = fuse(v, 1, 3, act, at=2)
            pair: Coords = {}
            for (e, d, f), val in v.items():
                for (u,), cu in B.unit.coords.items():
                    accumulate(pair, (u * nH + e, f * nH + d), val * cu)
            for (k,), val in fuse(prune(pair), 0, 1, algebra.mult_table()).items():
                out[(b * nH + h, k)] = val
    n = nB * nH
    return Tensor.from_coords((n, n), out)


def assemble_biproduct_hopf(B: BraidedBialgebraData, H: QuasiHopfData, name: str = "") -> BiproductData:
    if B.antipode is None:
        raise MissingAntipode(f"{B.name} carries no antipode, the biproduct is only a quasi-bialgebra")
    bialgebra = assemble_biproduct(B, H, name=name)
    qb = bialgebra.assembled
    hopf = QuasiHopfData(
        qb=qb,
        antipode=biproduct_antipode(B, H, qb.alg),
        alpha=Tensor.from_coords((qb.dim,), lift(B.unit.coords, H.alpha.coords, H.dim)),
        beta=Tensor.from_coords((qb.dim,), lift(B.unit.coords, H.beta.coords, H.dim)),
        name=qb.name,
    )
    report = verify_quasi_hopf(hopf)
    if not report.passed:
        raise CertificateFailure(f"The biproduct {hopf.name} fails {report.failed_checks}")
    logger.info(f"Assembled biproduct quasi-Hopf algebra {hopf.name}")
    return BiproductData(B, H, hopf)


def biproduct_generators(data: BiproductData, names: Optional[Dict[str, Tuple[str, Coords]]] = None) -> Dict[str, Coords]:
    '''
    Named elements of B×H; `names` maps a label to ("B", b) or ("H", h)
    '''
    for label, (side, element) in (names or {}).items():
        data.generators[label] = data.embed_braided(element) if side == "B" else data.embed_base(element)
    return data.generators
