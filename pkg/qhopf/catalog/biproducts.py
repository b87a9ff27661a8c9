import logging
from typing import Tuple

from qhopf.api.exception import UnknownEntry
from qhopf.biproduct import (BiproductData, assemble_biproduct,
                             assemble_biproduct_hopf, biproduct_generators)
from qhopf.catalog.braided import BAR_PRODUCTS, bar_bialgebra, c3_hopf
from qhopf.catalog.hopf import base_by_name, build_h2, dual_quasi_hopf, ks3, kc6_phi
from qhopf.cocycle import GroupTable
from qhopf.exactcore import (CycScalar, Coords, Tensor, accumulate, outer,
                             prune, root_of_unity)
from qhopf.quasihopf import QuasiHopfData

logger = logging.getLogger(__name__)

ONE = CycScalar.one()
HALF = CycScalar.rational(1, 2)

QUASI_BIALGEBRA_NAMES = {"Bu": "Hu", "Buu": "Huu", "Buu_c": "Huu_c"}

# (braided factor, base) for the quasi-Hopf biproducts
HOPF_BIPRODUCTS = {
    "B_C6xkC2": ("C6", "kC2"),
    "B_S3xkC2": ("S3", "kC2"),
    "B_starxkC2": ("star", "kC2"),
    "B_C6xH2": ("C6", "H2"),
    "B_starxH2": ("star", "H2"),
}


def quasi_bialgebra_biproduct(name: str, j: int = 0) -> BiproductData:
    '''
    Hu, Huu, Huu_c: B×H(2) for the bialgebras with an idempotent xbar,
    with generators G = 1×g, X = xbar×1, Y = y×1
    '''
    factor = next((b for b, h in QUASI_BIALGEBRA_NAMES.items() if h == name), None)
    if factor is None:
        raise UnknownEntry(f"Unknown six-dimensional quasi-bialgebra {name}, expected one of {sorted(QUASI_BIALGEBRA_NAMES.values())}")
    B = bar_bialgebra(factor, j)
    data = assemble_biproduct(B, build_h2(), name=f"{name}[j={j}]")
    biproduct_generators(data, {
        "G": ("H", {(1,): ONE}),
        "X": ("B", {(1,): ONE}),
        "Y": ("B", {(2,): ONE}),
    })
    return data


def printed_delta_y(data: BiproductData, j: int) -> Coords:
    '''
    (P+ + q^(2j+1)P-)X⊗Y + Y⊗P+X - GY⊗P-X with P± = (1 ± G)/2
    '''
    A = data.assembled.alg
    gens = data.generators
    unit = A.unit.coords
    p_plus, p_minus = {}, {}
    for idx, c in unit.items():
        accumulate(p_plus, idx, c * HALF)
        accumulate(p_minus, idx, c * HALF)
    for idx, c in gens["G"].items():
        accumulate(p_plus, idx, c * HALF)
        accumulate(p_minus, idx, -c * HALF)
    q = root_of_unity(4, 2 * j + 1)
    weight = dict(p_plus)
    for idx, c in p_minus.items():
        accumulate(weight, idx, c * q)
    X, Y, G = gens["X"], gens["Y"], gens["G"]
    out: Coords = {}
    for idx, c in outer(A.multiply(prune(weight), X), Y).items():
        accumulate(out, idx, c)
    for idx, c in outer(Y, A.multiply(prune(p_plus), X)).items():
        accumulate(out, idx, c)
    for idx, c in outer(A.multiply(G, Y), A.multiply(prune(p_minus), X)).items():
        accumulate(out, idx, -c)
    return prune(out)


def hopf_biproduct(name: str) -> BiproductData:
    if name not in HOPF_BIPRODUCTS:
        raise UnknownEntry(f"Unknown biproduct {name}, expected one of {sorted(HOPF_BIPRODUCTS)}")
    kind, base = HOPF_BIPRODUCTS[name]
    return assemble_biproduct_hopf(c3_hopf(kind, base), base_by_name(base), name=name)


# explicit isomorphisms onto the group algebras and k^S3; x^i×g^j has index 2i + j

def _c6_map() -> Tensor:
    return Tensor.from_coords((6, 6), {((2 * i + 3 * j) % 6, 2 * i + j): ONE for i in range(3) for j in range(2)})


def _s3_map() -> Tensor:
    # x^i×g^j -> s^i t^j = t^j s^((-1)^j i)
    return Tensor.from_coords((6, 6), {(3 * j + ((-1) ** j * i) % 3, 2 * i + j): ONE for i in range(3) for j in range(2)})


def _dual_s3_map() -> Tensor:
    '''
    x^m×1 -> Σ_i w^(mi)(P_(s^i) + P_(s^i t)), x^m×g -> Σ_i w^(mi)(P_(s^i) - P_(s^i t))
    '''
    coords: Coords = {}
    for m in range(3):
        for i in range(3):
            w = root_of_unity(3, m * i)
            reflection = 3 + (-i) % 3
            accumulate(coords, (i, 2 * m), w)
            accumulate(coords, (reflection, 2 * m), w)
            accumulate(coords, (i, 2 * m + 1), w)
            accumulate(coords, (reflection, 2 * m + 1), -w)
    return Tensor.from_coords((6, 6), prune(coords))


ISOMORPHISMS = {
    "B_C6xkC2": (lambda: kc6_phi(0), _c6_map),
    "B_S3xkC2": (ks3, _s3_map),
    "B_starxkC2": (lambda: dual_quasi_hopf(GroupTable.s3(), name="kS3dual"), _dual_s3_map),
}


def biproduct_isomorphism(name: str) -> Tuple[BiproductData, QuasiHopfData, Tensor]:
    '''
    The biproduct, its classical counterpart and the comparison map
    (mapping[k, j]: coefficient of f_k in the image of the j-th basis element)
    '''
    if name not in ISOMORPHISMS:
        raise UnknownEntry(f"No explicit isomorphism for {name}")
    target, mapping = ISOMORPHISMS[name]
    return hopf_biproduct(name), target(), mapping()


def quasi_bialgebra_names():
    return [QUASI_BIALGEBRA_NAMES[b] for b in BAR_PRODUCTS]
