import logging
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from qhopf.api.exception import BadParameter, UnknownEntry
from qhopf.catalog.hopf import base_by_name, build_h2
from qhopf.exactcore import (CycScalar, Coords, Tensor, accumulate, prune,
                             root_of_unity)
from qhopf.quasihopf import QuasiHopfData
from qhopf.yd import (BraidedBialgebraData, YDModuleData, simple_sum,
                      with_antipode)

logger = logging.getLogger(__name__)

ONE = CycScalar.one()
HALF = CycScalar.rational(1, 2)

C3_LABELS = ["1", "x", "x^2"]
LEMMA_LABELS = ["1", "x", "y"]
BAR_LABELS = ["1", "xbar", "y"]


def _scalar(value) -> CycScalar:
    if isinstance(value, CycScalar):
        return value
    value = Fraction(value)
    return CycScalar.rational(value.numerator, value.denominator)


def _check_j(j: int) -> None:
    if j not in (0, 1):
        raise BadParameter(f"Parameter j must be 0 or 1, got {j}")


def odd_label(j: int) -> str:
    return f"M_{2 * j + 1}"


def algebra_tensor(d: int, products: Dict[Tuple[int, int], Dict[int, object]]) -> Tensor:
    '''
    Structure constants with basis element 0 as the unit; `products`
    lists the remaining nonzero products
    '''
    coords: Coords = {}
    for b in range(d):
        coords[(0, b, b)] = ONE
        coords[(b, 0, b)] = ONE
    for (a, b), image in products.items():
        for k, c in image.items():
            coords[(a, b, k)] = _scalar(c)
    return Tensor.from_coords((d, d, d), prune(coords))


def coalgebra_tensors(d: int, coproducts: Dict[int, Dict[Tuple[int, int], object]], counit: Sequence) -> Tuple[Tensor, Tensor]:
    coords: Coords = {(0, 0, 0): ONE}
    for b, image in coproducts.items():
        for (l, r), c in image.items():
            coords[(b, l, r)] = _scalar(c)
    return Tensor.from_coords((d, d, d), prune(coords)), Tensor.vector([_scalar(c) for c in counit])


# three-dimensional Hopf algebras k[C3] in the Yetter-Drinfeld category

C3_KINDS = ("C6", "S3", "star")


def c3_module(H: QuasiHopfData, kind: str) -> YDModuleData:
    '''
    C6: trivial action and coaction. S3: g·x^i = x^(2i). star: trivial
    action, λ(x^i) = p+⊗x^i + p-⊗x^(2i)
    '''
    if kind not in C3_KINDS:
        raise UnknownEntry(f"Unknown k[C3] fixture {kind}, expected one of {C3_KINDS}")
    action: Coords = {}
    coaction: Coords = {}
    for i in range(3):
        twin = (2 * i) % 3
        action[(0, i, i)] = ONE
        action[(1, i, twin if kind == "S3" else i)] = ONE
        if kind == "star":
            accumulate(coaction, (i, 0, i), HALF)
            accumulate(coaction, (i, 1, i), HALF)
            accumulate(coaction, (i, 0, twin), HALF)
            accumulate(coaction, (i, 1, twin), -HALF)
        else:
            coaction[(i, 0, i)] = ONE
    return YDModuleData(H, 3, Tensor.from_coords((2, 3, 3), action), Tensor.from_coords((3, 2, 3), prune(coaction)),
                        labels=C3_LABELS, name=f"B_{kind}")


def c3_hopf(kind: str, base: str = "kC2") -> BraidedBialgebraData:
    '''
    k[C3] with grouplike comultiplication over k[C2] or H(2); the antipode
    is solved and certified
    '''
    module = c3_module(base_by_name(base), kind)
    products = {(a, b): {(a + b) % 3: 1} for a in range(1, 3) for b in range(1, 3)}
    comult, counit = coalgebra_tensors(3, {b: {(b, b): 1} for b in range(1, 3)}, [1, 1, 1])
    B = BraidedBialgebraData(module, algebra_tensor(3, products), Tensor.basis_vector(3, 0), comult, counit,
                             name=f"B_{kind}", labels=C3_LABELS)
    return with_antipode(B)


# three-dimensional algebras in the Yetter-Drinfeld category over H(2)

LEMMA_ALGEBRAS: Dict[str, Tuple[str, Dict]] = {
    "B_2o_00": ("M_2", {}),
    "B_0o_10": ("M_0", {(1, 1): {0: 1}, (1, 2): {2: 1}, (2, 1): {2: -1}}),
    "B_0o_0": ("M_0", {(2, 2): {1: 1}}),
    "B_0o_00": ("M_0", {}),
    "B_0o_10c": ("M_0", {(1, 1): {0: 1}, (1, 2): {2: 1}, (2, 1): {2: 1}}),
}


def lemma_algebra(name: str, j: int) -> BraidedBialgebraData:
    '''
    Algebra on M_0 ⊕ M_(0 or 2) ⊕ M_(2j+1) with basis 1, x, y
    '''
    _check_j(j)
    if name not in LEMMA_ALGEBRAS:
        raise UnknownEntry(f"Unknown algebra {name}")
    second, products = LEMMA_ALGEBRAS[name]
    label = f"{name}[j={j}]"
    module = simple_sum(build_h2(), ["M_0", second, odd_label(j)], LEMMA_LABELS, name=label)
    return BraidedBialgebraData(module, algebra_tensor(3, products), Tensor.basis_vector(3, 0), name=label,
                                labels=LEMMA_LABELS)


def _with_coalgebra(algebra: BraidedBialgebraData, coproducts: Dict, counit: Sequence, name: str) -> BraidedBialgebraData:
    comult, eps = coalgebra_tensors(algebra.dim, coproducts, counit)
    return BraidedBialgebraData(algebra.module, algebra.mult, algebra.unit, comult, eps, name=name,
                                labels=algebra.labels)


half = Fraction(1, 2)

# (algebra, Δ(x), Δ(y), ε)
BRAIDED_BIALGEBRAS = {
    "bb_i": (
        "B_0o_10",
        {(0, 0): -half, (0, 1): half, (1, 0): half, (1, 1): half},
        {(0, 2): half, (2, 0): half, (1, 2): half, (2, 1): half},
        [1, 1, 0],
    ),
    "bb_ii": (
        "B_0o_10",
        {(0, 0): half, (0, 1): half, (1, 0): half, (1, 1): -half},
        {(0, 2): half, (2, 0): half, (1, 2): -half, (2, 1): -half},
        [1, -1, 0],
    ),
    "bb_iii": (
        "B_0o_10c",
        {(0, 0): half, (0, 1): half, (1, 0): half, (1, 1): -half},
        {(0, 2): half, (2, 0): half, (1, 2): -half, (2, 1): -half},
        [1, -1, 0],
    ),
}


def braided_bialgebra(name: str, j: int) -> BraidedBialgebraData:
    if name not in BRAIDED_BIALGEBRAS:
        raise UnknownEntry(f"Unknown braided bialgebra {name}")
    algebra_name, delta_x, delta_y, counit = BRAIDED_BIALGEBRAS[name]
    return _with_coalgebra(lemma_algebra(algebra_name, j), {1: delta_x, 2: delta_y}, counit, f"{name}[j={j}]")


def primitive_coalgebra(j: int) -> BraidedBialgebraData:
    '''
    B_0o_0 with Δ(x) = x⊗1 + 1⊗x + (1 + q^(2j+1)) y⊗y and y primitive.
    The coalgebra axioms hold but Δ is not multiplicative
    '''
    c = ONE + root_of_unity(4, 2 * j + 1)
    coproducts = {
        1: {(1, 0): 1, (0, 1): 1, (2, 2): c},
        2: {(0, 2): 1, (2, 0): 1},
    }
    return _with_coalgebra(lemma_algebra("B_0o_0", j), coproducts, [1, 0, 0], f"B_0o_0_primitive[j={j}]")


# bialgebras with an idempotent xbar = (1 + x)/2, the braided factors of
# the six-dimensional non-semisimple quasi-bialgebras

BAR_PRODUCTS = {
    "Bu": {(1, 1): {1: 1}, (1, 2): {2: 1}},
    "Buu": {(1, 1): {1: 1}, (2, 1): {2: 1}},
    "Buu_c": {(1, 1): {1: 1}},
}


def bar_bialgebra(name: str, j: int = 0) -> BraidedBialgebraData:
    '''
    Δ(xbar) = xbar⊗xbar, Δ(y) = xbar⊗y + y⊗xbar, ε(xbar) = 1, ε(y) = 0
    '''
    _check_j(j)
    if name not in BAR_PRODUCTS:
        raise UnknownEntry(f"Unknown braided bialgebra {name}")
    label = f"{name}[j={j}]"
    module = simple_sum(build_h2(), ["M_0", "M_0", odd_label(j)], BAR_LABELS, name=label)
    comult, counit = coalgebra_tensors(3, {1: {(1, 1): 1}, 2: {(1, 2): 1, (2, 1): 1}}, [1, 1, 0])
    return BraidedBialgebraData(module, algebra_tensor(3, BAR_PRODUCTS[name]), Tensor.basis_vector(3, 0),
                                comult, counit, name=label, labels=BAR_LABELS)


def simple_module(label: str) -> YDModuleData:
    '''
    M_0..M_3 over H(2), M_j^i over k[C2]
    '''
    base = "kC2" if "^" in label else "H2"
    return simple_sum(base_by_name(base), [label], ["m"], name=label)


def fixture_pairs() -> List[Tuple[str, str]]:
    return [(a, b) for a in BRAIDED_BIALGEBRAS for b in BRAIDED_BIALGEBRAS if a != b]
