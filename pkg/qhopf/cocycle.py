import itertools
import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence

from qhopf import settings
from qhopf.api.exception import (BadOrder, BadParameter, CertificateFailure,
                                 NotAutomorphism, ShapeMismatch)
from qhopf.exactcore import (CycScalar, Tensor, get_field, map_leg,
                             root_of_unity)
from qhopf.models import VerificationReport

logger = logging.getLogger(__name__)


@dataclass
class GroupTable:
    '''
    Finite group by its multiplication table on indices 0..order-1
    '''
    name: str
    labels: List[str]
    table: List[List[int]]
    identity: int = 0

    def __post_init__(self):
        n = len(self.labels)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ShapeMismatch(f"Group table of {self.name} is not {n}x{n}")
        self.inverse = [next(b for b in range(n) if self.table[a][b] == self.identity) for a in range(n)]

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    @classmethod
    def cyclic(cls, n: int) -> "GroupTable":
        labels = ["1", "g"] + [f"g^{k}" for k in range(2, n)]
        return cls(f"C{n}", labels[:n], [[(a + b) % n for b in range(n)] for a in range(n)])

    @classmethod
    def s3(cls) -> "GroupTable":
        '''
        Index 3I + i stands for t^I s^i with s^3 = t^2 = 1, s t = t s^-1
        '''
        labels = ["1", "s", "s^2", "t", "ts", "ts^2"]
        table = []
        for I, i in itertools.product(range(2), range(3)):
            row = []
            for J, j in itertools.product(range(2), range(3)):
                sign = -1 if J else 1
                row.append(3 * ((I + J) % 2) + (sign * i + j) % 3)
            table.append(row)
        return cls("S3", labels, table)

    def split(self, a: int):
        return divmod(a, 3)

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        n = self.order
        if sorted(perm) != list(range(n)):
            return False
        return all(perm[self.mul(a, b)] == self.mul(perm[a], perm[b]) for a in range(n) for b in range(n))


@dataclass
class Cocycle3Table:
    '''
    values[g, h, k] = φ(g, h, k), nonzero scalars
    '''
    group: GroupTable
    values: Tensor
    name: str = ""

    def __post_init__(self):
        if self.values.dims != (self.group.order,) * 3:
            raise ShapeMismatch(f"Cocycle dims {self.values.dims} for a group of order {self.group.order}")

    def __call__(self, g: int, h: int, k: int) -> CycScalar:
        return self.values[g, h, k]

    def __mul__(self, other: "Cocycle3Table") -> "Cocycle3Table":
        return Cocycle3Table(self.group, _pointwise(self.values, other.values, self.group.order, 3), f"{self.name}*{other.name}")

    def inverse(self) -> "Cocycle3Table":
        return Cocycle3Table(self.group, _pointwise_inverse(self.values), f"{self.name}^-1")

    def is_normalized(self) -> bool:
        e = self.group.identity
        n = self.group.order
        return all(
            self(*triple) == 1
            for a, b in itertools.product(range(n), repeat=2)
            for triple in ((e, a, b), (a, e, b), (a, b, e))
        )


@dataclass
class Cochain2Table:
    group: GroupTable
    values: Tensor
    name: str = ""

    def __call__(self, g: int, h: int) -> CycScalar:
        return self.values[g, h]


def _pointwise(a: Tensor, b: Tensor, n: int, k: int) -> Tensor:
    out = Tensor.zeros((n,) * k)
    for idx in itertools.product(range(n), repeat=k):
        out.entries[idx] = a[idx] * b[idx]
    return out


def _pointwise_inverse(a: Tensor) -> Tensor:
    cache = {}
    out = Tensor.zeros(a.dims)
    for idx in itertools.product(*(range(d) for d in a.dims)):
        value = a[idx]
        if value not in cache:
            cache[value] = value.inverse()
        out.entries[idx] = cache[value]
    return out


def _cocycle_from(group: GroupTable, fn, name: str) -> Cocycle3Table:
    n = group.order
    values = Tensor.zeros((n, n, n))
    for g, h, k in itertools.product(range(n), repeat=3):
        values.entries[g, h, k] = fn(g, h, k)
    return Cocycle3Table(group, values, name)


def build_cyclic_cocycle(n: int, a: int, divisor: Optional[int] = None) -> Cocycle3Table:
    '''
    φ(g^i, g^j, g^l) = ζ_n^(a i floor((j + l) / d)), d = n unless overridden
    '''
    if n < 1 or get_field().order % n:
        raise BadOrder(f"C{n} cocycles need n dividing the cyclotomic order {get_field().order}")
    if not 0 <= a < n:
        raise BadParameter(f"Cocycle parameter a={a} outside [0, {n})")
    d = divisor or n
    group = GroupTable.cyclic(n)
    return _cocycle_from(group, lambda i, j, l: root_of_unity(n, a * i * ((j + l) // d)), f"phi_C{n}[{a}]")


def c6_reassociator_cocycle(a: int, divisor: Optional[int] = None) -> Cocycle3Table:
    return build_cyclic_cocycle(6, a, divisor or settings.QHOPF_C6_FLOOR_DIVISOR)


def build_s3_cocycle(p: int) -> Cocycle3Table:
    '''
    ω_p(t^I s^i, t^J s^j, t^L s^l)
      = q^(p (-1)^(J+L) i floor(((-1)^L j + l) / 3)) (-1)^(p I J L)
    '''
    if not 0 <= p < 6:
        raise BadParameter(f"S3 cocycle parameter p={p} outside [0, 6)")
    group = GroupTable.s3()

    def value(g, h, k):
        I, i = group.split(g)
        J, j = group.split(h)
        L, l = group.split(k)
        exponent = p * (-1) ** (J + L) * i * (((-1) ** L * j + l) // 3)
        return root_of_unity(3, exponent) * root_of_unity(2, p * I * J * L)

    return _cocycle_from(group, value, f"omega_S3[{p}]")


def build_psi(a: int, variant: Optional[str] = None) -> Cocycle3Table:
    '''
    Cocycle on C3 whose transport gives the reassociator of k[S3]_Ψ.
    With f(m) = floor(m / 2), "as_printed" multiplies the correction
    f((j+l) mod 3) - f(j) - f(l) by a i, "proof_derived" by a alone
    '''
    variant = variant or settings.QHOPF_PSI_VARIANT
    if a not in (1, 2):
        raise BadParameter(f"Ψ parameter a={a} must be 1 or 2")
    group = GroupTable.cyclic(3)

    def f(m):
        return m // 2

    if variant == "as_printed":
        def value(i, j, l):
            return root_of_unity(3, a * i * (((j + l) // 3) + f((j + l) % 3) - f(j) - f(l)))
    elif variant == "proof_derived":
        def value(i, j, l):
            return root_of_unity(3, a * i * ((j + l) // 3) + a * (f((j + l) % 3) - f(j) - f(l)))
    else:
        raise BadParameter(f"Unknown Ψ variant {variant}")
    return _cocycle_from(group, value, f"psi_C3[{a}]")


def gauge_cochain_psi(a: int) -> Cochain2Table:
    '''
    g_a(s^i, s^j) = q^(a i floor(j / 2)), the cochain relating the
    printed Ψ_a to φ_(q^a)
    '''
    group = GroupTable.cyclic(3)
    values = Tensor.zeros((3, 3))
    for i, j in itertools.product(range(3), repeat=2):
        values.entries[i, j] = root_of_unity(3, a * i * (j // 2))
    return Cochain2Table(group, values, f"g_{a}")


def verify_3cocycle(phi: Cocycle3Table) -> VerificationReport:
    group = phi.group
    n = group.order
    report = VerificationReport(phi.name or "cocycle")
    witness = None
    for g, h in itertools.product(range(n), repeat=2):
        for triple in ((group.identity, g, h), (g, group.identity, h), (g, h, group.identity)):
            if phi(*triple) != 1:
                witness = {"basis": list(triple), "value": phi(*triple).to_wire()}
                break
        if witness:
            break
    report.add("normalized", "φ(g, h, k) = 1 when an argument is 1", witness)

    zero = next((list(t) for t in itertools.product(range(n), repeat=3) if not phi(*t)), None)
    report.add("nonzero", "φ takes invertible values", {"basis": zero} if zero else None)

    witness = None
    mul = group.mul
    failures = 0
    for g, h, k, l in itertools.product(range(n), repeat=4):
        lhs = phi(h, k, l) * phi(g, mul(h, k), l) * phi(g, h, k)
        rhs = phi(mul(g, h), k, l) * phi(g, h, mul(k, l))
        if lhs != rhs:
            failures += 1
            if witness is None:
                witness = {"basis": [g, h, k, l], "lhs": lhs.to_wire(), "rhs": rhs.to_wire()}
    if witness:
        witness["failures"] = failures
    report.add("cocycle", "φ(h,k,l)φ(g,hk,l)φ(g,h,k) = φ(gh,k,l)φ(g,h,kl)", witness)
    logger.info(f"3-cocycle {phi.name}: {report.summary()}")
    return report


def coboundary(g2: Cochain2Table) -> Cocycle3Table:
    '''
    δg(x, y, z) = g(y, z) g(xy, z)^-1 g(x, yz) g(x, y)^-1
    '''
    group = g2.group
    n = group.order
    inverse = _pointwise_inverse(g2.values)
    mul = group.mul

    def value(x, y, z):
        return g2(y, z) * inverse[mul(x, y), z] * g2(x, mul(y, z)) * inverse[x, y]

    return _cocycle_from(group, value, f"d({g2.name})")


def cohomologous(phi: Cocycle3Table, psi: Cocycle3Table, g2: Cochain2Table) -> bool:
    '''
    ψ = φ · δg pointwise
    '''
    if phi.group.order != psi.group.order:
        return False
    return psi.values == (phi * coboundary(g2)).values


def invariant_under(phi: Cocycle3Table, aut: Sequence[int]) -> bool:
    group = phi.group
    if not group.is_automorphism(aut):
        raise NotAutomorphism(f"{list(aut)} is not an automorphism of {group.name}")
    n = group.order
    return all(phi(aut[g], aut[h], aut[k]) == phi(g, h, k) for g, h, k in itertools.product(range(n), repeat=3))


def inversion(group: GroupTable) -> List[int]:
    return [group.inv(a) for a in range(group.order)]


def reassociator_from_cocycle(phi: Cocycle3Table) -> Tensor:
    '''
    Φ = Σ φ(g, h, k) P_g⊗P_h⊗P_k in the idempotent basis of k^G
    '''
    return Tensor.from_coords(phi.values.dims, dict(phi.values.coords))


def idempotent_basis(n: int) -> Tensor:
    '''
    rows: 1_i = (1/n) Σ_t ξ^(-ti) g^t in k[C_n], certified orthogonal and complete
    '''
    scale = CycScalar.rational(1, n)
    T = Tensor.zeros((n, n))
    for i, t in itertools.product(range(n), repeat=2):
        T.entries[i, t] = root_of_unity(n, -t * i) * scale
    for i, j in itertools.product(range(n), repeat=2):
        prod = [CycScalar.zero()] * n
        for s, t in itertools.product(range(n), repeat=2):
            prod[(s + t) % n] = prod[(s + t) % n] + T[i, s] * T[j, t]
        expected = [T[i, t] if i == j else CycScalar.zero() for t in range(n)]
        if prod != expected:
            raise CertificateFailure(f"Idempotents of k[C{n}] not orthogonal at ({i}, {j})")
    total = [sum((T[i, t] for i in range(n)), CycScalar.zero()) for t in range(n)]
    if total != [CycScalar.one()] + [CycScalar.zero()] * (n - 1):
        raise CertificateFailure(f"Idempotents of k[C{n}] do not sum to 1")
    return T


def transport(tensor: Tensor, change: Tensor) -> Tensor:
    '''
    Rewrite every leg through the rows of `change` (leg index i -> Σ_t change[i, t] e_t)
    '''
    table = {}
    for (i, t), c in change.coords.items():
        table.setdefault((i,), []).append(((t,), c))
    coords = dict(tensor.coords)
    for leg in range(tensor.order):
        coords = map_leg(coords, leg, table)
    return Tensor.from_coords((change.dims[1],) * tensor.order, coords)


def random_cochain(group: GroupTable, rng: random.Random) -> Cochain2Table:
    '''
    Normalized 2-cochain with random roots of unity as values
    '''
    n = group.order
    order = get_field().order
    values = Tensor.zeros((n, n))
    for g, h in itertools.product(range(n), repeat=2):
        if group.identity in (g, h):
            values.entries[g, h] = CycScalar.one()
        else:
            values.entries[g, h] = root_of_unity(order, rng.randrange(order))
    return Cochain2Table(group, values, "random")


def cyclic_class_invariant(phi: Cocycle3Table) -> CycScalar:
    '''
    Π_j φ(g, g^j, g) for a generator g of a cyclic group; it only
    depends on the cohomology class
    '''
    n = phi.group.order
    acc = CycScalar.one()
    for j in range(n):
        acc = acc * phi(1 % n, j, 1 % n)
    return acc


def cochain_family(group: GroupTable, root_order: int, c: int, m: int) -> Cochain2Table:
    n = group.order
    values = Tensor.zeros((n, n))
    for i, j in itertools.product(range(n), repeat=2):
        values.entries[i, j] = root_of_unity(root_order, c * i * (j // m))
    return Cochain2Table(group, values, f"g[{root_order},{c},{m}]")


def search_cobounding_cochain(phi: Cocycle3Table, psi: Cocycle3Table, root_order: Optional[int] = None) -> Optional[Cochain2Table]:
    '''
    Bounded search over g(x^i, x^j) = ζ_r^(c i floor(j / m)) on a cyclic group
    '''
    n = phi.group.order
    r = root_order or n
    for c in range(r):
        for m in range(1, n + 1):
            candidate = cochain_family(phi.group, r, c, m)
            if cohomologous(phi, psi, candidate):
                logger.info(f"{psi.name} = {phi.name}·δ{candidate.name}")
                return candidate
    return None
