import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple, Union

from qhopf.api.exception import BadParameter, UnknownEntry
from qhopf.catalog import biproducts, braided, hopf

logger = logging.getLogger(__name__)

KINDS = (
    "algebra",
    "quasi_bialgebra",
    "quasi_hopf",
    "yd_module",
    "braided_algebra",
    "braided_coalgebra",
    "braided_bialgebra",
    "braided_hopf",
)

PASS = {"status": "pass", "failed": []}


def failing(*checks: str) -> dict:
    return {"status": "fail", "failed": sorted(checks)}


@dataclass(frozen=True)
class CatalogEntry:
    '''
    A named fixture. `params` maps each parameter to its admissible values,
    `expected` is the summary of a fresh verification run, either fixed or
    computed from the parameters
    '''
    name: str
    kind: str
    builder: Callable[..., object]
    anchor: str
    params: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    defaults: Dict[str, int] = field(default_factory=dict)
    expected: Union[dict, Callable[[Dict[str, int]], dict]] = field(default_factory=lambda: dict(PASS))
    choices: Dict[str, str] = field(default_factory=dict)
    facts: Dict[str, object] = field(default_factory=dict)

    def resolve(self, params: Optional[Dict[str, object]] = None) -> Dict[str, int]:
        params = dict(params or {})
        unknown = set(params) - set(self.params)
        if unknown:
            raise BadParameter(f"{self.name} takes no parameter {sorted(unknown)}")
        resolved: Dict[str, int] = {}
        for key, allowed in self.params.items():
            if key not in params:
                if key not in self.defaults:
                    raise BadParameter(f"{self.name} requires the parameter {key}")
                resolved[key] = self.defaults[key]
                continue
            try:
                value = int(params[key])
            except (TypeError, ValueError):
                raise BadParameter(f"Parameter {key}={params[key]!r} of {self.name} is not an integer")
            if value not in allowed:
                raise BadParameter(f"Parameter {key}={value} of {self.name} outside {list(allowed)}")
            resolved[key] = value
        return resolved

    def expected_for(self, params: Optional[Dict[str, object]] = None) -> dict:
        if callable(self.expected):
            return self.expected(self.resolve(params))
        return dict(self.expected)

    def instances(self) -> List[Dict[str, int]]:
        keys = list(self.params)
        return [dict(zip(keys, values)) for values in itertools.product(*(self.params[k] for k in keys))]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "anchor": self.anchor,
            "params": {k: list(v) for k, v in self.params.items()},
            "builds": [
                {"params": instance, "expected": self.expected_for(instance)}
                for instance in self.instances()
            ],
            "choices": dict(self.choices),
            "facts": dict(self.facts),
        }


J = {"j": (0, 1)}
GROUP_ANTIPODE = {
    "antipode": "S(g) = g^-1 on group bases, S(P_g) = P_(g^-1) on function bases",
    "beta": "β = 1 first, the idempotent β as fallback",
    "alpha": "solved from the linear α system",
}


def _c6_printed_expected(params: Dict[str, int]) -> dict:
    return dict(PASS) if params["a"] == 0 else failing("q3", "q4")


ENTRIES: List[CatalogEntry] = [
    CatalogEntry("kC2", "quasi_hopf", hopf.build_kc2, "group algebra of C2 with trivial reassociator",
                 choices=GROUP_ANTIPODE, facts={"radical_dim": 0}),
    CatalogEntry("H2", "quasi_hopf", hopf.build_h2,
                 "k[C2] with Φ = 1 - 2p-⊗p-⊗p-, S = id, α = g, β = 1", facts={"radical_dim": 0}),
    CatalogEntry("DH2_printed", "quasi_hopf", hopf.dh2_printed,
                 "double of H(2) with the printed Δ(Y)", expected=failing(*hopf.DH2_PRINTED_FAILURES),
                 choices={"comultiplication": "as printed"}),
    CatalogEntry("DH2", "quasi_hopf", hopf.dh2, "double of H(2), Δ(Y) derived from the counit and α, β laws",
                 choices={"comultiplication": "derived, Δ(Y^k) = Δ(Y)^k"}, facts={"radical_dim": 0}),
    CatalogEntry("kC6_Phi", "quasi_hopf", lambda a: hopf.kc6_phi(a),
                 "k[C6] with the reassociator of the cyclic 3-cocycle, floor divisor 6",
                 params={"a": tuple(range(6))}, choices={**GROUP_ANTIPODE, "floor_divisor": "6"},
                 facts={"radical_dim": 0}),
    CatalogEntry("kC6_Phi_printed", "quasi_bialgebra", hopf.kc6_phi_printed,
                 "k[C6] with the printed floor divisor 3", params={"a": tuple(range(6))},
                 expected=_c6_printed_expected, choices={"floor_divisor": "3"}),
    CatalogEntry("kS3", "quasi_hopf", hopf.ks3, "group algebra of S3", choices=GROUP_ANTIPODE,
                 facts={"radical_dim": 0}),
    CatalogEntry("kS3_Psi", "quasi_hopf", hopf.ks3_psi,
                 "k[S3] with the reassociator Ψ_a on the rotation subalgebra", params={"a": (1, 2)},
                 choices={**GROUP_ANTIPODE, "psi_variant": "QHOPF_PSI_VARIANT, as_printed by default"},
                 facts={"radical_dim": 0}),
    CatalogEntry("kS3dual_Phi", "quasi_hopf", hopf.ks3_dual_phi,
                 "k^S3 with the reassociator of the S3 3-cocycle ω_p", params={"p": tuple(range(6))},
                 choices=GROUP_ANTIPODE, facts={"radical_dim": 0}),
]

for _label in ("M_0", "M_1", "M_2", "M_3"):
    ENTRIES.append(CatalogEntry(_label, "yd_module", lambda label=_label: braided.simple_module(label),
                                "one-dimensional Yetter-Drinfeld module over H(2)"))
for _label in ("M_0^0", "M_1^0", "M_0^1", "M_1^1"):
    ENTRIES.append(CatalogEntry(_label, "yd_module", lambda label=_label: braided.simple_module(label),
                                "one-dimensional Yetter-Drinfeld module over k[C2]"))

ENTRIES += [
    CatalogEntry("B_C6", "braided_hopf", lambda: braided.c3_hopf("C6"),
                 "k[C3] over k[C2], trivial action and coaction"),
    CatalogEntry("B_S3", "braided_hopf", lambda: braided.c3_hopf("S3"),
                 "k[C3] over k[C2], g·x = x², trivial coaction"),
    CatalogEntry("B_star", "braided_hopf", lambda: braided.c3_hopf("star"),
                 "k[C3] over k[C2], trivial action, λ(x) = p+⊗x + p-⊗x²"),
]

for _name in braided.LEMMA_ALGEBRAS:
    ENTRIES.append(CatalogEntry(_name, "braided_algebra", lambda j, name=_name: braided.lemma_algebra(name, j),
                                "three-dimensional algebra in the Yetter-Drinfeld category over H(2)", params=J))
for _name in braided.BRAIDED_BIALGEBRAS:
    ENTRIES.append(CatalogEntry(_name, "braided_bialgebra",
                                lambda j, name=_name: braided.braided_bialgebra(name, j),
                                "braided bialgebra with Δ(x) a combination of 1⊗1, 1⊗x, x⊗1, x⊗x",
                                params=J))
ENTRIES.append(CatalogEntry("B_0o_0_primitive", "braided_bialgebra", braided.primitive_coalgebra,
                            "B_0o_0 with y primitive: a coalgebra whose Δ is not multiplicative",
                            params=J, expected=failing("moltcon2")))
for _name in braided.BAR_PRODUCTS:
    ENTRIES.append(CatalogEntry(_name, "braided_bialgebra", lambda j, name=_name: braided.bar_bialgebra(name, j),
                                "braided bialgebra with an idempotent xbar and Δ(y) = xbar⊗y + y⊗xbar",
                                params=J, defaults={"j": 0}))
for _name in biproducts.QUASI_BIALGEBRA_NAMES.values():
    ENTRIES.append(CatalogEntry(_name, "quasi_bialgebra",
                                lambda j, name=_name: biproducts.quasi_bialgebra_biproduct(name, j).assembled,
                                "six-dimensional quasi-bialgebra B×H(2), not semisimple",
                                params=J, facts={"radical_dim": 2, "semisimple": False}))
for _name in biproducts.HOPF_BIPRODUCTS:
    ENTRIES.append(CatalogEntry(_name, "quasi_hopf", lambda name=_name: biproducts.hopf_biproduct(name).assembled,
                                "biproduct of a k[C3] braided Hopf algebra and its base",
                                facts={"radical_dim": 0}))

_BY_NAME: Dict[str, CatalogEntry] = {entry.name: entry for entry in ENTRIES}


def list_entries() -> List[CatalogEntry]:
    return list(ENTRIES)


def get_entry(name: str) -> CatalogEntry:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnknownEntry(f"No catalog entry named {name}")


@lru_cache(maxsize=None)
def _build(name: str, frozen: Tuple[Tuple[str, int], ...]):
    entry = get_entry(name)
    logger.info(f"Building catalog entry {name} {dict(frozen)}")
    return entry.builder(**dict(frozen))


def build(name: str, params: Optional[Dict[str, object]] = None):
    '''
    Deterministic and cached per (name, params)
    '''
    entry = get_entry(name)
    resolved = entry.resolve(params)
    return _build(name, tuple(sorted(resolved.items())))


def build_count() -> int:
    return sum(len(entry.instances()) for entry in ENTRIES)


def manifest() -> dict:
    return {
        "entries": [entry.to_dict() for entry in ENTRIES],
        "builds": build_count(),
    }
