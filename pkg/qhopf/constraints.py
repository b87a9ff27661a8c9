import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from qhopf.api.exception import (BadParameter, PartialAssignment,
                                 UnknownIndeterminate, UnsupportedBase)
from qhopf.catalog.hopf import base_by_name
from qhopf.exactcore import CycScalar, Coords, Tensor, linear_table, map_leg
from qhopf.models import Identity
from qhopf.yd import (BraidedBialgebraData, algebra_identities,
                      antipode_identities, bialgebra_identities,
                      coalgebra_identities, simple_labels, simple_sum)

logger = logging.getLogger(__name__)

Monomial = Tuple[Tuple[str, int], ...]

AXIOMS = ("modalg1", "modalg2", "modalg3", "ydc1", "ydc2", "ydc3", "moltcon1", "moltcon2", "antipode")
ALGEBRA_AXIOMS = AXIOMS[:3]
COALGEBRA_AXIOMS = AXIOMS[3:6]
BIALGEBRA_AXIOMS = AXIOMS[6:8]


def _scalar(value) -> CycScalar:
    if isinstance(value, CycScalar):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        value = Fraction(value)
        return CycScalar.rational(value.numerator, value.denominator)
    raise TypeError(f"Cannot use {value!r} as a scalar")


def _merge(a: Monomial, b: Monomial) -> Monomial:
    powers = dict(a)
    for name, exp in b:
        powers[name] = powers.get(name, 0) + exp
    return tuple(sorted((n, e) for n, e in powers.items() if e))


class PolyExpr:
    '''
    Sparse polynomial over the cyclotomic field. A monomial is a sorted
    tuple of (indeterminate, exponent) pairs, () is the constant monomial
    '''
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Monomial, object]] = None) -> None:
        self.terms: Dict[Monomial, CycScalar] = {
            m: _scalar(c) for m, c in sorted((terms or {}).items()) if c
        }

    @classmethod
    def constant(cls, value) -> "PolyExpr":
        return cls({(): _scalar(value)})

    @classmethod
    def variable(cls, name: str) -> "PolyExpr":
        return cls({((name, 1),): CycScalar.one()})

    @staticmethod
    def _coerce(other):
        if isinstance(other, PolyExpr):
            return other
        if isinstance(other, CycScalar) or (isinstance(other, (int, Fraction)) and not isinstance(other, bool)):
            return PolyExpr.constant(other)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __neg__(self) -> "PolyExpr":
        return PolyExpr({m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return PolyExpr(terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: Dict[Monomial, CycScalar] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _merge(ma, mb)
                terms[m] = terms[m] + ca * cb if m in terms else ca * cb
        return PolyExpr(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "PolyExpr":
        result = PolyExpr.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def variables(self) -> set:
        return {name for m in self.terms for name, _ in m}

    @property
    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> CycScalar:
        return self.terms.get((), CycScalar.zero())

    def linear_pivot(self, name: str) -> Optional[CycScalar]:
        '''
        Coefficient c when `name` occurs only in the monomial c·name
        '''
        found = None
        for m, c in self.terms.items():
            if any(n == name for n, _ in m):
                if m != ((name, 1),) or found is not None:
                    return None
                found = c
        return found

    def divisible_by(self, name: str) -> bool:
        return bool(self.terms) and all(any(n == name for n, _ in m) for m in self.terms)

    def divide_by(self, name: str) -> "PolyExpr":
        terms = {}
        for m, c in self.terms.items():
            terms[tuple((n, e - 1 if n == name else e) for n, e in m if not (n == name and e == 1))] = c
        return PolyExpr(terms)

    def substitute(self, name: str, value) -> "PolyExpr":
        value = self._coerce(value)
        if name not in self.variables():
            return self
        result = PolyExpr()
        for m, c in self.terms.items():
            rest = tuple((n, e) for n, e in m if n != name)
            power = next((e for n, e in m if n == name), 0)
            result = result + PolyExpr({rest: c}) * (value ** power)
        return result

    def evaluate(self, assignment: Dict[str, object]) -> CycScalar:
        missing = self.variables() - set(assignment)
        if missing:
            raise PartialAssignment(f"No value for {sorted(missing)}")
        total = CycScalar.zero()
        for m, c in self.terms.items():
            value = c
            for name, exp in m:
                value = value * _scalar(assignment[name]) ** exp
            total = total + value
        return total

    def to_wire(self) -> List[list]:
        return [[[list(p) for p in m], c.to_wire()] for m, c in self.terms.items()]

    @classmethod
    def from_wire(cls, monomials: Iterable[Sequence]) -> "PolyExpr":
        terms: Dict[Monomial, CycScalar] = {}
        for powers, scalar in monomials:
            m = tuple(sorted((str(n), int(e)) for n, e in powers))
            terms[m] = CycScalar.from_wire(scalar)
        return cls(terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms.items():
            names = "*".join(n if e == 1 else f"{n}^{e}" for n, e in m)
            scalar = repr(c)[len("CycScalar("):-1]
            parts.append(names if c == 1 and names else (f"({scalar})*{names}" if names else f"({scalar})"))
        return " + ".join(parts)


@dataclass
class ConstraintSystem:
    '''
    Polynomials required to vanish. `origins` ties every equation to its
    position in the generated system, `sources` to the axiom coordinate
    it came from
    '''
    indeterminates: List[str]
    equations: List[PolyExpr]
    origins: List[int] = field(default_factory=list)
    sources: List[str] = field(default_factory=list)
    nonzero: List[str] = field(default_factory=list)
    trace: List[dict] = field(default_factory=list)
    solved: Dict[str, PolyExpr] = field(default_factory=dict)
    name: str = ""
    eliminated: bool = False
    template: Optional[BraidedBialgebraData] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.indeterminates = sorted(set(self.indeterminates))
        if not self.origins:
            self.origins = list(range(len(self.equations)))
        if not self.sources:
            self.sources = [""] * len(self.equations)
        known = set(self.indeterminates)
        for eq in self.equations:
            unknown = eq.variables() - known
            if unknown:
                raise UnknownIndeterminate(f"{sorted(unknown)} used but not declared in {self.name}")

    def __len__(self) -> int:
        return len(self.equations)

    def extend_assignment(self, assignment: Dict[str, object]) -> Dict[str, object]:
        '''
        Values of the eliminated indeterminates, in reverse elimination order
        '''
        full = dict(assignment)
        for name in reversed(list(self.solved)):
            full[name] = self.solved[name].evaluate(full)
        return full

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "indeterminates": self.indeterminates,
            "nonzero": self.nonzero,
            "equations": [
                {"origin": o, "source": s, "polynomial": eq.to_wire()}
                for o, s, eq in zip(self.origins, self.sources, self.equations)
            ],
            "trace": _trace_wire(self.trace),
        }


def _trace_wire(trace: List[dict]) -> List[dict]:
    wire = []
    for step in trace:
        item = {k: v for k, v in step.items() if k != "value"}
        if "value" in step:
            item["value"] = step["value"].to_wire()
        wire.append(item)
    return wire


def _residuals(identities: Iterable[Identity], wanted: set):
    zero = CycScalar.zero()
    for identity in identities:
        if identity.check_id not in wanted:
            continue
        for key in sorted(set(identity.lhs) | set(identity.rhs)):
            residual = identity.rhs.get(key, zero) - identity.lhs.get(key, zero)
            if residual:
                yield f"{identity.check_id}{list(identity.basis)}@{list(key)}", PolyExpr._coerce(residual)


def _dedupe(pairs) -> Tuple[List[PolyExpr], List[str]]:
    seen = set()
    equations, sources = [], []
    for source, eq in pairs:
        if eq in seen or -eq in seen:
            continue
        seen.add(eq)
        equations.append(eq)
        sources.append(source)
    return equations, sources


def with_nonzero(equations: List[PolyExpr], sources: List[str], names: Sequence[str]) -> List[str]:
    '''
    u·u_inv - 1 for every declared nonzero indeterminate
    '''
    fresh = []
    for name in names:
        inverse = f"{name}_inv"
        equations.append(PolyExpr.variable(name) * PolyExpr.variable(inverse) - 1)
        sources.append(f"nonzero[{name}]")
        fresh.append(inverse)
    return fresh


_PARAM = re.compile(r"\{(\d*)([a-z])(?:\+(\d+))?\}")


def resolve_label(label: str, params: Dict[str, int]) -> str:
    '''
    M_{2j+1} with j = 1 gives M_3
    '''
    def value(match):
        name = match.group(2)
        if name not in params:
            raise BadParameter(f"Parameter {name} of {label} is not set")
        return str(int(match.group(1) or 1) * params[name] + int(match.group(3) or 0))
    return _PARAM.sub(value, label)


def _sign_of(module, b: int):
    return module.action[(1, b, b)]


def generate_braided_constraints(template: dict, base=None) -> ConstraintSystem:
    '''
    One indeterminate per structure constant compatible with the g-grading
    of the decomposition, then every requested axiom expanded into its
    coordinate equations. The first summand carries the unit
    '''
    axioms = set(template.get("axioms", ()))
    unknown = axioms - set(AXIOMS)
    if unknown:
        raise BadParameter(f"Unknown axioms {sorted(unknown)}")
    base = base if base is not None else base_by_name(template.get("base", "H2"))
    params = template.get("params", {})
    decomposition = [resolve_label(label, params) for label in template["decomposition"]]
    trivial = simple_labels(base)[0]
    if decomposition[0] != trivial:
        raise UnsupportedBase(f"The unit must span {trivial}, got {decomposition[0]}")
    d = len(decomposition)
    labels = template.get("labels") or (["1"] + [chr(ord("x") + k) if k < 3 else f"b{k}" for k in range(d - 1)])
    module = simple_sum(base, decomposition, labels, name=template.get("name", ""))
    sign = [_sign_of(module, b) for b in range(d)]
    names: List[str] = []

    def unknown(name):
        names.append(name)
        return PolyExpr.variable(name)

    one = CycScalar.one()
    mult: Coords = {}
    for a in range(d):
        for b in range(d):
            if a == 0 or b == 0:
                mult[(a, b, b if a == 0 else a)] = one
                continue
            for c in range(d):
                if sign[a] * sign[b] == sign[c]:
                    mult[(a, b, c)] = unknown(f"m_{labels[a]}{labels[b]}_{labels[c]}")
    unit = Tensor.basis_vector(d, 0)
    comult = counit = antipode = None
    if axioms - set(ALGEBRA_AXIOMS):
        coords: Coords = {(0, 0, 0): one}
        for a in range(1, d):
            for p in range(d):
                for q in range(d):
                    if sign[p] * sign[q] == sign[a]:
                        coords[(a, p, q)] = unknown(f"d_{labels[a]}_{labels[p]}{labels[q]}")
        comult = Tensor.from_coords((d, d, d), coords)
        eps: Coords = {(0,): one}
        for a in range(1, d):
            if sign[a] == 1:
                eps[(a,)] = unknown(f"e_{labels[a]}")
        counit = Tensor.from_coords((d,), eps)
    if "antipode" in axioms:
        coords = {}
        for a in range(d):
            for b in range(d):
                if sign[a] == sign[b]:
                    coords[(a, b)] = unknown(f"s_{labels[a]}_{labels[b]}")
        antipode = Tensor.from_coords((d, d), coords)
    B = BraidedBialgebraData(module, Tensor.from_coords((d, d, d), mult), unit, comult, counit, antipode,
                             name=template.get("name") or "⊕".join(decomposition), labels=labels)

    pairs = []
    if axioms & set(ALGEBRA_AXIOMS):
        pairs.extend(_residuals(algebra_identities(B), axioms))
    if axioms & set(COALGEBRA_AXIOMS):
        pairs.extend(_residuals(coalgebra_identities(B), axioms))
    if axioms & set(BIALGEBRA_AXIOMS):
        pairs.extend(_residuals(bialgebra_identities(B), axioms))
    if "antipode" in axioms:
        pairs.extend(_residuals(antipode_identities(B), {"antipode_left", "antipode_right",
                                                         "antipode_linear", "antipode_colinear"}))
    equations, sources = _dedupe(pairs)
    nonzero = list(template.get("nonzero", ()))
    names.extend(with_nonzero(equations, sources, nonzero))
    cs = ConstraintSystem(names, equations, sources=sources, nonzero=nonzero, name=B.name, template=B)
    logger.info(f"Constraint system {cs.name}: {len(cs)} equations in {len(cs.indeterminates)} indeterminates")
    return cs


def fixture_assignment(cs: ConstraintSystem, fixture: BraidedBialgebraData) -> Dict[str, CycScalar]:
    '''
    Values of the generated indeterminates read off a concrete fixture
    with the same basis order
    '''
    template = cs.template
    if template is None:
        raise BadParameter(f"{cs.name} was not generated from a template")
    assignment: Dict[str, CycScalar] = {}
    for symbolic, concrete in (
        (template.mult, fixture.mult),
        (template.comult, fixture.comult),
        (template.counit, fixture.counit),
        (template.antipode, fixture.antipode),
    ):
        if symbolic is None:
            continue
        if concrete is None:
            raise PartialAssignment(f"{fixture.name} lacks a structure map used by {cs.name}")
        for idx, value in symbolic.coords.items():
            if isinstance(value, PolyExpr) and not value.is_constant():
                (name,) = value.variables()
                assignment[name] = concrete[idx]
    for name in cs.nonzero:
        assignment[f"{name}_inv"] = assignment[name].inverse()
    return assignment


def check_solution(cs: ConstraintSystem, assignment: Dict[str, object]) -> bool:
    unknown = set(assignment) - set(cs.indeterminates) - set(cs.solved)
    if unknown:
        raise UnknownIndeterminate(f"{sorted(unknown)} are not indeterminates of {cs.name}")
    missing = set(cs.indeterminates) - set(assignment)
    if missing:
        raise PartialAssignment(f"No value for {sorted(missing)}")
    return all(not eq.evaluate(assignment) for eq in cs.equations)


def _occurs_elsewhere(name: str, equations: List[PolyExpr], position: int) -> bool:
    return any(name in eq.variables() for k, eq in enumerate(equations) if k != position)


def _pick_pivot(equations: List[PolyExpr], variables: List[str]):
    for name in variables:
        for position, eq in enumerate(equations):
            coeff = eq.linear_pivot(name)
            if coeff is not None and _occurs_elsewhere(name, equations, position):
                return name, position, coeff
    return None


def linear_eliminate(cs: ConstraintSystem) -> ConstraintSystem:
    '''
    Substitute away every indeterminate that occurs alone and to the first
    power in some equation and also elsewhere, lexicographic pivot order.
    Equations divisible by a declared nonzero indeterminate are divided
    once nothing is left to substitute
    '''
    equations = list(cs.equations)
    origins = list(cs.origins)
    sources = list(cs.sources)
    trace: List[dict] = list(cs.trace)
    solved: Dict[str, PolyExpr] = dict(cs.solved)
    while True:
        variables = sorted({v for eq in equations for v in eq.variables()})
        pick = _pick_pivot(equations, variables)
        if pick is None:
            if not _cancel(equations, origins, cs.nonzero, trace):
                break
            continue
        name, position, coeff = pick
        value = (PolyExpr.variable(name) * coeff - equations[position]) * coeff.inverse()
        trace.append({"op": "substitute", "variable": name, "equation": origins[position], "value": value})
        del equations[position], origins[position], sources[position]
        for k, eq in enumerate(equations):
            equations[k] = eq.substitute(name, value)
        for other in solved:
            solved[other] = solved[other].substitute(name, value)
        solved[name] = value
        keep = [k for k, eq in enumerate(equations) if eq]
        equations = [equations[k] for k in keep]
        origins = [origins[k] for k in keep]
        sources = [sources[k] for k in keep]
    reduced = ConstraintSystem(
        cs.indeterminates,
        equations,
        origins=origins,
        sources=sources,
        nonzero=cs.nonzero,
        trace=trace,
        solved=solved,
        name=cs.name,
        eliminated=True,
    )
    logger.debug(f"Eliminated {len(solved)} indeterminates of {cs.name}, {len(reduced)} equations left")
    return reduced


def _cancel(equations: List[PolyExpr], origins: List[int], nonzero: Sequence[str], trace: List[dict]) -> bool:
    changed = False
    for k, eq in enumerate(equations):
        for name in sorted(nonzero):
            while eq.divisible_by(name):
                eq = eq.divide_by(name)
                trace.append({"op": "cancel", "variable": name, "equation": origins[k]})
                changed = True
        equations[k] = eq
    return changed


@dataclass
class Certificate:
    '''
    An equation of the original system that the recorded trace reduces to
    a nonzero constant
    '''
    equation: int
    source: str
    constant: CycScalar
    trace: List[dict]

    def replay(self, cs: ConstraintSystem) -> bool:
        equations = {o: eq for o, eq in zip(cs.origins, cs.equations)}
        for step in self.trace:
            if step["op"] == "substitute":
                equations = {o: eq.substitute(step["variable"], step["value"]) for o, eq in equations.items()}
            else:
                equations[step["equation"]] = equations[step["equation"]].divide_by(step["variable"])
        return equations.get(self.equation) == PolyExpr.constant(self.constant)

    def to_dict(self) -> dict:
        return {
            "equation": self.equation,
            "source": self.source,
            "constant": self.constant.to_wire(),
            "trace": _trace_wire(self.trace),
        }


def detect_contradiction(cs: ConstraintSystem) -> Optional[Certificate]:
    reduced = cs if cs.eliminated else linear_eliminate(cs)
    constants = [
        (origin, source, eq.constant_value())
        for origin, source, eq in zip(reduced.origins, reduced.sources, reduced.equations)
        if eq.is_constant() and eq
    ]
    if not constants:
        return None
    origin, source, value = min(constants, key=lambda item: item[0])
    logger.info(f"{cs.name} is infeasible: equation {origin} ({source}) reduces to {value}")
    return Certificate(origin, source, value, reduced.trace)


def case3_system(i: int, j: Optional[int] = None, axioms: Sequence[str] = AXIOMS[:8]) -> ConstraintSystem:
    '''
    Bialgebra structures on M_0 ⊕ M_{2i+1} ⊕ M_{2j+1} over H(2)
    '''
    j = i if j is None else j
    for value in (i, j):
        if value not in (0, 1):
            raise BadParameter(f"Parameters i, j must be 0 or 1, got {value}")
    return generate_braided_constraints({
        "base": "H2",
        "decomposition": ["M_0", "M_{2i+1}", "M_{2j+1}"],
        "params": {"i": i, "j": j},
        "axioms": list(axioms),
        "name": f"case3(i={i}, j={j})",
    })


def braided_iso_system(source: BraidedBialgebraData, target: BraidedBialgebraData,
                       nonzero: Optional[Sequence[str]] = None) -> ConstraintSystem:
    '''
    Braided bialgebra morphisms source -> target with unknown matrix
    psi_a_b (coefficient of target basis b in ψ(source basis a))
    '''
    d = source.dim
    if target.dim != d:
        raise BadParameter(f"{source.name} and {target.name} have different dimensions")
    names = [f"psi_{a}_{b}" for a in source.labels for b in target.labels]
    psi = Tensor.from_coords((d, d), {
        (a, b): PolyExpr.variable(f"psi_{source.labels[a]}_{target.labels[b]}") for a in range(d) for b in range(d)
    })
    table = linear_table(psi, 1)
    H = source.base
    pairs = []
    one = CycScalar.one()

    def image(u: Coords, *legs: int) -> Coords:
        for leg in legs:
            u = map_leg(u, leg, table)
        return u

    pairs.append(Identity("unit", (), image(source.unit.coords, 0), target.unit.coords))
    for a in range(d):
        e_a = {(a,): one}
        psi_a = image(e_a, 0)
        for h in range(H.dim):
            pairs.append(Identity("linear", (h, a), image(source.module.act(H.alg.basis(h), e_a), 0),
                                  target.module.act(H.alg.basis(h), psi_a)))
        pairs.append(Identity("colinear", (a,), image(source.module.coact(e_a), 1), target.module.coact(psi_a)))
        for b in range(d):
            e_b = {(b,): one}
            pairs.append(Identity("multiplicative", (a, b), image(source.alg.multiply(e_a, e_b), 0),
                                  target.alg.multiply(psi_a, image(e_b, 0))))
        if source.has_coalgebra and target.has_coalgebra:
            pairs.append(Identity("comultiplicative", (a,), image(source.coproduct(e_a), 0, 1),
                                  target.coproduct(psi_a)))
            pairs.append(Identity("counital", (a,), {(): source.counit_of(e_a)},
                                  {(): target.counit_of(psi_a)}))
    wanted = {"unit", "linear", "colinear", "multiplicative", "comultiplicative", "counital"}
    equations, sources = _dedupe(_residuals(pairs, wanted))
    nonzero = list(nonzero if nonzero is not None else [f"psi_{source.labels[-1]}_{target.labels[-1]}"])
    names.extend(with_nonzero(equations, sources, nonzero))
    return ConstraintSystem(names, equations, sources=sources, nonzero=nonzero,
                            name=f"iso({source.name} -> {target.name})")
