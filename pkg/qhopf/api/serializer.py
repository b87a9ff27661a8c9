import json
import logging
import os
from functools import lru_cache
from typing import Dict, List, Optional, Sequence

from jsonschema import Draft7Validator

from qhopf import project_dir
from qhopf.algebra import AlgebraPresentation
from qhopf.api.exception import InvalidPayloadException, QHopfException
from qhopf.catalog.hopf import BASES, base_by_name
from qhopf.cocycle import Cocycle3Table, GroupTable
from qhopf.constraints import (ConstraintSystem, PolyExpr,
                               generate_braided_constraints)
from qhopf.exactcore import CycScalar, Coords, Tensor, get_field, prune
from qhopf.quasihopf import QuasiBialgebraData, QuasiHopfData, TwistData
from qhopf.yd import BraidedBialgebraData, YDModuleData

logger = logging.getLogger(__name__)

FORMAT = "qhopf/1"
SCHEMA_PATH = os.path.join(project_dir, "api", "schema.json")

GROUPS = {
    "C2": lambda: GroupTable.cyclic(2),
    "C3": lambda: GroupTable.cyclic(3),
    "C6": lambda: GroupTable.cyclic(6),
    "S3": GroupTable.s3,
}


@lru_cache(maxsize=None)
def _validator() -> Draft7Validator:
    with open(SCHEMA_PATH) as f:
        schema = json.load(f)
    Draft7Validator.check_schema(schema)
    return Draft7Validator(schema)


def _path_key(error):
    return [(0, p, "") if isinstance(p, int) else (1, 0, str(p)) for p in error.absolute_path]


def validate(document: dict) -> dict:
    '''
    Schema check of a structure document. The first offending path,
    in document order, is reported
    '''
    errors = sorted(_validator().iter_errors(document), key=_path_key)
    if errors:
        first = errors[0]
        path = "/" + "/".join(str(p) for p in first.absolute_path)
        raise InvalidPayloadException(f"{path}: {first.message}")
    order = document.get("cyclotomic_order")
    if order is not None and order != get_field().order:
        raise InvalidPayloadException(
            f"/cyclotomic_order: the document uses Q(zeta_{order}) but the verifier runs over "
            f"Q(zeta_{get_field().order}), set QHOPF_CYCLOTOMIC_ORDER"
        )
    return document


# scalars and sparse tensors

def decode_scalar(value, path: str) -> CycScalar:
    try:
        return CycScalar.from_wire(value)
    except QHopfException as e:
        raise InvalidPayloadException(f"{path}: {e.detail}")
    except (TypeError, ValueError):
        raise InvalidPayloadException(f"{path}: {value!r} is not a scalar")


def encode_sparse(tensor: Tensor) -> List[list]:
    return [list(idx) + [c.to_wire()] for idx, c in sorted(tensor.coords.items())]


def decode_sparse(rows: Sequence, dims: Sequence[int], path: str) -> Tensor:
    coords: Coords = {}
    for pos, row in enumerate(rows):
        where = f"{path}/{pos}"
        *idx, scalar = row
        if len(idx) != len(dims) or any(not isinstance(i, int) or not 0 <= i < d for i, d in zip(idx, dims)):
            raise InvalidPayloadException(f"{where}: index {idx} does not fit dims {list(dims)}")
        value = decode_scalar(scalar, where)
        key = tuple(idx)
        coords[key] = coords[key] + value if key in coords else value
    return Tensor.from_coords(tuple(dims), prune(coords))


def _header(kind: str, name: str) -> dict:
    return {"format": FORMAT, "kind": kind, "name": name, "cyclotomic_order": get_field().order}


# algebras and quasi-Hopf algebras

def _algebra_fields(A: AlgebraPresentation) -> dict:
    return {
        "dim": A.dim,
        "basis": list(A.basis_labels),
        "unit": encode_sparse(A.unit),
        "mult": encode_sparse(A.mult),
    }


def encode_algebra(A: AlgebraPresentation) -> dict:
    return {**_header("algebra", A.name), **_algebra_fields(A)}


def _quasi_bialgebra_fields(Q: QuasiBialgebraData) -> dict:
    return {
        **_algebra_fields(Q.alg),
        "comult": encode_sparse(Q.comult),
        "counit": encode_sparse(Q.counit),
        "phi": encode_sparse(Q.phi),
        "phi_inv": encode_sparse(Q.phi_inv),
    }


def encode_quasi_bialgebra(Q: QuasiBialgebraData) -> dict:
    return {**_header("quasi_bialgebra", Q.name), **_quasi_bialgebra_fields(Q)}


def _quasi_hopf_fields(H: QuasiHopfData) -> dict:
    return {
        **_quasi_bialgebra_fields(H.qb),
        "antipode": encode_sparse(H.antipode),
        "alpha": encode_sparse(H.alpha),
        "beta": encode_sparse(H.beta),
    }


def encode_quasi_hopf(H: QuasiHopfData) -> dict:
    return {**_header("quasi_hopf", H.name), **_quasi_hopf_fields(H)}


def decode_algebra(doc: dict, path: str = "") -> AlgebraPresentation:
    n = doc["dim"]
    labels = doc.get("basis") or [f"e{i}" for i in range(n)]
    if len(labels) != n:
        raise InvalidPayloadException(f"{path}/basis: {len(labels)} labels for dimension {n}")
    return AlgebraPresentation(
        n,
        list(labels),
        decode_sparse(doc["unit"], (n,), f"{path}/unit"),
        decode_sparse(doc["mult"], (n, n, n), f"{path}/mult"),
        name=doc.get("name", ""),
    )


def decode_quasi_bialgebra(doc: dict, path: str = "") -> QuasiBialgebraData:
    alg = decode_algebra(doc, path)
    n = alg.dim
    phi_inv = doc.get("phi_inv")
    return QuasiBialgebraData(
        alg,
        decode_sparse(doc["comult"], (n, n, n), f"{path}/comult"),
        decode_sparse(doc["counit"], (n,), f"{path}/counit"),
        decode_sparse(doc["phi"], (n, n, n), f"{path}/phi"),
        phi_inv=decode_sparse(phi_inv, (n, n, n), f"{path}/phi_inv") if phi_inv is not None else None,
        name=alg.name,
    )


def decode_quasi_hopf(doc: dict, path: str = "") -> QuasiHopfData:
    qb = decode_quasi_bialgebra(doc, path)
    n = qb.dim
    return QuasiHopfData(
        qb,
        decode_sparse(doc["antipode"], (n, n), f"{path}/antipode"),
        decode_sparse(doc["alpha"], (n,), f"{path}/alpha"),
        decode_sparse(doc["beta"], (n,), f"{path}/beta"),
        name=qb.name,
    )


# Yetter-Drinfeld modules and braided structures

def _base_reference(H: QuasiHopfData):
    if H.name in BASES and base_by_name(H.name) is H:
        return H.name
    return encode_quasi_hopf(H)


def _module_fields(M: YDModuleData) -> dict:
    n = M.base.dim
    per_h: List[List[list]] = [[] for _ in range(n)]
    for (h, i, k), c in sorted(M.action.coords.items()):
        per_h[h].append([i, k, c.to_wire()])
    return {
        "base": _base_reference(M.base),
        "dim": M.dim,
        "basis": list(M.labels),
        "action": per_h,
        "coaction": encode_sparse(M.coaction),
    }


def encode_yd_module(M: YDModuleData) -> dict:
    return {**_header("yd_module", M.name), **_module_fields(M)}


def braided_kind(B: BraidedBialgebraData) -> str:
    if not B.has_coalgebra:
        return "braided_algebra"
    return "braided_hopf" if B.antipode is not None else "braided_bialgebra"


def encode_braided(B: BraidedBialgebraData, kind: Optional[str] = None) -> dict:
    doc = {
        **_header(kind or braided_kind(B), B.name),
        **_module_fields(B.module),
        "basis": list(B.labels),
        "unit": encode_sparse(B.unit),
        "mult": encode_sparse(B.mult),
    }
    for key, tensor in (("comult", B.comult), ("counit", B.counit), ("antipode", B.antipode)):
        if tensor is not None:
            doc[key] = encode_sparse(tensor)
    return doc


def decode_yd_module(doc: dict, path: str = "") -> YDModuleData:
    base = doc["base"]
    H = base_by_name(base) if isinstance(base, str) else decode_quasi_hopf(base, f"{path}/base")
    n, d = H.dim, doc["dim"]
    if len(doc["action"]) != n:
        raise InvalidPayloadException(f"{path}/action: {len(doc['action'])} matrices for a base of dimension {n}")
    coords: Coords = {}
    for h, matrix in enumerate(doc["action"]):
        for (i, k), c in decode_sparse(matrix, (d, d), f"{path}/action/{h}").coords.items():
            coords[(h, i, k)] = c
    labels = doc.get("basis")
    if labels is not None and len(labels) != d:
        raise InvalidPayloadException(f"{path}/basis: {len(labels)} labels for dimension {d}")
    return YDModuleData(
        H,
        d,
        Tensor.from_coords((n, d, d), coords),
        decode_sparse(doc["coaction"], (d, n, d), f"{path}/coaction"),
        labels=labels,
        name=doc.get("name", ""),
    )


def decode_braided(doc: dict, path: str = "") -> BraidedBialgebraData:
    module = decode_yd_module(doc, path)
    d = module.dim
    optional = {}
    for key, dims in (("comult", (d, d, d)), ("counit", (d,)), ("antipode", (d, d))):
        if doc.get(key) is not None:
            optional[key] = decode_sparse(doc[key], dims, f"{path}/{key}")
    return BraidedBialgebraData(
        module,
        decode_sparse(doc["mult"], (d, d, d), f"{path}/mult"),
        decode_sparse(doc["unit"], (d,), f"{path}/unit"),
        name=doc.get("name", ""),
        labels=doc.get("basis"),
        **optional,
    )


# cocycles, twists, constraint systems

def encode_cocycle(phi: Cocycle3Table) -> dict:
    if phi.group.name not in GROUPS:
        raise InvalidPayloadException(f"Cocycles on {phi.group.name} have no document form")
    return {
        **_header("cocycle", phi.name),
        "group": phi.group.name,
        "values": [[list(idx), c.to_wire()] for idx, c in sorted(phi.values.coords.items()) if c != 1],
    }


def decode_cocycle(doc: dict, path: str = "") -> Cocycle3Table:
    group = GROUPS[doc["group"]]()
    n = group.order
    one = CycScalar.one()
    coords: Coords = {(g, h, k): one for g in range(n) for h in range(n) for k in range(n)}
    for pos, (idx, scalar) in enumerate(doc["values"]):
        where = f"{path}/values/{pos}"
        if any(not 0 <= i < n for i in idx):
            raise InvalidPayloadException(f"{where}: {idx} is not a triple of elements of {group.name}")
        value = decode_scalar(scalar, where)
        if not value:
            raise InvalidPayloadException(f"{where}: cocycle values must be nonzero")
        coords[tuple(idx)] = value
    return Cocycle3Table(group, Tensor.from_coords((n, n, n), coords), doc.get("name", ""))


def encode_twist(twist: TwistData, name: str = "") -> dict:
    return {**_header("twist", name), "dim": twist.F.dims[0], "F": encode_sparse(twist.F)}


def decode_twist(doc: dict, path: str = "") -> Tensor:
    n = doc["dim"]
    return decode_sparse(doc["F"], (n, n), f"{path}/F")


def encode_constraint_system(cs: ConstraintSystem) -> dict:
    return {**_header("constraint_system", cs.name), **cs.to_dict()}


def decode_constraint_system(doc: dict, path: str = "") -> ConstraintSystem:
    if doc["kind"] == "constraint_template":
        return generate_braided_constraints(doc)
    equations, origins, sources = [], [], []
    for pos, item in enumerate(doc["equations"]):
        try:
            equations.append(PolyExpr.from_wire(item["polynomial"]))
        except QHopfException as e:
            raise InvalidPayloadException(f"{path}/equations/{pos}/polynomial: {e.detail}")
        origins.append(item.get("origin", pos))
        sources.append(item.get("source", ""))
    return ConstraintSystem(
        list(doc["indeterminates"]),
        equations,
        origins=origins,
        sources=sources,
        nonzero=list(doc.get("nonzero", [])),
        name=doc.get("name", ""),
    )


DECODERS = {
    "algebra": decode_algebra,
    "quasi_bialgebra": decode_quasi_bialgebra,
    "quasi_hopf": decode_quasi_hopf,
    "yd_module": decode_yd_module,
    "braided_algebra": decode_braided,
    "braided_coalgebra": decode_braided,
    "braided_bialgebra": decode_braided,
    "braided_hopf": decode_braided,
    "cocycle": decode_cocycle,
    "twist": decode_twist,
    "constraint_system": decode_constraint_system,
    "constraint_template": decode_constraint_system,
}


def decode(document: dict):
    '''
    Validate a document and build the structure it describes
    '''
    validate(document)
    return DECODERS[document["kind"]](document)


def encode(obj, kind: Optional[str] = None) -> dict:
    if isinstance(obj, QuasiHopfData):
        return encode_quasi_hopf(obj)
    if isinstance(obj, QuasiBialgebraData):
        return encode_quasi_bialgebra(obj)
    if isinstance(obj, AlgebraPresentation):
        return encode_algebra(obj)
    if isinstance(obj, BraidedBialgebraData):
        return encode_braided(obj, kind if kind and kind.startswith("braided_") else None)
    if isinstance(obj, YDModuleData):
        return encode_yd_module(obj)
    if isinstance(obj, Cocycle3Table):
        return encode_cocycle(obj)
    if isinstance(obj, TwistData):
        return encode_twist(obj)
    if isinstance(obj, ConstraintSystem):
        return encode_constraint_system(obj)
    raise InvalidPayloadException(f"No document form for {type(obj).__name__}")


def encode_kind(obj) -> str:
    for cls, kind in (
        (QuasiHopfData, "quasi_hopf"),
        (QuasiBialgebraData, "quasi_bialgebra"),
        (AlgebraPresentation, "algebra"),
        (YDModuleData, "yd_module"),
    ):
        if isinstance(obj, cls):
            return kind
    if isinstance(obj, BraidedBialgebraData):
        return braided_kind(obj)
    raise InvalidPayloadException(f"No document form for {type(obj).__name__}")


def dumps(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as f:
            document = json.load(f)
    except OSError as e:
        raise InvalidPayloadException(f"{path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise InvalidPayloadException(f"{path}: malformed JSON at line {e.lineno} column {e.colno}: {e.msg}")
    if not isinstance(document, dict):
        raise InvalidPayloadException(f"{path}: the document must be a JSON object")
    return document


def write_file(path: str, document: dict) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(document))
    logger.info(f"Wrote {document.get('kind')} document to {path}")


def params_from_pairs(pairs: Optional[Sequence[str]]) -> Dict[str, str]:
    '''
    ["a=1", "j=0"] -> {"a": "1", "j": "0"}
    '''
    params: Dict[str, str] = {}
    for pair in pairs or ():
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise InvalidPayloadException(f"Parameter {pair!r} is not of the form key=value")
        params[key.strip()] = value.strip()
    return params
