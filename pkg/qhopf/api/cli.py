import argparse
import logging
import random
import sys
from typing import List, Optional

from qhopf import settings
from qhopf.api import serializer
from qhopf.api.exception import (EXIT_USAGE_ERROR, EXIT_VERIFICATION_FAILED,
                                 BaseMismatch, InvalidPayloadException,
                                 QHopfException)
from qhopf.biproduct import assemble_biproduct, assemble_biproduct_hopf
from qhopf.catalog import registry
from qhopf.catalog.braided import C3_KINDS, c3_hopf, fixture_pairs
from qhopf.catalog.hopf import base_by_name
from qhopf.cocycle import (build_cyclic_cocycle, build_psi, build_s3_cocycle,
                           cohomologous, search_cobounding_cochain,
                           verify_3cocycle)
from qhopf.constraints import (braided_iso_system, case3_system,
                               check_solution, detect_contradiction,
                               linear_eliminate)
from qhopf.handlers.apps import run_setup_hooks
from qhopf.quasihopf import (QuasiBialgebraData, QuasiHopfData, apply_twist,
                             make_twist, random_twist, verify_quasi_bialgebra,
                             verify_quasi_hopf)
from qhopf.yd import (BraidedBialgebraData, YDModuleData, decompose_simples,
                      verify_yd_module, yd_tensor)

logger = logging.getLogger(__name__)

EXIT_OK = 0


def _emit(text: str, output: Optional[str] = None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info(f"Wrote {output}")
    else:
        sys.stdout.write(text)


def _emit_json(document, output: Optional[str] = None) -> None:
    _emit(serializer.dumps(document), output)


def _payload(args) -> dict:
    if bool(getattr(args, "entry", None)) == bool(getattr(args, "file", None)):
        raise InvalidPayloadException("Provide exactly one of --entry and --file")
    if args.entry:
        return {"entry": args.entry, "params": serializer.params_from_pairs(args.params)}
    return {"document": serializer.load_file(args.file)}


def _structure(args):
    payload = _payload(args)
    if payload.get("entry"):
        return registry.build(payload["entry"], payload["params"])
    return serializer.decode(payload["document"])


def _render_report(report, fmt: str, output: Optional[str]) -> int:
    if fmt == "json":
        _emit_json(report.to_dict(), output)
    else:
        _emit(report.to_text() + "\n", output)
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


# catalog

def catalog_list(args) -> int:
    for entry in registry.list_entries():
        if args.kind and entry.kind != args.kind:
            continue
        params = ",".join(f"{k}={'|'.join(str(v) for v in values)}" for k, values in entry.params.items())
        sys.stdout.write(f"{entry.name}\t{entry.kind}\t{params or '-'}\t{entry.anchor}\n")
    return EXIT_OK


def catalog_manifest(args) -> int:
    _emit_json(registry.manifest(), args.output)
    return EXIT_OK


def catalog_export(args) -> int:
    entry = registry.get_entry(args.name)
    structure = registry.build(args.name, serializer.params_from_pairs(args.params))
    _emit_json(serializer.encode(structure, kind=entry.kind), args.output)
    return EXIT_OK


# verification through the handler task chain

def _collect(execution, key: str):
    '''
    Read one output of a finished execution and drop the request from the store
    '''
    from qhopf.orchestrator import orchestrator

    try:
        return execution.output_params[key]
    finally:
        orchestrator.delete_execution_request(execution.exec_id)


def verify(args) -> int:
    from qhopf.api.views import submit

    payload = _payload(args)
    if args.expect:
        payload["expect"] = args.expect
    report = _collect(submit(payload, action="verify"), "report")
    return _render_report(report, args.report, args.output)


def radical(args) -> int:
    from qhopf.api.views import submit

    _emit_json(_collect(submit(_payload(args), action="radical"), "radical"), args.output)
    return EXIT_OK


# twists

def twist(args) -> int:
    H = serializer.decode(serializer.load_file(args.file))
    if not isinstance(H, (QuasiBialgebraData, QuasiHopfData)):
        raise InvalidPayloadException(f"{args.file}: a quasi-bialgebra or quasi-Hopf document is required")
    if args.twist:
        F = make_twist(H, serializer.decode(serializer.load_file(args.twist)))
    else:
        F = random_twist(H, random.Random(settings.QHOPF_SEED))
    twisted = apply_twist(H, F)
    report = verify_quasi_hopf(twisted) if isinstance(twisted, QuasiHopfData) else verify_quasi_bialgebra(twisted)
    logger.info(f"Twisted {H.name}: {report.summary()}")
    _emit_json(serializer.encode(twisted), args.output)
    if args.twist_output:
        serializer.write_file(args.twist_output, serializer.encode_twist(F, name=f"F[{H.name}]"))
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


# cocycles

def cocycle_build(args) -> int:
    if args.family == "cyclic":
        phi = build_cyclic_cocycle(args.n, args.a)
    elif args.family == "s3":
        phi = build_s3_cocycle(args.p)
    else:
        phi = build_psi(args.a, args.variant)
    _emit_json(serializer.encode_cocycle(phi), args.output)
    return EXIT_OK


def cocycle_check(args) -> int:
    phi = serializer.decode(serializer.load_file(args.file))
    return _render_report(verify_3cocycle(phi), args.report, args.output)


def cocycle_cohomologous(args) -> int:
    phi = serializer.decode(serializer.load_file(args.file))
    psi = serializer.decode(serializer.load_file(args.other))
    if phi.group.name != psi.group.name:
        raise InvalidPayloadException(f"{args.other}: cocycle on {psi.group.name}, expected {phi.group.name}")
    if not phi.group.name.startswith("C"):
        raise InvalidPayloadException(f"The cochain search covers cyclic groups, not {phi.group.name}")
    g2 = search_cobounding_cochain(phi, psi, args.root_order)
    found = g2 is not None and cohomologous(phi, psi, g2)
    result = {"cohomologous": found, "cochain": serializer.encode_sparse(g2.values) if found else None}
    _emit_json(result, args.output)
    return EXIT_OK if found else EXIT_VERIFICATION_FAILED


# Yetter-Drinfeld modules

def _module(structure) -> YDModuleData:
    if isinstance(structure, BraidedBialgebraData):
        return structure.module
    if not isinstance(structure, YDModuleData):
        raise InvalidPayloadException("A Yetter-Drinfeld module or braided structure is required")
    return structure


def _module_from(source: str, params) -> YDModuleData:
    if source.endswith(".json"):
        return _module(serializer.decode(serializer.load_file(source)))
    return _module(registry.build(source, serializer.params_from_pairs(params)))


def yd_tensor_command(args) -> int:
    M = _module_from(args.left, args.params)
    N = _module_from(args.right, args.params)
    product = yd_tensor(M, N)
    report = verify_yd_module(product)
    if args.module_output:
        serializer.write_file(args.module_output, serializer.encode_yd_module(product))
    return _render_report(report, args.report, args.output)


def yd_decompose(args) -> int:
    decomposition = decompose_simples(_module(_structure(args)))
    _emit_json({
        "multiplicities": decomposition.multiplicities,
        "summands": decomposition.labels(),
        "reconstructed": decomposition.reconstructed,
    }, args.output)
    return EXIT_OK if decomposition.reconstructed else EXIT_VERIFICATION_FAILED


# biproducts

def biproduct(args) -> int:
    base = base_by_name(args.base)
    if args.braided in (f"B_{kind}" for kind in C3_KINDS):
        B = c3_hopf(args.braided[2:], args.base)
    else:
        B = registry.build(args.braided, serializer.params_from_pairs(args.params))
        if not isinstance(B, BraidedBialgebraData) or not B.has_coalgebra:
            raise InvalidPayloadException(f"{args.braided} is not a braided bialgebra")
        if B.base is not base:
            raise BaseMismatch(f"{args.braided} lives over {B.base.name}, not {args.base}")
    name = args.name or f"{B.name}x{base.name}"
    if B.antipode is not None:
        data = assemble_biproduct_hopf(B, base, name=name)
    else:
        data = assemble_biproduct(B, base, name=name)
    _emit_json(serializer.encode(data.assembled), args.output)
    return EXIT_OK


# constraint systems

def _certificates(systems) -> dict:
    results = []
    for cs in systems:
        certificate = detect_contradiction(cs)
        results.append({
            "system": cs.name,
            "equations": len(cs),
            "indeterminates": len(cs.indeterminates),
            "certificate": certificate.to_dict() if certificate else None,
            "replays": certificate.replay(cs) if certificate else False,
        })
    return {"results": results, "infeasible": all(r["replays"] for r in results)}


def constraints_case3(args) -> int:
    left = [args.i] if args.i is not None else [0, 1]
    right = [args.j] if args.j is not None else [0, 1]
    result = _certificates(case3_system(i, j) for i in left for j in right)
    _emit_json(result, args.output)
    return EXIT_OK if result["infeasible"] else EXIT_VERIFICATION_FAILED


def constraints_iso(args) -> int:
    values = [args.j] if args.j is not None else [0, 1]
    if args.source and args.target:
        pairs = [(args.source, args.target)]
    else:
        pairs = [(a, b) for a, b in fixture_pairs() if a < b]
    systems = [
        braided_iso_system(registry.build(a, {"j": j}), registry.build(b, {"j": j}))
        for j in values for a, b in pairs
    ]
    result = _certificates(systems)
    _emit_json(result, args.output)
    return EXIT_OK if result["infeasible"] else EXIT_VERIFICATION_FAILED


def constraints_custom(args) -> int:
    cs = serializer.decode(serializer.load_file(args.file))
    if args.assignment:
        raw = serializer.load_file(args.assignment)
        assignment = {k: serializer.decode_scalar(v, f"/{k}") for k, v in raw.items()}
        satisfied = check_solution(cs, assignment)
        _emit_json({"system": cs.name, "satisfied": satisfied}, args.output)
        return EXIT_OK if satisfied else EXIT_VERIFICATION_FAILED
    reduced = linear_eliminate(cs)
    certificate = detect_contradiction(reduced)
    _emit_json({
        "reduced": reduced.to_dict(),
        "certificate": certificate.to_dict() if certificate else None,
        "infeasible": certificate is not None,
    }, args.output)
    return EXIT_OK


# parser

def _add_source(parser: argparse.ArgumentParser, entry_help: str = "catalog entry name") -> None:
    parser.add_argument("--entry", help=entry_help)
    parser.add_argument("--file", help="structure document (JSON)")
    parser.add_argument("--params", nargs="*", default=[], metavar="K=V", help="catalog parameters")


def _add_report(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--report", choices=("text", "json"), default="text")
    parser.add_argument("-o", "--output", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhopf",
        description="Exact verifier for quasi-Hopf algebras, Yetter-Drinfeld structures and biproducts",
    )
    parser.add_argument("--seed", type=int, help="seed of the random twist generator")
    parser.add_argument("--log-level", default=settings.QHOPF_LOG_LEVEL)
    commands = parser.add_subparsers(dest="command", required=True)

    catalog = commands.add_parser("catalog", help="named fixtures").add_subparsers(dest="catalog_command", required=True)
    p = catalog.add_parser("list")
    p.add_argument("--kind", choices=registry.KINDS)
    p.set_defaults(func=catalog_list)
    p = catalog.add_parser("manifest")
    p.add_argument("-o", "--output")
    p.set_defaults(func=catalog_manifest)
    p = catalog.add_parser("export")
    p.add_argument("name")
    p.add_argument("--params", nargs="*", default=[], metavar="K=V")
    p.add_argument("-o", "--output")
    p.set_defaults(func=catalog_export)

    p = commands.add_parser("verify", help="run the axiom suite of a structure")
    _add_source(p)
    _add_report(p)
    p.add_argument("--expect", choices=registry.KINDS, help="verify as this kind instead of the stored one")
    p.set_defaults(func=verify)

    p = commands.add_parser("radical", help="Jacobson radical of the underlying algebra")
    _add_source(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=radical)

    p = commands.add_parser("twist", help="gauge transform a quasi-bialgebra or quasi-Hopf algebra")
    p.add_argument("--file", required=True)
    p.add_argument("--twist", help="twist document, a seeded random twist when missing")
    p.add_argument("-o", "--output")
    p.add_argument("--twist-output", help="write the twist that was applied")
    p.set_defaults(func=twist)

    cocycle = commands.add_parser("cocycle", help="3-cocycles on C2, C3, C6 and S3").add_subparsers(
        dest="cocycle_command", required=True)
    p = cocycle.add_parser("build")
    p.add_argument("family", choices=("cyclic", "s3", "psi"))
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--variant", choices=("as_printed", "proof_derived"))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cocycle_build)
    p = cocycle.add_parser("check")
    p.add_argument("--file", required=True)
    _add_report(p)
    p.set_defaults(func=cocycle_check)
    p = cocycle.add_parser("cohomologous")
    p.add_argument("--file", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--root-order", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cocycle_cohomologous)

    yd = commands.add_parser("yd", help="Yetter-Drinfeld modules").add_subparsers(dest="yd_command", required=True)
    p = yd.add_parser("verify")
    _add_source(p)
    _add_report(p)
    p.set_defaults(func=verify, expect=None)
    p = yd.add_parser("tensor")
    p.add_argument("--left", required=True, help="catalog entry or .json document")
    p.add_argument("--right", required=True, help="catalog entry or .json document")
    p.add_argument("--params", nargs="*", default=[], metavar="K=V")
    p.add_argument("--module-output", help="write the tensor product module")
    _add_report(p)
    p.set_defaults(func=yd_tensor_command)
    p = yd.add_parser("decompose")
    _add_source(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=yd_decompose)

    p = commands.add_parser("biproduct", help="assemble B×H")
    p.add_argument("--braided", required=True)
    p.add_argument("--base", required=True, choices=("kC2", "H2"))
    p.add_argument("--params", nargs="*", default=[], metavar="K=V")
    p.add_argument("--name")
    p.add_argument("-o", "--output")
    p.set_defaults(func=biproduct)

    constraints = commands.add_parser("constraints", help="polynomial constraint systems").add_subparsers(
        dest="constraints_command", required=True)
    p = constraints.add_parser("case3")
    p.add_argument("--i", type=int, choices=(0, 1))
    p.add_argument("--j", type=int, choices=(0, 1))
    p.add_argument("-o", "--output")
    p.set_defaults(func=constraints_case3)
    p = constraints.add_parser("iso")
    p.add_argument("--source")
    p.add_argument("--target")
    p.add_argument("--j", type=int, choices=(0, 1))
    p.add_argument("-o", "--output")
    p.set_defaults(func=constraints_iso)
    p = constraints.add_parser("custom")
    p.add_argument("--file", required=True)
    p.add_argument("--assignment", help="JSON file mapping indeterminates to scalars")
    p.add_argument("-o", "--output")
    p.set_defaults(func=constraints_custom)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE_ERROR
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    if args.seed is not None:
        settings.QHOPF_SEED = args.seed
    run_setup_hooks()
    try:
        return args.func(args)
    except QHopfException as e:
        detail = " ".join(str(e.detail).split())
        sys.stderr.write(f"qhopf: {e.category}: {detail}\n")
        return e.exit_code
    except OSError as e:
        sys.stderr.write(f"qhopf: {e}\n")
        return EXIT_USAGE_ERROR


def main() -> None:
    sys.exit(run())
