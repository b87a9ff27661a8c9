import logging
from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence

from qhopf.exactcore import CycScalar, Coords

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"


class Identity(NamedTuple):
    '''
    One instance of an axiom: both sides as sparse coordinates
    over the same multi-index space
    '''
    check_id: str
    basis: tuple
    lhs: Coords
    rhs: Coords


def _wire(value):
    if isinstance(value, CycScalar):
        return value.to_wire()
    return str(value)


def first_difference(lhs: Coords, rhs: Coords):
    zero = CycScalar.zero()
    for key in sorted(set(lhs) | set(rhs)):
        left, right = lhs.get(key, zero), rhs.get(key, zero)
        if left != right:
            return key, left, right
    return None


@dataclass
class CheckRecord:
    check_id: str
    anchor: str
    status: str = PASS
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "status": self.status,
            "witness": self.witness,
        }


@dataclass
class VerificationReport:
    subject: str
    records: List[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status == PASS for r in self.records)

    @property
    def failed_checks(self) -> List[str]:
        return [r.check_id for r in self.records if r.status == FAIL]

    def record(self, check_id: str) -> Optional[CheckRecord]:
        return next((r for r in self.records if r.check_id == check_id), None)

    def status_of(self, check_id: str) -> Optional[str]:
        rec = self.record(check_id)
        return rec.status if rec else None

    def add(self, check_id: str, anchor: str, witness: Optional[dict] = None) -> CheckRecord:
        rec = CheckRecord(check_id, anchor, FAIL if witness is not None else PASS, witness)
        self.records.append(rec)
        return rec

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.records.extend(other.records)
        return self

    def summary(self) -> Dict[str, int]:
        failed = len(self.failed_checks)
        return {"total": len(self.records), "passed": len(self.records) - failed, "failed": failed}

    def expected_summary(self) -> dict:
        return {"status": PASS if self.passed else FAIL, "failed": sorted(set(self.failed_checks))}

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "records": [r.to_dict() for r in self.records],
            "summary": self.summary(),
        }

    def to_text(self) -> str:
        lines = [f"Verification report: {self.subject}"]
        for r in self.records:
            line = f"  [{r.status.upper()}] {r.check_id} ({r.anchor})"
            if r.witness:
                line += f" witness={r.witness}"
            lines.append(line)
        s = self.summary()
        lines.append(f"  {s['passed']}/{s['total']} checks passed")
        return "\n".join(lines)


def collect(
    subject: str,
    anchors: Dict[str, str],
    identities: Iterable[Identity],
    report: Optional[VerificationReport] = None,
) -> VerificationReport:
    '''
    Fold identities into one record per check id, in the order of `anchors`.
    The witness is the first failing coordinate; every failing basis
    multi-index is counted
    '''
    report = report or VerificationReport(subject)
    witnesses: Dict[str, dict] = {}
    for identity in identities:
        diff = first_difference(identity.lhs, identity.rhs)
        if diff is None:
            continue
        if identity.check_id not in witnesses:
            key, left, right = diff
            witnesses[identity.check_id] = {
                "basis": list(identity.basis),
                "coordinate": list(key),
                "lhs": _wire(left),
                "rhs": _wire(right),
                "failures": 0,
            }
            logger.debug(f"{subject}: {identity.check_id} fails at basis {identity.basis}")
        witnesses[identity.check_id]["failures"] += 1
    for check_id, anchor in anchors.items():
        report.add(check_id, anchor, witnesses.get(check_id))
    return report


def single(value) -> Coords:
    return {(): value}


def terms_to_coords(terms: Optional[Sequence]) -> Coords:
    out: Coords = {}
    for idx, c in terms or ():
        out[idx] = out[idx] + c if idx in out else c
    return {k: v for k, v in out.items() if v}


@dataclass
class ExecutionRequest:
    '''
    Bookkeeping of one run of a handler task chain, kept by the orchestrator.
    `input_params` holds the payload, `output_params` what the steps produced
    '''
    STATUS_READY = "ready"
    STATUS_RUNNING = "running"
    STATUS_FINISHED = "finished"
    STATUS_FAILED = "failed"

    exec_id: str
    func_name: str
    step: str
    input_params: dict = field(default_factory=dict)
    action: Optional[str] = None
    name: Optional[str] = None
    status: str = STATUS_READY
    log: Optional[str] = None
    created: Optional[datetime] = None
    last_updated: Optional[datetime] = None
    finished: Optional[datetime] = None
    output_params: dict = field(default_factory=dict)
    tasks: Dict[str, str] = field(default_factory=dict)
    structure: object = field(default=None, repr=False, compare=False)
