"""Structured outcome of one congruence or identity check."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .core import NonInvertibleError, Scalar


def modinv(a: int, m: int) -> int:
    try:
        return pow(a, -1, m)
    except ValueError as exc:
        raise NonInvertibleError(f"{a} is not invertible modulo {m}") from exc


def residue(x: Scalar, m: int) -> int:
    """Least non-negative residue of an int or Fraction modulo m.

    A Fraction is mapped through the modular inverse of its denominator;
    a non-invertible denominator raises NonInvertibleError naming it.
    """
    if m < 1:
        raise ValueError(f"residue: modulus must be >= 1, got {m}")
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator % m
        return x.numerator * modinv(x.denominator, m) % m
    return x % m


@dataclass(frozen=True)
class CongruenceReport:
    """Inputs, both sides, modulus and residues of one checked identity.

    modulus == 0 means exact equality was checked.  ``passed`` always
    satisfies: passed <=> (modulus == 0 and lhs == rhs) or
    (modulus > 0 and lhs = rhs mod modulus).  ``conjectural`` marks
    instances the source material only conjectures.
    """

    identity_id: str
    inputs: dict
    lhs: Scalar
    rhs: Scalar
    modulus: int
    lhs_residue: int | None
    rhs_residue: int | None
    passed: bool
    conjectural: bool = False
    details: dict = field(default_factory=dict)

    @classmethod
    def check(
        cls,
        identity_id: str,
        inputs: dict,
        lhs: Scalar,
        rhs: Scalar,
        modulus: int = 0,
        conjectural: bool = False,
        details: dict | None = None,
        extra_pass: bool = True,
    ) -> "CongruenceReport":
        """Build a report, computing residues and the pass flag.

        ``extra_pass`` folds in side conditions (e.g. agreement between
        alternate formulations recorded in ``details``).
        """
        if modulus == 0:
            lr = rr = None
            passed = lhs == rhs
        else:
            lr = residue(lhs, modulus)
            rr = residue(rhs, modulus)
            passed = lr == rr
        return cls(
            identity_id=identity_id,
            inputs=dict(inputs),
            lhs=lhs,
            rhs=rhs,
            modulus=modulus,
            lhs_residue=lr,
            rhs_residue=rr,
            passed=passed and extra_pass,
            conjectural=conjectural,
            details=dict(details or {}),
        )


def _encode(value):
    """JSON-safe encoding: ints as decimal strings, Fractions as 'p/q'."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    return value


def _decode(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, str):
        if value.lstrip("-").isdigit():
            return int(value)
        if "/" in value:
            num, _, den = value.partition("/")
            if num.lstrip("-").isdigit() and den.isdigit():
                return Fraction(int(num), int(den))
        return value
    if isinstance(value, list):
        return [_decode(v) for v in value]
    if isinstance(value, dict):
        return {k: _decode(v) for k, v in value.items()}
    return value


def report_to_dict(report: CongruenceReport) -> dict:
    return {
        "identity_id": report.identity_id,
        "inputs": _encode(report.inputs),
        "lhs": _encode(report.lhs),
        "rhs": _encode(report.rhs),
        "modulus": str(report.modulus),
        "lhs_residue": None if report.lhs_residue is None else str(report.lhs_residue),
        "rhs_residue": None if report.rhs_residue is None else str(report.rhs_residue),
        "pass": report.passed,
        "conjectural": report.conjectural,
        "details": _encode(report.details),
    }


def report_from_dict(data: dict) -> CongruenceReport:
    return CongruenceReport(
        identity_id=data["identity_id"],
        inputs=_decode(data["inputs"]),
        lhs=_decode(data["lhs"]),
        rhs=_decode(data["rhs"]),
        modulus=int(data["modulus"]),
        lhs_residue=None if data["lhs_residue"] is None else int(data["lhs_residue"]),
        rhs_residue=None if data["rhs_residue"] is None else int(data["rhs_residue"]),
        passed=data["pass"],
        conjectural=data.get("conjectural", False),
        details=_decode(data.get("details", {})),
    )


CSV_FIELDS = [
    "identity_id", "inputs", "lhs", "rhs", "modulus",
    "lhs_residue", "rhs_residue", "pass", "conjectural", "details",
]


def report_to_csv_row(report: CongruenceReport) -> list[str]:
    d = report_to_dict(report)
    return [
        d["identity_id"],
        json.dumps(d["inputs"], sort_keys=True),
        d["lhs"],
        d["rhs"],
        d["modulus"],
        "" if d["lhs_residue"] is None else d["lhs_residue"],
        "" if d["rhs_residue"] is None else d["rhs_residue"],
        "1" if d["pass"] else "0",
        "1" if d["conjectural"] else "0",
        json.dumps(d["details"], sort_keys=True),
    ]


def report_from_csv_row(row: list[str]) -> CongruenceReport:
    return report_from_dict({
        "identity_id": row[0],
        "inputs": json.loads(row[1]),
        "lhs": row[2],
        "rhs": row[3],
        "modulus": row[4],
        "lhs_residue": row[5] or None,
        "rhs_residue": row[6] or None,
        "pass": row[7] == "1",
        "conjectural": row[8] == "1",
        "details": json.loads(row[9]),
    })
