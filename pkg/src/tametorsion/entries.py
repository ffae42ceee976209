"""Certificate entry records shared by the CM criterion and the certifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"


class Justification(str, Enum):
    GOOD_REDUCTION = "GoodReduction"
    SERRE_TATE_BOUND = "SerreTateBound"
    CM_AT_P = "CMAtP"


@dataclass(frozen=True)
class CertificateEntry:
    """One line of a tameness certificate.

    ``scope`` is a decimal prime such as "3" or a range label such as
    "ell>5". ``witness`` holds JSON-ready data (big integers as strings).
    """

    scope: str
    verdict: Verdict
    justification: Justification
    witness: dict[str, Any] | None = field(default=None)
    kisin_conditional: bool = False

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_json(self) -> dict:
        return {
            "scope": self.scope,
            "verdict": self.verdict.value,
            "justification": self.justification.value,
            "witness": self.witness,
            "kisin_conditional": self.kisin_conditional,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CertificateEntry":
        return cls(
            scope=data["scope"],
            verdict=Verdict(data["verdict"]),
            justification=Justification(data["justification"]),
            witness=data.get("witness"),
            kisin_conditional=bool(data["kisin_conditional"]),
        )
