from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

CONFIRMED = "confirmed-on-window"
FAILED = "counterexample"


@dataclass
class VerdictReport:
    """Outcome of a bounded empirical check of one statement.

    A confirmed report only says the statement held on ``window``; nothing
    here is a proof.
    """

    lemma_id: str
    parameters: dict[str, Any]
    window: dict[str, Any]
    status: str = CONFIRMED
    counterexample: dict[str, Any] | None = None
    checked: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == CONFIRMED

    def fail(self, **details: Any) -> "VerdictReport":
        # keep the first counterexample found
        if self.counterexample is None:
            self.status = FAILED
            self.counterexample = details
        return self

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "VerdictReport":
        return cls(**data)
