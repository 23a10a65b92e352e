"""Detection of (ultimately) arithmetic-periodic nim-sequences.

A sequence is arithmetic-periodic after a preperiod of length ``pre`` with
period P and saltus s when seq(n + P) = seq(n) + s for every n > pre.
Sequences are 1-indexed in the relation; the Python lists are 0-indexed.
Saltus 0 means plain periodicity.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

from .errors import DomainError

CONFIRMED = "confirmed-on-window"
NOT_FOUND = "not-found"


@dataclass(frozen=True)
class PeriodReport:
    preperiod: int | None
    period: int | None
    saltus: int | None
    verified_up_to: int
    status: str

    @property
    def found(self) -> bool:
        return self.status == CONFIRMED

    def to_dict(self) -> dict:
        return asdict(self)


def verify(seq: Sequence[int], preperiod: int, period: int, saltus: int) -> bool:
    """True iff seq(n + period) == seq(n) + saltus for every n > preperiod in range."""
    if period < 1:
        raise DomainError(f"period must be >= 1, got {period}")
    if preperiod < 0:
        raise DomainError(f"preperiod must be >= 0, got {preperiod}")
    return all(seq[i + period] == seq[i] + saltus for i in range(preperiod, len(seq) - period))


def detect(
    seq: Sequence[int],
    min_confirm_periods: int = 3,
    max_preperiod: int | None = None,
) -> PeriodReport:
    """Find the smallest (preperiod, period) pair that fits the whole window.

    A candidate counts only when at least ``min_confirm_periods`` full periods
    fit after the preperiod, and its saltus is nonnegative. The preperiod
    search stops at ``max_preperiod`` (default: a third of the window).
    """
    if not seq:
        raise DomainError("sequence must be non-empty")
    if min_confirm_periods < 2:
        raise DomainError(f"min_confirm_periods must be >= 2, got {min_confirm_periods}")
    length = len(seq)
    if max_preperiod is None:
        max_preperiod = length // 3
    for pre in range(0, min(max_preperiod, length - 1) + 1):
        period = 1
        while (length - pre) >= min_confirm_periods * period:
            saltus = seq[pre + period] - seq[pre]
            if saltus >= 0 and verify(seq, pre, period, saltus):
                return PeriodReport(pre, period, saltus, length, CONFIRMED)
            period += 1
    return PeriodReport(None, None, None, length, NOT_FOUND)
