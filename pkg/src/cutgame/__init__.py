"""Sprague-Grundy analysis of the partition game CUT."""

from .closedform import (
    ClosedFormFamily,
    PeriodSpec,
    classify_cutset,
    extension_grundy,
    family_grundy,
    row_table,
    table1_grundy,
    theorem1_grundy,
)
from .engine import (
    CutSet,
    GrundyTable,
    NimValueSet,
    PilePartition,
    enumerate_partitions,
    get_table,
    grundy,
    mex,
    nim_set,
    nim_sum,
)
from .errors import CutGameError, DomainError, ResourceLimitError
from .periodicity import PeriodReport, detect, verify
from .report import VerdictReport
from .strategy import Move, Outcome, Position, best_move, classify_position, position_value

__version__ = "0.1.0"
