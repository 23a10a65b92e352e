"""Multi-pile positions: values, outcome classes and winning moves."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .closedform import classify_cutset, family_grundy
from .engine import CutSet, GrundyTable, PilePartition, get_table, iter_partition_tuples
from .errors import DomainError, ResourceLimitError

ENGINE_LIMIT = 2_000
MOVE_CAP = 10_000


class Outcome(Enum):
    P = "P-position"
    N = "N-position"


@dataclass(frozen=True)
class Position:
    piles: tuple[int, ...]
    cutset: CutSet

    def __init__(self, piles: Iterable[int], cutset: CutSet | Iterable[int]):
        piles = tuple(piles)
        if not piles:
            raise DomainError("a position needs at least one pile")
        if any(h < 1 for h in piles):
            raise DomainError(f"pile sizes must be positive, got {piles}")
        object.__setattr__(self, "piles", piles)
        object.__setattr__(self, "cutset", cutset if isinstance(cutset, CutSet) else CutSet(cutset))

    @property
    def is_terminal(self) -> bool:
        return all(h == 1 for h in self.piles)


@dataclass(frozen=True)
class Move:
    pile_index: int
    replacement: PilePartition

    def apply(self, pos: Position) -> Position:
        pile = pos.piles[self.pile_index]
        if self.replacement.total != pile:
            raise DomainError(f"replacement {self.replacement} does not sum to pile {pile}")
        if self.replacement.count - 1 not in pos.cutset:
            raise DomainError(f"{self.replacement.count - 1} cuts not allowed by {pos.cutset}")
        piles = list(pos.piles)
        piles[self.pile_index : self.pile_index + 1] = self.replacement.parts
        return Position(piles, pos.cutset)

    def to_dict(self) -> dict:
        return {"pile_index": self.pile_index, "replacement": list(self.replacement.parts)}


class Analyzer:
    """Evaluates positions for one cut-set.

    Piles up to ``engine_limit`` use the engine table. Larger piles use a
    closed form when the cut-set belongs to a proven family and fall back to
    the engine (which enforces its own cap) otherwise.
    """

    def __init__(
        self,
        cutset: CutSet | Iterable[int],
        table: GrundyTable | None = None,
        engine_limit: int = ENGINE_LIMIT,
        move_cap: int = MOVE_CAP,
    ):
        self.cutset = cutset if isinstance(cutset, CutSet) else CutSet(cutset)
        self.table = table or get_table(self.cutset)
        self.family = classify_cutset(self.cutset)
        self.engine_limit = engine_limit
        self.move_cap = move_cap

    def pile_value(self, n: int) -> int:
        if n > self.engine_limit and self.family is not None:
            return family_grundy(n, self.family)
        return self.table.grundy(n)

    def position_value(self, piles: Iterable[int]) -> int:
        v = 0
        for h in piles:
            v ^= self.pile_value(h)
        return v

    def legal_moves(self, pos: Position) -> Iterator[Move]:
        for i, pile in enumerate(pos.piles):
            for d in pos.cutset:
                for parts in iter_partition_tuples(pile, d + 1):
                    yield Move(i, PilePartition(parts))

    def best_move(self, pos: Position) -> Move | None:
        total = self.position_value(pos.piles)
        if total == 0:
            return None
        for i, pile in enumerate(pos.piles):
            if pile > self.move_cap:
                raise ResourceLimitError(f"move search is capped at pile size {self.move_cap}, got {pile}")
            target = total ^ self.pile_value(pile)
            for d in pos.cutset:
                p = d + 1
                if p > pile:
                    break
                if pile <= self.engine_limit and target not in self.table.nim_set(pile, p):
                    continue
                for parts in iter_partition_tuples(pile, p):
                    if self.position_value(parts) == target:
                        return Move(i, PilePartition(parts))
        # unreachable for a correct table: a nonzero position always has a move to 0
        raise AssertionError(f"no move to a P-position from {pos.piles}")


def _analyzer(pos: Position, table: GrundyTable | None) -> Analyzer:
    return Analyzer(pos.cutset, table)


def position_value(pos: Position, table: GrundyTable | None = None) -> int:
    return _analyzer(pos, table).position_value(pos.piles)


def classify_position(pos: Position, table: GrundyTable | None = None) -> Outcome:
    return Outcome.P if position_value(pos, table) == 0 else Outcome.N


def best_move(pos: Position, table: GrundyTable | None = None) -> Move | None:
    return _analyzer(pos, table).best_move(pos)


def legal_moves(pos: Position) -> Iterator[Move]:
    return _analyzer(pos, None).legal_moves(pos)
