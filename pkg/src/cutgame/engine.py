"""Sprague-Grundy machinery for CUT.

A move in CUT with cut-set C takes one pile and splits it into d+1
nonempty piles for some d in C. Single-pile values G(n) are the mex over
the nim-sums of all such splits. Nim-sets N(n, p) collect the nim-sums of
every split of n tokens into exactly p piles, whether or not p-1 is a legal
cut count.

Value sets are stored as Python ints used as bitmasks, which grow without
any fixed bound on the largest nim-value.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import DomainError, ResourceLimitError

DEFAULT_MAX_SIZE = 1_000_000


def nim_sum(a: int, b: int) -> int:
    return a ^ b


def mex_bits(bits: int) -> int:
    """Smallest nonnegative integer whose bit is clear in ``bits``."""
    return ((~bits) & (bits + 1)).bit_length() - 1


@lru_cache(maxsize=None)
def _low_halves(k: int, reps: int) -> int:
    # `reps` copies of a 2^(k+1)-bit block whose low 2^k bits are set
    width = 1 << k
    period = width << 1
    block = (1 << width) - 1
    return block * (((1 << (period * reps)) - 1) // ((1 << period) - 1))


def xor_shift_bits(bits: int, g: int) -> int:
    """Return the bitmask of {v ^ g : v in bits}."""
    k = 0
    while g and bits:
        if g & 1:
            width = 1 << k
            reps = (bits.bit_length() + width) // (width << 1) + 1
            low = _low_halves(k, reps)
            bits = ((bits & low) << width) | ((bits >> width) & low)
        g >>= 1
        k += 1
    return bits


class NimValueSet:
    """Immutable set of nonnegative integers backed by a bitmask."""

    __slots__ = ("bits",)

    def __init__(self, values: Iterable[int] = ()):
        bits = 0
        for v in values:
            if v < 0:
                raise DomainError(f"nim-values are nonnegative, got {v}")
            bits |= 1 << v
        self.bits = bits

    @classmethod
    def from_bits(cls, bits: int) -> "NimValueSet":
        if bits < 0:
            raise DomainError("bitmask must be nonnegative")
        s = cls.__new__(cls)
        s.bits = bits
        return s

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.bits >> v & 1)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NimValueSet):
            return self.bits == other.bits
        if isinstance(other, (set, frozenset)):
            return set(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.bits)

    def __or__(self, other: "NimValueSet") -> "NimValueSet":
        return NimValueSet.from_bits(self.bits | other.bits)

    def __and__(self, other: "NimValueSet") -> "NimValueSet":
        return NimValueSet.from_bits(self.bits & other.bits)

    def __le__(self, other: "NimValueSet") -> bool:
        return self.bits & ~other.bits == 0

    def union(self, *others: "NimValueSet") -> "NimValueSet":
        bits = self.bits
        for o in others:
            bits |= o.bits
        return NimValueSet.from_bits(bits)

    def xor_shift(self, g: int) -> "NimValueSet":
        return NimValueSet.from_bits(xor_shift_bits(self.bits, g))

    def mex(self) -> int:
        return mex_bits(self.bits)

    def to_list(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


def mex(values: NimValueSet | Iterable[int]) -> int:
    if isinstance(values, NimValueSet):
        return values.mex()
    seen = set(values)
    m = 0
    while m in seen:
        m += 1
    return m


@dataclass(frozen=True)
class CutSet:
    """Validated set of allowed cut counts, stored sorted."""

    cuts: tuple[int, ...]

    def __init__(self, cuts: Iterable[int]):
        cuts = tuple(cuts)
        if not cuts:
            raise DomainError("cut-set must be non-empty")
        for d in cuts:
            if not isinstance(d, int) or isinstance(d, bool) or d < 1:
                raise DomainError(f"cut counts must be positive integers, got {d!r}")
        if len(set(cuts)) != len(cuts):
            raise DomainError(f"duplicate cut count in {cuts}")
        object.__setattr__(self, "cuts", tuple(sorted(cuts)))

    @classmethod
    def parse(cls, text: str) -> "CutSet":
        items = [t.strip() for t in text.split(",")]
        try:
            values = [int(t) for t in items]
        except ValueError:
            raise DomainError(f"malformed cut-set {text!r}") from None
        return cls(values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.cuts)

    def __contains__(self, d: object) -> bool:
        return d in self.cuts

    def __len__(self) -> int:
        return len(self.cuts)

    @property
    def part_counts(self) -> tuple[int, ...]:
        """Number of piles a single move produces, one entry per cut count."""
        return tuple(d + 1 for d in self.cuts)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.cuts)) + "}"


@dataclass(frozen=True)
class PilePartition:
    """A multiset of pile sizes, kept in nondecreasing order."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(sorted(parts))
        if not parts:
            raise DomainError("a partition needs at least one part")
        if parts[0] < 1:
            raise DomainError(f"parts must be positive, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def count(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def _partitions(n: int, p: int, lo: int) -> Iterator[tuple[int, ...]]:
    if p == 1:
        if n >= lo:
            yield (n,)
        return
    for first in range(lo, n // p + 1):
        for rest in _partitions(n - first, p - 1, first):
            yield (first,) + rest


def iter_partition_tuples(n: int, p: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing tuples of exactly p positive parts summing to n, in lexicographic order."""
    if n < 1 or p < 1:
        raise DomainError(f"need n >= 1 and p >= 1, got n={n}, p={p}")
    if n < p:
        return iter(())
    return _partitions(n, p, 1)


def enumerate_partitions(n: int, p: int) -> Iterator[PilePartition]:
    for parts in iter_partition_tuples(n, p):
        yield PilePartition(parts)


class GrundyTable:
    """Memoized single-pile values and nim-sets for one cut-set.

    Values are 1-indexed: ``table.grundy(1)`` is G(1). The table grows on
    demand and refuses to grow past ``max_size`` entries.

    Nim-set layers are filled with the composition recurrence

        N(n, p) = union over h of { G(h) ^ v : v in N(n - h, p - 1) }

    starting from N(0, 0) = {0}. XOR commutes, so stripping an ordered first
    part yields the same value set as enumerating multisets.
    """

    def __init__(self, cutset: CutSet | Iterable[int], max_size: int = DEFAULT_MAX_SIZE):
        self.cutset = cutset if isinstance(cutset, CutSet) else CutSet(cutset)
        self.max_size = max_size
        self._values: list[int] = [0]  # index 0 is a placeholder
        self._by_value: dict[int, list[int]] = {}
        self._layers: dict[int, list[int]] = {0: [1]}

    @property
    def capacity(self) -> int:
        return len(self._values) - 1

    def _check_size(self, n: int) -> None:
        if n > self.max_size:
            raise ResourceLimitError(
                f"pile size {n} exceeds table cap {self.max_size} for cut-set {self.cutset}"
            )

    def ensure(self, n: int) -> None:
        self._check_size(n)
        while self.capacity < n:
            self._advance()

    def _advance(self) -> None:
        n = self.capacity + 1
        options = 0
        for p in self.cutset.part_counts:
            if p <= n:
                options |= self._layer_entry(p, n)
        g = mex_bits(options)
        self._values.append(g)
        self._by_value.setdefault(g, []).append(n)

    def _layer_entry(self, p: int, m: int) -> int:
        layer = self._layers.get(p)
        if layer is None or len(layer) <= m:
            self._extend_layer(p, m)
            layer = self._layers[p]
        return layer[m]

    def _extend_layer(self, p: int, m: int) -> None:
        if p == 0:
            layer = self._layers[0]
            layer.extend([0] * (m + 1 - len(layer)))
            return
        if p == 1:
            self.ensure(m)
            layer = self._layers.setdefault(1, [0])
            for j in range(len(layer), m + 1):
                layer.append(1 << self._values[j])
            return
        # entries of layer p up to m need G(1..m-p+1) and layer p-1 up to m-1
        if m - p + 1 >= 1:
            self.ensure(m - p + 1)
        self._layer_entry(p - 1, max(m - 1, 0))
        prev = self._layers[p - 1]
        layer = self._layers.setdefault(p, [])
        by_value = self._by_value
        for j in range(len(layer), m + 1):
            if j < p:
                layer.append(0)
                continue
            top = j - p + 1
            acc = 0
            for g, hs in by_value.items():
                merged = 0
                for h in hs:
                    if h > top:
                        break
                    merged |= prev[j - h]
                if merged:
                    acc |= xor_shift_bits(merged, g)
            layer.append(acc)

    def grundy(self, n: int) -> int:
        if n < 1:
            raise DomainError(f"pile size must be >= 1, got {n}")
        self.ensure(n)
        return self._values[n]

    def values(self, n_max: int) -> list[int]:
        """G(1), ..., G(n_max) as a list."""
        if n_max < 1:
            raise DomainError(f"n_max must be >= 1, got {n_max}")
        self.ensure(n_max)
        return self._values[1 : n_max + 1]

    def nim_set_bits(self, n: int, p: int) -> int:
        if n < 1 or p < 1:
            raise DomainError(f"need n >= 1 and p >= 1, got n={n}, p={p}")
        self._check_size(n)
        if n < p:
            return 0
        return self._layer_entry(p, n)

    def nim_set(self, n: int, p: int) -> NimValueSet:
        return NimValueSet.from_bits(self.nim_set_bits(n, p))

    def option_value(self, parts: Iterable[int]) -> int:
        v = 0
        for h in parts:
            v ^= self.grundy(h)
        return v

    def options(self, n: int) -> NimValueSet:
        """Values of all single moves from a pile of size n."""
        bits = 0
        for p in self.cutset.part_counts:
            bits |= self.nim_set_bits(n, p)
        return NimValueSet.from_bits(bits)


def grundy(n: int, table: GrundyTable) -> int:
    return table.grundy(n)


def nim_set(n: int, p: int, table: GrundyTable) -> NimValueSet:
    return table.nim_set(n, p)


def nim_set_brute(n: int, p: int, table: GrundyTable) -> NimValueSet:
    """Nim-set by enumerating every partition; slow, used as a cross-check."""
    return NimValueSet(table.option_value(o) for o in iter_partition_tuples(n, p))


_tables: dict[tuple[tuple[int, ...], int], GrundyTable] = {}


def get_table(cutset: CutSet | Iterable[int], max_size: int = DEFAULT_MAX_SIZE) -> GrundyTable:
    """Shared table for a cut-set, created on first use."""
    cutset = cutset if isinstance(cutset, CutSet) else CutSet(cutset)
    key = (cutset.cuts, max_size)
    table = _tables.get(key)
    if table is None:
        table = _tables[key] = GrundyTable(cutset, max_size)
    return table
