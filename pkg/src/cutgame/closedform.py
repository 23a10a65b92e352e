"""Closed-form nim-sequences for the cut-sets whose values are known.

All sequences are 1-indexed (G(1) is the first term).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .engine import CutSet, GrundyTable, get_table
from .errors import DomainError
from .report import VerdictReport

NO_ONE = "NoOne"
ONE_ALL_ODD = "OneAllOdd"
ONE_TWO_THREE = "OneTwoThree"
ONE_THREE_EVEN = "OneThreeEven"
ONE_EVEN = "OneEven"
ONE_MANY_EVEN = "OneManyEven"

SIMPLE_TAGS = (NO_ONE, ONE_ALL_ODD, ONE_TWO_THREE, ONE_THREE_EVEN)
_PARAMETRIZED = {NO_ONE: 1, ONE_THREE_EVEN: 2, ONE_EVEN: 2, ONE_MANY_EVEN: 2}


@dataclass(frozen=True)
class ClosedFormFamily:
    tag: str
    c: int | None = None

    def __post_init__(self):
        if self.tag in _PARAMETRIZED:
            low = _PARAMETRIZED[self.tag]
            if self.c is None or self.c < low:
                raise DomainError(f"{self.tag} needs c >= {low}, got {self.c}")
        elif self.tag in (ONE_ALL_ODD, ONE_TWO_THREE):
            if self.c is not None:
                raise DomainError(f"{self.tag} takes no parameter")
        else:
            raise DomainError(f"unknown family tag {self.tag!r}")

    def __str__(self) -> str:
        return self.tag if self.c is None else f"{self.tag}({self.c})"


@dataclass(frozen=True)
class PeriodSpec:
    period: int
    saltus: int
    first_period: tuple[int, ...]

    def __post_init__(self):
        if len(self.first_period) != self.period:
            raise DomainError("first_period must have exactly `period` entries")

    def value(self, n: int) -> int:
        q, r = divmod(n - 1, self.period)
        return q * self.saltus + self.first_period[r]


def classify_cutset(cutset: CutSet | Iterable[int]) -> ClosedFormFamily | None:
    """Match a cut-set against the proven families, or return None.

    Overlapping rows are resolved by a fixed precedence: {1,2,3} subset,
    then no 1, then all odd, then {1,3,2c}, then {1,2c}, then 1 plus evens >= 4.
    """
    cuts = set(cutset.cuts if isinstance(cutset, CutSet) else CutSet(cutset).cuts)
    if {1, 2, 3} <= cuts:
        return ClosedFormFamily(ONE_TWO_THREE)
    if 1 not in cuts:
        return ClosedFormFamily(NO_ONE, min(cuts))
    rest = cuts - {1}
    if all(d % 2 == 1 for d in cuts):
        return ClosedFormFamily(ONE_ALL_ODD)
    if 3 in rest and len(rest) == 2:
        (even,) = rest - {3}
        if even % 2 == 0 and even >= 4:
            return ClosedFormFamily(ONE_THREE_EVEN, even // 2)
    if rest and all(d % 2 == 0 and d >= 4 for d in rest):
        if len(rest) == 1:
            return ClosedFormFamily(ONE_EVEN, min(rest) // 2)
        return ClosedFormFamily(ONE_MANY_EVEN, min(rest) // 2)
    return None


def _check_n(n: int) -> None:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")


def theorem1_first_period(c: int) -> tuple[int, ...]:
    """The 12c values G(1..12c) for the cut-set {1, 2c}."""
    if c < 2:
        raise DomainError(f"c must be >= 2, got {c}")
    seq = [0, 1] * c + [2, 3] * c + [1, 4] + [5, 4] * (c - 1)
    seq += [3, 2] * c + [4, 5] * c + [6, 7] * c
    return tuple(seq)


def theorem1_grundy(n: int, c: int) -> int:
    """G(n) for {1, 2c}: period 12c, saltus 8."""
    _check_n(n)
    base = theorem1_first_period(c)
    q, r = divmod(n - 1, 12 * c)
    return 8 * q + base[r]


def table1_grundy(n: int, family: ClosedFormFamily) -> int:
    _check_n(n)
    if family.tag == NO_ONE:
        return (n - 1) // family.c
    if family.tag == ONE_ALL_ODD:
        return (n - 1) % 2
    if family.tag == ONE_TWO_THREE:
        return n - 1
    if family.tag == ONE_THREE_EVEN:
        return 2 * ((n - 1) // (2 * family.c)) + (n - 1) % 2
    raise DomainError(f"{family} is not a simple closed-form family")


def extension_grundy(n: int, c_list: Sequence[int]) -> int:
    """G(n) for {1, 2c_1, 2c_2, ...}, which agrees with {1, 2 min(c_i)}."""
    if not c_list:
        raise DomainError("c_list must be non-empty")
    if any(c < 2 for c in c_list):
        raise DomainError(f"every c_i must be >= 2, got {list(c_list)}")
    return theorem1_grundy(n, min(c_list))


def family_grundy(n: int, family: ClosedFormFamily) -> int:
    if family.tag in SIMPLE_TAGS:
        return table1_grundy(n, family)
    return theorem1_grundy(n, family.c)


def period_spec(family: ClosedFormFamily) -> PeriodSpec:
    period, saltus = {
        NO_ONE: lambda c: (c, 1),
        ONE_ALL_ODD: lambda c: (2, 0),
        ONE_TWO_THREE: lambda c: (1, 1),
        ONE_THREE_EVEN: lambda c: (2 * c, 2),
        ONE_EVEN: lambda c: (12 * c, 8),
        ONE_MANY_EVEN: lambda c: (12 * c, 8),
    }[family.tag](family.c)
    first = tuple(family_grundy(n, family) for n in range(1, period + 1))
    return PeriodSpec(period, saltus, first)


def row_table(c: int) -> list[list[int]]:
    """First period for {1, 2c} laid out as 6 rows of 2c values."""
    base = theorem1_first_period(c)
    w = 2 * c
    return [list(base[i * w : (i + 1) * w]) for i in range(6)]


# Bounded checks against the engine -----------------------------------------


def verify_theorem1(c: int, n_max: int, table: GrundyTable | None = None) -> VerdictReport:
    table = table or get_table([1, 2 * c])
    report = VerdictReport("theorem1", {"c": c}, {"n_max": n_max})
    values = table.values(n_max)
    for n, g in enumerate(values, start=1):
        report.checked += 1
        expected = theorem1_grundy(n, c)
        if g != expected:
            return report.fail(n=n, engine=g, closed_form=expected)
    return report


SIMPLE_CUTSETS = ((2, 3), (3, 5), (1, 5), (1, 3, 7), (1, 2, 3), (1, 2, 3, 6), (1, 3, 4), (1, 3, 8))


def verify_table1(n_max: int = 60, cutsets: Iterable[Iterable[int]] = SIMPLE_CUTSETS) -> VerdictReport:
    cutsets = [tuple(cs) for cs in cutsets]
    report = VerdictReport("table1", {"cutsets": [list(cs) for cs in cutsets]}, {"n_max": n_max})
    for cs in cutsets:
        family = classify_cutset(cs)
        if family is None or family.tag not in SIMPLE_TAGS:
            return report.fail(cutset=list(cs), reason="not a simple-family cut-set")
        values = get_table(cs).values(n_max)
        for n, g in enumerate(values, start=1):
            report.checked += 1
            expected = table1_grundy(n, family)
            if g != expected:
                return report.fail(cutset=list(cs), family=str(family), n=n, engine=g, closed_form=expected)
    return report


def verify_theorem8(c_list: Sequence[int], n_max: int) -> VerdictReport:
    """Engine values for {1, 2c_1, ...} against engine values for {1, 2 min c_i}."""
    extended = [1] + [2 * c for c in c_list]
    reduced = [1, 2 * min(c_list)]
    report = VerdictReport("theorem8", {"c_list": list(c_list)}, {"n_max": n_max})
    big = get_table(extended).values(n_max)
    small = get_table(reduced).values(n_max)
    for n, (a, b) in enumerate(zip(big, small), start=1):
        report.checked += 1
        if a != b or a != extension_grundy(n, c_list):
            return report.fail(n=n, extended=a, reduced=b, closed_form=extension_grundy(n, c_list))
    return report


def verify_observations(c: int, periods: int = 3) -> VerdictReport:
    """Value-level restatements of ob1, ob2, ob3.2, ob3.3, ob3.4 on the closed form."""
    P = 12 * c
    top = periods * P
    report = VerdictReport("observations", {"c": c}, {"periods": periods, "n_max": top})

    def G(n):
        return theorem1_grundy(n, c)

    for n in range(1, top + 1):
        if n % (2 * c) != 0 and n % P != (4 * c + 1) % P:
            report.checked += 1
            if G(n + 1) != G(n) ^ 1:
                return report.fail(observation="ob1", n=n)
    pairs = [(2 * c, 12 * c), (4 * c, 10 * c), (6 * c, 8 * c)]
    for a, b in pairs:
        report.checked += 1
        if G(a) ^ G(b) != 6:
            return report.fail(observation="ob2", pair=[a, b])
    for a in range(0, top // (2 * c) + 1):
        base = 2 * a * c
        if a >= 1 and base - 2 >= 1:
            report.checked += 1
            if G(base) != G(base - 2):
                return report.fail(observation="ob3.2", a=a)
        if a % 6 != 2:
            report.checked += 1
            if G(base + 1) != G(base + 3):
                return report.fail(observation="ob3.3", a=a)
        else:
            report.checked += 1
            if G(base + 2) != G(base + 4):
                return report.fail(observation="ob3.4", a=a)
    return report


def verify_prop1(c: int, periods: int = 5, table: GrundyTable | None = None) -> VerdictReport:
    """Saltus-8 decomposition for {1, 2c}: G(n + 12c) = G(n) + 8 and G < 8 on the first period."""
    table = table or get_table([1, 2 * c])
    P, s = 12 * c, 8
    report = VerdictReport("prop1", {"c": c, "period": P, "saltus": s}, {"n_max": periods * P})
    values = table.values((periods + 1) * P)
    for n in range(1, P + 1):
        report.checked += 1
        if values[n - 1] >= s:
            return report.fail(n=n, value=values[n - 1], reason="first-period value not below saltus")
    for n in range(1, periods * P + 1):
        report.checked += 1
        if values[n + P - 1] != values[n - 1] + s:
            return report.fail(n=n, value=values[n - 1], shifted=values[n + P - 1])
    return report
