"""Structure of the {1, 2c} nim-sets and the index map onto {1, 6}.

Innumbers are n = 1 mod 2c or n = 4c+2 mod 12c; outnumbers are
n = 0 mod 2c or n = 4c+1 mod 12c. The residue 4c+1 mod 12c is both: it is
the one-entry row of the first period. Every verifier here is a bounded
exhaustive check that returns a VerdictReport with the first
counterexample found.
"""

from __future__ import annotations

from enum import Enum
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .engine import GrundyTable, PilePartition, get_table, iter_partition_tuples
from .errors import DomainError
from .report import VerdictReport


class NumberClass(Enum):
    INNUMBER = "innumber"
    OUTNUMBER = "outnumber"
    BOTH = "innumber+outnumber"
    NEITHER = "neither"


class PartitionClass(Enum):
    ENTERING = "entering"
    EXITING = "exiting"
    BOTH = "entering+exiting"
    INTERMEDIATE = "intermediate"


def _check_c(c: int, low: int = 2) -> None:
    if c < low:
        raise DomainError(f"c must be >= {low}, got {c}")


def is_innumber(n: int, c: int) -> bool:
    return n % (2 * c) == 1 or n % (12 * c) == 4 * c + 2


def is_outnumber(n: int, c: int) -> bool:
    return n % (2 * c) == 0 or n % (12 * c) == 4 * c + 1


def classify_number(n: int, c: int) -> NumberClass:
    _check_c(c)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    inn, out = is_innumber(n, c), is_outnumber(n, c)
    if inn and out:
        return NumberClass.BOTH
    if inn:
        return NumberClass.INNUMBER
    if out:
        return NumberClass.OUTNUMBER
    return NumberClass.NEITHER


def is_entering(parts: Iterable[int], c: int) -> bool:
    return all(is_innumber(h, c) for h in parts)


def is_exiting(parts: Iterable[int], c: int) -> bool:
    return all(is_outnumber(h, c) for h in parts)


def classify_partition(o: PilePartition | Sequence[int], c: int) -> PartitionClass:
    _check_c(c)
    parts = tuple(o)
    entering, exiting = is_entering(parts, c), is_exiting(parts, c)
    if entering and exiting:
        return PartitionClass.BOTH
    if entering:
        return PartitionClass.ENTERING
    if exiting:
        return PartitionClass.EXITING
    return PartitionClass.INTERMEDIATE


def floor_number(h: int, c: int) -> int:
    """Greatest innumber <= h."""
    if h < 1:
        raise DomainError(f"no innumber lies below {h}")
    m = h
    while not is_innumber(m, c):
        m -= 1
    return m


def ceil_number(h: int, c: int) -> int:
    """Least outnumber >= h."""
    if h < 1:
        raise DomainError(f"parts must be positive, got {h}")
    m = h
    while not is_outnumber(m, c):
        m += 1
    return m


def floor_partition(o: PilePartition | Sequence[int], c: int) -> PilePartition:
    """Part-wise floor, with the three-part exception.

    When exactly three parts all floor to 2 mod 2c (that is, 4c+2 mod 12c),
    the two smallest floors are lowered by one more.
    """
    _check_c(c)
    floors = [floor_number(h, c) for h in sorted(o)]
    if len(floors) == 3 and all(f % (2 * c) == 2 for f in floors):
        floors[0] -= 1
        floors[1] -= 1
    return PilePartition(floors)


def ceil_partition(o: PilePartition | Sequence[int], c: int) -> PilePartition:
    _check_c(c)
    return PilePartition(ceil_number(h, c) for h in o)


def r_prime(r: int, c: int) -> int:
    """Compress a residue 1..2c onto 1..6."""
    if not 1 <= r <= 2 * c:
        raise DomainError(f"r must lie in 1..{2 * c}, got {r}")
    if r <= 2:
        return r
    if r == 2 * c - 1:
        return 5
    if r == 2 * c:
        return 6
    return 3 if r % 2 else 4


def phi(n: int, p: int, c: int) -> int:
    """Index map from {1,2c} nim-sets with p piles to {1,6} nim-sets with p piles.

    Writes n = 2cq + r + p - 1 with 1 <= r <= 2c and returns 6q + r' + p - 1.
    """
    _check_c(c, 3)
    if p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    if n < p:
        raise DomainError(f"phi_p needs n >= p, got n={n}, p={p}")
    q, rem = divmod(n - p, 2 * c)
    return 6 * q + r_prime(rem + 1, c) + p - 1


def _tables(c: int) -> tuple[GrundyTable, GrundyTable]:
    return get_table([1, 2 * c]), get_table([1, 6])


# Verifiers -----------------------------------------------------------------


def verify_rem1(c: int, n_max: int, p_max: int) -> VerdictReport:
    """Non-entering O_{n+1} is one ⊕1 step from some O'_n; non-exiting O_n one step from some O'_{n+1}."""
    _check_c(c)
    table = get_table([1, 2 * c])
    report = VerdictReport("rem1", {"c": c}, {"n_max": n_max, "p_max": p_max})
    for n in range(1, n_max):
        for p in range(1, p_max + 1):
            if n + 1 >= p:
                below = table.nim_set(n, p) if n >= p else None
                for o in iter_partition_tuples(n + 1, p):
                    if is_entering(o, c):
                        continue
                    report.checked += 1
                    v = table.option_value(o)
                    if below is None or (v ^ 1) not in below:
                        return report.fail(case="non-entering", n=n + 1, p=p, partition=list(o), value=v)
            if n >= p:
                above = table.nim_set(n + 1, p)
                for o in iter_partition_tuples(n, p):
                    if is_exiting(o, c):
                        continue
                    report.checked += 1
                    v = table.option_value(o)
                    if (v ^ 1) not in above:
                        return report.fail(case="non-exiting", n=n, p=p, partition=list(o), value=v)
    return report


def verify_corollary_two(c: int, n_max: int, p_range: Sequence[int]) -> VerdictReport:
    """N(n+1, p+1) == N(n, p) for {1, 2c}."""
    _check_c(c)
    table = get_table([1, 2 * c])
    report = VerdictReport("cor2", {"c": c}, {"n_max": n_max, "p": list(p_range)})
    for p in p_range:
        for n in range(1, n_max + 1):
            report.checked += 1
            left, right = table.nim_set(n + 1, p + 1), table.nim_set(n, p)
            if left != right:
                return report.fail(n=n, p=p, shifted=left.to_list(), base=right.to_list())
    return report


def verify_stick(c: int, n_max: int, p_range: Sequence[int]) -> VerdictReport:
    """v in N(n, p) implies v^1 in N(n+1, p)."""
    _check_c(c)
    table = get_table([1, 2 * c])
    report = VerdictReport("stick", {"c": c}, {"n_max": n_max, "p": list(p_range)})
    for p in p_range:
        for n in range(1, n_max + 1):
            report.checked += 1
            here, nxt = table.nim_set(n, p), table.nim_set(n + 1, p)
            for v in here:
                if (v ^ 1) not in nxt:
                    return report.fail(n=n, p=p, value=v)
    return report


def verify_lemma_seven(c: int, n_max: int, p_range: Sequence[int]) -> VerdictReport:
    """N(n, p+2) is a subset of N(n, p)."""
    _check_c(c)
    table = get_table([1, 2 * c])
    report = VerdictReport("lemma7", {"c": c}, {"n_max": n_max, "p": list(p_range)})
    for p in p_range:
        for n in range(1, n_max + 1):
            report.checked += 1
            small, big = table.nim_set(n, p + 2), table.nim_set(n, p)
            if not small <= big:
                return report.fail(n=n, p=p, extra=sorted(set(small) - set(big)))
    return report


def verify_lemma_three(c: int, k_max: int, p_max: int) -> VerdictReport:
    """N(k+p-1, p, {1,2c}) == N(phi_p(k+p-1), p, {1,6})."""
    _check_c(c, 3)
    source, target = _tables(c)
    report = VerdictReport("lemma3", {"c": c}, {"k_max": k_max, "p_max": p_max})
    for p in range(2, p_max + 1):
        for k in range(1, k_max + 1):
            n = k + p - 1
            m = phi(n, p, c)
            report.checked += 1
            a, b = source.nim_set(n, p), target.nim_set(m, p)
            if a != b:
                return report.fail(k=k, p=p, n=n, phi=m, source=a.to_list(), target=b.to_list())
    return report


def verify_theorem5(c: int, n_max: int) -> VerdictReport:
    """G_{1,2c}(n) == G_{1,6}(phi_1(n))."""
    _check_c(c, 3)
    source, target = _tables(c)
    report = VerdictReport("theorem5", {"c": c}, {"n_max": n_max})
    for n in range(1, n_max + 1):
        report.checked += 1
        m = phi(n, 1, c)
        if source.grundy(n) != target.grundy(m):
            return report.fail(n=n, phi=m, source=source.grundy(n), target=target.grundy(m))
    return report


def claim_table(q_max: int = 5) -> list[dict]:
    """N(6q+3, 2, {1,6}) beside N(6q+5, 2, {1,6}) for q = 0..q_max."""
    table = get_table([1, 6])
    return [
        {"q": q, "N(6q+3)": table.nim_set(6 * q + 3, 2).to_list(), "N(6q+5)": table.nim_set(6 * q + 5, 2).to_list()}
        for q in range(q_max + 1)
    ]


def verify_claim_table() -> VerdictReport:
    """N(6q+5,2) equals N(6q+3,2) for q in {0,1,2,3,5} and N(6q+3,2) ∪ {1} at q = 4."""
    report = VerdictReport("claim_table", {"cutset": [1, 6]}, {"q": [0, 5]})
    for row in claim_table(5):
        report.checked += 1
        low, high = set(row["N(6q+3)"]), set(row["N(6q+5)"])
        expected = low | {1} if row["q"] == 4 else low
        if high != expected:
            return report.fail(**row)
    return report


def verify_map_lemma(c: int, bound: int) -> VerdictReport:
    """Parity, in/out bijection, additivity and the floor/ceiling sandwich for phi."""
    _check_c(c, 3)
    report = VerdictReport("maplemma", {"c": c}, {"bound": bound})

    # (a) parity
    for p in range(1, 5):
        for n in range(p, bound + 1):
            report.checked += 1
            if phi(n, p, c) % 2 != n % 2:
                return report.fail(part="a", n=n, p=p)

    # (b) bijections on innumbers and outnumbers
    top = phi(bound, 1, c)
    for kind, pred in (("innumber", is_innumber), ("outnumber", is_outnumber)):
        report.checked += 1
        src = [n for n in range(1, bound + 1) if pred(n, c)]
        images = [phi(n, 1, c) for n in src]
        expected = [m for m in range(1, top + 1) if pred(m, 3)]
        if len(set(images)) != len(images) or sorted(images) != expected:
            return report.fail(part="b", kind=kind, images=sorted(images), expected=expected)

    # (c) additivity over all-in or all-out tuples of 2..4 parts
    for kind, pred in (("innumber", is_innumber), ("outnumber", is_outnumber)):
        pool = [n for n in range(1, bound + 1) if pred(n, c)]
        for p in range(2, 5):
            for hs in combinations_with_replacement(pool, p):
                if p == 4 and all(h % (2 * c) == 2 for h in hs):
                    continue
                report.checked += 1
                if sum(phi(h, 1, c) for h in hs) != phi(sum(hs), p, c):
                    return report.fail(part="c", kind=kind, parts=list(hs))

    # (d) floor/ceiling sandwich for p <= 3
    for p in range(1, 4):
        for n in range(p, bound + 1):
            for o in iter_partition_tuples(n, p):
                report.checked += 1
                a = floor_partition(o, c).total
                b = ceil_partition(o, c).total
                if not phi(a, p, c) <= phi(n, p, c) <= phi(b, p, c):
                    return report.fail(part="d", partition=list(o), floor_total=a, ceil_total=b)
    return report


def verify_lemma_one(c: int, n_max: int, p_range: Sequence[int]) -> VerdictReport:
    """Each exiting partition value is also reached by a non-exiting partition of the same n and p."""
    return _verify_replacement("lemma1", c, n_max, p_range, is_exiting, lambda o: True)


def verify_entering_lemma(c: int, n_max: int, p_range: Sequence[int]) -> VerdictReport:
    """Each entering partition with no part 1 is matched by a non-entering partition."""
    return _verify_replacement("entering", c, n_max, p_range, is_entering, lambda o: o[0] > 1)


def _verify_replacement(lemma_id, c, n_max, p_range, special, applies) -> VerdictReport:
    _check_c(c)
    table = get_table([1, 2 * c])
    report = VerdictReport(lemma_id, {"c": c}, {"n_max": n_max, "p": list(p_range)})
    for p in p_range:
        for n in range(p, n_max + 1):
            others = set()
            targets = []
            for o in iter_partition_tuples(n, p):
                v = table.option_value(o)
                if special(o, c):
                    if applies(o):
                        targets.append((o, v))
                else:
                    others.add(v)
            for o, v in targets:
                report.checked += 1
                if v not in others:
                    return report.fail(n=n, p=p, partition=list(o), value=v)
    return report


def verify_height(c: int, part_max: int = 30, p_max: int = 3) -> VerdictReport:
    """Partitions with equal floors have equal values, or values differing by ⊕1 when totals differ in parity."""
    _check_c(c)
    table = get_table([1, 2 * c])
    report = VerdictReport("height", {"c": c}, {"part_max": part_max, "p_max": p_max})
    for p in range(1, p_max + 1):
        classes: dict[tuple[int, ...], tuple[tuple[int, ...], int]] = {}
        for hs in combinations_with_replacement(range(1, part_max + 1), p):
            key = floor_partition(hs, c).parts
            v = table.option_value(hs)
            rep = classes.setdefault(key, (hs, v))
            report.checked += 1
            expected = rep[1] ^ ((sum(hs) - sum(rep[0])) % 2)
            if v != expected:
                return report.fail(p=p, partition=list(hs), value=v, reference=list(rep[0]), reference_value=rep[1])
    return report


def verify_special_clause(c: int, q_max: int = 1) -> VerdictReport:
    """G(12cq_i + 4c+2, three times) == G(12cq_1+4c+1, 12cq_2+4c+1, 12cq_3+4c+2)."""
    _check_c(c)
    table = get_table([1, 2 * c])
    report = VerdictReport("special", {"c": c}, {"q_max": q_max})
    P = 12 * c
    for qs in combinations_with_replacement(range(q_max + 1), 3):
        for last in range(3):
            # the unlowered part may be any of the three
            q = list(qs)
            q3 = q.pop(last)
            left = [P * x + 4 * c + 2 for x in qs]
            right = [P * q[0] + 4 * c + 1, P * q[1] + 4 * c + 1, P * q3 + 4 * c + 2]
            report.checked += 1
            if table.option_value(left) != table.option_value(right):
                return report.fail(q=list(qs), left=left, right=right)
    return report
