"""Exact backtracking searchers for sequencings, R-sequences, D-sequences,
and terraces.

Phase 1 tries candidates in increasing element index with no symmetry
breaking, so small instances are fully reproducible and an exhausted search
is a proof of nonexistence.  When a node budget is given and phase 1 hits
its cap without an answer, deterministic seeded-restart passes explore the
same space in shuffled candidate orders until the budget runs out; restarts
can find witnesses but never prove absence, so "none" is only ever reported
by a completed exhaustive pass.

Two exact abelian facts are used as sound pruning: the last partial product
of a sequencing equals the sum of all group elements (so groups where that
sum is zero have no sequencing, and R-sequences require it to be zero), and
every D-sequence of an abelian group necessarily ends at the identity.
Budgets are node counts, never wall-clock.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .errors import InternalVerificationError
from .groups import FiniteGroup
from . import sequences as seq

__all__ = [
    "SearchResult",
    "find_sequencing",
    "find_r_sequencing",
    "find_d_sequence",
    "find_terrace",
    "search_all",
]

FOUND = "found"
NONE = "none"
BUDGET = "budget"

PHASE1_CAP = 120_000
RESTART_CAP = 60_000


@dataclass
class SearchResult:
    """Search outcome: status is one of found / none / budget."""

    status: str
    items: list[int] | None
    nodes: int
    solutions: list[list[int]] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status == FOUND


class _CapHit(Exception):
    pass


class _Counter:
    __slots__ = ("nodes", "cap")

    def __init__(self, cap: int | None):
        self.nodes = 0
        self.cap = cap

    def spend(self) -> None:
        self.nodes += 1
        if self.cap is not None and self.nodes > self.cap:
            raise _CapHit


def _abelian_element_sum(group: FiniteGroup) -> int:
    total = 0
    for x in range(group.order):
        total = group.mul(total, x)
    return total


def _drive(
    group: FiniteGroup,
    pass_fn: Callable[[FiniteGroup, _Counter, random.Random | None, int], list[list[int]]],
    verifier: Callable[[list[int]], bool],
    budget: int | None,
    max_solutions: int,
    salt: int,
) -> SearchResult:
    """Run phase 1 and, with a finite budget, seeded restart passes."""
    phase1_cap = None if budget is None else min(budget, PHASE1_CAP)
    counter = _Counter(phase1_cap)
    total = 0
    try:
        solutions = pass_fn(group, counter, None, max_solutions)
        total += counter.nodes
        result = SearchResult(FOUND if solutions else NONE, None, total, solutions)
    except _CapHit:
        total += counter.nodes
        result = SearchResult(BUDGET, None, total)
        attempt = 0
        while budget is not None and total < budget:
            cap = min(RESTART_CAP, budget - total)
            counter = _Counter(cap)
            rng = random.Random(salt * 1_000_003 + attempt)
            try:
                solutions = pass_fn(group, counter, rng, max_solutions)
            except _CapHit:
                solutions = []
            total += counter.nodes
            attempt += 1
            if solutions:
                result = SearchResult(FOUND, None, total, solutions)
                break
    if result.solutions:
        result.items = result.solutions[0]
        for sol in result.solutions:
            if not verifier(sol):
                raise InternalVerificationError(f"searcher returned a bad witness: {sol}")
    return result


def _order(candidates: list[int], rng: random.Random | None) -> list[int]:
    if rng is None:
        return candidates
    rng.shuffle(candidates)
    return candidates


def find_sequencing(
    group: FiniteGroup, budget: int | None = None, max_solutions: int = 1
) -> SearchResult:
    """Search for a sequencing in increment form (first increment identity,
    all increments distinct, all running products distinct)."""
    return _drive(
        group,
        _sequencing_pass,
        lambda s: seq.verify_sequencing(group, s),
        budget,
        max_solutions,
        salt=1,
    )


def _sequencing_pass(
    group: FiniteGroup, counter: _Counter, rng: random.Random | None, max_solutions: int
) -> list[list[int]]:
    n = group.order
    if n == 1:
        return [[0]]
    table = group.table
    final = _abelian_element_sum(group) if group.is_abelian else None
    if final == 0:
        return []  # abelian sequencings must end at the element sum
    solutions: list[list[int]] = []
    used = [False] * n
    used[0] = True
    seen_partial = [False] * n
    seen_partial[0] = True
    prefix = [0]

    def extend(current: int) -> bool:
        depth = len(prefix)
        if depth == n:
            solutions.append(list(prefix))
            return len(solutions) >= max_solutions
        for x in _order([y for y in range(1, n) if not used[y]], rng):
            counter.spend()
            p = table[current][x]
            if seen_partial[p]:
                continue
            if final is not None and (p == final) != (depth == n - 1):
                continue
            used[x] = True
            seen_partial[p] = True
            prefix.append(x)
            if extend(p):
                return True
            prefix.pop()
            seen_partial[p] = False
            used[x] = False
        return False

    extend(0)
    return solutions


def find_r_sequencing(
    group: FiniteGroup, budget: int | None = None, max_solutions: int = 1
) -> SearchResult:
    """Search for an R-sequence: a permutation of the non-identity elements
    whose cyclic consecutive quotients are also such a permutation."""
    return _drive(
        group,
        _r_sequencing_pass,
        lambda s: seq.verify_r_sequencing(group, s),
        budget,
        max_solutions,
        salt=2,
    )


def _r_sequencing_pass(
    group: FiniteGroup, counter: _Counter, rng: random.Random | None, max_solutions: int
) -> list[list[int]]:
    n = group.order
    if n == 1:
        return [[]]
    if group.is_abelian and _abelian_element_sum(group) != 0:
        return []  # the cyclic quotients of an R-sequence multiply to identity
    table = group.table
    inv = group.inverse
    solutions: list[list[int]] = []
    used = [False] * n
    quot_used = [False] * n
    prefix: list[int] = []

    def extend() -> bool:
        if len(prefix) == n - 1:
            wrap = table[inv[prefix[-1]]][prefix[0]]
            if wrap != 0 and not quot_used[wrap]:
                solutions.append(list(prefix))
                return len(solutions) >= max_solutions
            return False
        for x in _order([y for y in range(1, n) if not used[y]], rng):
            counter.spend()
            if prefix:
                q = table[inv[prefix[-1]]][x]
                if quot_used[q]:
                    continue
                quot_used[q] = True
            else:
                q = None
            used[x] = True
            prefix.append(x)
            if extend():
                return True
            prefix.pop()
            used[x] = False
            if q is not None:
                quot_used[q] = False
        return False

    extend()
    return solutions


def find_d_sequence(
    group: FiniteGroup,
    require_cyclic: bool = False,
    budget: int | None = None,
    max_solutions: int = 1,
) -> SearchResult:
    """Search for a D-sequence, pruning on per-element multiplicity caps in
    both the sequence and its running quotients."""

    def pass_fn(g: FiniteGroup, counter: _Counter, rng: random.Random | None, ms: int):
        return _d_sequence_pass(g, counter, rng, ms, require_cyclic)

    def verifier(s: list[int]) -> bool:
        cert = seq.verify_d_sequence(group, s)
        return cert.valid and (cert.cyclic or not require_cyclic)

    return _drive(group, pass_fn, verifier, budget, max_solutions, salt=3)


def _d_sequence_pass(
    group: FiniteGroup,
    counter: _Counter,
    rng: random.Random | None,
    max_solutions: int,
    require_cyclic: bool,
) -> list[list[int]]:
    n = group.order
    table = group.table
    inv = group.inverse
    # Abelian D-sequences always end at the identity (quotients telescope).
    force_last_identity = require_cyclic or group.is_abelian
    length = 2 * n
    solutions: list[list[int]] = []
    seq_count = [0] * n
    seq_count[0] = 1
    quot_count = [0] * n
    quot_count[0] = 1
    prefix = [0]

    def extend() -> bool:
        depth = len(prefix)
        if depth == length:
            solutions.append(list(prefix))
            return len(solutions) >= max_solutions
        last = depth == length - 1
        inv_prev = inv[prefix[-1]]
        if force_last_identity:
            candidates = [0] if last else [x for x in range(n) if seq_count[x] < 2 - (x == 0)]
        else:
            candidates = [x for x in range(n) if seq_count[x] < 2]
        for x in _order(candidates, rng):
            if seq_count[x] >= 2:
                continue
            counter.spend()
            q = table[inv_prev][x]
            if quot_count[q] >= 2:
                continue
            seq_count[x] += 1
            quot_count[q] += 1
            prefix.append(x)
            if extend():
                return True
            prefix.pop()
            quot_count[q] -= 1
            seq_count[x] -= 1
        return False

    extend()
    return solutions


def find_terrace(
    group: FiniteGroup, budget: int | None = None, max_solutions: int = 1
) -> SearchResult:
    """Search for a terrace, counting quotients per inverse-pair class."""
    return _drive(
        group,
        _terrace_pass,
        lambda s: seq.verify_terrace(group, s),
        budget,
        max_solutions,
        salt=4,
    )


def _terrace_pass(
    group: FiniteGroup, counter: _Counter, rng: random.Random | None, max_solutions: int
) -> list[list[int]]:
    n = group.order
    table = group.table
    inv = group.inverse
    rep = [min(x, inv[x]) for x in range(n)]
    cap = [1 if inv[x] == x else 2 for x in range(n)]
    solutions: list[list[int]] = []
    used = [False] * n
    used[0] = True
    class_count = [0] * n
    class_count[0] = 1
    prefix = [0]

    def extend() -> bool:
        if len(prefix) == n:
            solutions.append(list(prefix))
            return len(solutions) >= max_solutions
        inv_prev = inv[prefix[-1]]
        for x in _order([y for y in range(1, n) if not used[y]], rng):
            counter.spend()
            q = table[inv_prev][x]
            r = rep[q]
            if class_count[r] >= cap[r]:
                continue
            used[x] = True
            class_count[r] += 1
            prefix.append(x)
            if extend():
                return True
            prefix.pop()
            class_count[r] -= 1
            used[x] = False
        return False

    extend()
    return solutions


_SEARCHERS = {
    "sequencing": find_sequencing,
    "rseq": find_r_sequencing,
    "dseq": find_d_sequence,
    "terrace": find_terrace,
}

ALL_SOLUTIONS_LIMIT = 6


def search_all(group: FiniteGroup, kind: str, **kwargs) -> SearchResult:
    """Enumerate every solution of the given kind (groups of order <= 6)."""
    if group.order > ALL_SOLUTIONS_LIMIT:
        raise ValueError(
            f"--all enumeration is limited to order <= {ALL_SOLUTIONS_LIMIT},"
            f" got {group.order}"
        )
    searcher = _SEARCHERS[kind]
    return searcher(group, max_solutions=10 ** 9, **kwargs)
