"""Sequence notions over a finite group and their exact verifiers.

All sequences are lists of element indices.  The consecutive-quotient
transform maps a sequence g to the sequence with q[0] = identity and
q[i] = g[i-1]^-1 * g[i]; a double sequencing (D-sequence) of a group of
order n is a length-2n sequence starting at the identity in which every
element appears exactly twice in both the sequence and its quotients.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .groups import FiniteGroup

__all__ = [
    "DSequenceCertificate",
    "quotient_sequence",
    "partial_products",
    "verify_d_sequence",
    "verify_uniform_multiplicity",
    "verify_sequencing",
    "is_directed_terrace",
    "verify_r_sequencing",
    "verify_terrace",
    "terrace_to_d_sequence",
    "double_latin_square",
    "verify_double_latin_square",
]


@dataclass(frozen=True)
class DSequenceCertificate:
    """Outcome of a D-sequence check; failure names the first violation."""

    valid: bool
    cyclic: bool
    failure: str | None = None

    def __bool__(self) -> bool:
        return self.valid


def quotient_sequence(group: FiniteGroup, items: Sequence[int]) -> list[int]:
    """Consecutive quotients: q[0] = 0 and q[i] = items[i-1]^-1 * items[i]."""
    if not items:
        raise ValueError("empty sequence has no quotient sequence")
    out = [0]
    for prev, cur in zip(items, items[1:]):
        out.append(group.mul(group.inv(prev), cur))
    return out


def partial_products(group: FiniteGroup, increments: Sequence[int]) -> list[int]:
    """Running products of an increment sequence; inverse of quotient_sequence."""
    if not increments:
        raise ValueError("empty sequence has no partial products")
    out = [increments[0]]
    for x in increments[1:]:
        out.append(group.mul(out[-1], x))
    return out


def verify_d_sequence(group: FiniteGroup, items: Sequence[int]) -> DSequenceCertificate:
    """Check the D-sequence conditions; cyclic means it also ends at identity."""
    n = group.order
    if len(items) != 2 * n:
        return DSequenceCertificate(False, False, f"length {len(items)}, expected {2 * n}")
    if items[0] != 0:
        return DSequenceCertificate(False, False, f"starts at {items[0]}, not identity")
    counts = Counter(items)
    for x in group.elements():
        if counts[x] != 2:
            return DSequenceCertificate(
                False, False, f"element {x} appears {counts[x]} times in sequence"
            )
    qcounts = Counter(quotient_sequence(group, items))
    for x in group.elements():
        if qcounts[x] != 2:
            return DSequenceCertificate(
                False, False, f"element {x} appears {qcounts[x]} times in quotients"
            )
    return DSequenceCertificate(True, items[-1] == 0)


def verify_uniform_multiplicity(group: FiniteGroup, items: Sequence[int], k: int) -> bool:
    """True iff items has length k*n, starts at identity, and every element
    appears exactly k times in both the sequence and its quotients."""
    n = group.order
    if len(items) != k * n or items[0] != 0:
        return False
    if any(Counter(items)[x] != k for x in group.elements()):
        return False
    qcounts = Counter(quotient_sequence(group, items))
    return all(qcounts[x] == k for x in group.elements())


def verify_sequencing(group: FiniteGroup, increments: Sequence[int]) -> bool:
    """Check a sequencing in increment form: the increments are a permutation
    of the group starting at the identity and so are their running products."""
    n = group.order
    if len(increments) != n or increments[0] != 0:
        return False
    if set(increments) != set(group.elements()):
        return False
    return set(partial_products(group, increments)) == set(group.elements())


def is_directed_terrace(group: FiniteGroup, items: Sequence[int]) -> bool:
    """Partial-product form of a sequencing: items and its quotients are both
    permutations of the group, with items[0] the identity."""
    n = group.order
    if len(items) != n or items[0] != 0:
        return False
    if set(items) != set(group.elements()):
        return False
    return set(quotient_sequence(group, items)) == set(group.elements())


def verify_r_sequencing(group: FiniteGroup, items: Sequence[int]) -> bool:
    """Check an R-sequence: a permutation of the non-identity elements whose
    cyclic consecutive quotients (wrap included) are again such a permutation."""
    n = group.order
    if len(items) != n - 1:
        return False
    if n == 1:
        return True
    if set(items) != set(range(1, n)):
        return False
    quots = [group.mul(group.inv(a), b) for a, b in zip(items, items[1:])]
    quots.append(group.mul(group.inv(items[-1]), items[0]))
    return set(quots) == set(range(1, n))


def verify_terrace(group: FiniteGroup, items: Sequence[int]) -> bool:
    """Check a terrace: a permutation of the group starting at the identity
    whose quotients hit each involution-or-identity once and each inverse-pair
    class of non-involutions twice."""
    n = group.order
    if len(items) != n or items[0] != 0:
        return False
    if set(items) != set(group.elements()):
        return False
    qcounts = Counter(quotient_sequence(group, items))
    seen: set[int] = set()
    for x in group.elements():
        if x in seen:
            continue
        xi = group.inv(x)
        if xi == x:
            if qcounts[x] != 1:
                return False
            seen.add(x)
        else:
            if qcounts[x] + qcounts[xi] != 2:
                return False
            seen.update((x, xi))
    return True


def terrace_to_d_sequence(group: FiniteGroup, items: Sequence[int]) -> list[int]:
    """Palindromic doubling of a terrace; always a cyclic D-sequence."""
    if not verify_terrace(group, items):
        raise ValueError("input is not a terrace")
    return list(items) + list(reversed(items))


def double_latin_square(group: FiniteGroup, items: Sequence[int]) -> list[list[int]]:
    """Matrix cells[i][j] = items[i]^-1 * items[(j+1) mod 2n] from a cyclic
    D-sequence; each row, column, and the main diagonal holds every element
    exactly twice."""
    cert = verify_d_sequence(group, items)
    if not (cert.valid and cert.cyclic):
        raise ValueError(f"input is not a cyclic D-sequence: {cert.failure or 'not cyclic'}")
    size = len(items)
    cells = []
    for i in range(size):
        vi = group.inv(items[i])
        cells.append([group.mul(vi, items[(j + 1) % size]) for j in range(size)])
    return cells


def verify_double_latin_square(group: FiniteGroup, cells: Sequence[Sequence[int]]) -> bool:
    """Every row, every column, and the main diagonal contain each element twice."""
    size = len(cells)
    if size != 2 * group.order:
        return False
    want = {x: 2 for x in group.elements()}
    for row in cells:
        if len(row) != size or dict(Counter(row)) != want:
            return False
    for j in range(size):
        if dict(Counter(row[j] for row in cells)) != want:
            return False
    return dict(Counter(cells[i][i] for i in range(size))) == want
