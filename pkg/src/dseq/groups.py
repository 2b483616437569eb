"""Finite groups as Cayley tables, with dense 0-based element indices.

The identity element is always index 0.  Direct products encode elements in
mixed radix with the first factor as the most significant digit, so element
indices are stable across runs and serializations.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "GroupConstructionError",
    "FiniteGroup",
    "SpecAtom",
    "GroupSpec",
    "Classification",
    "parse_group_spec",
    "build_group",
    "cyclic_group",
    "dihedral_group",
    "quaternion_group",
    "frobenius21_group",
    "direct_product",
    "table_from_file",
    "classify",
    "primary_decomposition",
]

# Full O(n^3) associativity checking is eager up to this order, sampled above.
ASSOCIATIVITY_EAGER_LIMIT = 128
_ASSOCIATIVITY_SAMPLES = 20000


class GroupConstructionError(ValueError):
    """A multiplication table violates a group axiom."""


class FiniteGroup:
    """Immutable finite group given by its multiplication table.

    ``table[a][b]`` is the index of the product a*b; index 0 is the identity.
    """

    __slots__ = ("name", "order", "table", "inverse", "_abelian")

    def __init__(self, name: str, table: Sequence[Sequence[int]], *, check: bool = True):
        self.name = str(name)
        self.order = len(table)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        if check:
            self._check_axioms()
        self.inverse = self._build_inverse()
        self._abelian: bool | None = None

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    @property
    def is_abelian(self) -> bool:
        if self._abelian is None:
            t = self.table
            self._abelian = all(
                t[a][b] == t[b][a] for a in range(self.order) for b in range(a)
            )
        return self._abelian

    def involutions(self) -> list[int]:
        """Elements x != 0 with x*x = identity."""
        return [x for x in range(1, self.order) if self.table[x][x] == 0]

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def _check_axioms(self) -> None:
        n = self.order
        if n == 0:
            raise GroupConstructionError("empty multiplication table")
        for i, row in enumerate(self.table):
            if len(row) != n:
                raise GroupConstructionError(
                    f"table row {i} has length {len(row)}, expected {n}"
                )
            for x in row:
                if not 0 <= x < n:
                    raise GroupConstructionError(f"table entry {x} out of range [0,{n-1}]")
        for j in range(n):
            if self.table[0][j] != j:
                raise GroupConstructionError(
                    f"identity axiom violated: 0*{j} = {self.table[0][j]}"
                )
        for i in range(n):
            if self.table[i][0] != i:
                raise GroupConstructionError(
                    f"identity axiom violated: {i}*0 = {self.table[i][0]}"
                )
        full = frozenset(range(n))
        for i in range(n):
            if set(self.table[i]) != full:
                raise GroupConstructionError(f"latin square violated in row {i}")
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != full:
                raise GroupConstructionError(f"latin square violated in column {j}")
        t = self.table
        if n <= ASSOCIATIVITY_EAGER_LIMIT:
            for a in range(n):
                ta = t[a]
                for b in range(n):
                    tab = t[ta[b]]
                    tb = t[b]
                    for c in range(n):
                        if tab[c] != ta[tb[c]]:
                            raise GroupConstructionError(
                                f"associativity violated at ({a},{b},{c})"
                            )
        else:
            rng = random.Random(0)
            for _ in range(_ASSOCIATIVITY_SAMPLES):
                a = rng.randrange(n)
                b = rng.randrange(n)
                c = rng.randrange(n)
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    raise GroupConstructionError(f"associativity violated at ({a},{b},{c})")

    def _build_inverse(self) -> tuple[int, ...]:
        inv = [0] * self.order
        for a in range(self.order):
            row = self.table[a]
            for x in range(self.order):
                if row[x] == 0:
                    inv[a] = x
                    break
            else:
                raise GroupConstructionError(f"no inverse for element {a}")
        return tuple(inv)


def cyclic_group(m: int) -> FiniteGroup:
    """Z_m with addition modulo m."""
    if m < 1:
        raise GroupConstructionError(f"cyclic order must be >= 1, got {m}")
    table = [[(i + j) % m for j in range(m)] for i in range(m)]
    return FiniteGroup(f"Z{m}", table, check=False)


def dihedral_group(order: int) -> FiniteGroup:
    """Dihedral group of the given (even, >= 6) order.

    Indices 0..m-1 are rotations r^i, indices m..2m-1 are reflections s*r^i,
    where order = 2m and r^m = s^2 = 1, s*r*s = r^-1.
    """
    if order < 6 or order % 2 != 0:
        raise GroupConstructionError(f"dihedral order must be even and >= 6, got {order}")
    m = order // 2
    table = [[0] * order for _ in range(order)]
    for i in range(m):
        for j in range(m):
            table[i][j] = (i + j) % m                  # r^i * r^j
            table[i][m + j] = m + (j - i) % m          # r^i * s r^j = s r^(j-i)
            table[m + i][j] = m + (i + j) % m          # s r^i * r^j
            table[m + i][m + j] = (j - i) % m          # s r^i * s r^j = r^(j-i)
    return FiniteGroup(f"D{order}", table, check=False)


def quaternion_group() -> FiniteGroup:
    """Q8 = {1, -1, i, -i, j, -j, k, -k}, index 2a + s for axis a, sign bit s."""
    axis_mul = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }
    table = [[0] * 8 for _ in range(8)]
    for x in range(8):
        for y in range(8):
            ax, sx = x >> 1, x & 1
            ay, sy = y >> 1, y & 1
            az, extra = axis_mul[(ax, ay)]
            table[x][y] = az * 2 + ((sx + sy + extra) & 1)
    return FiniteGroup("Q8", table)


def frobenius21_group() -> FiniteGroup:
    """Z7 : Z3, the smallest odd non-abelian group, with action x -> 2x mod 7.

    Element (a, b) with a in Z7, b in Z3 has index 3a + b; the product is
    (a1, b1)*(a2, b2) = (a1 + 2^b1 * a2 mod 7, b1 + b2 mod 3).
    """
    table = [[0] * 21 for _ in range(21)]
    for a1 in range(7):
        for b1 in range(3):
            for a2 in range(7):
                for b2 in range(3):
                    a = (a1 + pow(2, b1, 7) * a2) % 7
                    b = (b1 + b2) % 3
                    table[a1 * 3 + b1][a2 * 3 + b2] = a * 3 + b
    return FiniteGroup("F21", table)


def direct_product(groups: Sequence[FiniteGroup], name: str | None = None) -> FiniteGroup:
    """Direct product; the first factor is the most significant index digit."""
    if not groups:
        return cyclic_group(1)
    if len(groups) == 1:
        g = groups[0]
        return FiniteGroup(name or g.name, g.table, check=False)
    orders = [g.order for g in groups]
    n = 1
    for m in orders:
        n *= m

    def decode(x: int) -> list[int]:
        parts = []
        for m in reversed(orders):
            x, r = divmod(x, m)
            parts.append(r)
        parts.reverse()
        return parts

    def encode(parts: Iterable[int]) -> int:
        x = 0
        for m, p in zip(orders, parts):
            x = x * m + p
        return x

    coords = [decode(x) for x in range(n)]
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        cx = coords[x]
        for y in range(n):
            cy = coords[y]
            table[x][y] = encode(g.mul(a, b) for g, a, b in zip(groups, cx, cy))
    return FiniteGroup(name or "x".join(g.name for g in groups), table, check=False)


def table_from_file(path: str | Path) -> FiniteGroup:
    """Read a Cayley table file: first line n, then n rows of n indices."""
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise GroupConstructionError(f"{path}: empty table file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise GroupConstructionError(f"{path}: first line must be the order") from exc
    if len(lines) != n + 1:
        raise GroupConstructionError(f"{path}: expected {n} table rows, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        try:
            rows.append([int(tok) for tok in ln.split()])
        except ValueError as exc:
            raise GroupConstructionError(f"{path}: non-integer table entry") from exc
    return FiniteGroup(Path(path).stem, rows)


# --- group specs ------------------------------------------------------------

@dataclass(frozen=True)
class SpecAtom:
    """One factor of a group spec: kind Z/D/Q8/F21/file plus its parameter."""

    kind: str
    param: int | str | None = None

    def __str__(self) -> str:
        if self.kind == "Z":
            return f"Z{self.param}"
        if self.kind == "D":
            return f"D{self.param}"
        if self.kind == "file":
            return f"file:{self.param}"
        return self.kind


@dataclass(frozen=True)
class GroupSpec:
    """Ordered list of atoms whose direct product is the group."""

    factors: tuple[SpecAtom, ...]

    def __str__(self) -> str:
        return "x".join(str(a) for a in self.factors) or "Z1"


_ATOM_RE = re.compile(r"^(?:Z(\d+)|D(\d+)|Q8|F21|file:(.+))$", re.IGNORECASE)


def parse_group_spec(text: str) -> GroupSpec:
    """Parse a spec string like ``D10xZ4xZ9`` into a GroupSpec."""
    s = text.strip()
    if not s:
        raise ValueError("empty group spec")
    atoms = []
    for part in s.split("x"):
        m = _ATOM_RE.match(part.strip())
        if not m:
            raise ValueError(f"unrecognized group spec atom {part!r}")
        if m.group(1) is not None:
            k = int(m.group(1))
            if k < 1:
                raise ValueError(f"cyclic order must be >= 1 in {part!r}")
            atoms.append(SpecAtom("Z", k))
        elif m.group(2) is not None:
            k = int(m.group(2))
            if k < 6 or k % 2 != 0:
                raise ValueError(f"dihedral order must be even and >= 6 in {part!r}")
            atoms.append(SpecAtom("D", k))
        elif m.group(3) is not None:
            atoms.append(SpecAtom("file", m.group(3)))
        elif part.strip().upper() == "Q8":
            atoms.append(SpecAtom("Q8"))
        else:
            atoms.append(SpecAtom("F21"))
    return GroupSpec(tuple(atoms))


def _build_atom(atom: SpecAtom) -> FiniteGroup:
    if atom.kind == "Z":
        return cyclic_group(int(atom.param))
    if atom.kind == "D":
        return dihedral_group(int(atom.param))
    if atom.kind == "Q8":
        return quaternion_group()
    if atom.kind == "F21":
        return frobenius21_group()
    if atom.kind == "file":
        return table_from_file(str(atom.param))
    raise ValueError(f"unknown spec atom kind {atom.kind!r}")


def build_group(spec: GroupSpec | str) -> FiniteGroup:
    """Build the direct product of the spec's atoms, in order."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    groups = [_build_atom(a) for a in spec.factors]
    if len(groups) == 1:
        return groups[0]
    return direct_product(groups, name=str(spec))


# --- classification ---------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    """Structural flags used by the construction dispatchers."""

    order: int
    abelian: bool
    odd: bool
    binary: bool


def classify(group: FiniteGroup) -> Classification:
    """Classify a group: abelian, odd order, binary (unique involution)."""
    return Classification(
        order=group.order,
        abelian=group.is_abelian,
        odd=group.order % 2 == 1,
        binary=len(group.involutions()) == 1,
    )


def primary_decomposition(factors: Sequence[int]) -> tuple[int, list[int]]:
    """Split cyclic orders into prime-power parts; count Z2 parts separately.

    Returns (k, rest) where k is the number of Z2 parts and rest holds the
    remaining prime-power orders (odd prime powers and 2^l with l >= 2),
    sorted ascending.
    """
    k = 0
    rest: list[int] = []
    for m in factors:
        if m < 1:
            raise ValueError(f"cyclic order must be >= 1, got {m}")
        for q in _prime_power_parts(m):
            if q == 2:
                k += 1
            else:
                rest.append(q)
    return k, sorted(rest)


def _prime_power_parts(m: int) -> list[int]:
    parts = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            q = 1
            while m % d == 0:
                q *= d
                m //= d
            parts.append(q)
        d += 1
    if m > 1:
        parts.append(m)
    return parts
