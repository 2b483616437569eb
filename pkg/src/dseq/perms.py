"""Permutations of Z_k and the X, B, D triple used by power-of-two lifts.

Composition order matches product notation with the rightmost factor acting
first: compose(P, Q) applies Q and then P.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import InternalVerificationError

__all__ = [
    "Permutation",
    "XBDTriple",
    "perp",
    "make_xbd",
]


@dataclass(frozen=True)
class Permutation:
    """Bijection on {0, ..., modulus-1}, stored as its image list."""

    modulus: int
    image: tuple[int, ...]

    @staticmethod
    def from_images(images: Sequence[int]) -> Permutation:
        k = len(images)
        norm = tuple(x % k for x in images)
        if len(set(norm)) != k:
            raise ValueError("image list is not a bijection")
        return Permutation(k, norm)

    @staticmethod
    def identity(k: int) -> Permutation:
        return Permutation(k, tuple(range(k)))

    def __call__(self, x: int) -> int:
        return self.image[x % self.modulus]

    def compose(self, other: Permutation) -> Permutation:
        """self after other: (self.compose(other))(x) = self(other(x))."""
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")
        return Permutation(self.modulus, tuple(self.image[y] for y in other.image))

    def invert(self) -> Permutation:
        inv = [0] * self.modulus
        for x, y in enumerate(self.image):
            inv[y] = x
        return Permutation(self.modulus, tuple(inv))

    def is_single_cycle(self) -> bool:
        """True iff the permutation is one cycle through all points."""
        seen = 1
        x = self.image[0]
        while x != 0:
            x = self.image[x]
            seen += 1
        return seen == self.modulus

    def displacements(self) -> list[int]:
        """The list image[i] - i mod k."""
        return [(y - i) % self.modulus for i, y in enumerate(self.image)]


def perp(r: Permutation, s: Permutation) -> bool:
    """True iff the displacement lists of r and s jointly cover every residue
    exactly twice."""
    if r.modulus != s.modulus:
        raise ValueError("modulus mismatch")
    counts = Counter(r.displacements())
    counts.update(s.displacements())
    return all(counts[v] == 2 for v in range(r.modulus))


@dataclass(frozen=True)
class XBDTriple:
    """Permutations of Z_{2^n} with X perp X^-1, B perp D, and both DB and
    D X^-1 B X single cycles."""

    n: int
    x: Permutation
    b: Permutation
    d: Permutation

    @property
    def modulus(self) -> int:
        return 1 << self.n


def make_xbd(n: int) -> XBDTriple:
    """Build the X, B, D triple on Z_{2^n} and verify its defining properties."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    k = 1 << n
    if n == 2:
        x = Permutation.from_images([1, 3, 2, 0])
        b = Permutation.from_images([1 - i for i in range(4)])
        d = Permutation.from_images([-i for i in range(4)])
    else:
        b = Permutation.from_images([(1 << (n - 2)) - 1 - i for i in range(k)])
        d = Permutation.from_images([-i for i in range(k)])
        images = [0] * k
        q = 1 << (n - 3)
        for i in range(k // 2):
            if i < q:
                images[i] = (2 * i + 1) % k
            elif i < 3 * q:
                images[i] = (2 * i + (1 << (n - 2)) + 1) % k
            else:
                images[i] = (2 * i + (1 << (n - 1)) + 1) % k
        # The reflective case refers back to values tabulated above.
        for i in range(k // 2, k):
            images[i] = (-images[k - i - 1] + (1 << (n - 2)) - 1) % k
        x = Permutation.from_images(images)
    triple = XBDTriple(n, x, b, d)
    _verify_triple(triple)
    return triple


def _verify_triple(triple: XBDTriple) -> None:
    x, b, d = triple.x, triple.b, triple.d
    if not perp(x, x.invert()):
        raise InternalVerificationError(f"X not perp to X^-1 at n={triple.n}")
    if not perp(b, d):
        raise InternalVerificationError(f"B not perp to D at n={triple.n}")
    if not d.compose(b).is_single_cycle():
        raise InternalVerificationError(f"DB is not a single cycle at n={triple.n}")
    conj = d.compose(x.invert()).compose(b).compose(x)
    if not conj.is_single_cycle():
        raise InternalVerificationError(f"DX^-1BX is not a single cycle at n={triple.n}")
    if triple.n > 2:
        k = triple.modulus
        if any(conj(i) != (i + 1) % k for i in range(k)):
            raise InternalVerificationError(f"DX^-1BX is not i -> i+1 at n={triple.n}")
