"""
Open braid words and their elementary numerics.

A word in the braid group B_n is stored as a sequence of nonzero signed
integers: the letter e > 0 is the generator sigma_e, and e < 0 is the inverse
of sigma_{-e}. The strand count n is always explicit and never inferred from
the letters, so stabilization targets are unambiguous. Words compose left to
right.

Permutations are bijections of {1..n}. The product p * q applies q first and
p second, so that underlying_permutation(a + b) equals
underlying_permutation(a) * underlying_permutation(b); under this convention
the word sigma_1 sigma_2 in B_3 maps to the 3-cycle (1 2 3).
"""

from __future__ import annotations

import dataclasses
from typing import Iterable


@dataclasses.dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..n}, stored as the tuple of images of 1..n."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection of 1..{n}: {self.images}")

    @staticmethod
    def identity(n: int) -> Permutation:
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def transposition(n: int, e: int) -> Permutation:
        """The adjacent transposition swapping e and e+1."""
        if not 1 <= e <= n - 1:
            raise ValueError(f"transposition index {e} out of range for n={n}")
        images = list(range(1, n + 1))
        images[e - 1], images[e] = images[e], images[e - 1]
        return Permutation(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        """Function composition: (p * q)(i) = p(q(i)), q applied first."""
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> Permutation:
        images = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            images[j - 1] = i
        return Permutation(tuple(images))

    def is_identity(self) -> bool:
        return all(self.images[i] == i + 1 for i in range(self.degree))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycle decomposition, fixed points included, each cycle led by its minimum."""
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cycle = [start]
            seen[start - 1] = True
            j = self(start)
            while j != start:
                cycle.append(j)
                seen[j - 1] = True
                j = self(j)
            out.append(tuple(cycle))
        return out

    def cycle_count(self) -> int:
        return len(self.cycles())

    def cycle_string(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())


@dataclasses.dataclass(frozen=True, order=True)
class BraidWord:
    """A word in B_n: explicit strand count plus signed generator letters."""

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError(f"strand count must be >= 1, got {self.strands}")
        for e in self.letters:
            if e == 0 or abs(e) > self.strands - 1:
                raise ValueError(
                    f"letter {e} out of range for {self.strands} strands"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(map(str, self.letters))

    def concat(self, other: BraidWord) -> BraidWord:
        if self.strands != other.strands:
            raise ValueError("strand-count mismatch")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-e for e in reversed(self.letters)))

    def to_json(self) -> dict:
        return {"strands": self.strands, "letters": list(self.letters)}

    @staticmethod
    def from_json(obj: dict) -> BraidWord:
        return BraidWord(int(obj["strands"]), tuple(int(e) for e in obj["letters"]))


def parse_braid(text: str, strands: int) -> BraidWord:
    """Parse whitespace-separated signed generator indices into a word in B_n."""
    letters = []
    for token in text.split():
        try:
            e = int(token)
        except ValueError:
            raise ValueError(f"malformed letter token {token!r}") from None
        letters.append(e)
    return BraidWord(strands, tuple(letters))


def writhe(beta: BraidWord) -> int:
    """Exponent sum of the word; a homomorphism B_n -> Z."""
    return sum(1 if e > 0 else -1 for e in beta.letters)


def underlying_permutation(beta: BraidWord) -> Permutation:
    """Image of the word under B_n -> S_n; each letter acts as (e, e+1)."""
    perm = Permutation.identity(beta.strands)
    for e in beta.letters:
        perm = perm * Permutation.transposition(beta.strands, abs(e))
    return perm


def component_count(beta: BraidWord) -> int:
    """Number of link components of the closure: cycles of the permutation."""
    return underlying_permutation(beta).cycle_count()


def mirror(beta: BraidWord) -> BraidWord:
    """Flip every crossing; the closure becomes the mirror link."""
    return BraidWord(beta.strands, tuple(-e for e in beta.letters))


def free_reduce(beta: BraidWord) -> BraidWord:
    """Cancel adjacent inverse pairs until none remain."""
    stack: list[int] = []
    for e in beta.letters:
        if stack and stack[-1] == -e:
            stack.pop()
        else:
            stack.append(e)
    return BraidWord(beta.strands, tuple(stack))


def concat_all(strands: int, parts: Iterable[BraidWord]) -> BraidWord:
    letters: list[int] = []
    for part in parts:
        if part.strands != strands:
            raise ValueError("strand-count mismatch")
        letters.extend(part.letters)
    return BraidWord(strands, tuple(letters))


EMPTY_B1 = BraidWord(1, ())
