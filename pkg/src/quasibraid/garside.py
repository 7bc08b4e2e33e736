"""
Garside left-normal form for the classical braid group structure.

Every braid in B_n factors uniquely as Delta^p A_1 ... A_l where Delta is the
positive half twist, each A_i is a permutation braid other than the identity
or Delta, and consecutive factors are left-weighted: S(A_{i+1}) is contained
in F(A_i). Permutation braids are stored as their permutations; with pi the
tuple of images of a strand entering at the top,

    S(pi) = {e : pi(e) > pi(e+1)}          (sigma_e left-divides)
    F(pi) = {e : pi^-1(e+1) < pi^-1(e)}    (sigma_e right-divides)

Internally words multiply in strand-flow order (first letter acts first);
that product is written _then(p, q) to keep it distinct from the
function-composition product on Permutation. The hot path works on raw image
tuples; Permutation objects are built only for the returned CanonicalForm.

Structural equality of CanonicalForm decides the word problem, which is all
the equality machinery the rest of the package needs: conjugacy is only ever
certified by explicit witness words, never decided blindly.
"""

from __future__ import annotations

import dataclasses
import functools

from .words import BraidWord, Permutation


@functools.lru_cache(maxsize=None)
def _tables(n: int):
    """Per-strand-count constants: identity, half twist, transpositions."""
    identity = tuple(range(1, n + 1))
    delta = tuple(range(n, 0, -1))
    transpositions = [None]
    for e in range(1, n):
        images = list(identity)
        images[e - 1], images[e] = images[e], images[e - 1]
        transpositions.append(tuple(images))
    return identity, delta, tuple(transpositions)


def _then(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Strand-flow product on image tuples: apply p first, then q."""
    return tuple(q[i - 1] for i in p)


def _tau(p: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Conjugation by Delta: sigma_e maps to sigma_{n-e}."""
    return tuple(n + 1 - p[n - i] for i in range(1, n + 1))


def _starting_set(p: tuple[int, ...]) -> set[int]:
    return {e for e in range(1, len(p)) if p[e - 1] > p[e]}


def _finishing_set(p: tuple[int, ...]) -> set[int]:
    n = len(p)
    pos = [0] * n
    for i, v in enumerate(p):
        pos[v - 1] = i
    return {e for e in range(1, n) if pos[e] < pos[e - 1]}


def _strip_word(p: tuple[int, ...]) -> tuple[int, ...]:
    """A reduced positive word for the permutation braid A_p (min descent first)."""
    n = len(p)
    _, _, trans = _tables(n)
    identity = _tables(n)[0]
    letters = []
    while p != identity:
        e = min(_starting_set(p))
        letters.append(e)
        p = _then(trans[e], p)
    return tuple(letters)


@dataclasses.dataclass(frozen=True, order=True)
class CanonicalForm:
    """Left normal form Delta^infimum A_1 ... A_l on a fixed strand count."""

    strands: int
    infimum: int
    factors: tuple[Permutation, ...]

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    @property
    def supremum(self) -> int:
        return self.infimum + len(self.factors)

    def is_trivial(self) -> bool:
        return self.infimum == 0 and not self.factors


def _normalize_factors(
    n: int, factors: list[tuple[int, ...]]
) -> tuple[int, list[tuple[int, ...]]]:
    """Left-weight a factor list, absorbing Delta factors into the power."""
    identity, delta, trans = _tables(n)
    power = 0
    factors = [f for f in factors if f != identity]
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(factors):
            if factors[i] == delta:
                for j in range(i):
                    factors[j] = _tau(factors[j], n)
                del factors[i]
                power += 1
                changed = True
            elif factors[i] == identity:
                del factors[i]
                changed = True
            else:
                i += 1
        for i in range(len(factors) - 1):
            a, b = factors[i], factors[i + 1]
            movable = _starting_set(b) - _finishing_set(a)
            while movable:
                t = trans[min(movable)]
                a = _then(a, t)
                b = _then(t, b)
                changed = True
                if b == identity:
                    break
                movable = _starting_set(b) - _finishing_set(a)
            factors[i], factors[i + 1] = a, b
    return power, factors


@functools.lru_cache(maxsize=None)
def to_normal_form(beta: BraidWord) -> CanonicalForm:
    """The unique left normal form of the braid represented by the word."""
    n = beta.strands
    if n == 1:
        return CanonicalForm(1, 0, ())
    _, delta, trans = _tables(n)
    factors: list[tuple[int, ...]] = []
    shifts: list[int] = []
    for e in beta.letters:
        t = trans[abs(e)]
        if e > 0:
            factors.append(t)
            shifts.append(0)
        else:
            factors.append(_then(delta, t))
            shifts.append(-1)
    # Commute the Delta^-1 shifts to the front; tau has order two.
    acc = 0
    for i in reversed(range(len(factors))):
        if acc % 2:
            factors[i] = _tau(factors[i], n)
        acc += shifts[i]
    power, normalized = _normalize_factors(n, factors)
    return CanonicalForm(
        n, acc + power, tuple(Permutation(f) for f in normalized)
    )


def words_equal(a: BraidWord, b: BraidWord) -> bool:
    """True iff the two words represent the same element of B_n."""
    if a.strands != b.strands:
        raise ValueError(
            f"strand-count mismatch: {a.strands} vs {b.strands}"
        )
    return to_normal_form(a) == to_normal_form(b)


def from_normal_form(c: CanonicalForm) -> BraidWord:
    """A word whose normal form is c."""
    n = c.strands
    letters: list[int] = []
    if n > 1 and c.infimum != 0:
        delta_word = _strip_word(_tables(n)[1])
        if c.infimum > 0:
            letters.extend(delta_word * c.infimum)
        else:
            inverse = tuple(-e for e in reversed(delta_word))
            letters.extend(inverse * (-c.infimum))
    for factor in c.factors:
        letters.extend(_strip_word(factor.images))
    return BraidWord(n, tuple(letters))


def is_trivial(beta: BraidWord) -> bool:
    return to_normal_form(beta).is_trivial()


def canonical_word(beta: BraidWord) -> BraidWord:
    """The normal-form word; a canonical representative for the braid element."""
    return from_normal_form(to_normal_form(beta))


def clear_cache() -> None:
    to_normal_form.cache_clear()
