"""
Quasipositive factorizations as first-class data.

A band is a conjugated positive generator w sigma_j w^-1; a factorization is
an ordered product of bands. Because writhe is a homomorphism killing the
conjugators, the writhe of the expansion always equals the band count, which
both powers the writhe obstruction (negative or zero writhe rules the word
out immediately) and forces every candidate factorization of a word to use
exactly writhe-many bands, collapsing the certificate search.

The search enumerates band conjugators in length-lexicographic order up to a
budgeted length, deduplicates bands and partial remainders by Garside normal
form, and prunes with the subadditive infimum/supremum bounds
inf(xy) >= inf(x) + inf(y) and sup(xy) <= sup(x) + sup(y). Outcomes are
three-valued: a certificate, a bounds-scoped refutation, or inconclusive
when the node budget runs out. Refutations are never emitted on a truncated
search.
"""

from __future__ import annotations

import dataclasses
import itertools
import random

from .budgets import SearchBudget, DEFAULT_BUDGET
from .garside import to_normal_form, words_equal
from .words import BraidWord, free_reduce, writhe


@dataclasses.dataclass(frozen=True)
class Band:
    """One factor w sigma_j w^-1."""

    conjugator: BraidWord
    generator: int

    def __post_init__(self):
        if not 1 <= self.generator <= self.conjugator.strands - 1:
            raise ValueError(
                f"band generator {self.generator} out of range "
                f"for {self.conjugator.strands} strands"
            )

    @property
    def strands(self) -> int:
        return self.conjugator.strands

    def word(self) -> BraidWord:
        w = self.conjugator
        return free_reduce(
            BraidWord(
                w.strands,
                w.letters + (self.generator,) + w.inverse().letters,
            )
        )

    def to_json(self) -> dict:
        return {"conjugator": list(self.conjugator.letters), "generator": self.generator}

    @staticmethod
    def from_json(obj: dict, strands: int) -> Band:
        return Band(
            BraidWord(strands, tuple(int(e) for e in obj["conjugator"])),
            int(obj["generator"]),
        )


@dataclasses.dataclass(frozen=True)
class QPFactorization:
    """An ordered product of bands on a common strand count."""

    strands: int
    bands: tuple[Band, ...]

    def __post_init__(self):
        for band in self.bands:
            if band.strands != self.strands:
                raise ValueError("band strand count differs from factorization")

    @property
    def band_count(self) -> int:
        return len(self.bands)

    def to_json(self) -> dict:
        return {
            "strands": self.strands,
            "bands": [b.to_json() for b in self.bands],
        }

    @staticmethod
    def from_json(obj: dict) -> QPFactorization:
        strands = int(obj["strands"])
        return QPFactorization(
            strands, tuple(Band.from_json(b, strands) for b in obj["bands"])
        )


def expand(q: QPFactorization) -> BraidWord:
    """The word w1 s_j1 w1^-1 ... wk s_jk wk^-1, free-reduced."""
    letters: list[int] = []
    for band in q.bands:
        letters.extend(band.word().letters)
    return free_reduce(BraidWord(q.strands, tuple(letters)))


def qp_self_linking(q: QPFactorization) -> int:
    """Self-linking of the closure: bands - strands (sharp for quasipositives)."""
    return q.band_count - q.strands


def qp_conjugate(q: QPFactorization, c: BraidWord) -> QPFactorization:
    """Transport the factorization along conjugation by c."""
    if c.strands != q.strands:
        raise ValueError("strand-count mismatch")
    bands = tuple(
        Band(BraidWord(q.strands, c.letters + b.conjugator.letters), b.generator)
        for b in q.bands
    )
    return QPFactorization(q.strands, bands)


def qp_stabilize_positive(q: QPFactorization) -> QPFactorization:
    """Transport along positive stabilization: one trivial band on a new strand."""
    n = q.strands + 1
    bands = tuple(
        Band(BraidWord(n, b.conjugator.letters), b.generator) for b in q.bands
    )
    return QPFactorization(n, bands + (Band(BraidWord(n, ()), n - 1),))


def random_qp(
    strands: int, bands: int, conjugator_length: int, seed: int
) -> QPFactorization:
    """Seeded random factorization; conjugator lengths are uniform on 0..l."""
    if strands < 1 or bands < 0 or conjugator_length < 0:
        raise ValueError("invalid generation parameters")
    if strands == 1 and bands > 0:
        raise ValueError("B_1 admits no bands")
    rng = random.Random(seed)
    alphabet = [e for e in range(-(strands - 1), strands) if e != 0]
    out = []
    for _ in range(bands):
        length = rng.randint(0, conjugator_length)
        conj = BraidWord(strands, tuple(rng.choice(alphabet) for _ in range(length)))
        out.append(Band(conj, rng.randint(1, strands - 1)))
    return QPFactorization(strands, tuple(out))


# --- certificate search -----------------------------------------------------


@dataclasses.dataclass(frozen=True)
class QPSearchResult:
    """Outcome of a quasipositivity search; exactly one of three statuses."""

    status: str  # "certificate" | "not_quasipositive" | "inconclusive"
    factorization: QPFactorization | None = None
    witness_conjugator: BraidWord | None = None
    reason: str | None = None
    nodes_used: int = 0

    @property
    def is_certificate(self) -> bool:
        return self.status == "certificate"

    @property
    def is_refutation(self) -> bool:
        return self.status == "not_quasipositive"

    @property
    def is_inconclusive(self) -> bool:
        return self.status == "inconclusive"


class _NodeBudget:
    __slots__ = ("used", "limit")

    def __init__(self, limit: int):
        self.used = 0
        self.limit = limit

    def spend(self) -> bool:
        self.used += 1
        return self.used <= self.limit


def conjugator_words(strands: int, max_length: int):
    """All conjugator words up to max_length, in length-lexicographic order."""
    alphabet = [e for e in range(-(strands - 1), strands) if e != 0]
    for length in range(max_length + 1):
        for letters in itertools.product(alphabet, repeat=length):
            yield BraidWord(strands, letters)


def _band_table(strands: int, max_conj: int) -> list[Band]:
    """Distinct band elements, first representative in length-lex order."""
    seen = set()
    table = []
    for conj in conjugator_words(strands, max_conj):
        for j in range(1, strands):
            band = Band(conj, j)
            nf = to_normal_form(band.word())
            if nf not in seen:
                seen.add(nf)
                table.append(band)
    return table


def _search_exact(
    beta: BraidWord, k: int, bands: list[Band], budget: _NodeBudget
) -> QPFactorization | None | str:
    """Find b1..bk with product beta, or None (exhausted), or "budget"."""
    n = beta.strands
    entries = []
    for band in bands:
        word = band.word()
        nf = to_normal_form(word)
        entries.append((band, word, nf.infimum, nf.supremum))
    if not entries:
        return None
    min_inf = min(e[2] for e in entries)
    max_sup = max(e[3] for e in entries)
    band_nfs = {to_normal_form(e[1]) for e in entries}
    by_nf = {to_normal_form(e[1]): e[0] for e in entries}
    failed: set[tuple[int, object]] = set()

    def rec(remaining: int, word: BraidWord) -> list[Band] | None | str:
        if not budget.spend():
            return "budget"
        nf = to_normal_form(word)
        if remaining == 0:
            return [] if nf.is_trivial() else None
        if nf.infimum < remaining * min_inf or nf.supremum > remaining * max_sup:
            return None
        if remaining == 1:
            band = by_nf.get(nf)
            return None if band is None else [band]
        key = (remaining, nf)
        if key in failed:
            return None
        for band, bword, _, _ in entries:
            rest = free_reduce(
                BraidWord(n, bword.inverse().letters + word.letters)
            )
            sub = rec(remaining - 1, rest)
            if sub == "budget":
                return "budget"
            if sub is not None:
                return [band] + sub
        failed.add(key)
        return None

    got = rec(k, free_reduce(beta))
    if got == "budget":
        return "budget"
    if got is None:
        return None
    return QPFactorization(n, tuple(got))


def qp_search(
    beta: BraidWord,
    budget: SearchBudget = DEFAULT_BUDGET,
    conjugacy: bool = False,
) -> QPSearchResult:
    """Bounded decision of quasipositivity for the word (or its closure).

    In conjugacy mode the word is also conjugated by witnesses up to the
    budgeted length, matching quasipositivity being a property of closed
    braids.
    """
    n = beta.strands
    reduced = free_reduce(beta)
    w = writhe(reduced)
    nodes = _NodeBudget(budget.max_nodes)
    if w < 0:
        return QPSearchResult(
            "not_quasipositive",
            reason=f"writhe {w} < 0 but quasipositive words have writhe >= 0",
        )
    if w == 0:
        if to_normal_form(reduced).is_trivial():
            return QPSearchResult(
                "certificate", factorization=QPFactorization(n, ())
            )
        return QPSearchResult(
            "not_quasipositive",
            reason="writhe 0 forces the empty factorization, but the word is "
            "not the identity",
        )
    bands = _band_table(n, budget.max_conjugator_length)
    candidates: list[tuple[BraidWord, BraidWord]] = [(BraidWord(n, ()), reduced)]
    if conjugacy:
        seen = {to_normal_form(reduced)}
        for c in conjugator_words(n, budget.max_conjugator_length):
            if not c.letters:
                continue
            conj = free_reduce(
                BraidWord(n, c.letters + reduced.letters + c.inverse().letters)
            )
            nf = to_normal_form(conj)
            if nf not in seen:
                seen.add(nf)
                candidates.append((c, conj))
    truncated = False
    for witness, word in candidates:
        got = _search_exact(word, w, bands, nodes)
        if got == "budget":
            truncated = True
            break
        if got is not None:
            return QPSearchResult(
                "certificate",
                factorization=got,
                witness_conjugator=witness if witness.letters else None,
                nodes_used=nodes.used,
            )
    if truncated:
        return QPSearchResult(
            "inconclusive",
            reason=f"node budget {budget.max_nodes} exhausted",
            nodes_used=nodes.used,
        )
    scope = (
        f"no factorization into {w} bands with conjugator length <= "
        f"{budget.max_conjugator_length}"
    )
    if conjugacy:
        scope += " for the word or any conjugate within the same length"
    return QPSearchResult("not_quasipositive", reason=scope, nodes_used=nodes.used)


def enumerate_band_products(
    strands: int, band_count: int, max_conj: int
) -> set:
    """Normal forms of every product of band_count bands; brute-force oracle."""
    bands = [b.word() for b in _band_table(strands, max_conj)]
    out = set()
    for combo in itertools.product(bands, repeat=band_count):
        letters: list[int] = []
        for w in combo:
            letters.extend(w.letters)
        out.add(to_normal_form(free_reduce(BraidWord(strands, tuple(letters)))))
    return out
