"""
Closed-braid moves and the (writhe, strand-count) geometry.

Markov moves here are word-level operations with rigid syntactic
preconditions: conjugation concatenates c . beta . c^-1, stabilization
appends the top generator, destabilization removes it only when the word
exposes the required shape, and the exchange move swaps the signs of the two
distinguished top-generator letters of a word alpha s_{n-1} gamma s_{n-1}^-1.
Callers (notably the search module) are responsible for conjugating or
rotating a word into shape first; this keeps every move total, auditable,
and exactly replayable.

A MoveSequence replays deterministically: each step applies its move to the
running word and then free-reduces, so recorded searches can be re-checked
step by step.
"""

from __future__ import annotations

import dataclasses
from collections import deque

from .budgets import SearchBudget
from .words import BraidWord, free_reduce, writhe


@dataclasses.dataclass(frozen=True, order=True)
class ConePoint:
    """A (writhe, braid index) pair in the stabilization plane."""

    w: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("braid index must be >= 1")


def cone_point(beta: BraidWord) -> ConePoint:
    return ConePoint(writhe(beta), beta.strands)


def cone_contains(apex: ConePoint, p: ConePoint) -> bool:
    """True iff p is reachable from apex by (possibly zero) stabilizations."""
    dn = p.n - apex.n
    dw = p.w - apex.w
    return abs(dw) <= dn and (dw - dn) % 2 == 0


def cone_points(apex: ConePoint, depth: int) -> set[ConePoint]:
    """All points reachable from apex by at most `depth` stabilizations."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return {
        ConePoint(apex.w + s, apex.n + t)
        for t in range(depth + 1)
        for s in range(-t, t + 1, 2)
    }


def jones_inequality_holds(beta: BraidWord, beta0: BraidWord) -> bool:
    """|w(beta) - w(beta0)| <= n(beta) - n(beta0); beta0 assumed minimal."""
    return abs(writhe(beta) - writhe(beta0)) <= beta.strands - beta0.strands


def self_linking(beta: BraidWord) -> int:
    """Self-linking number of the closure as a transverse link: w - n."""
    return writhe(beta) - beta.strands


def conjugate(beta: BraidWord, c: BraidWord) -> BraidWord:
    """c . beta . c^-1 as a plain concatenation; closure type is unchanged."""
    if beta.strands != c.strands:
        raise ValueError("strand-count mismatch between word and conjugator")
    return BraidWord(beta.strands, c.letters + beta.letters + c.inverse().letters)


def stabilize(beta: BraidWord, sign: int) -> BraidWord:
    """Append sigma_n^sign on n+1 strands; (w, n) moves to (w + sign, n + 1)."""
    if sign not in (1, -1):
        raise ValueError("stabilization sign must be +1 or -1")
    n = beta.strands
    return BraidWord(n + 1, beta.letters + (sign * n,))


def destabilize(beta: BraidWord) -> tuple[BraidWord, int]:
    """Remove a final, unique top-generator letter; inverse of stabilize.

    The word (after free reduction) must contain exactly one letter of
    magnitude n-1, in final position. Returns the shorter word and the sign
    of the removed letter.
    """
    n = beta.strands
    if n < 2:
        raise ValueError("cannot destabilize a 1-strand word")
    reduced = free_reduce(beta)
    top = [i for i, e in enumerate(reduced.letters) if abs(e) == n - 1]
    if len(top) != 1 or top[0] != len(reduced.letters) - 1:
        raise ValueError(
            f"word is not in destabilization form: sigma_{n-1} letters at {top}"
        )
    last = reduced.letters[-1]
    return BraidWord(n - 1, reduced.letters[:-1]), (1 if last > 0 else -1)


def _exchange_positions(beta: BraidWord) -> tuple[int, int]:
    """Positions of the two distinguished top letters of an exchange-form word."""
    n = beta.strands
    if n < 2:
        raise ValueError("word is not in exchange form: too few strands")
    top = [i for i, e in enumerate(beta.letters) if abs(e) == n - 1]
    if (
        len(top) != 2
        or top[1] != len(beta.letters) - 1
        or beta.letters[top[0]] != -beta.letters[top[1]]
    ):
        raise ValueError(
            "word is not in exchange form alpha s gamma s^-1 "
            f"(top-generator letters at {top})"
        )
    return top[0], top[1]


def is_exchange_form(beta: BraidWord) -> bool:
    try:
        _exchange_positions(beta)
    except ValueError:
        return False
    return True


def exchange_move(beta: BraidWord) -> BraidWord:
    """Swap the signs of the two distinguished top letters; w and n unchanged."""
    i, j = _exchange_positions(beta)
    letters = list(beta.letters)
    letters[i], letters[j] = -letters[i], -letters[j]
    return BraidWord(beta.strands, tuple(letters))


def rotate_left(beta: BraidWord, k: int) -> BraidWord:
    """Cyclic rotation; as a closed braid, conjugation by the inverted prefix."""
    k %= max(len(beta.letters), 1)
    return BraidWord(beta.strands, beta.letters[k:] + beta.letters[:k])


def rotation_conjugator(beta: BraidWord, k: int) -> BraidWord:
    """The conjugator c with conjugate(beta, c) freely equal to rotate_left(beta, k)."""
    k %= max(len(beta.letters), 1)
    return BraidWord(beta.strands, beta.letters[:k]).inverse()


def cyclic_free_reduce(beta: BraidWord) -> BraidWord:
    """Free reduction of the cyclic word: cancel across the wraparound too."""
    word = free_reduce(beta)
    while len(word.letters) >= 2 and word.letters[0] == -word.letters[-1]:
        word = free_reduce(BraidWord(word.strands, word.letters[1:-1]))
    return word


# --- replayable move sequences -------------------------------------------


@dataclasses.dataclass(frozen=True)
class Conjugate:
    conjugator: tuple[int, ...]

    def apply(self, word: BraidWord) -> BraidWord:
        return conjugate(word, BraidWord(word.strands, self.conjugator))

    def to_json(self) -> dict:
        return {"move": "conjugate", "conjugator": list(self.conjugator)}


@dataclasses.dataclass(frozen=True)
class Stabilize:
    sign: int

    def apply(self, word: BraidWord) -> BraidWord:
        return stabilize(word, self.sign)

    def to_json(self) -> dict:
        return {"move": "stabilize", "sign": self.sign}


@dataclasses.dataclass(frozen=True)
class Destabilize:
    def apply(self, word: BraidWord) -> BraidWord:
        return destabilize(word)[0]

    def to_json(self) -> dict:
        return {"move": "destabilize"}


@dataclasses.dataclass(frozen=True)
class Exchange:
    def apply(self, word: BraidWord) -> BraidWord:
        return exchange_move(word)

    def to_json(self) -> dict:
        return {"move": "exchange"}


Move = Conjugate | Stabilize | Destabilize | Exchange


def move_from_json(obj: dict) -> Move:
    kind = obj["move"]
    if kind == "conjugate":
        return Conjugate(tuple(int(e) for e in obj["conjugator"]))
    if kind == "stabilize":
        return Stabilize(int(obj["sign"]))
    if kind == "destabilize":
        return Destabilize()
    if kind == "exchange":
        return Exchange()
    raise ValueError(f"unknown move kind {kind!r}")


@dataclasses.dataclass(frozen=True)
class MoveSequence:
    """A closed-braid derivation: an initial word plus a list of moves.

    Replay applies each move in order and free-reduces after every step, so
    the endpoint is a deterministic function of the data.
    """

    initial: BraidWord
    steps: tuple[Move, ...]

    def replay(self) -> BraidWord:
        word = free_reduce(self.initial)
        for step in self.steps:
            word = free_reduce(step.apply(word))
        return word

    def trace(self) -> list[BraidWord]:
        words = [free_reduce(self.initial)]
        for step in self.steps:
            words.append(free_reduce(step.apply(words[-1])))
        return words

    def extended(self, *steps: Move) -> MoveSequence:
        return MoveSequence(self.initial, self.steps + steps)

    def stabilization_signs(self) -> list[int]:
        return [s.sign for s in self.steps if isinstance(s, Stabilize)]

    def destabilization_count(self) -> int:
        return sum(1 for s in self.steps if isinstance(s, Destabilize))

    def to_json(self) -> dict:
        return {
            "initial": self.initial.to_json(),
            "steps": [s.to_json() for s in self.steps],
        }

    @staticmethod
    def from_json(obj: dict) -> MoveSequence:
        return MoveSequence(
            BraidWord.from_json(obj["initial"]),
            tuple(move_from_json(s) for s in obj["steps"]),
        )


# --- exchange move as stabilization + conjugation + destabilization --------


class DecompositionInconclusive(RuntimeError):
    """The composite for an exchange move was not found within budget."""


EXCHANGE_COMPOSITE_BUDGET = SearchBudget(
    max_nodes=60_000, max_strands=12, max_word_length=96, max_conjugator_length=6
)


def _conjugacy_witness(
    a: BraidWord, b: BraidWord, depth: int, max_states: int
) -> BraidWord | None:
    """Bidirectional bounded search for c with c a c^-1 = b as braids."""
    from .garside import to_normal_form

    n = a.strands
    alphabet = [e for e in range(-(n - 1), n) if e != 0]
    a, b = free_reduce(a), free_reduce(b)

    def orbit(word, half):
        seen = {to_normal_form(word): ()}
        frontier = deque([(word, (), 0)])
        while frontier:
            cur, conj, d = frontier.popleft()
            if d >= half:
                continue
            for e in alphabet:
                nxt = free_reduce(BraidWord(n, (e,) + cur.letters + (-e,)))
                nf = to_normal_form(nxt)
                if nf not in seen:
                    seen[nf] = (e,) + conj
                    if len(seen) >= max_states:
                        return seen
                    frontier.append((nxt, (e,) + conj, d + 1))
        return seen

    half = (depth + 1) // 2
    fa, fb = orbit(a, half), orbit(b, half)
    meet = set(fa) & set(fb)
    if not meet:
        return None
    nf = min(meet, key=lambda k: (len(fa[k]) + len(fb[k]), fa[k], fb[k]))
    x, y = fa[nf], fb[nf]
    return BraidWord(n, tuple(-e for e in reversed(y)) + x)


def exchange_as_composite(
    beta: BraidWord, budget: SearchBudget = EXCHANGE_COMPOSITE_BUDGET
) -> tuple[MoveSequence, BraidWord]:
    """Realize an exchange move as +stabilization, conjugations, +destabilization.

    Returns a replayable MoveSequence with exactly one positive stabilization
    and one positive destabilization, plus a witness conjugator c such that
    conjugating the replay endpoint by c gives exchange_move(beta). The
    conjugating words are discovered by bounded search; exhausting the budget
    raises DecompositionInconclusive, never a silent wrong answer.
    """
    from .garside import to_normal_form, words_equal

    star = exchange_move(beta)
    n = beta.strands
    cap = budget.max_nodes
    # Direct route: beta and its exchange are conjugate surprisingly often at
    # small strand counts; then stabilization and destabilization cancel.
    witness = _conjugacy_witness(
        beta, star, budget.max_conjugator_length, cap
    )
    if witness is not None:
        seq = MoveSequence(beta, (Stabilize(1), Destabilize()))
        assert words_equal(conjugate(seq.replay(), witness), star)
        return seq, witness
    # General route: stabilize some rotation, conjugate letter by letter in
    # B_{n+1} until a positive destabilization is exposed, destabilize, and
    # look for a witness conjugator from there.
    m = n + 1
    alphabet = [e for e in range(-(m - 1), m) if e != 0]
    star_nf = to_normal_form(free_reduce(star))
    nodes = 0
    for r in range(max(len(beta.letters), 1)):
        rot_conj = rotation_conjugator(beta, r)
        root = free_reduce(rotate_left(beta, r))
        up = free_reduce(stabilize(root, +1))
        seen = {to_normal_form(up)}
        frontier = deque([(up, (), 0)])
        while frontier:
            cur, conj, d = frontier.popleft()
            tops = [i for i, e in enumerate(cur.letters) if abs(e) == m - 1]
            if len(tops) == 1 and cur.letters[tops[0]] > 0:
                inner_rot = (tops[0] + 1) % max(len(cur.letters), 1)
                landed, _ = destabilize(rotate_left(cur, inner_rot))
                wit = _conjugacy_witness(
                    landed, star, budget.max_conjugator_length, cap
                )
                if wit is not None:
                    steps: list[Move] = []
                    if rot_conj.letters:
                        steps.append(Conjugate(rot_conj.letters))
                    steps.append(Stabilize(1))
                    for e in reversed(conj):
                        steps.append(Conjugate((e,)))
                    inner = rotation_conjugator(cur, inner_rot)
                    if inner.letters:
                        steps.append(Conjugate(inner.letters))
                    steps.append(Destabilize())
                    seq = MoveSequence(beta, tuple(steps))
                    endpoint = seq.replay()
                    assert words_equal(conjugate(endpoint, wit), star)
                    return seq, wit
            if d >= budget.max_conjugator_length:
                continue
            for e in alphabet:
                nodes += 1
                if nodes > cap:
                    raise DecompositionInconclusive(
                        f"no composite found within {cap} nodes"
                    )
                nxt = free_reduce(BraidWord(m, (e,) + cur.letters + (-e,)))
                if len(nxt.letters) > budget.max_word_length:
                    continue
                nf = to_normal_form(nxt)
                if nf not in seen:
                    seen.add(nf)
                    frontier.append((nxt, (e,) + conj, d + 1))
    raise DecompositionInconclusive(
        f"no composite found with conjugator depth "
        f"{budget.max_conjugator_length} and {nodes} nodes explored"
    )
