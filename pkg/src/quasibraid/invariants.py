"""
HOMFLY-PT polynomial of a braid closure, and the certificate bounds on it.

Skein convention, fixed by the regression fixtures and not to be changed:

    v^-1 P(L+) - v P(L-) = z P(L0),   P(unknot) = 1.

Under this convention the c-component unlink has P = ((v^-1 - v)/z)^(c-1),
the right trefoil has P = 2v^2 - v^4 + v^2 z^2, and the two bounds read

    braid index  >=  v-breadth / 2 + 1          (Morton-Franks-Williams)
    max self-linking  <=  min v-degree - 1      (Morton)

The polynomial is computed by resolving crossings of the braid word.  A
canonical walk around the closure (components ordered by their top position,
each traversed from its basepoint) classifies every crossing by whether its
first visit runs along the over-strand; a diagram with no "bad" crossing is
descending and its closure is an unlink.  Resolving any bad crossing yields
a switch branch (same projection, one fewer bad crossing) and a smoothed
branch (one fewer letter), so the recursion terminates.  Between steps the
word is cheaply simplified by closure-preserving moves (free and cyclic
reduction, Markov destabilization on either side, splitting at an unused
generator), and results are memoized on the Garside normal form of the
whole word, which identifies syntactically different spellings of the same
braid.
"""

from __future__ import annotations

import dataclasses

from .garside import CanonicalForm, to_normal_form
from .words import BraidWord, component_count, free_reduce


class HomflyBudgetError(RuntimeError):
    """Raised when the skein recursion exceeds its node budget."""


class TheoremContradiction(RuntimeError):
    """A certified check contradicts a published theorem: an implementation bug.

    Carries a state dump so the offending instance can be replayed.
    """

    def __init__(self, message: str, dump: dict | None = None):
        super().__init__(message)
        self.dump = dump or {}


class HomflyPolynomial:
    """Sparse integer Laurent polynomial in v and z."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], int] | None = None):
        self.terms = {k: c for k, c in (terms or {}).items() if c != 0}

    @staticmethod
    def zero() -> HomflyPolynomial:
        return HomflyPolynomial()

    @staticmethod
    def one() -> HomflyPolynomial:
        return HomflyPolynomial({(0, 0): 1})

    @staticmethod
    def monomial(coeff: int, v_exp: int, z_exp: int) -> HomflyPolynomial:
        return HomflyPolynomial({(v_exp, z_exp): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, HomflyPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: HomflyPolynomial) -> HomflyPolynomial:
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return HomflyPolynomial(out)

    def __sub__(self, other: HomflyPolynomial) -> HomflyPolynomial:
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) - c
        return HomflyPolynomial(out)

    def __mul__(self, other: HomflyPolynomial) -> HomflyPolynomial:
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return HomflyPolynomial(out)

    def scaled(self, coeff: int, v_exp: int, z_exp: int) -> HomflyPolynomial:
        return HomflyPolynomial(
            {(a + v_exp, b + z_exp): coeff * c for (a, b), c in self.terms.items()}
        )

    def v_span(self) -> tuple[int, int]:
        if self.is_zero():
            raise ValueError("zero polynomial has no v-span")
        exps = [a for a, _ in self.terms]
        return min(exps), max(exps)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        keys = sorted(self.terms, key=lambda k: (-k[0], k[1]))
        return " + ".join(f"{self.terms[k]}*v^{k[0]}*z^{k[1]}" for k in keys)

    def __repr__(self) -> str:
        return f"HomflyPolynomial({self})"

    def to_json(self) -> list:
        keys = sorted(self.terms, key=lambda k: (-k[0], k[1]))
        return [[a, b, self.terms[(a, b)]] for a, b in keys]

    @staticmethod
    def from_json(items: list) -> HomflyPolynomial:
        return HomflyPolynomial({(int(a), int(b)): int(c) for a, b, c in items})


def unlink_polynomial(components: int) -> HomflyPolynomial:
    """P of the unlink: ((v^-1 - v)/z)^(c-1)."""
    if components < 1:
        raise ValueError("a link has at least one component")
    delta = HomflyPolynomial({(-1, -1): 1, (1, -1): -1})
    out = HomflyPolynomial.one()
    for _ in range(components - 1):
        out = out * delta
    return out


# --- closure-preserving word simplification --------------------------------


def _remove_strand(word: tuple[int, ...], n: int, side: str, drop: int) -> BraidWord:
    if side == "top":
        return BraidWord(n - 1, tuple(e for i, e in enumerate(word) if i != drop))
    letters = tuple(
        (abs(e) - 1) * (1 if e > 0 else -1)
        for i, e in enumerate(word)
        if i != drop
    )
    return BraidWord(n - 1, letters)


def _simplify_closure(beta: BraidWord) -> BraidWord:
    """Shrink the word by moves that preserve the closure's link type."""
    word = beta
    while True:
        n = word.strands
        word = free_reduce(word)
        shrunk = False
        while len(word.letters) >= 2 and word.letters[0] == -word.letters[-1]:
            word = free_reduce(BraidWord(n, word.letters[1:-1]))
            shrunk = True
        if shrunk:
            continue
        if n >= 2:
            top = [i for i, e in enumerate(word.letters) if abs(e) == n - 1]
            if len(top) == 1:
                word = _remove_strand(word.letters, n, "top", top[0])
                continue
            bottom = [i for i, e in enumerate(word.letters) if abs(e) == 1]
            if len(bottom) == 1:
                word = _remove_strand(word.letters, n, "bottom", bottom[0])
                continue
        return word


def _split_at_unused(beta: BraidWord) -> tuple[BraidWord, BraidWord] | None:
    """Split the closure at a generator that never occurs, if any."""
    n = beta.strands
    used = {abs(e) for e in beta.letters}
    for g in range(1, n):
        if g not in used:
            left = BraidWord(g, tuple(e for e in beta.letters if abs(e) < g))
            right = BraidWord(
                n - g,
                tuple(
                    (abs(e) - g) * (1 if e > 0 else -1)
                    for e in beta.letters
                    if abs(e) > g
                ),
            )
            return left, right
    return None


def _first_bad_crossing(beta: BraidWord) -> tuple[int, int] | None:
    """First crossing whose first visit on the canonical walk is an underpass.

    Returns (letter index, sign) or None for a descending diagram. The walk
    starts components at their smallest top position, in increasing order;
    at a positive letter the strand entering on the left passes over.
    """
    letters = beta.letters
    n = beta.strands
    flow = list(range(1, n + 1))
    for e in letters:
        g = abs(e)
        flow[g - 1], flow[g] = flow[g], flow[g - 1]
    # flow[s-1] is the top position of the strand exiting at bottom slot s
    exit_of = {flow[s - 1]: s for s in range(1, n + 1)}
    seen_start = set()
    first_visit: dict[int, str] = {}
    visit_order: list[int] = []
    for start in range(1, n + 1):
        if start in seen_start:
            continue
        pos = start
        while True:
            seen_start.add(pos)
            p = pos
            for idx, e in enumerate(letters):
                g = abs(e)
                if p == g:
                    if idx not in first_visit:
                        first_visit[idx] = "L"
                        visit_order.append(idx)
                    p = g + 1
                elif p == g + 1:
                    if idx not in first_visit:
                        first_visit[idx] = "R"
                        visit_order.append(idx)
                    p = g
            assert p == exit_of[pos]
            pos = p
            if pos == start:
                break
    for idx in visit_order:
        e = letters[idx]
        over_side = "L" if e > 0 else "R"
        if first_visit[idx] != over_side:
            return idx, (1 if e > 0 else -1)
    return None


# --- the skein recursion ----------------------------------------------------

DEFAULT_MAX_NODES = 500_000

_homfly_cache: dict[CanonicalForm, HomflyPolynomial] = {}


def clear_cache() -> None:
    _homfly_cache.clear()


def homfly(beta: BraidWord, *, max_nodes: int = DEFAULT_MAX_NODES) -> HomflyPolynomial:
    """HOMFLY-PT polynomial of the closure of beta."""
    counter = [0]
    return _homfly(beta, counter, max_nodes)


def _homfly(beta: BraidWord, counter: list[int], max_nodes: int) -> HomflyPolynomial:
    counter[0] += 1
    if counter[0] > max_nodes:
        raise HomflyBudgetError(
            f"skein recursion exceeded {max_nodes} nodes on {beta.strands} strands"
        )
    word = _simplify_closure(beta)
    if not word.letters:
        return unlink_polynomial(word.strands)
    key = to_normal_form(word)
    cached = _homfly_cache.get(key)
    if cached is not None:
        return cached
    split = _split_at_unused(word)
    if split is not None:
        left, right = split
        value = (
            unlink_polynomial(2)
            * _homfly(left, counter, max_nodes)
            * _homfly(right, counter, max_nodes)
        )
        _homfly_cache[key] = value
        return value
    bad = _first_bad_crossing(word)
    if bad is None:
        value = unlink_polynomial(component_count(word))
    else:
        idx, sign = bad
        switched = BraidWord(
            word.strands,
            word.letters[:idx] + (-word.letters[idx],) + word.letters[idx + 1 :],
        )
        smoothed = BraidWord(
            word.strands, word.letters[:idx] + word.letters[idx + 1 :]
        )
        p_switch = _homfly(switched, counter, max_nodes)
        p_smooth = _homfly(smoothed, counter, max_nodes)
        if sign > 0:
            # P+ = v^2 P- + v z P0
            value = p_switch.scaled(1, 2, 0) + p_smooth.scaled(1, 1, 1)
        else:
            # P- = v^-2 P+ - v^-1 z P0
            value = p_switch.scaled(1, -2, 0) - p_smooth.scaled(1, -1, 1)
    _homfly_cache[key] = value
    return value


# --- certificate bounds -----------------------------------------------------


def mfw_braid_index_lower(p: HomflyPolynomial) -> int:
    """Morton-Franks-Williams lower bound for the braid index: breadth_v/2 + 1."""
    lo, hi = p.v_span()
    return (hi - lo) // 2 + 1


def morton_sl_upper(p: HomflyPolynomial) -> int:
    """Morton's upper bound for the maximal self-linking number: min-deg_v - 1."""
    lo, _ = p.v_span()
    return lo - 1


def homfly_mirror(p: HomflyPolynomial) -> HomflyPolynomial:
    """Effect of mirroring the link: v -> v^-1, z -> -z."""
    return HomflyPolynomial(
        {(-a, b): (c if b % 2 == 0 else -c) for (a, b), c in p.terms.items()}
    )


@dataclasses.dataclass(frozen=True)
class BoundedInvariant:
    """Integer bounds with provenance; exact when the bounds meet."""

    lower: int
    upper: int
    lower_certificate: str
    upper_certificate: str

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(
                f"invalid bounds: lower {self.lower} > upper {self.upper}"
            )

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


# --- search-backed certificates ---------------------------------------------
#
# These need the move-graph search; imported lazily to keep the module
# layering acyclic (search imports the bound functions above).


@dataclasses.dataclass(frozen=True)
class UnlinkStatus:
    """Three-valued unlink test; never claims Unlink without a move witness."""

    status: str  # "unlink" | "not_unlink" | "unknown"
    witness: object | None = None  # MoveSequence for "unlink"
    detail: str | None = None


def unlink_status(beta: BraidWord, budget=None) -> UnlinkStatus:
    """Certify unlinkness with a trivializing move sequence, refute by HOMFLY."""
    from .budgets import DEFAULT_BUDGET
    from .search import explore

    if budget is None:
        budget = DEFAULT_BUDGET
    c = component_count(beta)
    try:
        p = homfly(beta)
    except HomflyBudgetError:
        p = None
    if p is not None and p != unlink_polynomial(c):
        return UnlinkStatus("not_unlink", detail="HOMFLY differs from the unlink")
    report = explore(beta, budget)
    target = to_normal_form(BraidWord(c, ()))
    if target in report.visited:
        return UnlinkStatus(
            "unlink",
            witness=report.move_sequence_to(target),
            detail=f"trivial word reached on {c} strands",
        )
    return UnlinkStatus(
        "unknown",
        detail="HOMFLY matches the unlink but no trivializing sequence was "
        "found within budget",
    )


def braid_index_bounds(beta: BraidWord, budget=None) -> BoundedInvariant:
    """MFW lower bound against the least strand count reached by search."""
    from .budgets import DEFAULT_BUDGET
    from .search import explore

    if budget is None:
        budget = DEFAULT_BUDGET
    lower = mfw_braid_index_lower(homfly(beta))
    report = explore(beta, budget)
    upper = report.min_strands
    rep = report.min_strand_representatives()[0]
    if lower > upper:
        raise TheoremContradiction(
            "MFW lower bound exceeds an exhibited representative",
            dump={"word": beta.to_json(), "lower": lower, "upper": upper},
        )
    return BoundedInvariant(
        lower,
        upper,
        "MFW from HOMFLY",
        f"exhibited braid word {rep}",
    )


def max_self_linking_bounds(
    beta: BraidWord, budget=None, qp=None, qp_witness: BraidWord | None = None
) -> BoundedInvariant:
    """Morton upper bound against the best self-linking reached by search.

    With a quasipositive factorization of the same closure, the lower bound
    is its bands-minus-strands value and sharpness forces equality.
    """
    from .budgets import DEFAULT_BUDGET
    from .garside import words_equal
    from .moves import conjugate
    from .search import explore

    if budget is None:
        budget = DEFAULT_BUDGET
    upper = morton_sl_upper(homfly(beta))
    if qp is not None:
        from .quasipositive import expand, qp_self_linking

        expansion = expand(qp)
        if qp_witness is not None:
            expansion = free_reduce(conjugate(expansion, qp_witness))
        if expansion.strands != beta.strands or not words_equal(expansion, beta):
            raise ValueError("factorization does not expand to the given word")
        lower = qp_self_linking(qp)
        if lower != upper:
            raise TheoremContradiction(
                "quasipositive self-linking does not meet Morton's bound "
                "(sharpness violated)",
                dump={"word": beta.to_json(), "lower": lower, "upper": upper},
            )
        return BoundedInvariant(
            lower, upper, "QP factorization (sharp)", "Morton from HOMFLY"
        )
    report = explore(beta, budget)
    lower = report.max_self_linking()
    if lower > upper:
        raise TheoremContradiction(
            "exhibited self-linking exceeds Morton's upper bound",
            dump={"word": beta.to_json(), "lower": lower, "upper": upper},
        )
    return BoundedInvariant(
        lower, upper, "exhibited braid word", "Morton from HOMFLY"
    )
