"""
Bounded exploration of the closed-braid move graph, and the drivers that
check the quasipositive-braid theorems on generated corpora.

States are free-reduced words deduplicated by Garside normal form, so two
search states merge exactly when they are equal braids. Neighbors are
single-letter conjugations, both stabilizations, and destabilizations and
exchange moves tried after every cyclic rotation (a rotation is itself a
conjugation, so every edge is replayable). Every visited state keeps a
parent pointer carrying the moves that produced it; move_sequence_to
reconstructs a MoveSequence whose replay lands exactly on the stored word.

Priority order in best-first mode is (strand count, canonical length, word
length, letters): a deterministic tie-break, so the visited set for a fixed
budget never depends on scheduling.

A "counterexample" status does not exist. If certified invariants ever
contradict one of the verified theorems, the driver raises
TheoremContradiction with a full dump: the only explanation would be an
implementation bug.
"""

from __future__ import annotations

import dataclasses
import functools
import heapq

from .budgets import SearchBudget, DEFAULT_BUDGET
from .garside import CanonicalForm, to_normal_form
from .invariants import (
    HomflyBudgetError,
    TheoremContradiction,
    braid_index_bounds,
    homfly,
    mfw_braid_index_lower,
    unlink_status,
)
from .moves import (
    Conjugate,
    Destabilize,
    Exchange,
    Move,
    MoveSequence,
    Stabilize,
    cone_contains,
    ConePoint,
    destabilize,
    exchange_move,
    is_exchange_form,
    rotate_left,
    rotation_conjugator,
    self_linking,
    stabilize,
)
from .quasipositive import QPFactorization, expand, qp_search, qp_self_linking
from .words import BraidWord, free_reduce, mirror, writhe

__all__ = [
    "SearchBudget",
    "DEFAULT_BUDGET",
    "ExploreResult",
    "VerificationRecord",
    "TheoremContradiction",
    "explore",
    "find_minimal_representatives",
    "verify_thm_main",
    "verify_sl_bound",
    "verify_chirality",
    "verify_property_transport",
    "validate_cone_consistency",
]


@dataclasses.dataclass
class ExploreResult:
    """Reachability report for the move graph around a root word."""

    root: BraidWord
    budget: SearchBudget
    visited: dict[CanonicalForm, BraidWord]
    parents: dict[CanonicalForm, tuple[CanonicalForm | None, tuple[Move, ...]]]
    order: list[CanonicalForm]
    truncated: bool
    nodes_used: int

    def visited_pairs(self) -> set[tuple[int, int]]:
        return {(writhe(w), w.strands) for w in self.visited.values()}

    @property
    def min_strands(self) -> int:
        return min(w.strands for w in self.visited.values())

    def min_strand_representatives(self) -> list[BraidWord]:
        floor = self.min_strands
        return [
            self.visited[key]
            for key in self.order
            if self.visited[key].strands == floor
        ]

    def max_self_linking(self) -> int:
        return max(self_linking(w) for w in self.visited.values())

    def move_sequence_to(self, key: CanonicalForm) -> MoveSequence:
        steps: list[Move] = []
        cur = key
        while True:
            parent, moves = self.parents[cur]
            if parent is None:
                break
            steps = list(moves) + steps
            cur = parent
        return MoveSequence(self.root, tuple(steps))


def _neighbors(
    word: BraidWord, budget: SearchBudget
) -> list[tuple[BraidWord, tuple[Move, ...]]]:
    n = word.strands
    out: list[tuple[BraidWord, tuple[Move, ...]]] = []
    for e in [x for x in range(-(n - 1), n) if x != 0]:
        conj = free_reduce(BraidWord(n, (e,) + word.letters + (-e,)))
        if len(conj.letters) <= budget.max_word_length:
            out.append((conj, (Conjugate((e,)),)))
    if n + 1 <= budget.max_strands and len(word.letters) + 1 <= budget.max_word_length:
        for sign in (1, -1):
            out.append((free_reduce(stabilize(word, sign)), (Stabilize(sign),)))
    for r in range(max(len(word.letters), 1)):
        rotated = free_reduce(rotate_left(word, r))
        prefix: tuple[Move, ...] = ()
        if r:
            conj_word = rotation_conjugator(word, r)
            prefix = (Conjugate(conj_word.letters),)
        if n >= 2:
            tops = [i for i, e in enumerate(rotated.letters) if abs(e) == n - 1]
            if len(tops) == 1 and tops[0] == len(rotated.letters) - 1:
                landed, _ = destabilize(rotated)
                out.append((free_reduce(landed), prefix + (Destabilize(),)))
        if is_exchange_form(rotated):
            out.append(
                (free_reduce(exchange_move(rotated)), prefix + (Exchange(),))
            )
    return out


def explore(
    beta: BraidWord, budget: SearchBudget = DEFAULT_BUDGET, mode: str = "best"
) -> ExploreResult:
    """Closure of {beta} under the move repertoire, within budget.

    mode "best" expands low-strand short states first; "bfs" expands in
    breadth order. The visited set is deterministic for a fixed budget.
    Results are cached per (word, budget, mode) and shared; treat them as
    read-only.
    """
    return _explore_cached(free_reduce(beta), budget, mode)


@functools.lru_cache(maxsize=256)
def _explore_cached(
    beta: BraidWord, budget: SearchBudget, mode: str
) -> ExploreResult:
    if mode not in ("best", "bfs"):
        raise ValueError(f"unknown explore mode {mode!r}")
    root = free_reduce(beta)
    root_key = to_normal_form(root)
    visited = {root_key: root}
    parents: dict[CanonicalForm, tuple[CanonicalForm | None, tuple[Move, ...]]] = {
        root_key: (None, ())
    }
    order = [root_key]
    counter = 0

    def priority(word: BraidWord, key: CanonicalForm, depth: int):
        if mode == "bfs":
            return (depth, word.strands, len(word.letters), word.letters)
        return (word.strands, key.canonical_length, len(word.letters), word.letters)

    heap = [(priority(root, root_key, 0), counter, root, root_key, 0)]
    truncated = False
    nodes = 0
    while heap:
        _, _, word, key, depth = heapq.heappop(heap)
        for nxt, moves in _neighbors(word, budget):
            nodes += 1
            nxt_key = to_normal_form(nxt)
            if nxt_key in visited:
                continue
            if len(visited) >= budget.max_nodes:
                truncated = True
                continue
            visited[nxt_key] = nxt
            parents[nxt_key] = (key, moves)
            order.append(nxt_key)
            counter += 1
            heapq.heappush(
                heap, (priority(nxt, nxt_key, depth + 1), counter, nxt, nxt_key, depth + 1)
            )
    return ExploreResult(
        root=root,
        budget=budget,
        visited=visited,
        parents=parents,
        order=order,
        truncated=truncated,
        nodes_used=nodes,
    )


def find_minimal_representatives(
    beta: BraidWord, budget: SearchBudget = DEFAULT_BUDGET
) -> tuple[list[BraidWord], bool]:
    """Visited words at the least strand count; certified iff it meets MFW."""
    report = explore(beta, budget)
    reps = report.min_strand_representatives()
    try:
        certified = report.min_strands == mfw_braid_index_lower(homfly(beta))
    except HomflyBudgetError:
        certified = False
    return reps, certified


def validate_cone_consistency(
    report: ExploreResult, apex: ConePoint
) -> None:
    """All visited (w, n) must lie in the cone of a certified-minimal apex."""
    for w, n in sorted(report.visited_pairs()):
        if not cone_contains(apex, ConePoint(w, n)):
            raise TheoremContradiction(
                "visited point outside the cone of a certified minimal "
                "representative, contradicting the Jones-conjecture geometry",
                dump={
                    "root": report.root.to_json(),
                    "apex": {"w": apex.w, "n": apex.n},
                    "point": {"w": w, "n": n},
                },
            )


# --- theorem-verification drivers -------------------------------------------


@dataclasses.dataclass(frozen=True)
class VerificationRecord:
    """Outcome of checking one theorem statement on one corpus instance."""

    statement: str  # thm_main | thm_sl_bound | cor_chirality | property_transport
    instance: dict
    status: str  # "verified" | "inconclusive"
    details: dict

    def __post_init__(self):
        if self.status not in ("verified", "inconclusive"):
            raise ValueError(f"invalid status {self.status!r}")


def _explored_minimal(q: QPFactorization, budget: SearchBudget):
    beta = expand(q)
    report = explore(beta, budget)
    reps = report.min_strand_representatives()
    try:
        mfw = mfw_braid_index_lower(homfly(beta))
        certified = report.min_strands == mfw
    except HomflyBudgetError:
        mfw = None
        certified = False
    return beta, report, reps, mfw, certified


def verify_thm_main(
    q: QPFactorization, budget: SearchBudget = DEFAULT_BUDGET
) -> VerificationRecord:
    """A quasipositive certificate must exist at certified-minimal braid index."""
    beta, report, reps, mfw, certified = _explored_minimal(q, budget)
    details: dict = {
        "min_strands_found": report.min_strands,
        "mfw_lower": mfw,
        "minimal_certified": certified,
        "explore_nodes": report.nodes_used,
        "explore_truncated": report.truncated,
    }
    if not certified:
        details["note"] = "minimal braid index not certified within budget"
        return VerificationRecord("thm_main", q.to_json(), "inconclusive", details)
    attempts = 0
    for rep in reps:
        attempts += 1
        result = qp_search(rep, budget, conjugacy=True)
        if result.is_certificate:
            details.update(
                {
                    "minimal_representative": rep.to_json(),
                    "certificate": result.factorization.to_json(),
                    "witness_conjugator": (
                        result.witness_conjugator.to_json()
                        if result.witness_conjugator
                        else None
                    ),
                    "qp_nodes": result.nodes_used,
                    "representatives_tried": attempts,
                }
            )
            return VerificationRecord("thm_main", q.to_json(), "verified", details)
    details["note"] = (
        "no certificate found at minimal index within the conjugator-length "
        "budget; enlarge the budget"
    )
    details["representatives_tried"] = attempts
    return VerificationRecord("thm_main", q.to_json(), "inconclusive", details)


def verify_sl_bound(
    q: QPFactorization, budget: SearchBudget = DEFAULT_BUDGET
) -> VerificationRecord:
    """Max self-linking >= -braid index, equality exactly for unlinks."""
    beta = expand(q)
    sl_bar = qp_self_linking(q)
    bounds = braid_index_bounds(beta, budget)
    status_unlink = unlink_status(beta, budget)
    details: dict = {
        "sl_bar": sl_bar,
        "b_lower": bounds.lower,
        "b_upper": bounds.upper,
        "unlink_status": status_unlink.status,
    }
    if sl_bar < -bounds.lower:
        if bounds.exact:
            raise TheoremContradiction(
                "certified braid index violates the self-linking lower bound",
                dump={"instance": q.to_json(), **details},
            )
        details["note"] = "bound check indeterminate: braid index not certified"
        return VerificationRecord("thm_sl_bound", q.to_json(), "inconclusive", details)
    equality = sl_bar == -bounds.lower
    if equality:
        if status_unlink.status == "unlink":
            details["equality_case"] = "confirmed unlink"
            return VerificationRecord("thm_sl_bound", q.to_json(), "verified", details)
        if status_unlink.status == "not_unlink" and bounds.exact:
            raise TheoremContradiction(
                "equality in the self-linking bound on a certified non-unlink",
                dump={"instance": q.to_json(), **details},
            )
        details["note"] = "equality case but unlink status unknown"
        return VerificationRecord("thm_sl_bound", q.to_json(), "inconclusive", details)
    if status_unlink.status == "unlink" and bounds.exact:
        raise TheoremContradiction(
            "certified unlink with strict self-linking inequality",
            dump={"instance": q.to_json(), **details},
        )
    return VerificationRecord("thm_sl_bound", q.to_json(), "verified", details)


def verify_chirality(
    q: QPFactorization, budget: SearchBudget = DEFAULT_BUDGET
) -> VerificationRecord:
    """Nontrivial quasipositive links are chiral: mirrors are never quasipositive."""
    beta = expand(q)
    status_unlink = unlink_status(beta, budget)
    details: dict = {"unlink_status": status_unlink.status}
    if status_unlink.status == "unknown":
        details["note"] = "unlink status unresolved within budget"
        return VerificationRecord("cor_chirality", q.to_json(), "inconclusive", details)
    _, report, reps, mfw, certified = _explored_minimal(q, budget)
    details.update(
        {
            "min_strands_found": report.min_strands,
            "mfw_lower": mfw,
            "minimal_certified": certified,
        }
    )
    if status_unlink.status == "unlink":
        trivial = [rep for rep in reps if not rep.letters]
        if not certified or not trivial:
            details["note"] = "trivial representative not certified within budget"
            return VerificationRecord(
                "cor_chirality", q.to_json(), "inconclusive", details
            )
        rep = trivial[0]
        details["amphicheiral_case"] = {
            "representative": rep.to_json(),
            "writhe": writhe(rep),
            "mirror_is_self": mirror(rep) == rep,
        }
        return VerificationRecord("cor_chirality", q.to_json(), "verified", details)
    if not certified:
        details["note"] = "minimal braid index not certified within budget"
        return VerificationRecord("cor_chirality", q.to_json(), "inconclusive", details)
    checked = []
    for rep in reps:
        w = writhe(rep)
        if w <= 0:
            raise TheoremContradiction(
                "certified-minimal representative of a non-unlink quasipositive "
                "link has non-positive writhe",
                dump={"instance": q.to_json(), "representative": rep.to_json()},
            )
        result = qp_search(mirror(rep), budget)
        if not result.is_refutation:
            raise TheoremContradiction(
                "mirror of a positive-writhe braid escaped the writhe obstruction",
                dump={
                    "instance": q.to_json(),
                    "representative": rep.to_json(),
                    "mirror_result": result.status,
                },
            )
        checked.append({"writhe": w, "mirror_reason": result.reason})
    details["minimal_representatives_checked"] = len(checked)
    details["writhes"] = sorted({c["writhe"] for c in checked})
    return VerificationRecord("cor_chirality", q.to_json(), "verified", details)


def verify_property_transport(
    q: QPFactorization,
    predicate,
    budget: SearchBudget = DEFAULT_BUDGET,
    spot_check_seed: int = 0,
) -> VerificationRecord:
    """A transverse-isotopy-invariant property of the expansion must appear at
    some certified-minimal representative."""
    import random

    beta = expand(q)
    rng = random.Random(spot_check_seed)
    base_value = bool(predicate(beta))
    word = beta
    for _ in range(12):
        move = rng.choice(["conj", "stab"])
        if move == "conj" and word.strands >= 2:
            e = rng.choice([x for x in range(-(word.strands - 1), word.strands) if x])
            word = free_reduce(
                BraidWord(word.strands, (e,) + word.letters + (-e,))
            )
        else:
            word = stabilize(word, +1)
        if bool(predicate(word)) != base_value:
            raise ValueError(
                "predicate failed its invariance spot-check under conjugation "
                "and positive stabilization"
            )
    details: dict = {"predicate_at_expansion": base_value}
    if not base_value:
        details["note"] = "expansion does not satisfy the predicate; instance vacuous"
        return VerificationRecord(
            "property_transport", q.to_json(), "inconclusive", details
        )
    _, report, reps, mfw, certified = _explored_minimal(q, budget)
    details.update(
        {
            "min_strands_found": report.min_strands,
            "mfw_lower": mfw,
            "minimal_certified": certified,
        }
    )
    if not certified:
        details["note"] = "minimal braid index not certified within budget"
        return VerificationRecord(
            "property_transport", q.to_json(), "inconclusive", details
        )
    for rep in reps:
        if predicate(rep):
            details["satisfying_representative"] = rep.to_json()
            return VerificationRecord(
                "property_transport", q.to_json(), "verified", details
            )
    details["note"] = (
        "no visited minimal representative satisfies the predicate; the "
        "visited set may be incomplete"
    )
    return VerificationRecord(
        "property_transport", q.to_json(), "inconclusive", details
    )
