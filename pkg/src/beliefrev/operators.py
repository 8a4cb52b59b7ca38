"""Revision and contraction operators on ranked epistemic states.

All operators are total functions (RankedState, WorldSet) -> outcome and are
pure; results are memoized.  Every built-in revision is faithful: for a
non-empty input the output belief set is exactly the minimal input-worlds of
the prior state.  Revising by the empty WorldSet has no ranked-state
representation, so it yields the distinguished ABSURD marker, whose belief
set is the inconsistent theory (no models).

Built-in constructions:

  natural   move the minimal input-worlds to rank 0; every other valuation
            keeps its relative preorder, compacted from rank 1 (distinct old
            ranks stay distinct).
  flatten   three tiers: minimal input-worlds / minimal worlds of the
            complement / everything else; empty tiers are dropped.
  lex       all input-worlds below all complement-worlds, relative order
            preserved within each block.
  reverse   input-worlds keep their relative order from rank 0; complement
            worlds go strictly above with their relative order reversed.
            Faithful by construction, but engineered to break the
            minimal-countermodel stability conditions S1/S2.

  natural-con   believed, non-tautological input: rank 0 becomes the old
                belief set plus the minimal worlds of the complement; the
                rest keeps its relative order from rank 1.  Otherwise the
                state is returned unchanged (vacuity strengthened to state
                identity).
  drastic       withdrawal: a believed input wipes the ordering flat (belief
                set becomes the theory of no information); otherwise the
                state is unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Union

from .logic import Signature, WorldSet
from .states import RankedState, belief_set, min_worlds, uniform_state

_CACHE_SIZE = 65536


class UnsupportedSequenceError(ValueError):
    """A belief-change sequence cannot be continued from the absurd state."""


class _Absurd:
    """Outcome of revising by an unsatisfiable input."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ABSURD"


ABSURD = _Absurd()

RevisionOutcome = Union[RankedState, _Absurd]


def outcome_belief_set(outcome: RevisionOutcome, sig: Signature) -> WorldSet:
    """Belief set of an outcome; the absurd state believes everything."""
    if outcome is ABSURD:
        return WorldSet.empty(sig)
    return belief_set(outcome)


def _compact_above(s: RankedState, skip_mask: int, base: int) -> dict[int, int]:
    """New ranks for valuations outside skip_mask: relative order preserved,
    compacted to base, base+1, ..."""
    old = sorted({s.ranks[v] for v in s.sig.valuations() if not (skip_mask >> v) & 1})
    index = {rank: base + i for i, rank in enumerate(old)}
    return {
        v: index[s.ranks[v]]
        for v in s.sig.valuations()
        if not (skip_mask >> v) & 1
    }


@lru_cache(maxsize=_CACHE_SIZE)
def natural_revision(s: RankedState, a: WorldSet) -> RevisionOutcome:
    if not a:
        return ABSURD
    low = min_worlds(s, a)
    new_ranks = _compact_above(s, low.mask, 1)
    for v in low:
        new_ranks[v] = 0
    return RankedState(s.sig, tuple(new_ranks[v] for v in s.sig.valuations()))


@lru_cache(maxsize=_CACHE_SIZE)
def flatten_revision(s: RankedState, a: WorldSet) -> RevisionOutcome:
    if not a:
        return ABSURD
    tier0 = min_worlds(s, a)
    tier1 = min_worlds(s, a.complement())
    ranks = []
    used = sorted({0} | ({1} if tier1 else set()) | (
        {2} if (s.sig.full_mask & ~tier0.mask & ~tier1.mask) else set()
    ))
    compact = {r: i for i, r in enumerate(used)}
    for v in s.sig.valuations():
        if v in tier0:
            ranks.append(compact[0])
        elif v in tier1:
            ranks.append(compact[1])
        else:
            ranks.append(compact[2])
    return RankedState(s.sig, tuple(ranks))


@lru_cache(maxsize=_CACHE_SIZE)
def lexicographic_revision(s: RankedState, a: WorldSet) -> RevisionOutcome:
    if not a:
        return ABSURD
    inside = sorted({s.ranks[v] for v in a})
    outside = sorted({s.ranks[v] for v in a.complement()})
    in_index = {r: i for i, r in enumerate(inside)}
    out_index = {r: len(inside) + i for i, r in enumerate(outside)}
    ranks = tuple(
        in_index[s.ranks[v]] if v in a else out_index[s.ranks[v]]
        for v in s.sig.valuations()
    )
    return RankedState(s.sig, ranks)


@lru_cache(maxsize=_CACHE_SIZE)
def reverse_revision(s: RankedState, a: WorldSet) -> RevisionOutcome:
    if not a:
        return ABSURD
    inside = sorted({s.ranks[v] for v in a})
    outside = sorted({s.ranks[v] for v in a.complement()}, reverse=True)
    in_index = {r: i for i, r in enumerate(inside)}
    out_index = {r: len(inside) + i for i, r in enumerate(outside)}
    ranks = tuple(
        in_index[s.ranks[v]] if v in a else out_index[s.ranks[v]]
        for v in s.sig.valuations()
    )
    return RankedState(s.sig, ranks)


@lru_cache(maxsize=_CACHE_SIZE)
def natural_contraction(s: RankedState, a: WorldSet) -> RankedState:
    current = belief_set(s)
    if not current.issubset(a) or a.mask == s.sig.full_mask:
        return s
    low_mask = current.mask | min_worlds(s, a.complement()).mask
    new_ranks = _compact_above(s, low_mask, 1)
    for v in WorldSet(s.sig, low_mask):
        new_ranks[v] = 0
    return RankedState(s.sig, tuple(new_ranks[v] for v in s.sig.valuations()))


@lru_cache(maxsize=_CACHE_SIZE)
def drastic_withdrawal(s: RankedState, a: WorldSet) -> RankedState:
    if not belief_set(s).issubset(a):
        return s
    return uniform_state(s.sig)


@dataclass(frozen=True)
class RevisionOperator:
    name: str
    fn: Callable[[RankedState, WorldSet], RevisionOutcome] = field(compare=False)

    def __call__(self, s: RankedState, a: WorldSet) -> RevisionOutcome:
        return self.fn(s, a)


@dataclass(frozen=True)
class ContractionOperator:
    name: str
    fn: Callable[[RankedState, WorldSet], RankedState] = field(compare=False)

    def __call__(self, s: RankedState, a: WorldSet) -> RankedState:
        return self.fn(s, a)


@dataclass(frozen=True)
class OperatorPair:
    revision: RevisionOperator
    contraction: ContractionOperator

    @property
    def name(self) -> str:
        return f"{self.revision.name}+{self.contraction.name}"


REVISION_OPERATORS: dict[str, RevisionOperator] = {
    "natural": RevisionOperator("natural", natural_revision),
    "flatten": RevisionOperator("flatten", flatten_revision),
    "lex": RevisionOperator("lex", lexicographic_revision),
    "reverse": RevisionOperator("reverse", reverse_revision),
}

CONTRACTION_OPERATORS: dict[str, ContractionOperator] = {
    "natural-con": ContractionOperator("natural-con", natural_contraction),
    "drastic": ContractionOperator("drastic", drastic_withdrawal),
}


def get_revision(name: str) -> RevisionOperator:
    try:
        return REVISION_OPERATORS[name]
    except KeyError:
        known = ", ".join(REVISION_OPERATORS)
        raise ValueError(f"unknown revision operator {name!r} (known: {known})") from None


def get_contraction(name: str) -> ContractionOperator:
    try:
        return CONTRACTION_OPERATORS[name]
    except KeyError:
        known = ", ".join(CONTRACTION_OPERATORS)
        raise ValueError(f"unknown contraction operator {name!r} (known: {known})") from None


def make_pair(revision: str = "natural", contraction: str = "natural-con") -> OperatorPair:
    return OperatorPair(get_revision(revision), get_contraction(contraction))


Step = tuple[str, WorldSet]  # ("revise" | "contract", input)


def apply_sequence(
    ops: OperatorPair, s: RankedState, steps: Iterable[Step]
) -> list[RevisionOutcome]:
    """Run a revise/contract sequence, returning the full trace.

    The trace includes the initial state.  Revising the absurd state by a
    satisfiable input restarts from the uniform state; contracting it, or
    revising it by the empty WorldSet again, is unsupported.
    """
    trace: list[RevisionOutcome] = [s]
    current: RevisionOutcome = s
    for kind, a in steps:
        if kind == "revise":
            if current is ABSURD:
                if not a:
                    raise UnsupportedSequenceError(
                        "cannot revise the absurd state by an unsatisfiable input"
                    )
                current = ops.revision(uniform_state(a.sig), a)
            else:
                current = ops.revision(current, a)
        elif kind == "contract":
            if current is ABSURD:
                raise UnsupportedSequenceError("cannot contract the absurd state")
            current = ops.contraction(current, a)
        else:
            raise ValueError(f"unknown step kind {kind!r}")
        trace.append(current)
    return trace
