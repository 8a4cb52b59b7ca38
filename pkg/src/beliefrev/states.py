"""Ranked epistemic states.

A state is a total map valuation -> natural-number rank, kept in normalized
form: ranks occupy a contiguous range 0..k with every level non-empty.  Lower
rank means more plausible; level 0 is the belief set.  Two states encode the
same epistemic state exactly when their normalized rank maps coincide, so the
total preorder is the identity of the state.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .logic import Formula, Signature, SignatureMismatchError, WorldSet, models

MAX_ENUM_ATOMS = 3


@dataclass(frozen=True)
class RankedState:
    """Normalized rank function over all valuations of the signature."""

    sig: Signature
    ranks: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.ranks, tuple):
            object.__setattr__(self, "ranks", tuple(self.ranks))
        if len(self.ranks) != self.sig.num_valuations:
            raise ValueError(
                f"expected {self.sig.num_valuations} ranks, got {len(self.ranks)}"
            )
        used = set(self.ranks)
        if used != set(range(len(used))):
            raise ValueError("ranks not normalized: must cover 0..k contiguously")

    @property
    def num_levels(self) -> int:
        return max(self.ranks) + 1

    def rank_of(self, valuation: int) -> int:
        return self.ranks[valuation]

    def level(self, rank: int) -> WorldSet:
        return WorldSet(self.sig, _level_masks(self)[rank])

    def __repr__(self) -> str:
        levels = ["{" + ",".join(self.level(r).bitstrings()) + "}" for r in range(self.num_levels)]
        return f"RankedState({' < '.join(levels)})"


@lru_cache(maxsize=65536)
def _level_masks(s: RankedState) -> tuple[int, ...]:
    masks = [0] * s.num_levels
    for v, r in enumerate(s.ranks):
        masks[r] |= 1 << v
    return tuple(masks)


def normalize(sig: Signature, raw: Mapping | Sequence[int]) -> RankedState:
    """Compact arbitrary natural ranks to contiguous 0..k, preserving order.

    Accepts a sequence indexed by valuation, or a mapping keyed by valuation
    integers or bitstrings.  Idempotent.  Every valuation must be ranked.
    """
    total = sig.num_valuations
    assigned: list[int | None] = [None] * total
    if isinstance(raw, Mapping):
        for key, rank in raw.items():
            v = sig.valuation_of(key) if isinstance(key, str) else int(key)
            if not 0 <= v < total:
                raise ValueError(f"valuation {key!r} out of range")
            if assigned[v] is not None:
                raise ValueError(f"duplicate rank for valuation {sig.bitstring(v)}")
            assigned[v] = int(rank)
    else:
        values = list(raw)
        if len(values) != total:
            raise ValueError(f"expected {total} ranks, got {len(values)}")
        assigned = [int(r) for r in values]
    missing = [sig.bitstring(v) for v, r in enumerate(assigned) if r is None]
    if missing:
        raise ValueError(f"missing valuation(s): {', '.join(missing)}")
    ranks = [int(r) for r in assigned]  # type: ignore[arg-type]
    if any(r < 0 for r in ranks):
        raise ValueError("ranks must be natural numbers")
    order = {old: new for new, old in enumerate(sorted(set(ranks)))}
    return RankedState(sig, tuple(order[r] for r in ranks))


def uniform_state(sig: Signature) -> RankedState:
    """The state of total ignorance: every valuation at rank 0."""
    return RankedState(sig, (0,) * sig.num_valuations)


def min_worlds(s: RankedState, a: WorldSet) -> WorldSet:
    """Minimal-rank members of a; empty exactly when a is empty."""
    if s.sig != a.sig:
        raise SignatureMismatchError(
            f"signature mismatch: {s.sig.atoms} vs {a.sig.atoms}"
        )
    for level_mask in _level_masks(s):
        hit = level_mask & a.mask
        if hit:
            return WorldSet(s.sig, hit)
    return WorldSet.empty(s.sig)


def belief_set(s: RankedState) -> WorldSet:
    """Models of the extracted knowledge base: the rank-0 level."""
    return WorldSet(s.sig, _level_masks(s)[0])


def believes(s: RankedState, f: Formula) -> bool:
    return belief_set(s).issubset(models(f, s.sig))


def state_equal(s1: RankedState, s2: RankedState) -> bool:
    """Whether the induced total preorders coincide."""
    if s1.sig != s2.sig:
        raise SignatureMismatchError(
            f"signature mismatch: {s1.sig.atoms} vs {s2.sig.atoms}"
        )
    return s1.ranks == s2.ranks


# --- State files -----------------------------------------------------------
#
# UTF-8 text; '#' starts a comment.  First line "atoms: r g s", then one
# "<bitstring>: <rank>" line per valuation, in any order.  Ranks are
# arbitrary naturals; loading normalizes.


class StateFileError(ValueError):
    """A state file or state text is malformed."""


def state_to_text(s: RankedState) -> str:
    lines = ["atoms: " + " ".join(s.sig.atoms)]
    lines += [f"{s.sig.bitstring(v)}: {s.ranks[v]}" for v in s.sig.valuations()]
    return "\n".join(lines) + "\n"


def parse_state_text(text: str) -> RankedState:
    lines = []
    for raw_line in text.splitlines():
        line = raw_line.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise StateFileError("empty state text")
    header = lines[0]
    if not header.startswith("atoms:"):
        raise StateFileError("first line must be 'atoms: <names>'")
    names = header[len("atoms:"):].split()
    try:
        sig = Signature(tuple(names))
    except ValueError as exc:
        raise StateFileError(f"bad atoms line: {exc}") from exc
    entries: dict[str, int] = {}
    for line in lines[1:]:
        if ":" not in line:
            raise StateFileError(f"bad line {line!r}: expected '<bits>: <rank>'")
        bits, rank_text = (part.strip() for part in line.split(":", 1))
        try:
            sig.valuation_of(bits)
        except ValueError as exc:
            raise StateFileError(str(exc)) from exc
        if bits in entries:
            raise StateFileError(f"duplicate valuation {bits}")
        try:
            rank = int(rank_text)
        except ValueError:
            raise StateFileError(f"bad rank {rank_text!r} for valuation {bits}") from None
        if rank < 0:
            raise StateFileError(f"negative rank for valuation {bits}")
        entries[bits] = rank
    try:
        return normalize(sig, entries)
    except ValueError as exc:
        raise StateFileError(str(exc)) from exc


def load_state_file(path) -> RankedState:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_state_text(handle.read())


# --- Enumeration and sampling ----------------------------------------------


def count_weak_orders(num_elements: int) -> int:
    """Number of weak orders (ordered set partitions) of a finite set."""
    counts = [1]
    for t in range(1, num_elements + 1):
        counts.append(sum(math.comb(t, j) * counts[t - j] for j in range(1, t + 1)))
    return counts[num_elements]


def _surjective_vectors(length: int, onto: int) -> Iterator[tuple[int, ...]]:
    """All surjections {0..length-1} -> {0..onto-1}, lexicographic."""
    vec = [0] * length

    def go(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == length:
            yield tuple(vec)
            return
        budget = length - i - 1
        for value in range(onto):
            new_used = used | (1 << value)
            if onto - new_used.bit_count() <= budget:
                vec[i] = value
                yield from go(i + 1, new_used)

    return go(0, 0)


def _exhaustive_iter(sig: Signature) -> Iterator[RankedState]:
    total = sig.num_valuations
    for levels in range(1, total + 1):
        for vec in _surjective_vectors(total, levels):
            yield RankedState(sig, vec)


def _sampled_iter(sig: Signature, count: int, seed: int) -> Iterator[RankedState]:
    rng = random.Random(seed)
    total = sig.num_valuations
    for _ in range(count):
        yield normalize(sig, [rng.randrange(total) for _ in range(total)])


@dataclass
class StateStream:
    """Deterministic, re-iterable sequence of states with generation metadata.

    Exhaustive streams yield every weak order on the valuations exactly once,
    ordered by number of levels and then lexicographically on the rank
    vector.  Sampled streams are reproducible from the seed.  Iterating a
    stream twice yields identical sequences, so consumers may partition it
    into disjoint chunks by position.
    """

    sig: Signature
    mode: str  # "exhaustive" | "sampled"
    count: int
    seed: int | None = None

    def __iter__(self) -> Iterator[RankedState]:
        if self.mode == "exhaustive":
            return _exhaustive_iter(self.sig)
        if self.mode == "sampled":
            assert self.seed is not None
            return _sampled_iter(self.sig, self.count, self.seed)
        raise ValueError(f"unknown mode {self.mode!r}")


def enumerate_states(sig: Signature) -> StateStream:
    """Every weak order on the valuations, each exactly once, normalized.

    Restricted to small signatures: the count grows as the ordered Bell
    number of 2**n (545835 already at n = 3).
    """
    if sig.n > MAX_ENUM_ATOMS:
        raise ValueError(
            f"signature too large for exhaustive enumeration: n = {sig.n} (max {MAX_ENUM_ATOMS})"
        )
    return StateStream(sig, "exhaustive", count_weak_orders(sig.num_valuations))


def sample_states(sig: Signature, count: int, seed: int) -> StateStream:
    """Reproducible sample: per state, draw each valuation's rank uniformly
    from 0..2**n - 1 with the seeded generator, then normalize."""
    if count < 1:
        raise ValueError("count must be at least 1")
    return StateStream(sig, "sampled", count, seed)
