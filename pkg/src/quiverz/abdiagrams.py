"""Alternating a/b string diagrams for pairs of maps A: V -> W, B: W -> V
with both compositions nilpotent.

Each row is an alternating word in a and b; the letters of a row are basis
vectors (a's in V, b's in W) and each letter maps to its right neighbour, the
last letter to zero.  A diagram -- a multiset of rows -- therefore determines
a pair (A, B) with Jordan types: type(BA) = the partition of per-row a-counts
(the a-part) and type(AB) = the per-row b-counts (the b-part).

Rows with a fixed a-part are enumerated by how many extra b's each row
absorbs at its ends (0, 1 or 2) plus any number of singleton-b rows; over all
placements the achievable b-parts form a dominance-bounded family whose
maximum is add(a_part, extra).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Set, Tuple

from quiverz.exactmat import ExactMatrix, FieldSpec
from quiverz.partitions import Partition, add, dominates


@dataclass(frozen=True)
class ABRow:
    """One alternating row: a_count letters a, a_count - 1 interior b's, plus
    optional leading/trailing b.  a_count = 0 encodes the singleton row "b"
    (leading_b True, trailing_b False by convention)."""

    a_count: int
    leading_b: bool = False
    trailing_b: bool = False

    def __post_init__(self):
        if self.a_count < 0:
            raise ValueError(f"a_count must be nonnegative: {self.a_count}")
        if self.a_count == 0 and not (self.leading_b and not self.trailing_b):
            raise ValueError("a singleton-b row is encoded as leading_b only")

    @property
    def b_count(self) -> int:
        if self.a_count == 0:
            return 1
        return self.a_count - 1 + int(self.leading_b) + int(self.trailing_b)

    @property
    def length(self) -> int:
        return self.a_count + self.b_count

    def to_string(self) -> str:
        if self.a_count == 0:
            return "b"
        body = "a" + "ba" * (self.a_count - 1)
        return ("b" if self.leading_b else "") + body + ("b" if self.trailing_b else "")

    @classmethod
    def parse(cls, word: str) -> "ABRow":
        if not word or any(ch not in "ab" for ch in word):
            raise ValueError(f"row must be a nonempty word over {{a,b}}: {word!r}")
        if any(word[i] == word[i + 1] for i in range(len(word) - 1)):
            raise ValueError(f"row letters must alternate: {word!r}")
        if word == "b":
            return cls(0, True, False)
        return cls(word.count("a"), word[0] == "b", word[-1] == "b")


def _row_sort_key(row: ABRow) -> tuple:
    return (-row.length, -row.a_count, row.to_string())


class ABDiagram:
    """Multiset of ABRows, kept in a canonical order (longest first)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[ABRow]):
        self.rows = tuple(sorted(rows, key=_row_sort_key))

    @classmethod
    def from_strings(cls, words: Sequence[str]) -> "ABDiagram":
        return cls([ABRow.parse(w) for w in words])

    def to_strings(self) -> List[str]:
        return [row.to_string() for row in self.rows]

    @property
    def a_part(self) -> Partition:
        return Partition(sorted((r.a_count for r in self.rows if r.a_count), reverse=True))

    @property
    def b_part(self) -> Partition:
        return Partition(sorted((r.b_count for r in self.rows if r.b_count), reverse=True))

    @property
    def total_a(self) -> int:
        return sum(r.a_count for r in self.rows)

    @property
    def total_b(self) -> int:
        return sum(r.b_count for r in self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, ABDiagram) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"ABDiagram({self.to_strings()})"


@lru_cache(maxsize=None)
def _base_b_counts(parts: tuple) -> tuple:
    """For each possible number of extra b's spent inside the rows, the set of
    per-row b-count multisets: row i takes p_i - 1 interior b's and 0..2 end
    b's.  One exhaustive 3^s pass, deduplicated."""
    used: Dict[int, Set[tuple]] = {}
    for jvec in itertools.product((0, 1, 2), repeat=len(parts)):
        counts = tuple(
            sorted((p - 1 + j for p, j in zip(parts, jvec) if p - 1 + j > 0), reverse=True)
        )
        used.setdefault(sum(jvec), set()).add(counts)
    return tuple(sorted((k, tuple(sorted(v))) for k, v in used.items()))


def _row_with_extra(a_count: int, extra: int, lead_first: bool = True) -> ABRow:
    if extra == 0:
        return ABRow(a_count)
    if extra == 1:
        return ABRow(a_count, leading_b=lead_first, trailing_b=not lead_first)
    return ABRow(a_count, leading_b=True, trailing_b=True)


def enumerate_b_parts(eta: Partition, a: int, witnesses: bool = False):
    """All b-parts of diagrams with a-part exactly eta and weight(eta) + a
    total b's.  Returns a set of Partitions, or with witnesses=True a dict
    mapping each b-part to one diagram realizing it."""
    if a < 0:
        raise ValueError(f"extra b-count must be nonnegative: {a}")
    s = len(eta)
    budget = s + a
    if not witnesses:
        out = set()
        for used, countsets in _base_b_counts(eta.parts):
            if used > budget:
                continue
            ones = (1,) * (budget - used)
            for counts in countsets:
                out.add(Partition(counts + ones))
        return out
    found: Dict[Partition, ABDiagram] = {}
    for jvec in itertools.product((0, 1, 2), repeat=s):
        used = sum(jvec)
        if used > budget:
            continue
        rows = [_row_with_extra(p, j) for p, j in zip(eta.parts, jvec)]
        rows.extend(ABRow(0, True, False) for _ in range(budget - used))
        delta = ABDiagram(rows)
        found.setdefault(delta.b_part, delta)
    return found


def max_diagram(eta: Partition, a: int) -> ABDiagram:
    """The placement with all extra b's as high as possible; its b-part is
    add(eta, a)."""
    if a < 0:
        raise ValueError(f"extra b-count must be nonnegative: {a}")
    s = len(eta)
    if a >= s:
        rows = [_row_with_extra(p, 2) for p in eta.parts]
        rows.extend(ABRow(0, True, False) for _ in range(a - s))
    else:
        half = (s + a) // 2
        rows = [_row_with_extra(p, 2) for p in eta.parts[:half]]
        if (s + a) % 2:
            rows.append(_row_with_extra(eta.parts[half], 1))
            rows.extend(ABRow(p) for p in eta.parts[half + 1 :])
        else:
            rows.extend(ABRow(p) for p in eta.parts[half:])
    delta = ABDiagram(rows)
    assert delta.b_part == add(eta, a)
    return delta


def random_diagram(eta: Partition, a: int, rng) -> ABDiagram:
    """A uniformly random end-placement of the extra b's (rejection on the
    in-row budget), for sampling arbitrary points of the pair variety."""
    s = len(eta)
    budget = s + a
    while True:
        jvec = [rng.randrange(3) for _ in range(s)]
        if sum(jvec) <= budget:
            break
    rows = [_row_with_extra(p, j, lead_first=bool(rng.randrange(2))) for p, j in zip(eta.parts, jvec)]
    rows.extend(ABRow(0, True, False) for _ in range(budget - sum(jvec)))
    return ABDiagram(rows)


def max_b_part(eta: Partition, a: int) -> Partition:
    """Dominance-maximum of enumerate_b_parts(eta, a).

    The maximum is located inside the enumerated set and checked against the
    add formula; a failure of either check is an internal bug, not bad data."""
    candidates = enumerate_b_parts(eta, a)
    maxima = [
        x for x in candidates if all(dominates(x, y) for y in candidates)
    ]
    assert len(maxima) == 1, f"dominance maximum not unique for {eta}, {a}: {maxima}"
    assert maxima[0] == add(eta, a), (
        f"enumerated maximum {maxima[0]} differs from add({eta}, {a}) = {add(eta, a)}"
    )
    return maxima[0]


def build_pair(delta: ABDiagram, field: FieldSpec) -> Tuple[ExactMatrix, ExactMatrix]:
    """Matrices (A, B) of the representation encoded by delta.

    Basis vectors are the letters; every letter maps to the next letter of
    its row (zero at the end).  A collects the a -> b images, B the b -> a
    images, so type(BA) = a_part and type(AB) = b_part."""
    n = delta.total_a
    nb = delta.total_b
    a_entries = [0] * (nb * n)
    b_entries = [0] * (n * nb)
    ai = bi = 0
    for row in delta.rows:
        prev = None
        for ch in row.to_string():
            if ch == "a":
                idx = ai
                ai += 1
            else:
                idx = bi
                bi += 1
            if prev is not None:
                pch, pidx = prev
                if pch == "a":
                    a_entries[idx * n + pidx] = 1
                else:
                    b_entries[idx * nb + pidx] = 1
            prev = (ch, idx)
    A = ExactMatrix(nb, n, a_entries, field)
    B = ExactMatrix(n, nb, b_entries, field)
    return A, B
