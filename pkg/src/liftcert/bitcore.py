"""Bitstring indexing and the unique-disjointness matrix.

Rows and columns of every matrix in this package are indexed by fixed-width
bitstrings ordered lexicographically with the leftmost bit most significant,
so lexicographic order coincides with numeric order of the underlying value
and the leading bit selects the block row/column in block decompositions.

The central object is UDISJ(n), the 2^n x 2^n matrix with entry
(1 - a.b)^2 at the bitstring pair (a, b).  Its combinatorial statistic
``val`` counts the disjoint pairs (a.b = 0) carrying a positive entry;
val(UDISJ(n)) = 3^n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

MAX_WIDTH = 16
MAX_DENSE_N = 10

#: Relative zero-classification threshold: an entry is treated as zero when it
#: does not exceed EPS_ZERO * scale(M), with scale(M) the largest entry.
#: Sampled Gram products carry rounding noise many orders below this, while
#: genuinely positive entries sit many orders above it.
EPS_ZERO = 1e-9


@dataclass(frozen=True, order=True)
class BitString:
    """A fixed-width bitstring, compared lexicographically (MSB first)."""

    width: int
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width {self.width} outside [0, {MAX_WIDTH}]")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} does not fit in width {self.width}")

    @classmethod
    def from_text(cls, text: str) -> "BitString":
        if text and set(text) - {"0", "1"}:
            raise ValueError(f"not a 0/1 string: {text!r}")
        return cls(len(text), int(text, 2) if text else 0)

    @classmethod
    def zero(cls, width: int) -> "BitString":
        return cls(width, 0)

    @classmethod
    def ones(cls, width: int) -> "BitString":
        return cls(width, (1 << width) - 1)

    @classmethod
    def unit(cls, width: int, i: int) -> "BitString":
        """The string e_i with a single 1 in position i (1-indexed from the left)."""
        if not 1 <= i <= width:
            raise ValueError(f"position {i} outside [1, {width}]")
        return cls(width, 1 << (width - i))

    def bit(self, i: int) -> int:
        """Bit in position i, 1-indexed from the left (most significant)."""
        if not 1 <= i <= self.width:
            raise ValueError(f"position {i} outside [1, {self.width}]")
        return (self.value >> (self.width - i)) & 1

    def complement(self) -> "BitString":
        return BitString(self.width, self.value ^ ((1 << self.width) - 1))

    def weight(self) -> int:
        return self.value.bit_count()

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b") if self.width else ""

    def __repr__(self) -> str:
        return f"BitString('{self}')"


def all_strings(width: int) -> list[BitString]:
    """All bitstrings of the given width in lexicographic order."""
    return [BitString(width, v) for v in range(1 << width)]


def intersection_size(a: BitString, b: BitString) -> int:
    """Number of positions where both strings carry a 1 (the inner product a.b)."""
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} vs {b.width}")
    return (a.value & b.value).bit_count()


def concat(x: BitString, a: BitString) -> BitString:
    """Concatenate, with x occupying the leading (most significant) positions."""
    if x.width + a.width > MAX_WIDTH:
        raise ValueError(f"combined width {x.width + a.width} exceeds {MAX_WIDTH}")
    return BitString(x.width + a.width, (x.value << a.width) | a.value)


def split(s: BitString, d: int) -> tuple[BitString, BitString]:
    """Inverse of concat: the leading d bits and the trailing width-d bits."""
    if not 0 <= d <= s.width:
        raise ValueError(f"cannot split off {d} bits from width {s.width}")
    tail_width = s.width - d
    return (
        BitString(d, s.value >> tail_width),
        BitString(tail_width, s.value & ((1 << tail_width) - 1)),
    )


def iter_disjoint_pairs(n: int) -> Iterator[tuple[BitString, BitString]]:
    """Yield the 3^n disjoint pairs (a.b = 0) in lex-by-row-then-column order.

    Never materializes the full 4^n pair space: for each row a, the admissible
    columns are exactly the submasks of the complement of a.
    """
    if not 0 <= n <= MAX_WIDTH:
        raise ValueError(f"n = {n} outside [0, {MAX_WIDTH}]")
    for av in range(1 << n):
        mask = ~av & ((1 << n) - 1)
        # standard submask walk enumerates descending; reverse per row to
        # restore ascending column order
        subs = []
        s = mask
        while True:
            subs.append(s)
            if s == 0:
                break
            s = (s - 1) & mask
        a = BitString(n, av)
        for bv in reversed(subs):
            yield a, BitString(n, bv)


def enumerate_disjoint_pairs(n: int) -> list[tuple[BitString, BitString]]:
    """The 3^n disjoint pairs as a list, lex-by-row-then-column."""
    if not 1 <= n <= MAX_WIDTH:
        raise ValueError(f"n = {n} outside [1, {MAX_WIDTH}]")
    return list(iter_disjoint_pairs(n))


@dataclass(frozen=True)
class SupportMatrix:
    """A nonnegative matrix indexed by width-n bitstring pairs, stored sparsely.

    Absent entries are zero.  Stored entries may be positive numerical noise;
    the *support* is the set of pairs whose value exceeds the relative
    threshold eps * scale, where scale is the largest stored entry.  Exact
    integer matrices (such as UDISJ) keep integer values so that support
    questions are exact.
    """

    n: int
    entries: dict[tuple[BitString, BitString], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_WIDTH:
            raise ValueError(f"n = {self.n} outside [0, {MAX_WIDTH}]")
        for (a, b), v in self.entries.items():
            if a.width != self.n or b.width != self.n:
                raise ValueError(f"index ({a}, {b}) has width != {self.n}")
            if v < 0:
                raise ValueError(f"negative entry {v} at ({a}, {b})")

    def value(self, a: BitString, b: BitString) -> float:
        return self.entries.get((a, b), 0)

    @property
    def scale(self) -> float:
        """Largest entry; 0 for the zero matrix."""
        return max(self.entries.values(), default=0)

    def threshold(self, eps: float = EPS_ZERO) -> float:
        return eps * self.scale

    def support(self, eps: float = EPS_ZERO) -> set[tuple[BitString, BitString]]:
        """Pairs whose value exceeds the zero-classification threshold."""
        thr = self.threshold(eps)
        return {pair for pair, v in self.entries.items() if v > thr}

    def __add__(self, other: "SupportMatrix") -> "SupportMatrix":
        if self.n != other.n:
            raise ValueError(f"size mismatch: n = {self.n} vs {other.n}")
        merged = dict(self.entries)
        for pair, v in other.entries.items():
            merged[pair] = merged.get(pair, 0) + v
        return SupportMatrix(self.n, merged)


def udisj(n: int) -> SupportMatrix:
    """The unique-disjointness matrix: entry (a, b) equals (1 - a.b)^2.

    Entries are exact integers; the (a, b) entry vanishes precisely when the
    strings intersect in exactly one position.
    """
    if not 1 <= n <= MAX_DENSE_N:
        raise ValueError(f"n = {n} outside [1, {MAX_DENSE_N}] (dense cap)")
    entries: dict[tuple[BitString, BitString], float] = {}
    for a in all_strings(n):
        for b in all_strings(n):
            k = intersection_size(a, b)
            if k != 1:
                entries[(a, b)] = (1 - k) ** 2
    return SupportMatrix(n, entries)


def cor_slack(a: BitString, b: BitString) -> int:
    """Slack of the vertex bb^T against the inequality <2 diag(a) - aa^T, x> <= 1.

    Computed by the explicit matrix inner product, not through the closed
    form, so it serves as an independent route to the UDISJ entry.
    """
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} vs {b.width}")
    n = a.width
    abits = [a.bit(i) for i in range(1, n + 1)]
    bbits = [b.bit(i) for i in range(1, n + 1)]
    ip = 0
    for i in range(n):
        for j in range(n):
            lhs = 2 * abits[i] * (i == j) - abits[i] * abits[j]
            ip += lhs * bbits[i] * bbits[j]
    return 1 - ip


def val(m: SupportMatrix, eps: float = EPS_ZERO) -> int:
    """Number of disjoint pairs carrying an entry above the zero threshold."""
    return sum(1 for a, b in m.support(eps) if intersection_size(a, b) == 0)


def is_atom_pattern(m: SupportMatrix, eps: float = EPS_ZERO) -> bool:
    """True iff every pair intersecting in exactly one position is (numerically) zero."""
    thr = m.threshold(eps)
    return all(
        v <= thr for (a, b), v in m.entries.items() if intersection_size(a, b) == 1
    )


def has_antidiagonal_zero(
    m: SupportMatrix, eps: float = EPS_ZERO
) -> Optional[BitString]:
    """Lex-smallest a with a numerically zero entry at (a, complement(a)), if any."""
    thr = m.threshold(eps)
    for a in all_strings(m.n):
        if m.value(a, a.complement()) <= thr:
            return a
    return None


def matrix_to_csv(m: SupportMatrix) -> str:
    """Dense CSV with lex-ordered bitstring headers."""
    cols = all_strings(m.n)
    lines = ["," + ",".join(str(c) for c in cols)]
    for a in all_strings(m.n):
        lines.append(str(a) + "," + ",".join(repr(m.value(a, c)) for c in cols))
    return "\n".join(lines) + "\n"


def matrix_to_json(m: SupportMatrix, eps: float = EPS_ZERO) -> str:
    """JSON object listing only the entries above the zero threshold."""
    rows = sorted((str(a), str(b), m.value(a, b)) for a, b in m.support(eps))
    obj = {"n": m.n, "entries": [[a, b, v] for a, b, v in rows]}
    return json.dumps(obj, sort_keys=True)


def matrix_from_entries(
    n: int, items: Iterable[tuple[str, str, float]]
) -> SupportMatrix:
    """Build a matrix from (row text, column text, value) triples."""
    entries = {
        (BitString.from_text(a), BitString.from_text(b)): v for a, b, v in items
    }
    return SupportMatrix(n, entries)
