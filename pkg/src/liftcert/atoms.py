"""Random atoms: PSD-factorized matrices vanishing on intersection-one pairs.

An atom of size 2^n x 2^n over the cone of d x d PSD matrices assigns a PSD
matrix U_a to every row string and V_b to every column string; the evaluated
matrix has entries <U_a, V_b> and must vanish whenever a and b intersect in
exactly one position.

The sampler constructs such factorizations directly: one side is drawn at
random, and each matrix on the other side is built inside the intersection of
the kernels of its intersection-one partners, so the required zeros hold by
construction (numerically they land many orders below the classification
threshold).  On top of the sampler sit two falsifiable oracles:

* ``antidiagonal_witness`` finds, for n = d, a pair (a, complement(a)) whose
  entry is zero, by walking the nondecreasing chain of column-image sums
  F_i = Im V_{e_1} + ... + Im V_{e_i}.  Every square atom has such a zero.
* ``classify_pattern_d2`` checks that a 4 x 4 atom over 2 x 2 PSD matrices
  has one of six admissible sparsity patterns (hence at most 7 positive
  disjoint entries).

Both raise a falsification error when the claimed structure fails, carrying
the offending object for serialization; such evidence would refute the
sparsity analysis and is the most valuable possible output of the suite.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Callable, Mapping, Union

import numpy as np

from .bitcore import (
    EPS_ZERO,
    MAX_DENSE_N,
    BitString,
    SupportMatrix,
    all_strings,
    intersection_size,
)
from .linalg import (
    MAX_DIM,
    PsdMatrix,
    Subspace,
    image,
    inner,
    kernel,
    random_psd,
    subspace_intersect,
    subspace_sum,
)

MAX_SAMPLE_N = 8

#: An inner product below this fraction of its Cauchy-Schwarz bound
#: ||U_a||_F * ||V_b||_F is a by-construction zero carrying only rounding
#: noise (~1e-30 relative after squaring orthogonality defects) and is stored
#: as an exact zero.  Without this, an atom whose genuine entries all vanish
#: would have its largest noise entry as the matrix scale and could never
#: clear its own relative threshold.
NOISE_REL = 1e-20

RankProfile = Union[str, int, Callable[[np.random.Generator, int], int]]


class FalsificationError(Exception):
    """A randomized oracle hit a state the sparsity analysis rules out."""

    def __init__(self, message: str, factorization: "PsdFactorization | None" = None):
        super().__init__(message)
        self.factorization = factorization


class NoPatternMatches(FalsificationError):
    """Support of a 4 x 4 atom fits none of the six admissible patterns."""

    def __init__(self, message: str, matrix: SupportMatrix,
                 factorization: "PsdFactorization | None" = None):
        super().__init__(message, factorization)
        self.matrix = matrix


@dataclass(frozen=True)
class PsdFactorization:
    """Per-index d x d PSD Gram factors realizing M_{a,b} = <U_a, V_b>."""

    n: int
    d: int
    U: Mapping[BitString, PsdMatrix]
    V: Mapping[BitString, PsdMatrix]

    def __post_init__(self) -> None:
        expected = set(all_strings(self.n))
        for name, side in (("U", self.U), ("V", self.V)):
            if set(side) != expected:
                raise ValueError(f"{name} must have one entry per width-{self.n} string")
            for mat in side.values():
                if mat.d != self.d:
                    raise ValueError(f"{name} entry has dimension {mat.d} != {self.d}")


def evaluate(f: PsdFactorization) -> SupportMatrix:
    """Dense matrix of pairwise trace inner products (all entries >= 0).

    Entries at rounding-noise level relative to their Cauchy-Schwarz bound
    (see NOISE_REL) are stored as exact zeros.
    """
    if f.n > MAX_DENSE_N:
        raise ValueError(f"n = {f.n} exceeds dense cap {MAX_DENSE_N}")
    strings = all_strings(f.n)
    u_norm = {a: inner(f.U[a], f.U[a]) ** 0.5 for a in strings}
    v_norm = {b: inner(f.V[b], f.V[b]) ** 0.5 for b in strings}
    entries: dict[tuple[BitString, BitString], float] = {}
    for a in strings:
        ua = f.U[a]
        for b in strings:
            v = inner(ua, f.V[b])
            if v > NOISE_REL * u_norm[a] * v_norm[b]:
                entries[(a, b)] = v
    return SupportMatrix(f.n, entries)


def _draw_rank(profile: RankProfile, gen: np.random.Generator, d: int) -> int:
    if profile == "uniform":
        return int(gen.integers(0, d + 1))
    if profile == "full":
        return d
    if isinstance(profile, int):
        if not 0 <= profile <= d:
            raise ValueError(f"fixed rank {profile} outside [0, {d}]")
        return profile
    if callable(profile):
        r = int(profile(gen, d))
        if not 0 <= r <= d:
            raise ValueError(f"rank profile returned {r} outside [0, {d}]")
        return r
    raise ValueError(f"unknown rank profile: {profile!r}")


def _constrained_side(
    free: Mapping[BitString, PsdMatrix],
    strings: list[BitString],
    d: int,
    profile: RankProfile,
    gen: np.random.Generator,
) -> dict[BitString, PsdMatrix]:
    """Matrices spanned by vectors drawn inside the kernels of all
    intersection-one partners on the free side."""
    kernels = {a: kernel(free[a]) for a in strings}
    out: dict[BitString, PsdMatrix] = {}
    for b in strings:
        partners = [a for a in strings if intersection_size(a, b) == 1]
        if partners:
            space = subspace_intersect([kernels[a] for a in partners])
        else:
            space = Subspace.full(d)
        r = _draw_rank(profile, gen, d)
        if r == 0 or space.dim == 0:
            out[b] = PsdMatrix.zero(d)
        else:
            out[b] = PsdMatrix(space.basis @ gen.standard_normal((space.dim, r)))
    return out


def sample_atom(
    n: int,
    d: int,
    rank_profile: RankProfile = "uniform",
    rng: np.random.Generator | int = 0,
    direction: str = "u-first",
) -> PsdFactorization:
    """Draw a random factorization whose evaluation vanishes on
    intersection-one pairs by construction.

    ``rank_profile`` governs both the ranks of the freely drawn side and the
    number of spanning vectors on the constrained side: "uniform" (default)
    draws each uniformly from {0, ..., d}; "full" forces d; an integer fixes
    the value; a callable (gen, d) -> int customizes it.  Full-rank-only
    profiles collapse every constrained matrix to zero, so uniform mixing is
    the default.  ``direction`` picks which side is free: the construction is
    asymmetric, and both directions should exercise the oracles.
    """
    if not 1 <= n <= MAX_SAMPLE_N:
        raise ValueError(f"n = {n} outside [1, {MAX_SAMPLE_N}]")
    if not 1 <= d <= MAX_DIM:
        raise ValueError(f"d = {d} outside [1, {MAX_DIM}]")
    gen = np.random.default_rng(rng) if isinstance(rng, int) else rng
    strings = all_strings(n)
    if direction == "u-first":
        u = {a: random_psd(d, _draw_rank(rank_profile, gen, d), gen) for a in strings}
        v = _constrained_side(u, strings, d, rank_profile, gen)
    elif direction == "v-first":
        v = {b: random_psd(d, _draw_rank(rank_profile, gen, d), gen) for b in strings}
        u = _constrained_side(v, strings, d, rank_profile, gen)
    else:
        raise ValueError(f"direction must be 'u-first' or 'v-first', got {direction!r}")
    return PsdFactorization(n, d, u, v)


def antidiagonal_witness(f: PsdFactorization, eps: float = EPS_ZERO) -> BitString:
    """A string a with evaluated entry (a, complement(a)) numerically zero.

    Walks F_i = Im V_{e_1} + ... + Im V_{e_i}: if F_d is the full space the
    all-ones row is zero; if V_{e_1} = 0 the e_1 column is zero; otherwise
    the chain stalls at some first p with F_p = F_{p+1}, and the complement
    of e_{p+1} indexes a zero row entry at the antidiagonal.  Raises
    FalsificationError if the selected entry is not numerically zero, which
    would contradict the antidiagonal-zero property of square atoms.
    """
    if f.n != f.d:
        raise ValueError(f"witness needs a square-index atom, got n={f.n}, d={f.d}")
    d = f.d
    units = [BitString.unit(d, i) for i in range(1, d + 1)]
    chain = [image(f.V[units[0]])]
    for e in units[1:]:
        chain.append(subspace_sum(chain[-1], image(f.V[e])))
    if chain[-1].dim == d:
        a = BitString.ones(d)
    elif chain[0].dim == 0:
        a = units[0].complement()
    else:
        stall = next(
            (j for j in range(d - 1) if chain[j].dim == chain[j + 1].dim), None
        )
        # a strictly increasing chain starting at dim >= 1 would reach dim d
        assert stall is not None, "image chain cannot strictly increase below full"
        a = units[stall + 1].complement()
    m = evaluate(f)
    entry = m.value(a, a.complement())
    if entry > m.threshold(eps):
        raise FalsificationError(
            f"antidiagonal entry at ({a}, {a.complement()}) is {entry:.3e}, "
            f"above threshold {m.threshold(eps):.3e}",
            factorization=f,
        )
    return a


class PatternId(enum.IntEnum):
    """The six admissible 4 x 4 sparsity patterns of atoms over 2 x 2 PSD cones."""

    FIRST_CROSS = 1
    NO_CORNERS = 2
    ZERO_ROW_01 = 3
    ZERO_ROW_10 = 4
    ZERO_COL_01 = 5
    ZERO_COL_10 = 6


# Rows and columns in lex order 00, 01, 10, 11; 'x' marks an allowed-positive
# entry, '?' the unconstrained non-disjoint corner, '.' a forced zero.  All
# intersection-one positions are '.' in every pattern.
_TEMPLATE_GRIDS: dict[PatternId, tuple[str, str, str, str]] = {
    PatternId.FIRST_CROSS: ("xxxx", "x...", "x...", "x..?"),
    PatternId.NO_CORNERS: ("xxx.", "x.x.", "xx..", "...?"),
    PatternId.ZERO_ROW_01: ("xxxx", "....", "xx..", "x..?"),
    PatternId.ZERO_ROW_10: ("xxxx", "x.x.", "....", "x..?"),
    PatternId.ZERO_COL_01: ("x.xx", "x.x.", "x...", "x..?"),
    PatternId.ZERO_COL_10: ("xx.x", "x...", "xx..", "x..?"),
}


def pattern_template(pid: PatternId) -> frozenset[tuple[BitString, BitString]]:
    """Allowed-positive positions of the pattern (including the '?' corner)."""
    grid = _TEMPLATE_GRIDS[PatternId(pid)]
    rows = all_strings(2)
    return frozenset(
        (a, b)
        for i, a in enumerate(rows)
        for j, b in enumerate(rows)
        if grid[i][j] in "x?"
    )


def pattern_disjoint_support(pid: PatternId) -> frozenset[tuple[BitString, BitString]]:
    """The disjoint-pair portion of the pattern's allowed positions."""
    return frozenset(
        (a, b) for a, b in pattern_template(pid) if intersection_size(a, b) == 0
    )


def classify_pattern_d2(m: SupportMatrix, eps: float = EPS_ZERO) -> PatternId:
    """Lex-smallest pattern id whose template contains the support of m.

    Raises NoPatternMatches when no template fits; for an atom over 2 x 2
    PSD matrices that would falsify the six-pattern classification (for
    anything else it merely signals the input is not such an atom).
    """
    if m.n != 2:
        raise ValueError(f"pattern classification needs n = 2, got {m.n}")
    support = m.support(eps)
    for pid in PatternId:
        if support <= pattern_template(pid):
            return pid
    raise NoPatternMatches(
        "support {"
        + ", ".join(f"({a}, {b})" for a, b in sorted(support))
        + "} fits none of the six patterns",
        matrix=m,
    )


def factorization_to_json(f: PsdFactorization) -> str:
    """Full-precision JSON with Gram factor rows per index string."""
    obj = {
        "n": f.n,
        "d": f.d,
        "U": {str(a): f.U[a].gram_factor.tolist() for a in all_strings(f.n)},
        "V": {str(b): f.V[b].gram_factor.tolist() for b in all_strings(f.n)},
    }
    return json.dumps(obj, sort_keys=True)


def factorization_from_json(text: str) -> PsdFactorization:
    obj = json.loads(text)
    n, d = obj["n"], obj["d"]

    def side(raw: dict[str, list[list[float]]]) -> dict[BitString, PsdMatrix]:
        out = {}
        for key, rows in raw.items():
            arr = np.array(rows, dtype=float)
            if arr.size == 0:
                arr = np.zeros((d, 0))
            out[BitString.from_text(key)] = PsdMatrix(arr)
        return out

    return PsdFactorization(n, d, side(obj["U"]), side(obj["V"]))
