"""
Binary codes as column bitsets, and the combinatorial checks on them.

A code of length N and size t is stored as t Python integers; bit i of
column j is the entry x_i(j).  All indices (rows, columns, subset members)
are 0-based.

The checks here are exhaustive by default.  Every k-subset is visited in
colexicographic order (ordered by largest element, then the next largest,
...) so the first violation found, and hence the reported witness, does not
depend on anything but the code.  Exhaustive checks refuse to start when the
work estimate exceeds ``budget``; ``mode="sampled"`` draws random subsets
instead and marks the report as sampled, which is evidence and not a proof.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .exceptions import (
    BudgetExceeded,
    CodeFormatError,
    EmptySet,
    IndexOutOfRange,
    InvalidParams,
)

DEFAULT_BUDGET = 10**9
DEFAULT_SAMPLES = 100_000


@dataclass(frozen=True)
class BinaryCode:
    """An N x t binary matrix; ``columns[j]`` is codeword j as an int bitset."""

    N: int
    columns: tuple[int, ...]

    def __post_init__(self):
        cols = tuple(int(c) for c in self.columns)
        if self.N < 1:
            raise InvalidParams("code length N must be >= 1")
        if len(cols) < 2:
            raise InvalidParams("code size t must be >= 2")
        limit = 1 << self.N
        for j, c in enumerate(cols):
            if not 0 <= c < limit:
                raise InvalidParams(f"column {j} does not fit in {self.N} bits")
        object.__setattr__(self, "columns", cols)

    @property
    def t(self) -> int:
        return len(self.columns)

    @classmethod
    def from_array(cls, matrix) -> "BinaryCode":
        """Build from an (N, t) array-like of 0/1 entries."""
        X = np.asarray(matrix)
        if X.ndim != 2:
            raise InvalidParams("expected a 2-D matrix")
        if not np.isin(X, (0, 1)).all():
            raise InvalidParams("matrix entries must be 0 or 1")
        N = X.shape[0]
        packed = np.packbits(X.T.astype(bool), axis=1, bitorder="little")
        cols = tuple(int.from_bytes(row.tobytes(), "little") for row in packed)
        return cls(N, cols)

    def to_array(self) -> np.ndarray:
        """Return the (N, t) matrix as a uint8 array."""
        nbytes = (self.N + 7) // 8
        raw = b"".join(c.to_bytes(nbytes, "little") for c in self.columns)
        bits = np.unpackbits(
            np.frombuffer(raw, dtype=np.uint8).reshape(self.t, nbytes),
            axis=1,
            bitorder="little",
        )
        return np.ascontiguousarray(bits[:, : self.N].T)

    def column(self, j: int) -> int:
        return self.columns[_check_index(self, j)]

    def weights(self) -> list[int]:
        return [c.bit_count() for c in self.columns]

    def is_constant_weight(self) -> bool:
        return len(set(self.weights())) == 1

    def permuted(self, order: Sequence[int]) -> "BinaryCode":
        """Code whose column k is column ``order[k]`` of this code."""
        return BinaryCode(self.N, tuple(self.columns[j] for j in order))

    def __repr__(self):
        return f"BinaryCode(N={self.N}, t={self.t})"


def _check_index(code: BinaryCode, j: int) -> int:
    if not 0 <= j < code.t:
        raise IndexOutOfRange(f"column index {j} not in [0, {code.t})")
    return j


# ---------------------------------------------------------------------------
# code file format
#
#   line 1: "N t"
#   then N lines of exactly t characters in {0, 1}; row i character j = x_i(j)
#   LF line endings, no trailing whitespace.


def format_code(code: BinaryCode) -> str:
    X = code.to_array()
    lines = [f"{code.N} {code.t}"]
    lines.extend("".join("1" if b else "0" for b in row) for row in X)
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> BinaryCode:
    if "\r" in text:
        raise CodeFormatError("CR characters are not allowed (use LF line endings)",
                              line=text[: text.index("\r")].count("\n") + 1)
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CodeFormatError("empty file", line=1)
    header = lines[0].split(" ")
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise CodeFormatError(f"header must be 'N t', got {lines[0]!r}", line=1)
    N, t = int(header[0]), int(header[1])
    if N < 1 or t < 2:
        raise CodeFormatError(f"need N >= 1 and t >= 2, got N={N}, t={t}", line=1)
    if len(lines) - 1 != N:
        # cite the first missing row, or the first surplus one
        raise CodeFormatError(f"expected {N} rows, found {len(lines) - 1}",
                              line=len(lines) + 1 if len(lines) - 1 < N else N + 2)
    rows = np.zeros((N, t), dtype=np.uint8)
    for i, row in enumerate(lines[1:]):
        if len(row) != t:
            raise CodeFormatError(f"row {i} has {len(row)} characters, expected {t}", line=i + 2)
        if row.strip("01"):
            raise CodeFormatError(f"row {i} contains characters other than 0/1", line=i + 2)
        rows[i] = np.frombuffer(row.encode("ascii"), dtype=np.uint8) - ord("0")
    return BinaryCode.from_array(rows)


def load_code(path) -> BinaryCode:
    return parse_code(Path(path).read_text(encoding="ascii"))


def save_code(code: BinaryCode, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_code(code))


# ---------------------------------------------------------------------------
# basic quantities


def weight(code: BinaryCode, j: int) -> int:
    return code.column(j).bit_count()


def response_vector(code: BinaryCode, S: Iterable[int]) -> int:
    """Bitwise OR of the columns indexed by S."""
    S = list(S)
    if not S:
        raise EmptySet("response vector of an empty set")
    u = 0
    for j in S:
        u |= code.column(j)
    return u


def max_dot_product(code: BinaryCode) -> int:
    """Largest AND-weight over unordered pairs of distinct columns."""
    # float32 matmul goes through BLAS and is exact for counts below 2**24;
    # the Gram matrix is built in row blocks of the upper triangle
    X = code.to_array().astype(np.float32)
    t = code.t
    block = max(1, min(t, (1 << 23) // t))
    best = 0
    for i in range(0, t - 1, block):
        G = X[:, i:i + block].T @ X[:, i:]
        rows = np.arange(G.shape[0])
        G[rows, rows] = -1  # self products sit on the block's leading diagonal
        G[np.tril_indices(G.shape[0], -1, G.shape[1])] = -1
        best = max(best, int(G.max()))
    return best


# ---------------------------------------------------------------------------
# subset enumeration


def iter_colex_unions(columns: Sequence[int], k: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(subset, union)`` for every k-subset of column indices, colex order.

    ``union`` is the OR of the columns in the subset; partial unions are shared
    between subsets with a common top part.
    """
    n = len(columns)
    if k < 1 or k > n:
        return

    def rec(k, bound, suffix, acc):
        if k == 1:
            for m in range(bound):
                yield (m,) + suffix, acc | columns[m]
            return
        for m in range(k - 1, bound):
            yield from rec(k - 1, m, (m,) + suffix, acc | columns[m])

    yield from rec(k, n, (), 0)


def _random_subsets(t: int, k: int, n: int, seed) -> Iterator[tuple[int, ...]]:
    rng = np.random.default_rng(seed)
    for _ in range(n):
        yield tuple(sorted(int(x) for x in rng.choice(t, size=k, replace=False)))


def _sampled_unions(columns, k, n, seed):
    for S in _random_subsets(len(columns), k, n, seed):
        u = 0
        for j in S:
            u |= columns[j]
        yield S, u


class Property(str, enum.Enum):
    DISJUNCTIVE = "disjunctive"
    THRESHOLD = "threshold"
    BOUNDED_WEIGHT = "bounded"


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a property check.

    On failure ``witness`` is the offending subset and ``reason`` says which
    clause broke: ``"covers"`` (its union covers column ``covered``),
    ``"weight_above_T"`` or ``"weight_at_most_T"`` (``witness_weight`` holds the
    union weight).
    """

    property: Property
    s: int
    T: int | None
    passed: bool
    subsets_checked: int
    witness: tuple[int, ...] | None = None
    covered: int | None = None
    witness_weight: int | None = None
    reason: str | None = None
    sampled: bool = False

    def to_dict(self) -> dict:
        return {
            "property": self.property.value,
            "s": self.s,
            "T": self.T,
            "passed": self.passed,
            "witness": list(self.witness) if self.witness is not None else None,
            "covered": self.covered,
            "witness_weight": self.witness_weight,
            "reason": self.reason,
            "subsets_checked": self.subsets_checked,
            "sampled": self.sampled,
            "note": "sampled, not a proof" if self.sampled else "exhaustive",
        }


def recheck_witness(code: BinaryCode, report: VerificationReport) -> bool:
    """True iff the failure recorded in ``report`` really occurs in ``code``."""
    if report.passed or report.witness is None:
        return False
    u = response_vector(code, report.witness)
    w = u.bit_count()
    if report.reason == "covers":
        c = code.column(report.covered)
        return report.covered not in report.witness and (u | c) == u
    if report.reason == "weight_above_T":
        return len(report.witness) <= report.s and w > report.T
    if report.reason == "weight_at_most_T":
        return len(report.witness) >= report.s + 1 and w <= report.T
    return False


def _pre_strength(code: BinaryCode, s: int):
    if not 1 <= s < code.t:
        raise InvalidParams(f"need 1 <= s < t, got s={s}, t={code.t}")


def _guard(required: int, budget: int, mode: str):
    if mode not in ("exhaustive", "sampled"):
        raise InvalidParams(f"unknown mode {mode!r}")
    if mode == "exhaustive" and required > budget:
        raise BudgetExceeded(required, budget)


def _scan_s_subsets(code, s, T, mode, samples, seed):
    """One pass over s-subsets checking the cover clause and (if T given) the weight clause."""
    cols = code.columns
    t, N = code.t, code.N
    it = iter_colex_unions(cols, s) if mode == "exhaustive" else _sampled_unions(cols, s, samples, seed)
    # column j lies inside union u iff |u & c_j| = |c_j|; the overlaps for a
    # batch of unions come from one float32 product, exact below 2**24
    X = code.to_array().astype(np.float32)
    wts = X.sum(axis=0)
    nbytes = (N + 7) // 8
    batch = max(1, min(1024, (1 << 24) // t))
    checked = 0
    while True:
        chunk = list(itertools.islice(it, batch))
        if not chunk:
            return checked, None
        raw = b"".join(u.to_bytes(nbytes, "little") for _, u in chunk)
        U = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(len(chunk), nbytes),
                          axis=1, bitorder="little")[:, :N].astype(np.float32)
        hits = (U @ X) == wts
        rows = np.arange(len(chunk))[:, None]
        hits[rows, np.array([S for S, _ in chunk])] = False
        covers = hits.any(axis=1)
        for i, (S, u) in enumerate(chunk):
            checked += 1
            if covers[i]:
                return checked, dict(passed=False, witness=S, covered=int(np.argmax(hits[i])),
                                     witness_weight=u.bit_count(), reason="covers")
            if T is not None:
                w = u.bit_count()
                if w > T:
                    return checked, dict(passed=False, witness=S, witness_weight=w,
                                         reason="weight_above_T")


def verify_disjunctive(code: BinaryCode, s: int, *, budget: int = DEFAULT_BUDGET,
                       mode: str = "exhaustive", samples: int = DEFAULT_SAMPLES,
                       seed=0) -> VerificationReport:
    """Check that no union of s columns covers a column outside the union."""
    _pre_strength(code, s)
    _guard(comb(code.t, s) * code.t, budget, mode)
    checked, fail = _scan_s_subsets(code, s, None, mode, samples, seed)
    sampled = mode == "sampled"
    if fail:
        return VerificationReport(Property.DISJUNCTIVE, s, None, subsets_checked=checked,
                                  sampled=sampled, **fail)
    return VerificationReport(Property.DISJUNCTIVE, s, None, True, checked, sampled=sampled)


def verify_bounded_weight(code: BinaryCode, s: int, T: int, *, budget: int = DEFAULT_BUDGET,
                          mode: str = "exhaustive", samples: int = DEFAULT_SAMPLES,
                          seed=0) -> VerificationReport:
    """Disjunctive s-code whose s-unions all have weight <= T.

    Only unions of exactly s columns are examined: OR is monotone, so a
    smaller union never weighs more than some s-union containing it.
    """
    _pre_strength(code, s)
    _guard(comb(code.t, s) * code.t, budget, mode)
    checked, fail = _scan_s_subsets(code, s, T, mode, samples, seed)
    sampled = mode == "sampled"
    if fail:
        return VerificationReport(Property.BOUNDED_WEIGHT, s, T, subsets_checked=checked,
                                  sampled=sampled, **fail)
    return VerificationReport(Property.BOUNDED_WEIGHT, s, T, True, checked, sampled=sampled)


def verify_threshold(code: BinaryCode, s: int, T: int, *, budget: int = DEFAULT_BUDGET,
                     mode: str = "exhaustive", samples: int = DEFAULT_SAMPLES,
                     seed=0) -> VerificationReport:
    """Check the threshold s^T property.

    Three clauses: the code is disjunctive of strength s, every union of at
    most s columns has weight <= T, every union of at least s+1 columns has
    weight >= T+1.  By monotonicity of OR it is enough to look at unions of
    exactly s columns for the first two clauses and exactly s+1 columns for
    the third: any smaller set sits inside an s-set whose union is at least as
    heavy, any larger set contains an (s+1)-set whose union is no heavier.
    """
    if not 0 < T < code.N:
        raise InvalidParams(f"need 0 < T < N, got T={T}, N={code.N}")
    if not 1 <= s or s + 1 > code.t:
        raise InvalidParams(f"need s >= 1 and s+1 <= t, got s={s}, t={code.t}")
    required = comb(code.t, s) * code.t + comb(code.t, s + 1)
    _guard(required, budget, mode)
    sampled = mode == "sampled"
    checked, fail = _scan_s_subsets(code, s, T, mode, samples, seed)
    if fail:
        return VerificationReport(Property.THRESHOLD, s, T, subsets_checked=checked,
                                  sampled=sampled, **fail)
    cols = code.columns
    it = (iter_colex_unions(cols, s + 1) if not sampled
          else _sampled_unions(cols, s + 1, samples, None if seed is None else seed + 1))
    for S, u in it:
        checked += 1
        w = u.bit_count()
        if w <= T:
            return VerificationReport(Property.THRESHOLD, s, T, False, checked, witness=S,
                                      witness_weight=w, reason="weight_at_most_T",
                                      sampled=sampled)
    return VerificationReport(Property.THRESHOLD, s, T, True, checked, sampled=sampled)


def union_weight_extremes(code: BinaryCode, k: int, *, budget: int = DEFAULT_BUDGET):
    """Exhaustive ``(min_weight, min_subset, max_weight, max_subset)`` over k-unions."""
    if not 1 <= k <= code.t:
        raise InvalidParams(f"need 1 <= k <= t, got k={k}")
    _guard(comb(code.t, k), budget, "exhaustive")
    lo = hi = None
    for S, u in iter_colex_unions(code.columns, k):
        w = u.bit_count()
        if lo is None or w < lo[0]:
            lo = (w, S)
        if hi is None or w > hi[0]:
            hi = (w, S)
    return lo[0], lo[1], hi[0], hi[1]


# ---------------------------------------------------------------------------
# union weight of random constant-weight words


def union_weight_distribution(N: int, w: int, s: int, *, exact: bool = False):
    """Distribution of ``|x(1) | ... | x(s)|`` for independent uniform w-subsets of [N].

    Returns a length N+1 sequence indexed by the union weight k.  The
    recursion adds one word at a time: a new word overlapping the current
    union (weight m) in j positions moves the weight to m + w - j, and the
    overlap is hypergeometric.  Floating point mode sums each entry with
    ``math.fsum``; ``exact=True`` returns Fractions (intended for N <= 80).
    """
    if not (1 <= w <= N and s >= 1):
        raise InvalidParams(f"need 1 <= w <= N and s >= 1, got N={N}, w={w}, s={s}")
    total = comb(N, w)
    if exact:
        dist = [Fraction(0)] * (N + 1)
        dist[w] = Fraction(1)
    else:
        dist = [0.0] * (N + 1)
        dist[w] = 1.0
    for _ in range(s - 1):
        terms = [[] for _ in range(N + 1)]
        for m, pm in enumerate(dist):
            if not pm:
                continue
            for j in range(max(0, w - (N - m)), min(m, w) + 1):
                ways = comb(m, j) * comb(N - m, w - j)
                step = Fraction(ways, total) if exact else ways / total
                terms[m + w - j].append(pm * step)
        if exact:
            dist = [sum(ts, Fraction(0)) for ts in terms]
        else:
            dist = [math.fsum(ts) for ts in terms]
    return dist if exact else np.array(dist)
