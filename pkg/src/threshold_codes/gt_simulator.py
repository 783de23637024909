"""
The threshold decision protocol for s-activity.

Run the N tests of a code on a set of defective elements, count the positive
responses p, and declare the circuit s-active when p <= T and s-defective
otherwise.  The decision needs only p and T, never the code itself.
"""

from __future__ import annotations

import enum
import hashlib
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .code_matrix import DEFAULT_BUDGET, BinaryCode, iter_colex_unions
from .exceptions import BudgetExceeded, IndexOutOfRange, InvalidDistribution, InvalidParams

RNG_ALGORITHM = "numpy.random.Generator(PCG64), seeded via SeedSequence(seed)"


class Status(str, enum.Enum):
    ACTIVE = "active"
    DEFECTIVE = "defective"


def decide_from_count(p: int, T: int) -> Status:
    return Status.ACTIVE if p <= T else Status.DEFECTIVE


def true_status(n_defects: int, s: int) -> Status:
    return Status.ACTIVE if n_defects <= s else Status.DEFECTIVE


@dataclass(frozen=True)
class TrialOutcome:
    defect_set: frozenset[int]
    p: int
    decision: Status
    truth: Status

    @property
    def correct(self) -> bool:
        return self.decision == self.truth


def positive_tests(code: BinaryCode, defect_set: Iterable[int]) -> int:
    u = 0
    for j in defect_set:
        if not 0 <= j < code.t:
            raise IndexOutOfRange(f"defect index {j} not in [0, {code.t})")
        u |= code.columns[j]
    return u.bit_count()


def decide(code: BinaryCode, T: int, defect_set: Iterable[int], s: int) -> TrialOutcome:
    """Test ``defect_set`` with ``code`` and apply the threshold rule.

    An empty defect set yields p = 0 and is always declared active.
    """
    if not 0 < T < code.N:
        raise InvalidParams(f"need 0 < T < N, got T={T}, N={code.N}")
    S = frozenset(defect_set)
    p = positive_tests(code, S)
    return TrialOutcome(S, p, decide_from_count(p, T), true_status(len(S), s))


@dataclass(frozen=True)
class AccuracyReport:
    s: int
    T: int
    max_size: int
    subsets_by_size: dict[int, int]
    errors_by_size: dict[int, int]
    first_error: dict[int, tuple[int, ...]]

    @property
    def total_errors(self) -> int:
        return sum(self.errors_by_size.values())

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "T": self.T,
            "max_size": self.max_size,
            "subsets_by_size": {str(k): v for k, v in self.subsets_by_size.items()},
            "errors_by_size": {str(k): v for k, v in self.errors_by_size.items()},
            "first_error": {str(k): list(v) for k, v in self.first_error.items()},
            "total_errors": self.total_errors,
        }


def exhaustive_accuracy(code: BinaryCode, s: int, T: int, max_size: int | None = None, *,
                        budget: int = DEFAULT_BUDGET) -> AccuracyReport:
    """Apply the protocol to every defect set of size 0..max_size (default s+1)."""
    if max_size is None:
        max_size = s + 1
    if not 0 <= max_size <= code.t:
        raise InvalidParams(f"need 0 <= max_size <= t, got {max_size}")
    if not 0 < T < code.N:
        raise InvalidParams(f"need 0 < T < N, got T={T}, N={code.N}")
    required = sum(comb(code.t, k) for k in range(max_size + 1))
    if required > budget:
        raise BudgetExceeded(required, budget)
    subsets = {0: 1}
    errors = {0: 0 if decide_from_count(0, T) == true_status(0, s) else 1}
    first = {} if not errors[0] else {0: ()}
    for k in range(1, max_size + 1):
        truth = true_status(k, s)
        n = bad = 0
        for S, u in iter_colex_unions(code.columns, k):
            n += 1
            if decide_from_count(u.bit_count(), T) != truth:
                bad += 1
                first.setdefault(k, S)
        subsets[k] = n
        errors[k] = bad
    return AccuracyReport(s, T, max_size, subsets, errors, first)


def _size_weights(sizes, t: int) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(sizes, Mapping):
        ks = np.array(sorted(sizes), dtype=np.int64)
        ws = np.array([float(sizes[k]) for k in sorted(sizes)])
    else:
        ks = np.array(sorted(set(int(k) for k in sizes)), dtype=np.int64)
        ws = np.ones(len(ks))
    if len(ks) == 0:
        raise InvalidDistribution("empty size distribution")
    if ks.min() < 0 or ks.max() > t:
        raise InvalidDistribution(f"defect-set sizes must lie in [0, {t}]")
    if (ws < 0).any() or ws.sum() <= 0 or not np.isfinite(ws).all():
        raise InvalidDistribution("size weights must be nonnegative with positive sum")
    return ks, ws / ws.sum()


def code_meta(code: BinaryCode) -> dict:
    w = code.weights()
    nbytes = (code.N + 7) // 8
    digest = hashlib.sha256(b"".join(c.to_bytes(nbytes, "little") for c in code.columns))
    return {"N": code.N, "t": code.t, "min_weight": min(w), "max_weight": max(w),
            "sha256": digest.hexdigest()}


def random_trials(code: BinaryCode, s: int, T: int, sizes: Sequence[int] | Mapping[int, float],
                  n_trials: int, seed: int, *, chunk: int = 8192) -> dict:
    """Monte Carlo run of the protocol.

    Each trial draws a size from ``sizes`` (a list of sizes chosen uniformly,
    or a mapping size -> weight) and then a uniformly random defect set of
    that size.  The report is a JSON-ready dict and depends only on the
    arguments: the same seed reproduces it exactly.
    """
    if n_trials < 1:
        raise InvalidParams("n_trials must be >= 1")
    if not 0 < T < code.N:
        raise InvalidParams(f"need 0 < T < N, got T={T}, N={code.N}")
    ks, probs = _size_weights(sizes, code.t)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    X = code.to_array().T.astype(np.float32)  # (t, N)

    per_size_n = Counter()
    per_size_ok = Counter()
    hist = Counter()
    done = 0
    while done < n_trials:
        n = min(chunk, n_trials - done)
        k = ks[rng.choice(len(ks), size=n, p=probs)]
        # a uniform k-subset: the k smallest of t iid uniform keys
        ranks = np.argsort(np.argsort(rng.random((n, code.t)), axis=1), axis=1)
        member = (ranks < k[:, None]).astype(np.float32)
        p = ((member @ X) > 0).sum(axis=1)
        active = p <= T
        truth_active = k <= s
        ok = active == truth_active
        for kk, okk, pp in zip(k.tolist(), ok.tolist(), p.tolist()):
            per_size_n[kk] += 1
            per_size_ok[kk] += okk
            hist[pp] += 1
        done += n

    sizes_seen = sorted(per_size_n)
    return {
        "code_meta": code_meta(code),
        "s": s,
        "T": T,
        "trials": n_trials,
        "seed": seed,
        "rng": RNG_ALGORITHM,
        "accuracy": sum(per_size_ok.values()) / n_trials,
        "accuracy_by_size": {
            str(kk): {"trials": per_size_n[kk], "correct": per_size_ok[kk],
                      "accuracy": per_size_ok[kk] / per_size_n[kk]}
            for kk in sizes_seen
        },
        "p_histogram": {str(pp): hist[pp] for pp in sorted(hist)},
    }
