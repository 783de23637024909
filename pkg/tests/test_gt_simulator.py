import itertools
import json

import numpy as np
import pytest

from threshold_codes.code_matrix import BinaryCode
from threshold_codes.exceptions import IndexOutOfRange, InvalidDistribution, InvalidParams
from threshold_codes.gt_simulator import (
    RNG_ALGORITHM,
    Status,
    decide,
    decide_from_count,
    exhaustive_accuracy,
    random_trials,
)
from threshold_codes.ks_construction import build_code, derive_params


@pytest.fixture(scope="module")
def ks5():
    return build_code(derive_params(5, 1))


def test_empty_set_is_active(ks5):
    out = decide(ks5, 12, [], 2)
    assert out.p == 0 and out.decision is Status.ACTIVE and out.correct


def test_three_subsets_are_defective(ks5):
    ps = []
    for S in itertools.combinations(range(ks5.t), 3):
        out = decide(ks5, 12, S, 2)
        assert out.decision is Status.DEFECTIVE and out.correct
        ps.append(out.p)
    assert min(ps) == 15


def test_singletons(ks5):
    for j in range(ks5.t):
        out = decide(ks5, 12, {j}, 2)
        assert out.p == 6 and out.decision is Status.ACTIVE


def test_decide_errors(ks5):
    with pytest.raises(IndexOutOfRange):
        decide(ks5, 12, [25], 2)
    with pytest.raises(InvalidParams):
        decide(ks5, 30, [1], 2)


def test_decision_uses_only_count():
    assert decide_from_count(12, 12) is Status.ACTIVE
    assert decide_from_count(13, 12) is Status.DEFECTIVE


def test_exhaustive_accuracy_ks5(ks5):
    rep = exhaustive_accuracy(ks5, 2, 12, 3)
    assert rep.total_errors == 0
    assert rep.subsets_by_size == {0: 1, 1: 25, 2: 300, 3: 2300}


def test_exhaustive_accuracy_identity():
    code = BinaryCode.from_array(np.eye(4, dtype=int))
    assert exhaustive_accuracy(code, 1, 1, 2).total_errors == 0


def test_exhaustive_accuracy_duplicate_column():
    X = np.array([[1, 1, 0], [1, 1, 0], [0, 0, 1], [0, 0, 1]])
    rep = exhaustive_accuracy(BinaryCode.from_array(X), 1, 2, 2)
    assert rep.errors_by_size[2] == 1
    assert rep.first_error[2] == (0, 1)


def test_random_trials_full_accuracy(ks5):
    rep = random_trials(ks5, 2, 12, [0, 1, 2, 3], 100_000, seed=7)
    assert rep["accuracy"] == 1.0
    assert rep["trials"] == 100_000
    assert rep["rng"] == RNG_ALGORITHM


def test_random_trials_deterministic(ks5):
    a = json.dumps(random_trials(ks5, 2, 12, [0, 1, 2, 3], 5000, seed=3), sort_keys=True)
    b = json.dumps(random_trials(ks5, 2, 12, [0, 1, 2, 3], 5000, seed=3), sort_keys=True)
    c = json.dumps(random_trials(ks5, 2, 12, [0, 1, 2, 3], 5000, seed=4), sort_keys=True)
    assert a == b != c


def test_random_trials_matches_direct_decisions(ks5):
    # a single large-size run lands on one p value per size: the full union
    rep = random_trials(ks5, 2, 12, [25], 10, seed=0)
    assert rep["p_histogram"] == {"30": 10}


def test_random_trials_invalid(ks5):
    with pytest.raises(InvalidParams):
        random_trials(ks5, 2, 12, [1], 0, seed=1)
    with pytest.raises(InvalidDistribution):
        random_trials(ks5, 2, 12, [26], 10, seed=1)
    with pytest.raises(InvalidDistribution):
        random_trials(ks5, 2, 12, {1: -1.0, 2: 2.0}, 10, seed=1)
    with pytest.raises(InvalidDistribution):
        random_trials(ks5, 2, 12, [], 10, seed=1)


def test_weighted_sizes(ks5):
    rep = random_trials(ks5, 2, 12, {1: 1.0, 3: 0.0}, 200, seed=2)
    assert list(rep["accuracy_by_size"]) == ["1"]


def test_histogram_support(ks5):
    rep = random_trials(ks5, 2, 12, [0, 1, 2, 3, 4], 4000, seed=11)
    ps = [int(k) for k in rep["p_histogram"]]
    assert min(ps) >= 0 and max(ps) <= min(ks5.N, 4 * 6)
    assert sum(rep["p_histogram"].values()) == 4000


def test_permutation_invariance(ks5):
    rng = np.random.default_rng(9)
    perm = rng.permutation(ks5.t)
    permuted = ks5.permuted(perm)
    # column k of the permuted code is column perm[k] of the original
    for _ in range(200):
        S = rng.choice(ks5.t, size=int(rng.integers(0, 6)), replace=False)
        a = decide(ks5, 12, [int(perm[k]) for k in S], 2)
        b = decide(permuted, 12, [int(k) for k in S], 2)
        assert (a.p, a.decision) == (b.p, b.decision)


def test_large_sizes_always_defective():
    p = derive_params(7, 1)
    code = build_code(p)
    sizes = list(range(p.s + 1, code.t // 2 + 1))
    rep = random_trials(code, p.s, p.T, sizes, 20_000, seed=5)
    assert rep["accuracy"] == 1.0
