import json
import math

import numpy as np
import pytest

from threshold_codes.code_matrix import max_dot_product, verify_threshold
from threshold_codes.exceptions import InvalidParams, MemoryBudget, NotPrimePower
from threshold_codes.finite_field import field_new
from threshold_codes.ks_construction import (
    PUBLISHED_TABLE,
    build_code,
    derive_params,
    evaluation_table,
    family_rate_bound,
    max_strength,
    published_table_rows,
)


@pytest.mark.parametrize("q,lam,t,N,w,s,T,Tp", [
    (11, 1, 121, 132, 12, 4, 48, 50),
    (16, 2, 4096, 272, 17, 3, 51, 56),
    (31, 3, 923521, 961, 31, 4, 124, 125),
])
def test_derive_params(q, lam, t, N, w, s, T, Tp):
    p = derive_params(q, lam)
    assert (p.t, p.N, p.w, p.s, p.T, p.T_prime) == (t, N, w, s, T, Tp)
    assert p.R == pytest.approx(math.log2(t) / N, rel=1e-15)


def test_derive_params_errors():
    with pytest.raises(NotPrimePower):
        derive_params(12, 1)
    with pytest.raises(InvalidParams):
        derive_params(5, 5)
    # with 1 <= lam < q the weight is at least lam + 1, so s = 1 always exists;
    # the strength search itself reports 0 when w <= lam
    assert max_strength(3, 3) == 0
    assert max_strength(4, 3) == 1


def test_max_strength_definition():
    for lam in range(1, 5):
        for w in range(1, 60):
            s = max_strength(w, lam)
            cands = [x for x in range(1, 40) if w > lam * x * (x + 1) / 2]
            assert s == (max(cands) if cands else 0)


def test_params_invariants_across_family():
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]:
        for lam in range(1, q):
            p = derive_params(q, lam)
            assert p.T < p.T_prime
            assert p.w <= q + 1
            assert 2 * p.w > p.lam * p.s * (p.s + 1)
            assert 2 * p.w <= p.lam * (p.s + 1) * (p.s + 2)


def test_published_table_only_documented_mismatch():
    rows = published_table_rows()
    assert len(rows) == len(PUBLISHED_TABLE) == 7
    for r in rows:
        if (r["q"], r["lambda"]) == (31, 3):
            assert r["mismatches"] == ["t"] == r["documented_typos"]
            assert r["computed"]["t"] == 31**4 == 923521
            assert r["printed"]["t"] == 923581
        else:
            assert r["mismatches"] == []


def test_published_table_rows_spot_values():
    rows = {(r["q"], r["lambda"]): r["computed"] for r in published_table_rows()}
    assert rows[(23, 2)] == dict(q=23, t=12167, N=529, w=23, **{"lambda": 2}, s=4, T=92, T_prime=95)
    assert rows[(16, 4)]["t"] == 1048576
    assert (rows[(16, 4)]["s"], rows[(16, 4)]["T"], rows[(16, 4)]["T_prime"]) == (2, 34, 39)


def test_family_rate_bound_values():
    assert family_rate_bound(2) == pytest.approx(math.log2(3) / 3 * 0.5, rel=1e-15)
    assert family_rate_bound(2) == pytest.approx(0.264, abs=5e-4)
    assert family_rate_bound(3) == pytest.approx(0.1231, abs=5e-5)


def test_family_rate_bound_asymptotics():
    ratios = [family_rate_bound(s) * s**4 / (16 * math.log2(s)) for s in (10, 100, 10**4, 10**6)]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    # correction is about 1 - 1/(2 log2 s)
    assert abs(ratios[-1] - 1) < 0.03


def test_published_rates_below_family_bound():
    for printed in PUBLISHED_TABLE:
        p = derive_params(printed[0], printed[4])
        if p.s >= 2:
            assert p.R <= family_rate_bound(p.s)


def test_params_json_fields():
    d = json.loads(derive_params(11, 1).to_json())
    assert list(d) == ["q", "t", "N", "w", "lambda", "s", "T", "T_prime", "R"]


def test_build_code_q5():
    code = build_code(derive_params(5, 1))
    assert (code.N, code.t) == (30, 25)
    assert set(code.weights()) == {6}
    assert max_dot_product(code) == 1


def test_build_code_q11():
    code = build_code(derive_params(11, 1))
    assert set(code.weights()) == {12}
    assert max_dot_product(code) == 1


def test_columns_distinct():
    code = build_code(derive_params(8, 2))
    assert len(set(code.columns)) == code.t


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_constant_weight_and_dot_product(q):
    for lam in range(1, q):
        p = derive_params(q, lam)
        if p.t > 20000:
            continue
        code = build_code(p)
        assert set(code.weights()) == {p.w}
        assert max_dot_product(code) == lam


def test_layout_matches_direct_evaluation():
    # independent construction: enumerate polynomials and evaluate by hand
    q, lam = 4, 1
    p = derive_params(q, lam)
    F = field_new(2, 2)
    X = build_code(p).to_array()
    col = 0
    for c1 in range(q):
        for c0 in range(q):
            assert col == c0 + q * c1
            vals = [F.add(F.mul(c1, x), c0) for x in range(q)] + [c1]
            expected = np.zeros(p.N, dtype=np.uint8)
            for k, v in enumerate(vals):
                expected[k * q + v] = 1
            assert (X[:, col] == expected).all()
            col += 1


def test_evaluation_points_w_below_q():
    # lam=2, q=5: w = 2*2 + 1 = 5 = q, no point at infinity
    p = derive_params(5, 2)
    assert p.w == 5
    F = field_new(5)
    vals = evaluation_table(F, 2, 5)
    # x^2 is column index 25
    assert list(vals[25]) == [(x * x) % 5 for x in range(5)]


def test_memory_budget():
    with pytest.raises(MemoryBudget):
        build_code(derive_params(31, 3))


@pytest.mark.parametrize("q", [5, 7])
def test_desk_scale_threshold_proof(q):
    p = derive_params(q, 1)
    assert verify_threshold(build_code(p), p.s, p.T).passed
