"""
Kautz-Singleton codes from Reed-Solomon codes over GF(q).

Columns are the q**(lam+1) polynomials of degree <= lam, listed by
coefficient vector with the constant term varying fastest.  A polynomial is
evaluated at w points and every q-ary value is expanded into a one-hot block
of q bits, so each column has weight exactly w and length q*w.

The w points are the first w field elements in rep order; when w = q + 1 the
last point is the point at infinity, whose value is the coefficient of
x**lam.  Two distinct polynomials then agree in at most lam of the w
positions, so the maximal dot product never exceeds lam.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .code_matrix import BinaryCode
from .exceptions import InvalidParams, MemoryBudget, NotPrimePower, NoValidStrength
from .finite_field import FieldSpec, field_of_order, prime_power

# t*N bits; the q=32, lam=2 row (34.6M bits) fits, the two million-column rows do not
DEFAULT_MEMORY_BUDGET = 1 << 26


@dataclass(frozen=True)
class KsFamilyParams:
    q: int
    lam: int
    t: int
    w: int
    N: int
    s: int
    T: int
    T_prime: int
    R: float

    def __post_init__(self):
        lam, s, w = self.lam, self.s, self.w
        assert 2 * w > lam * s * (s + 1), "strength violates w > lam*s(s+1)/2"
        assert 2 * w <= lam * (s + 1) * (s + 2), "s is not maximal"
        assert self.T < self.T_prime, "T must be below T'"
        assert w <= self.q + 1

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        # column order of the published parameter table
        return {k: d[k] for k in ("q", "t", "N", "w", "lambda", "s", "T", "T_prime", "R")}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def max_strength(w: int, lam: int) -> int:
    """Largest s >= 1 with w > lam * s(s+1)/2, or 0 if there is none."""
    s = 0
    while 2 * w > lam * (s + 1) * (s + 2):
        s += 1
    return s


def derive_params(q: int, lam: int) -> KsFamilyParams:
    """Parameters of the (q, lam) family member and its threshold.

    >>> p = derive_params(11, 1)
    >>> (p.t, p.N, p.w, p.s, p.T, p.T_prime)
    (121, 132, 12, 4, 48, 50)
    """
    if prime_power(q) is None:
        raise NotPrimePower(f"{q} is not a prime power")
    if not 1 <= lam < q:
        raise InvalidParams(f"need 1 <= lambda < q, got lambda={lam}, q={q}")
    w = lam * (q // lam) + 1
    s = max_strength(w, lam)
    if s < 1:
        raise NoValidStrength(f"w={w} admits no strength s >= 1 at lambda={lam}")
    t = q ** (lam + 1)
    N = q * w
    T = w * s
    T_prime = w * (s + 1) - s * (s + 1) * lam // 2
    return KsFamilyParams(q=q, lam=lam, t=t, w=w, N=N, s=s, T=T, T_prime=T_prime,
                          R=math.log2(t) / N)


def evaluation_table(field: FieldSpec, lam: int, w: int) -> np.ndarray:
    """Values (as reps) of every degree <= lam polynomial at the w points.

    Shape ``(q**(lam+1), w)``; row index is the coefficient vector read in
    base q with the constant term as the least significant digit.
    """
    q = field.q
    if not lam + 1 <= w <= q + 1:
        raise InvalidParams(f"need lam+1 <= w <= q+1, got w={w}")
    t = q ** (lam + 1)
    idx = np.arange(t, dtype=np.int64)
    coeffs = [(idx // q**i) % q for i in range(lam + 1)]
    n_finite = min(w, q)
    points = np.arange(n_finite, dtype=np.int64)
    values = np.empty((t, w), dtype=np.int64)
    for k, x in enumerate(points):
        acc = coeffs[lam]
        for c in reversed(coeffs[:lam]):
            acc = field.add_array(field.mul_array(acc, x), c)
        values[:, k] = acc
    if w == q + 1:
        values[:, q] = coeffs[lam]
    return values


def build_code(params: KsFamilyParams, *, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> BinaryCode:
    """Binary Kautz-Singleton code for ``params`` (row block k = evaluation point k)."""
    q, w = params.q, params.w
    if params.t * params.N > memory_budget:
        raise MemoryBudget(f"t*N = {params.t * params.N} bits exceeds budget {memory_budget}")
    field = field_of_order(q)
    values = evaluation_table(field, params.lam, w)
    rows = values + q * np.arange(w, dtype=np.int64)  # bit index of each one-hot entry
    X = np.zeros((params.t, params.N), dtype=bool)
    np.put_along_axis(X, rows, True, axis=1)
    return BinaryCode.from_array(X.T)


def family_rate_bound(s: int) -> float:
    """Upper bound on the rate of any family member of strength s."""
    if s < 2:
        raise InvalidParams("need s >= 2")
    sp = s * (s + 1) / 2
    return math.log2(sp) / sp * 2 / (sp + 1)


# the published parameter table, as printed: (q, t, N, w, lambda, s, T, T')
PUBLISHED_TABLE = (
    (11, 121, 132, 12, 1, 4, 48, 50),
    (17, 289, 306, 18, 1, 5, 90, 93),
    (16, 4096, 272, 17, 2, 3, 51, 56),
    (23, 12167, 529, 23, 2, 4, 92, 95),
    (32, 32768, 1056, 33, 2, 5, 165, 168),
    (31, 923581, 961, 31, 3, 4, 124, 125),
    (16, 1048576, 272, 17, 4, 2, 34, 39),
)

# printed t contradicts t = q**(lam+1) (31**4 = 923521)
KNOWN_TYPOS = {(31, 3): ("t", 923581)}

TABLE_COLUMNS = ("q", "t", "N", "w", "lambda", "s", "T", "T_prime")


def published_table_rows() -> list[dict]:
    """Recompute every published row from (q, lambda) and compare with the printed values."""
    out = []
    for printed in PUBLISHED_TABLE:
        q, lam = printed[0], printed[4]
        p = derive_params(q, lam)
        computed = (p.q, p.t, p.N, p.w, p.lam, p.s, p.T, p.T_prime)
        mismatches = [name for name, a, b in zip(TABLE_COLUMNS, computed, printed) if a != b]
        typo = KNOWN_TYPOS.get((q, lam))
        documented = [m for m in mismatches if typo and typo[0] == m]
        out.append({
            "q": q,
            "lambda": lam,
            "computed": dict(zip(TABLE_COLUMNS, computed)),
            "printed": dict(zip(TABLE_COLUMNS, printed)),
            "R": p.R,
            "mismatches": mismatches,
            "documented_typos": documented,
        })
    return out
