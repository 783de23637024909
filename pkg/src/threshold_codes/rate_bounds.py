"""
Random-coding lower bounds and known upper bounds on the rate of threshold
disjunctive codes.

The central function is the exponent ``A(s, Q, q)``: for s independent
codewords of relative weight Q, ``2**(-N * A)`` is the logarithmic asymptotic
of the probability that their union has relative weight q.  It is
parametrised by the root y in (0, 1) of

    q = Q * (1 + y + ... + y**(s-1)).

All evaluations are in float64; logarithms are natural and scaled by log2(e)
at the end.  We use the rearranged form

    A ln 2 = (1-q) ln(1-q) + (sQ - q) ln((1-y)/Q) + s(q - Q) ln y - s(1-Q) ln(1-Q)

which is algebraically identical to the textbook form but has no
``0 * inf`` terms as y -> 0 or y -> 1.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .exceptions import DomainError, InvalidTau, OutOfRange

LOG2E = 1.0 / math.log(2.0)
INF = math.inf

MAX_ITER = 200
BRACKET_TOL = 1e-12
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ExponentInput:
    s: int
    Q: float
    q_arg: float
    tau: float | None = None

    def __post_init__(self):
        if self.s < 2:
            raise OutOfRange("need s >= 2")
        for name in ("Q", "q_arg", "tau"):
            v = getattr(self, name)
            if v is not None and not 0.0 < v < 1.0:
                raise OutOfRange(f"{name}={v} not in (0, 1)")


@dataclass(frozen=True)
class BoundResult:
    """A rate bound together with where it was attained.

    ``y1`` and ``y2`` are the roots behind ``A(s, Q, tau)`` and
    ``A(s+1, Q, tau)`` at ``argmax_Q`` (``y1`` is None where the first term
    is infinite).  ``iterations`` counts solver work by stage.
    """

    value: float
    argmax_Q: float | None = None
    argmax_tau: float | None = None
    y1: float | None = None
    y2: float | None = None
    residual_y1: float | None = None
    residual_y2: float | None = None
    iterations: dict = field(default_factory=dict)
    tolerance_met: bool = True
    kind: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# exponent


def binary_entropy(Q: float) -> float:
    """h(Q) in bits, with h(0) = h(1) = 0."""
    if not 0.0 <= Q <= 1.0:
        raise OutOfRange(f"Q={Q} not in [0, 1]")
    if Q == 0.0 or Q == 1.0:
        return 0.0
    return -(Q * math.log(Q) + (1.0 - Q) * math.log1p(-Q)) * LOG2E


def _partial_geometric(y: float, s: int) -> float:
    """1 + y + ... + y**(s-1) for 0 <= y <= 1."""
    if y == 0.0:
        return 1.0
    if y == 1.0:
        return float(s)
    return -math.expm1(s * math.log(y)) / (1.0 - y)


def root_residual(s: int, Q: float, q_arg: float, y: float) -> float:
    return abs(q_arg - Q * _partial_geometric(y, s))


def solve_y(s: int, Q: float, q_arg: float, *, with_iterations: bool = False):
    """Root y in (0, 1) of ``q_arg = Q (1 - y**s) / (1 - y)`` by bisection.

    The map is strictly increasing from Q (y=0) to sQ (y=1), so the root
    exists exactly when ``Q < q_arg < s*Q``.  Bisection runs until the
    bracket cannot shrink any further in float64.

    >>> solve_y(2, 0.25, 0.375)
    0.5
    """
    if s < 2 or not 0.0 < Q < 1.0:
        raise OutOfRange(f"need s >= 2 and 0 < Q < 1, got s={s}, Q={Q}")
    if not Q < q_arg < s * Q:
        raise OutOfRange(f"q_arg={q_arg} not in (Q, sQ) = ({Q}, {s * Q})")
    lo, hi = 0.0, 1.0
    it = 0
    while it < MAX_ITER:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        it += 1
        if Q * _partial_geometric(mid, s) < q_arg:
            lo = mid
        else:
            hi = mid
    candidates = [y for y in (lo, hi) if 0.0 < y < 1.0]
    y = min(candidates, key=lambda v: root_residual(s, Q, q_arg, v))
    return (y, it) if with_iterations else y


def _exponent_from_root(s: int, Q: float, q: float, y: float) -> float:
    first = (1.0 - q) * math.log1p(-q) if q < 1.0 else 0.0
    val = (
        first
        + (s * Q - q) * (math.log1p(-y) - math.log(Q))
        + s * (q - Q) * math.log(y)
        - s * (1.0 - Q) * math.log1p(-Q)
    )
    return val * LOG2E


def exponent_A(s: int, Q: float, q_arg: float) -> float:
    """A(s, Q, q_arg) in bits, for ``Q < q_arg < min(1, sQ)``."""
    if s < 2 or not 0.0 < Q < 1.0:
        raise OutOfRange(f"need s >= 2 and 0 < Q < 1, got s={s}, Q={Q}")
    if not Q < q_arg < min(1.0, s * Q):
        raise OutOfRange(f"q_arg={q_arg} not in (Q, min(1, sQ))")
    y = solve_y(s, Q, q_arg)
    return _exponent_from_root(s, Q, q_arg, y)


def exponent_A_prime(s: int, Q: float, q_arg: float) -> float:
    """A(s, Q, q_arg) extended to the closed range [Q, sQ], +inf outside.

    Boundary values are the limits of the interior formula:

    * q_arg = Q  (y -> 0): every codeword equals the first, A = (s-1) h(Q);
    * q_arg = sQ (y -> 1): the codewords are disjoint,
      A = (1-sQ) log2(1-sQ) - s (1-Q) log2(1-Q).
    """
    if s < 2 or not 0.0 < Q < 1.0:
        raise OutOfRange(f"need s >= 2 and 0 < Q < 1, got s={s}, Q={Q}")
    if q_arg < Q or q_arg > s * Q or q_arg > 1.0:
        return INF
    if q_arg == Q:
        return (s - 1) * binary_entropy(Q)
    if q_arg == s * Q:
        disjoint = (1.0 - q_arg) * math.log1p(-q_arg) if q_arg < 1.0 else 0.0
        return (disjoint - s * (1.0 - Q) * math.log1p(-Q)) * LOG2E
    y = solve_y(s, Q, q_arg)
    return _exponent_from_root(s, Q, q_arg, y)


# ---------------------------------------------------------------------------
# scalar optimisation helpers


def golden_section_max(f, a: float, b: float, *, tol: float, max_iter: int = MAX_ITER):
    """Maximise a unimodal f on [a, b].  Returns ``(x, f(x), iterations)``."""
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    it = 0
    while it < max_iter and b - a > tol:
        it += 1
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
    return (x1, f1, it) if f1 >= f2 else (x2, f2, it)


# ---------------------------------------------------------------------------
# random coding lower bound at a fixed threshold ratio


def weight_interval(s: int, tau: float) -> tuple[float, float]:
    """Open interval of relative weights Q searched at threshold ratio tau."""
    lt = math.log1p(-tau)
    return -math.expm1(lt / (s + 1)), -math.expm1(lt / s)


def _check_s_tau(s: int, tau: float):
    if s < 2:
        raise InvalidTau(f"need s >= 2, got {s}")
    if not (isinstance(tau, (int, float)) and 0.0 < tau < 1.0):
        raise InvalidTau(f"tau={tau} not in (0, 1)")


def _terms(s: int, Q: float, tau: float):
    """(first, second, y1, y2) of the max-min objective at weight Q."""
    if tau < Q or tau > s * Q:
        first, y1 = INF, None
    elif tau == s * Q:
        first, y1 = exponent_A_prime(s, Q, tau) / (s - 1), 1.0
    else:
        y1 = solve_y(s, Q, tau)
        first = _exponent_from_root(s, Q, tau, y1) / (s - 1)
    y2 = solve_y(s + 1, Q, tau)
    second = _exponent_from_root(s + 1, Q, tau, y2) / s
    return first, second, y1, y2


def lower_rate_tau(s: int, tau: float) -> BoundResult:
    """Random-coding lower bound on the rate of s^T-codes with T = floor(tau N).

    Maximises ``min(A'(s, Q, tau)/(s-1), A(s+1, Q, tau)/s)`` over Q in the
    open interval from :func:`weight_interval`.  The first term vanishes at
    the upper end and the second at the lower end, and each is monotone in
    between, so the maximum sits where they cross.  The crossing is
    bracketed by bisection on their difference; the answer is the better of
    the two bracket ends, which also covers a crossing at the jump of A' to
    +inf at Q = tau/s.  Without a sign change the min is maximised by
    golden-section search instead.
    """
    _check_s_tau(s, tau)
    lo, hi = weight_interval(s, tau)
    assert hi > lo, (s, tau, lo, hi)
    eps = 1e-9 * (hi - lo)
    a, b = lo + eps, hi - eps
    tol = BRACKET_TOL * (hi - lo)

    def diff(Q):
        f1, f2, _, _ = _terms(s, Q, tau)
        return f1 - f2

    da, db = diff(a), diff(b)
    iters = {"bisection": 0, "golden": 0}
    if da > 0.0 and db <= 0.0:
        while iters["bisection"] < MAX_ITER and b - a > tol:
            m = 0.5 * (a + b)
            if m == a or m == b:
                break
            iters["bisection"] += 1
            if diff(m) > 0.0:
                a = m
            else:
                b = m
        fa = _terms(s, a, tau)
        fb = _terms(s, b, tau)
        # at a the min is the second term, at b it is the first
        if fa[1] >= fb[0]:
            Q, (f1, f2, y1, y2) = a, fa
        else:
            Q, (f1, f2, y1, y2) = b, fb
        converged = b - a <= tol or iters["bisection"] < MAX_ITER
    else:
        def objective(Q):
            f1, f2, _, _ = _terms(s, Q, tau)
            return min(f1, f2)

        Q, _, iters["golden"] = golden_section_max(objective, a, b, tol=tol)
        f1, f2, y1, y2 = _terms(s, Q, tau)
        converged = iters["golden"] < MAX_ITER
    value = max(0.0, min(f1, f2))
    r1 = root_residual(s, Q, tau, y1) if y1 is not None else None
    r2 = root_residual(s + 1, Q, tau, y2)
    roots_ok = r2 < 1e-12 and (r1 is None or r1 < 1e-12)
    return BoundResult(
        value=value, argmax_Q=Q, argmax_tau=tau, y1=y1, y2=y2,
        residual_y1=r1, residual_y2=r2, iterations=iters,
        tolerance_met=bool(converged and roots_ok), kind="lower-tau",
    )


def _tau_candidates(s: int) -> list[float]:
    seeds = [(c + 1) / s for c in (1, 2, 4, 8) if (c + 1) / s < 1.0]
    grid = np.exp(np.linspace(math.log(1e-4), math.log(0.999), 48)).tolist()
    return sorted(set(seeds + grid))


def lower_rate_thr(s: int) -> BoundResult:
    """Lower bound on the optimal-threshold rate: ``lower_rate_tau`` maximised over tau.

    A fixed log-spaced grid of tau (plus the seeds (c+1)/s, c in 1, 2, 4, 8,
    near the asymptotic optimum) locates the peak, which is then refined by
    golden-section search between the neighbouring grid points.
    """
    if s < 2:
        raise InvalidTau(f"need s >= 2, got {s}")
    taus = _tau_candidates(s)
    vals = [lower_rate_tau(s, t).value for t in taus]
    i = int(np.argmax(vals))
    a = taus[max(i - 1, 0)]
    b = taus[min(i + 1, len(taus) - 1)]
    tau, v, it = golden_section_max(lambda t: lower_rate_tau(s, t).value, a, b,
                                    tol=BRACKET_TOL * max(b - a, 1e-300) * 1e3)
    if vals[i] > v:
        tau = taus[i]
    best = lower_rate_tau(s, tau)
    iters = dict(best.iterations, tau_grid=len(taus), tau_golden=it)
    return BoundResult(
        value=best.value, argmax_Q=best.argmax_Q, argmax_tau=tau, y1=best.y1, y2=best.y2,
        residual_y1=best.residual_y1, residual_y2=best.residual_y2, iterations=iters,
        tolerance_met=best.tolerance_met and it < MAX_ITER, kind="lower-thr",
    )


def asymptotic_lower_thr(s: int) -> float:
    """Leading term log2(e) / (4 s**3) of the optimal-threshold lower bound."""
    return LOG2E / (4.0 * s**3)


# ---------------------------------------------------------------------------
# large-s objective and upper bound


def asymptotic_objective(c, d):
    """min{d(d-c+c ln(c/d)), d(d-c-2+(c+2) ln((c+2)/d))} on 0 < c < d < c+2.

    Accepts scalars or broadcastable arrays.
    """
    c = np.asarray(c, dtype=float)
    d = np.asarray(d, dtype=float)
    if not (np.all(c > 0) and np.all(d > c) and np.all(d < c + 2)):
        raise DomainError("need c > 0 and c < d < c + 2")
    first = d * (d - c + c * np.log1p((c - d) / d))
    second = d * (d - c - 2 + (c + 2) * np.log1p((c + 2 - d) / d))
    out = np.minimum(first, second)
    return float(out) if out.ndim == 0 else out


def bonis_upper(s: int, tau: float) -> float:
    """Upper bound on the rate of s-codes whose s-unions weigh at most tau N."""
    _check_s_tau(s, tau)
    h = s // 2
    return tau / (h * h + h) * math.log2(math.e * s * (s + 2) / (4.0 * tau))


def hypothesis_curve(s: int, const: float = 1.0) -> float:
    """Conjectured order const * log2(s) / s**3 of the optimal-threshold rate (reference only)."""
    return const * math.log2(s) / s**3
