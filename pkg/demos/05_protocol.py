"""
Deciding s-activity from a count
================================

The tester only sees p, the number of positive tests, and compares it with
T.  With a verified code the decision is always right.
"""

from threshold_codes import build_code, derive_params
from threshold_codes.gt_simulator import decide, exhaustive_accuracy, random_trials

p = derive_params(5, 1)
code = build_code(p)

for S in ([], [3], [3, 17], [3, 17, 20], list(range(10))):
    out = decide(code, p.T, S, p.s)
    print(f"|S|={len(S):>2}  p={out.p:>2}  {out.decision.value:<9} correct={out.correct}")

acc = exhaustive_accuracy(code, p.s, p.T)
print("exhaustive up to size s+1:", acc.subsets_by_size, "errors", acc.total_errors)

rep = random_trials(code, p.s, p.T, range(0, 13), 50_000, seed=2)
print("random trials accuracy", rep["accuracy"])
print("p histogram", rep["p_histogram"])
