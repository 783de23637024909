"""
Proving the threshold property by enumeration
=============================================

For a small code we can look at every union of s and of s+1 columns.  OR is
monotone, so those two sizes settle all the others.
"""

from threshold_codes import build_code, derive_params
from threshold_codes.code_matrix import recheck_witness, union_weight_extremes, verify_threshold

p = derive_params(7, 1)
code = build_code(p)
print(f"q=7: t={p.t}, N={p.N}, s={p.s}, T={p.T}, T'={p.T_prime}")

rep = verify_threshold(code, p.s, p.T)
print("passed:", rep.passed, "subsets checked:", rep.subsets_checked)

# the heaviest s-union and the lightest (s+1)-union straddle T
_, _, hi, S_hi = union_weight_extremes(code, p.s)
lo, S_lo, _, _ = union_weight_extremes(code, p.s + 1)
print(f"heaviest {p.s}-union {hi} at {S_hi}, lightest {p.s + 1}-union {lo} at {S_lo}")

# drop T below the heaviest s-union and the check fails with a witness
# anyone can recheck
bad = verify_threshold(code, p.s, hi - 1)
print(f"with T={hi - 1}:", bad.reason, bad.witness, "weight", bad.witness_weight,
      "rechecked:", recheck_witness(code, bad))
