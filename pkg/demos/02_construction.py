"""
Reed-Solomon based threshold codes
==================================

A code is fixed by a prime power q and a degree bound lambda.  Every
polynomial of degree <= lambda over GF(q) is one column; its values at w
points become w one-hot blocks of q rows.
"""

import numpy as np

from threshold_codes import build_code, derive_params
from threshold_codes.ks_construction import published_table_rows

p = derive_params(5, 1)
print(p.to_json())

code = build_code(p)
X = code.to_array()
print("shape", X.shape, "column weights", set(code.weights()))

# column 7 is the polynomial 2 + x (constant term varies fastest)
print("column 7 by block:", np.nonzero(X[:, 7])[0].reshape(-1) % p.q)

# the full parameter table, recomputed from (q, lambda) alone
for r in published_table_rows():
    c = r["computed"]
    flag = "" if not r["mismatches"] else f"  <- printed {r['mismatches'][0]}={r['printed']['t']}"
    print(f"q={c['q']:>2} lambda={c['lambda']} t={c['t']:>8} N={c['N']:>5} s={c['s']} "
          f"T={c['T']:>4} T'={c['T_prime']:>4}{flag}")
