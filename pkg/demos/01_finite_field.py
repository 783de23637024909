"""
Arithmetic in small finite fields
=================================

Prime-power fields are the raw material of the codes.  Elements of GF(p^m)
are integers whose base-p digits are polynomial coefficients.
"""

from threshold_codes import field_new

# GF(16): the defining polynomial is the smallest irreducible quartic, x^4 + x + 1
F = field_new(2, 4)
print("modulus coefficients (constant first):", F.modulus)

# x * x^3 wraps around to x + 1
print("2 * 8 =", F.mul(2, 8))

# every nonzero element has an inverse
for a in (1, 2, 7, 15):
    print(f"inv({a}) = {F.inv(a)}, check {F.mul(a, F.inv(a))}")

# elements carry their field, so expressions read naturally
a, b = F.element(6), F.element(11)
print("(a + b) * a^-1 =", ((a + b) * a.inverse()).rep)
