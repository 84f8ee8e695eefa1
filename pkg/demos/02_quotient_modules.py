"""Quotient modules of the positive part, given by (k, S, lambda).

Run with: python3 demos/02_quotient_modules.py
"""

from virmod.quotient import (
    NElement,
    act,
    format_nelement,
    lgz_spec,
    ow_spec,
    q_spec,
    simplicity_descent,
    validate_spec,
)

# k = 2, S = {1, 2}: the module is C[l0], with l1, l2 acting by shifts
ow = ow_spec(1, 1)
v = NElement.monomial(ow, (0, 0))
print(ow)
print("l1 . l0^2 =", format_nelement(act(ow, 1, v)))
print("l2 . l0^2 =", format_nelement(act(ow, 2, v)))
print("l3 . l0^2 =", format_nelement(act(ow, 3, v)))

# k = 3, S = {2, 3}: two free generators l0, l1
k3 = lgz_spec(3, {2: 1, 3: 1})
print(k3)
print("l2 . l1   =", format_nelement(act(k3, 2, NElement.monomial(k3, (1,)))))

# The three conditions on (k, S, lambda)
for spec in (q_spec(5, {2, 4, 5}, {2: 1, 4: 0, 5: 1}), q_spec(4, {3, 4}, {3: 0, 4: 1})):
    print(spec, validate_spec(spec))

# Descent: strip the smallest factor of the highest term until a constant is left
w = NElement(k3, {(0, 1): 1, (1, 1): 2, (0,): -3})
res = simplicity_descent(k3, w)
print("descent of", format_nelement(w), "->", format_nelement(res.witness), f"in {res.steps} steps")
