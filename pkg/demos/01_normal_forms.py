"""Products in the enveloping algebra and their normal forms.

Run with: python3 demos/01_normal_forms.py
"""

from virmod.lie import C, MultiIndex, UElement, bracket, cmp_principal, format_element, iterated_ad, multiply
from virmod.parse import parse

l = UElement.gen

# The bracket carries a central term only when the indices are opposite
print("[l2, l3]  =", format_element(bracket(2, 3)))
print("[l2, l-2] =", format_element(bracket(2, -2)))
print("[l3, l-3] =", format_element(bracket(3, -3)))

# Products are straightened so that indices increase from left to right
print("l1 * l-1  =", format_element(multiply(l(1), l(-1))))
print("l2 * l-2  =", format_element(multiply(l(2), l(-2))))

# Longer words: every swap adds a bracket term of shorter length
x = multiply(multiply(l(3), l(-1)), l(-2))
print("l3 l-1 l-2 =", format_element(x))

# The parser reads the same text format and returns the normal form
e = parse("3/2 * l[-2]^2 * l[1] - c")
print("parsed     =", format_element(e))
print("round trip :", parse(format_element(e)) == e)

# c commutes with everything
print("c central  :", multiply(l(C), x) == multiply(x, l(C)))

# Repeated brackets with a fixed generator follow a product formula
for s in range(4):
    print(f"ad(l2)^{s}(l3) =", format_element(iterated_ad(2, 3, s)))

# Multi-indices: eps_2 sits below 2 eps_1 (same weight, smaller degree)
e1, e2 = MultiIndex.eps(1), MultiIndex.eps(2)
print("eps2 vs 2 eps1:", cmp_principal(e2, e1 + e1))
