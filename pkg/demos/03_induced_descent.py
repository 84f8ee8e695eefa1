"""Induced modules and the leading-term descent.

Run with: python3 demos/03_induced_descent.py
"""

from fractions import Fraction

from virmod.induced import InducedElement, descend, format_induced, ind_act, leading_term, theorem1_step
from virmod.lie import MultiIndex
from virmod.quotient import ow_spec, q_spec

ow = ow_spec(1, 1)
theta = Fraction(1, 2)


def basis(spec, word, nword=(), coeff=1):
    return InducedElement.basis(theta, spec, MultiIndex.from_word(word), nword, coeff)


v = basis(ow, (-1,))
print("l3 . (l-1 x 1) =", format_induced(ind_act(3, v)))

# Acting by l_{k+p} removes eps_p from the leading term
v = basis(ow, (-1, -1)) + basis(ow, (-2,), (0,))
print("v =", format_induced(v), " leading term", leading_term(v))
step = theorem1_step(v)
print(f"p = {step.p}, image = {format_induced(step.image)}")
print("flags:", step.nonzero, step.leading_check, step.weight_drop)

out = descend(v)
print("bottom:", format_induced(out.bottom), f"after {out.steps} steps")

# The same for a larger quotient
q5 = q_spec(5, {2, 4, 5}, {2: 1, 4: 0, 5: 1})
v = basis(q5, (-3, -1), (1,), 2) + basis(q5, (-2, -1, -1), (3,), -1)
out = descend(v)
print("Q5 bottom:", format_induced(out.bottom), f"after {out.steps} steps")
