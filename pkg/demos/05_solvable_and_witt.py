"""Pullbacks to the three-dimensional solvable quotient, Witt brackets, lower central series.

Run with: python3 demos/05_solvable_and_witt.py
"""

from fractions import Fraction

from virmod.solvable import classify_c_module, phi_pullback, psi_candidate, psi_pullback, shift_family, validate_module
from virmod.witt import D, lower_central_series, positive_virasoro_bracket, prop62_identity, witt_bracket

L = shift_family(1)
print("b-module validates:", validate_module(L))
print("wrong shift validates:", validate_module(shift_family(1, shift=1)))

for mu in (0, 1, Fraction(1, 3), -2):
    print(f"phi_{mu}:", classify_c_module(phi_pullback(mu, L)))

psi = psi_pullback(L)
print("psi:", classify_c_module(psi), "|", "; ".join(psi.notes))
print("psi with 1/2 validates:", validate_module(psi_candidate(L, Fraction(1, 2))))

# Witt algebra in two variables
print("[d1, x1 d1] =", witt_bracket(D(1, (0, 0)), D(1, (1, 0))))
print("[x1^3 d1, x1^2 d2] =", witt_bracket(D(1, (3, 0)), D(2, (2, 0))))
print(prop62_identity(1, 1, (3, 0), (0, 2)))
print(prop62_identity(1, 2, (0, 3), (2, 0)))

# Lower central series of span{l_i : i >= 1}, cut at index 30
for term in lower_central_series(positive_virasoro_bracket, range(1, 31), 5, 30):
    print(f"n_{term.depth}: starts at l_{min(term.indices)}, codim {term.codim}")
