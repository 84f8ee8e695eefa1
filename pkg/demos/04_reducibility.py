"""Evidence of reducibility: Whittaker witnesses and relation closures.

Run with: python3 demos/04_reducibility.py
"""

from virmod.induced import truncated_closure
from virmod.quotient import (
    format_nelement,
    grel_coefficients,
    grel_relations,
    is_whittaker_closed,
    q_spec,
    quotient_consistency,
    remark_parameters,
    remark_witness,
)

# When the third condition fails, a nonzero non-cyclic Whittaker vector exists
for spec in (q_spec(4, {3, 4}, {3: 0, 4: 1}), q_spec(6, {1, 6}, {1: 0, 6: 1})):
    w = remark_witness(spec)
    print(spec, remark_parameters(spec))
    print("  witness", format_nelement(w), "closed:", is_whittaker_closed(spec, w))

# Relations for S = {1, k}
for k in (4, 5, 6):
    a = grel_coefficients(k, 1)
    print(f"k={k} coefficients", ", ".join(f"a_{j} = {c}" for j, c in a.items()))
rels = grel_relations(4, {1: 1, 4: 1})
print("k=4 relation:", format_nelement(rels[0]))

# The submodule generated by the relation, cut at weight and degree 8
cl = truncated_closure(rels, range(0, 5), 8)
print("closure certificate:", {k: v for k, v in cl.certificate().items() if k != "generators"})

# The quotient by the relation is again a module; a wrong coefficient is not
print("consistent:", quotient_consistency(4, {1: 1, 4: 1}, 5))
print("corrupted :", quotient_consistency(4, {1: 1, 4: 1}, 5, coefficient=5))
