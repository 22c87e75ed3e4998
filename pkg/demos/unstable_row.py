"""Walk through the obstruction for the row (1 + x, 12, x^2 + 16).

Run with ``python demos/unstable_row.py``.
"""
from stablerank.bms import r_of_ideal, sk1_invariant
from stablerank.intpoly import parse_row, unimodular_certificate
from stablerank.quadratic import PrincipalIdeal, QuadInt, RingKind
from stablerank.stability import obstruction

G = RingKind.GAUSSIAN
row = parse_row("1+x,12,x^2+16")

cert = unimodular_certificate(row)
print("row:", ", ".join(str(r) for r in row))
print("Bezout witnesses:", ", ".join(str(w) for w in cert.witnesses))
print("integer reached before the final step:", cert.d_stage)
print("certificate verifies:", cert.verify())

# x^2 + 16 vanishes at 4i, and 4 divides 4i, so the row maps into Z + 4Z[i]
theta = QuadInt(G, 0, 4)
four = PrincipalIdeal.of(QuadInt(G, 4))
print("r(4 Z[i]) =", r_of_ideal(G, four).r)

rep = obstruction(row, G, theta, 4)
print("completed matrix:", rep.completion)
print("invariant:", sk1_invariant(rep.completion, four).value)
print("verdict:", rep.verdict.value)
print("independent recheck:", rep.verify())
