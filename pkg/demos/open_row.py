"""The row (21 + 2x, 12, x^2 + 20): unimodular, but out of reach of the obstruction.

x^2 + 20 has no root in Z[i] or Z[w], so no verdict is produced.
"""
from stablerank.errors import PreconditionError
from stablerank.intpoly import parse_row, unimodular_certificate
from stablerank.stability import obstruction, search_stabilizer

row = parse_row("21+2*x,12,x^2+20")
cert = unimodular_certificate(row)
print("unimodular:", cert.verify(), "with D =", cert.d_stage)

try:
    obstruction(row)
except PreconditionError as exc:
    print(f"obstruction refused: {exc.name}: {exc}")

hit = search_stabilizer(row, deg_bound=1, coeff_bound=2)
print("stabilizer in the degree-1 box with coefficients |c| <= 2:", hit and (str(hit.s1), str(hit.s2)))
print("(an empty search settles nothing either way)")
