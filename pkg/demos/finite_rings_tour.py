"""Stable rank and SL2 lifting over Z/n, checked by enumeration."""
from stablerank.finite_rings import ZnMat2, check_stable_row_lemma, e2_decompose, sl2_lift, stable_rank

print("stable ranks, n = 2..12:", [stable_rank(n) for n in range(2, 13)])

rep = check_stable_row_lemma(6)
print(f"lifting criterion over Z/6: holds={rep.holds}, rows={rep.rows_checked}, matrices={rep.matrices_checked}")

M = ZnMat2(7, 0, 6, 1, 0)
print("lift of [[0,6],[1,0]] mod 7:", sl2_lift(M))
word = e2_decompose(M)
print("as elementary matrices:", " ".join(f"e{e.i}{e.j}({e.amount})" for e in word))
