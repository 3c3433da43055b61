"""
Closed-form residues against the generic ones
=============================================

For pairs of different parity every t-pole is simple and the residues have
product formulas.  Family A and the first case of family B agree with the
generic residue; the second case of family B does not, and we show the
ratio so the difference is visible.
"""

from jointseries.springer import closed_form_simple, partial_fractions, shifted_genfun

for d2 in range(2, 8):
    for d1 in range(1, d2):
        if (d2 - d1) % 2 == 0:
            continue
        res = {t.e: t.coeff for t in partial_fractions(shifted_genfun((d1, d2)))}
        a_ok = all(closed_form_simple((d1, d2), "A", k) == res[d1 + d2 - 2 * k] for k in range(d1 + 1))
        line = [f"({d1},{d2}) A: {'all equal' if a_ok else 'MISMATCH'}"]
        for k in range(d2 + 1):
            cf = closed_form_simple((d1, d2), "B", k)
            case = 1 if 2 * k < d2 - d1 else 2
            if cf == res[2 * k]:
                line.append(f"B{k}[{case}] equal")
            else:
                line.append(f"B{k}[{case}] ratio {cf / res[2 * k]}")
        print("\n  ".join(line))

###############################################################################
# Read literally, the last Pochhammer block of family A steps upward; the
# descending reading is the one that reproduces the residue.

print("literal A_0 for (1,2):", closed_form_simple((1, 2), "A", 0, literal=True))
print("residue           :", closed_form_simple((1, 2), "A", 0))
