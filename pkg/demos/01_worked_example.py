"""
The (1, 3) case step by step
============================

A linear form and a cubic.  We build the shifted generating function,
split it into partial fractions in ``t``, push each term through the
diagonal operator and add everything up.
"""

from jointseries.canonical import present, render
from jointseries.multisection import psi_double_bag, psi_simple_bag
from jointseries.ring import ZPoly, bag_sum, reduce_bag
from jointseries.springer import partial_fractions, poincare_series, shifted_genfun

# the t-poles after the substitution t -> t z^3: exponents and multiplicities
f = shifted_genfun((1, 3))
print("poles:", f.mult)

# one coefficient per pole order; double poles give two terms
terms = partial_fractions(f)
for term in terms:
    print(f"e={term.e} order={term.order}: {term.coeff}")

###############################################################################
# Each term is multiplied by 1 - z^2 (invariants) and sent through the
# diagonal extraction with n = 3.  Poles with e > 3 drop out.

mult = ZPoly([1, 0, -1])
pieces = []
for term in terms:
    R = term.bag.mul_poly(mult)
    piece = psi_simple_bag(3, term.e, R) if term.order == 1 else psi_double_bag(3, term.e, R)
    pieces.append(piece)
    print(f"e={term.e} order={term.order} contributes {piece.to_ratfunc()}")

total = reduce_bag(bag_sum(pieces))
print("sum:", total)

###############################################################################
# The same value in (1 - z^k) form, and the published presentation for
# comparison.  Both describe one rational function.

print("presented:", render(poincare_series((1, 3), "invariants"), "text"))
print("factored numerator:", present(total).numerator)
print("first terms:", poincare_series((1, 3), "invariants", terms=16).series)
