##
## Walkthrough: factoring single matrices into triangular factors, the
## 3-vs-4 factor boundary, product-preserving padding, and the count bound
##

from fractions import Fraction

from sl2factor import (
    ExactComplex, SL2, Word, can_factor_three, factor_constant,
    factor_count_bound, pad_avoid_singular)
from sl2factor.word_core import LOWER, UPPER, eval_word

EC = ExactComplex


def show(m, label):
    f = factor_constant(m)
    word = " ".join(f"{fac.side}({fac.entry})" for fac in f.word.factors)
    print(f"{label}: {f.factor_count} factors  {word or '(identity)'}")
    return f


show(SL2(EC(1), EC(0), EC(0), EC(1)), "identity        ")
show(SL2(EC(2), EC(3), EC(1), EC(2)), "[[2,3],[1,2]]   ")
show(SL2(EC(1), EC(5), EC(0), EC(1)), "[[1,5],[0,1]]   ")
diag = SL2(EC(2), EC(0), EC(0), EC(Fraction(1, 2)))
show(diag, "diag(2, 1/2)    ")
print("diag(2,1/2) admits ULU?", can_factor_three(diag, "ULU"),
      " LUL?", can_factor_three(diag, "LUL"))

# padding: same product, two more factors, away from the singular set
word = Word.of((UPPER, EC(3)), (LOWER, EC(2)))
padded = pad_avoid_singular(word)
print("\npadded word:",
      " ".join(f"{fac.side}({fac.entry})" for fac in padded.factors))
print("products equal:", eval_word(word) == eval_word(padded))

# composite factor-count arithmetic
print("\nbound(n=2, K(2)=4) =", factor_count_bound(2, {2: 4}))
print("bound(n=3, K(2)=4, K(3)=5) =", factor_count_bound(3, {2: 4, 3: 5}))
