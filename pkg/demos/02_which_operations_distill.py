# Which operations distill squeezing?
#
# For subtraction (PS), addition (PA) and catalysis (PC) of 1..4 photons we
# search (lam, T) for the largest drop of the q variance below the input.

from heralded_squeezing import Kind, OpKind
from heralded_squeezing.squeezing import DISTILLATION_EPSILON, max_enhancement

print("op    n  max gain     at lam   at T")
for kind in Kind:
    for order in range(1, 5):
        res = max_enhancement(OpKind(kind, order))
        mark = "yes" if res.max_enhancement > DISTILLATION_EPSILON else "no"
        print(f"{kind.value}  {order}  {res.max_enhancement:+.3e}  {res.lam:.4f}  {res.T:.4f}  {mark}")

# Odd-order subtraction and every addition only approach the input variance
# in the vacuum, ideal-operation corner; they never improve on it.
