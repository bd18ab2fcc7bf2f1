# Two-photon subtraction on a squeezed vacuum
#
# A squeezed vacuum with squeezing parameter lam = tanh(r) is mixed with vacuum
# on a beam splitter of transmissivity T. Detecting two photons in the ancilla
# arm heralds a non-Gaussian state whose q variance can drop below the input's.

import numpy as np

from heralded_squeezing import OpKind, enhancement, optimize_T, symmetric_moments, to_db, var_svs
from heralded_squeezing.squeezing import regions_2ps, t_opt_2ps, var_2ps

op = OpKind.parse("ps:2")

# The engine and the closed form agree.

lam, T = 0.38, 0.55
res = symmetric_moments(0, 2, lam, T)
print(f"var_q engine      {res.var_q:.12f}")
print(f"var_q closed form {float(var_2ps(lam, T)):.12f}")
print(f"input variance    {float(var_svs(lam)):.12f}")
print(f"heralding P       {res.probability:.4e}")

# The variance depends on lam * T only. Inside a window of lam the best T is
# interior; outside it the ideal limit T -> 1 wins.

lo, hi = regions_2ps()
print(f"\ninterior-optimum window: ({lo:.4f}, {hi:.4f})")
print(" lam    T_opt    var(T_opt)  input   gain[dB]")
for lam in np.linspace(0.1, 0.8, 8):
    T_star, v = optimize_T(op, float(lam))
    gain = to_db(v) - to_db(var_svs(lam))
    print(f"{lam:.2f}  {T_star:.5f}  {v:.6f}   {float(var_svs(lam)):.4f}  {gain:+.3f}")
    if lo < lam < hi:
        assert abs(T_star - t_opt_2ps(lam)) < 1e-4

# The catch: the probability vanishes as T -> 1.

print("\n  T      D        P")
for T in (0.5, 0.7, 0.9, 0.99):
    pt = enhancement(op, 0.27, T)
    print(f"{T:.2f}  {pt.d_ng:.4f}  {pt.probability:.3e}")
