# Enhancement versus heralding probability
#
# R = D * P weighs the variance improvement D against the success probability P.
# We locate its maximum for two-photon subtraction and catalysis, and export the
# contour data for plotting.

import csv

from heralded_squeezing import OpKind, curve, optimize_R

for label in ("ps:2", "pc:2"):
    rec = optimize_R(OpKind.parse(label))
    print(
        f"{rec.op.label}: R_max={rec.r_max:.3e} lam={rec.lambda_opt:.4f} T={rec.t_opt:.4f} "
        f"var_svs={rec.var_svs_at_opt:.4f} D={rec.d_at_opt:.4f} P={rec.p_at_opt:.3e}"
    )

rows = [pt.as_row() for pt in curve(OpKind.parse("pc:2"), "R_contour", grid=60)]
with open("r_contour_2pc.csv", "w", newline="") as fh:
    writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)
print(f"wrote {len(rows)} rows to r_contour_2pc.csv")
