# Weighted projective space CP^{n+1}_a has a single singular cone; blowing it up
# at -e_{n+1} gives the smooth fan of P(C + γ^a) over CP^n.
import numpy as np

from qtoric.fans import gb_fan, is_smooth, lens_cohomology, star_subdivide, wps_fan

n, a = 2, 3
F = wps_fan(n, a)
print("rays of CP^3_3:")
print(np.array(F.rays))
smooth, cone, det = is_smooth(F)
print("smooth:", smooth, "singular cone:", cone, "det:", det)

B = star_subdivide(F, cone, (0, 0, -1))
print("blow-up equals the bundle fan:", B == gb_fan(n, a), "smooth:", is_smooth(B)[0])

# the link of the singular point is a lens space
for a in range(1, 5):
    print(f"H*(S^5/μ_{a}) =", lens_cohomology(2, a))
