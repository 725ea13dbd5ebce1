"""Print the Euclidean minimum and deep holes of O_K for the five Euclidean fields."""
import time

from tensorlat import euclidean_minimum, make_field

t0 = time.perf_counter()
print(f"{'d':>3} {'mu':>6} {'holes':>6} {'orbits':>7} {'(1-mu)|d_K|':>12}  representatives")
for d in (3, 1, 7, 2, 11):
    F = make_field(d)
    rep = euclidean_minimum(F)
    reps = ", ".join(str(z) for z in rep.representatives)
    print(f"{d:>3} {str(rep.mu):>6} {len(rep.holes):>6} {len(rep.orbits):>7} {str((1 - rep.mu) * abs(F.disc)):>12}  {reps}")
print(f"total {time.perf_counter() - t0:.3f} s")
