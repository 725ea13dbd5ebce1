"""Build the Leech lattice from the Golay code and count its minimal vectors."""
import time

from tensorlat import catalog, is_extremal, zl_minimum

t0 = time.perf_counter()
L = catalog.get("Leech").data
t1 = time.perf_counter()
mn, kiss = zl_minimum(L)
t2 = time.perf_counter()
print(f"det = {L.det}, even = {L.is_even}")
print(f"min = {mn}, kissing = {kiss}, extremal = {is_extremal(L)}")
print(f"construction {t1 - t0:.2f} s, enumeration {t2 - t1:.2f} s")
