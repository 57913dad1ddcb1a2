"""S3 spanning sets: sizes, conjugation orbits and how |S| compares with |G|."""

from dwmcg.groups import builtin_group
from dwmcg.surfaces import SurfaceSpec, count_conjugation_orbits, enumerate_spanning, spanning_count_table

g = builtin_group("S3")
for genus in (1, 2):
    s = enumerate_spanning(SurfaceSpec(genus), g)
    rep = count_conjugation_orbits(s)
    print(f"genus {genus}: |S| = {rep.size}, orbits {rep.orbit_count}, |S|/|G| = {rep.size / g.order:g}")

print("one boundary leg, |S| by leg label:", spanning_count_table(g, 1).tolist())
