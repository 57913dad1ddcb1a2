"""Generators on a torus with one boundary leg, including the drag."""

from dwmcg.cocycles import cyclic_cocycle, trivial_cocycle
from dwmcg.groups import builtin_group, make_cyclic
from dwmcg.mcg import build_generator_set
from dwmcg.monomial import closure
from dwmcg.surfaces import SurfaceSpec, enumerate_spanning

s3 = builtin_group("S3")
surface = SurfaceSpec(1, (3,))
s = enumerate_spanning(surface, s3)
for a in build_generator_set(surface, s3, trivial_cocycle(s3), s):
    moves = [f"{st.loops}->{im.loops}" for st, im in zip(s.states, a.images) if st != im]
    print(f"{a.name}: moves {len(moves)} of {len(s)} states, e.g. {moves[:2]}")

for n in (2, 3, 4):
    g = make_cyclic(n)
    acts = build_generator_set(SurfaceSpec(1, (0,)), g, cyclic_cocycle(g, 1))
    print(f"Z/{n} p=1, one leg: image order {closure([a.matrix for a in acts]).order}")
