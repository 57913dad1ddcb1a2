"""Twisted torus action for Z/n: generator matrices, relations, image order.

    python demos/torus_action.py 3 1
"""

import sys

from dwmcg.cocycles import cyclic_cocycle
from dwmcg.groups import make_cyclic
from dwmcg.mcg import build_generator_set
from dwmcg.monomial import check_relation, closure, permutation_closure_order
from dwmcg.surfaces import SurfaceSpec, enumerate_spanning


def main(n=3, p=1):
    g = make_cyclic(n)
    w = cyclic_cocycle(g, p)
    s = enumerate_spanning(SurfaceSpec(1), g)
    acts = build_generator_set(s.surface, g, w, s)
    print(f"Z/{n}, cyclic cocycle p={p}: |S| = {len(s)}")
    for a in acts:
        print(f"\n{a.name}")
        for st, img, ph in zip(s.states, a.images, a.matrix.phase):
            print(f"  {st.loops} -> {img.loops}  zeta^{ph}")
    mats = {a.name: a.matrix for a in acts}
    for lhs, rhs in (("alpha1 beta1 alpha1", "beta1 alpha1 beta1"), ("(alpha1 beta1)^6", "()")):
        r = check_relation(lhs, rhs, mats, "up-to-scalar")
        print(f"{lhs} = {rhs}: {'holds' if r.ok else 'fails'} (scalar zeta^{r.scalar})")
    res = closure(list(mats.values()))
    perm = permutation_closure_order([m.perm for m in mats.values()])
    print(f"image order {res.order}, underlying permutation group order {perm}")


if __name__ == "__main__":
    main(*(int(x) for x in sys.argv[1:3]))
