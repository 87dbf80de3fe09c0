"""Set distances between sampled fixed-point families and hierarchy levels.

    python3 scripts/hierarchy_distances.py

For b in a small grid, samples Y_b by rescaling the catalog, then reports the
directed and Hausdorff distances between families and the diameter of each
against sqrt(2 C_b).
"""

import math

from young.catalog import catalog, seeds_b1
from young.fixed_b import FnRoster, c_b, diameter_check, gen_hierarchy, scale_to_b, set_distance


def family(b):
    members = [scale_to_b(phi, b) for name, phi in catalog().items() if name != "id"]
    return FnRoster(f"Y_{b:g}", b, members)


def main():
    bs = [0.5, 1.0, 2.0, 4.0]
    fams = {b: family(b) for b in bs}
    print("b,diameter,bound")
    for b, F in fams.items():
        rep = diameter_check(F)
        print(f"{b:g},{rep.diameter:.6f},{math.sqrt(2 * c_b(b)):.6f}")
    print()
    print("b1,b2,forward,backward,hausdorff")
    for b1 in bs:
        for b2 in bs:
            if b1 < b2:
                r = set_distance(fams[b1], fams[b2])
                print(f"{b1:g},{b2:g},{r.forward:.6f},{r.backward:.6f},{r.hausdorff:.6f}")
    print()
    seeds = FnRoster("S", 1.0, seeds_b1())
    lvl1 = gen_hierarchy(1, 1.0, seeds, [0.5, 0.5])
    lvl2 = gen_hierarchy(2, 1.0, seeds, [0.5, 0.5])
    r = set_distance(lvl2, lvl1)
    print(f"level 2 ({len(lvl2)} members, {len(lvl2.a_members())} flagged) vs level 1: "
          f"forward {r.forward:.6f} backward {r.backward:.6f}")


if __name__ == "__main__":
    main()
