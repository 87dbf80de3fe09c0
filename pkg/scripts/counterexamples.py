"""Two numerical findings reproduced from scratch.

1. Order of fixed-point families: for Phi1 fixing b1 < b2 and Phi2 fixing b2,
   the raw comparison Phi1(b2) < Phi2(b1) can fail in either direction, while
   the sandwich Phi1 <= id <= Phi2 on [b1, b2] always holds.
2. L^p sandwich: for p > 1 and a space of total mass below 1, normalised
   values Phi(1)^-1 ||Phi o |f|||_p can exceed ||f||_p + lambda(Omega), but never
   ||f||_p + lambda(Omega)^(1/p).
"""

from young.fixed_b import order_witness, scale_to_b
from young.funcrep import Log1p, Power, Scale
from young.lpspace import (
    DiscreteMeasureSpace, MeasurableFn, normalized_value, sandwich_check, stress_roster,
)


def order_cases():
    print("# order: b1 = 1, b2 = 4")
    print("phi1,phi2,phi1(b2),phi2(b1),raw_strict,sandwich")
    cases = [
        ("x^0.5", Power(0.5), "2 x^0.5", Scale(Power(0.5), 2.0)),
        ("x^0.99", Power(0.99), "4 log1p/log 5", scale_to_b(Log1p(), 4.0)),
        ("x^0.5", Power(0.5), "4 log1p/log 5", scale_to_b(Log1p(), 4.0)),
    ]
    for n1, f1, n2, f2 in cases:
        r = order_witness(1.0, 4.0, f1, f2)
        print(f"{n1},{n2},{r.raw_pair[0]:.6f},{r.raw_pair[1]:.6f},"
              f"{r.printed_inequality_holds},{r.sandwich}")
    print()


def sandwich_case():
    space = DiscreteMeasureSpace.from_weights([0.25])
    f = MeasurableFn((0.01,))
    rep = sandwich_check(space, f, 2)
    print("# sandwich: one atom of mass 0.25, f = 0.01, p = 2")
    print(f"||f||_p = {rep.norm:.6f}")
    print(f"||f||_p + lambda = {rep.upper_printed:.6f}")
    print(f"||f||_p + lambda^(1/p) = {rep.upper_corrected:.6f}")
    print(f"roster sup = {rep.sup_roster:.6f}")
    roster = stress_roster()
    print("member,value")
    for i in rep.printed_violations:
        print(f"{roster[i]!r},{normalized_value(space, f, 2, roster[i]):.6f}")


if __name__ == "__main__":
    order_cases()
    sandwich_case()
