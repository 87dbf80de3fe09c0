"""Distance tables for the two A_b approximation sequences.

    python3 scripts/convergence_tables.py [--nmax 200] [--b 1.0]

Prints n, d_n and the ratio d_2n / d_n for each target; the ratio should
settle near 0.5 (a 1/n rate).
"""

import argparse

from young.catalog import catalog, seeds_b1
from young.density import log_indices, theorem7_seq, theorem8_seq
from young.fixed_b import scale_to_b
from young.funcrep import Compose, Convex, WeightVector
from young.ymetric import metric_d


def table(label, target, seq, n_max):
    idx = sorted(set(log_indices(n_max)) | {10, 20, 40, 50, 100})
    idx = [n for n in idx if n <= n_max]
    d = {n: metric_d(target, seq(n)) for n in idx}
    print(f"# {label}")
    print("n,d_n,d_2n/d_n")
    for n in idx:
        ratio = f"{d[2 * n] / d[n]:.4f}" if 2 * n in d and d[n] > 0 else ""
        print(f"{n},{d[n]:.6e},{ratio}")
    print()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=200)
    ap.add_argument("--b", type=float, default=1.0)
    args = ap.parse_args()
    b = args.b

    for name in ("log1p", "power_half", "id_plus_soft", "sqrt_log1p"):
        phi = catalog()[name]
        table(f"power roots of {name}, b = {b}", scale_to_b(phi, b),
              lambda n, phi=phi: theorem7_seq(phi, b, n), args.nmax)

    p, l, s, _ = [scale_to_b(f, b) for f in seeds_b1()]
    targets = {
        "sqrt o log": Compose(p, l),
        "soft o sqrt": Compose(s, p),
        "mixture": Convex(WeightVector((0.5, 0.5)), (Compose(l, s), Compose(s, p))),
    }
    for label, delta in targets.items():
        table(f"outer power roots of {label}, b = {b}", delta,
              lambda j, delta=delta: theorem8_seq(delta, b, j), args.nmax)


if __name__ == "__main__":
    main()
