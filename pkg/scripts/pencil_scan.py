"""Scan the DJR / E' pencil over a grid of rational (eta, theta).

For each point we report whether s*mu_DJR(eta) + t*mu_E'(theta) satisfies Jacobi
for all (s, t); only the diagonal eta = theta should survive.
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from twistlab import verify as V
from twistlab.bialg import pencil_solve
from twistlab.scalars import S


@dataclass
class ScanConfig:
    lo: int = -2
    hi: int = 2
    denominator: int = 2


def grid(cfg: ScanConfig):
    n = cfg.denominator
    return [Fraction(k, n) for k in range(cfg.lo * n, cfg.hi * n + 1)]


def scan(cfg: ScanConfig) -> dict[tuple[Fraction, Fraction], bool]:
    pts = grid(cfg)
    out = {}
    for eta in pts:
        for theta in pts:
            params = {"eta": S(eta.numerator) / eta.denominator, "theta": S(theta.numerator) / theta.denominator}
            out[(eta, theta)] = pencil_solve(*V.pencil_tables(params=params)).compatible()
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lo", type=int, default=-2)
    ap.add_argument("--hi", type=int, default=2)
    ap.add_argument("--denominator", type=int, default=2)
    a = ap.parse_args()
    res = scan(ScanConfig(a.lo, a.hi, a.denominator))
    ok = sorted(k for k, v in res.items() if v)
    off = [k for k in ok if k[0] != k[1]]
    print(f"{len(ok)}/{len(res)} grid points compatible; off-diagonal compatible points: {len(off)}")
    for eta, theta in off:
        print(f"  eta={eta} theta={theta}")


if __name__ == "__main__":
    main()
