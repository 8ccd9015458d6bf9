"""Sweep the problem size and summarize how the band edge moves.

The number of usable angular orders B grows essentially linearly with the
size parameter kappa.  This script reproduces the summary numbers behind
that statement: it sweeps 300 equally spaced sizes with the source filling
the measurement disk, compares B against its Bessel-zero brackets B- and
B+, fits straight lines to all three edges, and reports how tight the
cheap closed-form stand-in for B- is across the sweep.

    python demos/sweep_statistics.py
"""

import math
import time

import numpy as np

import ispband as ib


def main():
    t0 = time.perf_counter()
    records = ib.run_sweep(300)
    elapsed = time.perf_counter() - t0
    kappas = np.array([r.kappa for r in records])
    print(f"swept {len(records)} sizes, kappa = {kappas[0]:.4f} .. "
          f"{kappas[-1]:.4f}, in {elapsed:.2f} s")

    # ------------------------------------------------------------------
    # 1. Where the band first opens.  Below a small threshold size the
    #    spectrum decays from the very first order and B stays at zero.
    # ------------------------------------------------------------------
    B = np.array([r.B for r in records])
    zero = kappas[B == 0]
    pos = kappas[B > 0]
    print("\nband opening:")
    print(f"  records with an empty band              : {(B == 0).sum()}")
    print(f"  largest size with B = 0                 : kappa = {zero.max():.4f}")
    print(f"  smallest size with B > 0                : kappa = {pos.min():.4f}")

    # ------------------------------------------------------------------
    # 2. Defect statistics.  eps- = B- - B and eps+ = B+ - B measure how
    #    far each bracket sits from the band edge, in whole modes.
    # ------------------------------------------------------------------
    eps_minus = np.array([r.eps_minus for r in records])
    eps_plus = np.array([r.eps_plus for r in records])
    print("\nbracket defects over the sweep:")
    print(f"  mean eps-  = {eps_minus.mean():+.4f}   (B sits above B-)")
    print(f"  mean eps+  = {eps_plus.mean():+.4f}   (B+ sits above B)")
    print(f"  max |eps-| = {np.abs(eps_minus).max():.0f}")
    print(f"  max |eps+| = {np.abs(eps_plus).max():.0f}")

    # ------------------------------------------------------------------
    # 3. The cheap closed form.  Btilde- needs only a cube root, yet it
    #    tracks B- to within one mode; its relative error against B
    #    drops below 5 percent once the problem is no longer tiny.
    # ------------------------------------------------------------------
    relerr = np.array([r.relerr_minus for r in records])
    bad = kappas[relerr >= 0.05]
    tail = relerr[kappas > 30.0]
    print("\nclosed-form quality:")
    print(f"  last size with relative error >= 5%     : kappa = {bad.max():.4f}")
    print(f"  worst relative error for kappa > 30     : {tail.max():.4%}")

    # ------------------------------------------------------------------
    # 4. Straight-line fits.  Slopes just below one reflect the slow
    #    cube-root correction that keeps the edges slightly sublinear.
    #    std_dev is the standard error of the fitted slope.
    # ------------------------------------------------------------------
    print("\nlinear fits over the sweep:")
    print(f"  {'edge':>6} {'slope':>9} {'intercept':>10} {'mean |err|':>11} {'slope SE':>10}")
    for target in ("B", "B-", "B+"):
        fit = ib.fit_linear(records, target)
        print(f"  {fit.target:>6} {fit.slope:>9.4f} {fit.intercept:>10.4f} "
              f"{fit.mean_abs_error:>11.4f} {fit.std_dev:>10.2e}")


if __name__ == "__main__":
    main()
