"""Recover a disk source from boundary data by truncated SVD inversion.

The forward map takes a source supported on the disk of radius R0 to the
field it radiates on the measurement circle of radius R.  Its singular
system is known in closed form, so inversion reduces to reading angular
Fourier coefficients off the boundary trace, dividing each by its singular
value, and keeping only the orders whose singular values have not yet
collapsed.  This script runs the whole loop three times:

  1. clean data, truncation at the band edge: near-exact recovery;
  2. data containing an order beyond the truncation: that share of the
     source is invisible and the recovery equals a projection;
  3. noisy data: truncating at the band edge keeps the noise in check,
     while inverting collapsed singular values amplifies it wildly.

    python demos/tsvd_reconstruction.py
"""

import math

import numpy as np

import ispband as ib


def psi_source(g, weights, n_r, n_theta):
    """Source field mixing right singular functions with set weights."""
    def fn(r, t):
        out = np.zeros(np.broadcast_shapes(r.shape, t.shape), dtype=complex)
        for m, w in weights.items():
            out = out + w * ib.psi_eval(m, g, r, t)
        return out
    return ib.source_grid(g, n_r, n_theta, fn)


def rel_l2(a, b):
    """Relative disk-weighted L2 distance between two sources on one grid."""
    wt = 2.0 * math.pi / a.values.shape[1]
    w = a.rho[:, None] * a.radial_weights[:, None] * wt
    num = np.sum(w * np.abs(a.values - b.values) ** 2)
    den = np.sum(w * np.abs(b.values) ** 2)
    return math.sqrt(num / den)


def main():
    kappa0 = 10.0 * math.pi
    g = ib.ProblemGeometry.from_size_params(kappa0, kappa0)
    rep = ib.report(g)
    print(f"geometry: kappa0 = kappa = {kappa0:.4f}, band edge B = {rep.B}")

    # The target mixes a low order and a moderately high order, both well
    # inside the band.
    weights = {2: 1.0, -9: 0.5}
    modes = 40
    n_s = 256

    # ------------------------------------------------------------------
    # 1. Clean data, truncation at the band edge.
    # ------------------------------------------------------------------
    truth_coarse = psi_source(g, weights, 64, 64)
    data = ib.apply_forward_analytic(truth_coarse, modes=modes, n_s=n_s)
    coeffs = ib.modal_decompose(data, m_max=modes)
    rec = ib.tsvd_reconstruct(coeffs, N=rep.B, policy="B")
    truth = psi_source(g, weights, rec.source.n_r, rec.source.n_theta)
    err = rel_l2(rec.source, truth)
    print("\nclean recovery at N = B:")
    print(f"  modal residual                          : {rec.residual:.3e}")
    print(f"  relative L2 error on the disk           : {err:.3e}")

    # ------------------------------------------------------------------
    # 2. Truncating below an active order.  With N = 5 the order -9 part
    #    of the source cannot be represented; the recovery converges to
    #    the projection and the error equals the dropped share exactly.
    # ------------------------------------------------------------------
    rec5 = ib.tsvd_reconstruct(coeffs, N=5)
    truth5 = psi_source(g, weights, rec5.source.n_r, rec5.source.n_theta)
    err5 = rel_l2(rec5.source, truth5)
    dropped = abs(weights[-9]) / math.sqrt(
        abs(weights[2]) ** 2 + abs(weights[-9]) ** 2)
    print("\nrecovery truncated at N = 5 (order -9 dropped):")
    print(f"  relative L2 error on the disk           : {err5:.6f}")
    print(f"  norm share of the dropped order         : {dropped:.6f}")

    # ------------------------------------------------------------------
    # 3. Noise amplification.  Move the sensors to R = 2 R0 so the
    #    singular values past the band collapse fast, add 1 percent
    #    noise, and compare truncation at the lower bracket B- against
    #    truncation ten orders past the upper bracket B+.
    # ------------------------------------------------------------------
    g2 = ib.ProblemGeometry.from_size_params(kappa0, 2.0 * kappa0)
    rep2 = ib.report(g2)
    truth2_coarse = psi_source(g2, weights, 64, 64)
    noisy = ib.synthesize_measurement(truth2_coarse, noise_level=1e-2,
                                      seed=42, modes=modes, n_s=n_s)
    coeffs2 = ib.modal_decompose(noisy, m_max=modes)
    errs = {}
    for label, n_cut in (("B-", rep2.B_minus), ("B++10", rep2.B_plus + 10)):
        r = ib.tsvd_reconstruct(coeffs2, N=n_cut)
        t = psi_source(g2, weights, r.source.n_r, r.source.n_theta)
        errs[label] = rel_l2(r.source, t)
    print(f"\nnoisy recovery at R = 2 R0 (B- = {rep2.B_minus}, "
          f"B+ = {rep2.B_plus}, noise 1e-2):")
    print(f"  error truncating at N = B-              : {errs['B-']:.3e}")
    print(f"  error truncating at N = B+ + 10         : {errs['B++10']:.3e}")
    print(f"  amplification factor                    : "
          f"{errs['B++10'] / errs['B-']:.1f}x")
    print("  keeping collapsed singular values multiplies the data noise by")
    print("  their reciprocals, which is why the band edge is the right")
    print("  place to stop")


if __name__ == "__main__":
    main()
