"""CSV readers and writers for every artifact the package emits.

All floating-point fields are written with 17 significant digits, which
round-trips IEEE doubles exactly; readers hand back the same bits, and
re-emitting a parsed file reproduces it byte for byte. Geometry travels
in a single leading comment line on the data formats that need it.
"""

from __future__ import annotations

import contextlib
import io
import math
import sys
from typing import Iterable

import numpy as np

from .experiments import RegressionFit, SweepRecord
from .forward import BoundaryData, SourceField
from .singular_system import ProblemGeometry, SpectrumTable
from .tsvd import Reconstruction

__all__ = [
    "write_spectrum", "read_spectrum",
    "write_sweep", "read_sweep",
    "write_fits", "read_fits",
    "write_boundary", "read_boundary",
    "write_source", "read_source",
    "write_reconstruction", "read_reconstruction",
]

_LN10 = math.log(10.0)

SPECTRUM_HEADER = "m,A_m,log10_abs_H2,log10_sigma,sigma"
SWEEP_HEADER = ("kappa,kappa0,B,B_minus,B_plus,B_tilde_minus,B_tilde_plus,"
                "eps_minus,eps_plus,relerr_minus,relerr_plus")
FITS_HEADER = "target,slope,intercept,mean_abs_error,std_dev"
BOUNDARY_HEADER = "index,re,im"
SOURCE_HEADER = "i_r,i_theta,rho,theta,re,im"


def _g17(x: float) -> str:
    return format(float(x), ".17g")


@contextlib.contextmanager
def _open_write(path):
    if hasattr(path, "write"):
        yield path
    elif path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


@contextlib.contextmanager
def _open_read(path):
    if hasattr(path, "read"):
        yield path
    else:
        with open(path, "r", newline="") as fh:
            yield fh


def _fmt_meta(val) -> str:
    if isinstance(val, str):
        return val
    if isinstance(val, float):
        return _g17(val)
    return str(int(val))


def _geometry_line(g: ProblemGeometry, **extra) -> str:
    parts = [f"k={_g17(g.k)}", f"R0={_g17(g.R0)}", f"R={_g17(g.R)}"]
    parts.extend(f"{key}={_fmt_meta(val)}" for key, val in extra.items())
    return "# " + " ".join(parts)


def _parse_header(line: str) -> dict:
    if not line.startswith("# "):
        raise ValueError(f"expected a geometry header line, got {line!r}")
    out = {}
    for token in line[2:].split():
        key, _, val = token.partition("=")
        out[key] = val
    return out


def write_spectrum(table: SpectrumTable, path) -> None:
    """Spectrum rows as m,A_m,log10_abs_H2,log10_sigma,sigma."""
    with _open_write(path) as fh:
        fh.write(SPECTRUM_HEADER + "\n")
        for i in range(len(table)):
            fh.write(",".join([
                str(int(table.m[i])),
                _g17(table.a[i]),
                _g17(table.log_abs_h2[i] / _LN10),
                _g17(table.log_sigma[i] / _LN10),
                _g17(table.sigma[i]),
            ]) + "\n")


def read_spectrum(path) -> dict:
    """Columns of a spectrum CSV as arrays, keyed by header name."""
    with _open_read(path) as fh:
        header = fh.readline().strip()
        if header != SPECTRUM_HEADER:
            raise ValueError(f"unexpected spectrum header {header!r}")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    cols = list(zip(*rows))
    return {
        "m": np.array([int(v) for v in cols[0]]),
        "A_m": np.array([float(v) for v in cols[1]]),
        "log10_abs_H2": np.array([float(v) for v in cols[2]]),
        "log10_sigma": np.array([float(v) for v in cols[3]]),
        "sigma": np.array([float(v) for v in cols[4]]),
    }


def write_sweep(records: Iterable[SweepRecord], path) -> None:
    with _open_write(path) as fh:
        fh.write(SWEEP_HEADER + "\n")
        for r in records:
            fh.write(",".join([
                _g17(r.kappa), _g17(r.kappa0),
                str(r.B), str(r.B_minus), str(r.B_plus),
                str(r.B_tilde_minus), str(r.B_tilde_plus),
                str(r.eps_minus), str(r.eps_plus),
                _g17(r.relerr_minus), _g17(r.relerr_plus),
            ]) + "\n")


def read_sweep(path) -> list[SweepRecord]:
    with _open_read(path) as fh:
        header = fh.readline().strip()
        if header != SWEEP_HEADER:
            raise ValueError(f"unexpected sweep header {header!r}")
        out = []
        for line in fh:
            if not line.strip():
                continue
            v = line.strip().split(",")
            out.append(SweepRecord(
                kappa=float(v[0]), kappa0=float(v[1]), B=int(v[2]),
                B_minus=int(v[3]), B_plus=int(v[4]),
                B_tilde_minus=int(v[5]), B_tilde_plus=int(v[6]),
                eps_minus=int(v[7]), eps_plus=int(v[8]),
                relerr_minus=float(v[9]), relerr_plus=float(v[10])))
    return out


def write_fits(fits: Iterable[RegressionFit], path) -> None:
    with _open_write(path) as fh:
        fh.write(FITS_HEADER + "\n")
        for f in fits:
            fh.write(",".join([
                f.target, _g17(f.slope), _g17(f.intercept),
                _g17(f.mean_abs_error), _g17(f.std_dev),
            ]) + "\n")


def read_fits(path) -> list[RegressionFit]:
    with _open_read(path) as fh:
        header = fh.readline().strip()
        if header != FITS_HEADER:
            raise ValueError(f"unexpected fits header {header!r}")
        out = []
        for line in fh:
            if not line.strip():
                continue
            v = line.strip().split(",")
            out.append(RegressionFit(
                target=v[0], slope=float(v[1]), intercept=float(v[2]),
                mean_abs_error=float(v[3]), std_dev=float(v[4])))
    return out


def write_boundary(bd: BoundaryData, path) -> None:
    with _open_write(path) as fh:
        fh.write(_geometry_line(bd.geometry, n_s=bd.n_s,
                                noise=float(bd.noise_level)) + "\n")
        fh.write(BOUNDARY_HEADER + "\n")
        for i, v in enumerate(bd.values):
            fh.write(f"{i},{_g17(v.real)},{_g17(v.imag)}\n")


def read_boundary(path) -> BoundaryData:
    with _open_read(path) as fh:
        meta = _parse_header(fh.readline().rstrip("\n"))
        header = fh.readline().strip()
        if header != BOUNDARY_HEADER:
            raise ValueError(f"unexpected boundary header {header!r}")
        vals = []
        for line in fh:
            if not line.strip():
                continue
            _, re_s, im_s = line.strip().split(",")
            vals.append(complex(float(re_s), float(im_s)))
    g = ProblemGeometry(k=float(meta["k"]), R0=float(meta["R0"]),
                        R=float(meta["R"]))
    return BoundaryData(geometry=g, values=np.array(vals, dtype=complex),
                        noise_level=float(meta.get("noise", 0.0)))


def _write_source_rows(fh, s: SourceField) -> None:
    fh.write(SOURCE_HEADER + "\n")
    for i in range(s.n_r):
        for j in range(s.n_theta):
            v = s.values[i, j]
            fh.write(f"{i},{j},{_g17(s.rho[i])},{_g17(s.theta[j])},"
                     f"{_g17(v.real)},{_g17(v.imag)}\n")


def _read_source_rows(fh, meta: dict) -> SourceField:
    from .forward import source_grid

    header = fh.readline().strip()
    if header != SOURCE_HEADER:
        raise ValueError(f"unexpected source header {header!r}")
    n_r, n_theta = int(meta["n_r"]), int(meta["n_theta"])
    g = ProblemGeometry(k=float(meta["k"]), R0=float(meta["R0"]),
                        R=float(meta["R"]))
    rho = np.zeros(n_r)
    theta = np.zeros(n_theta)
    values = np.zeros((n_r, n_theta), dtype=complex)
    for line in fh:
        if not line.strip():
            continue
        i_s, j_s, rho_s, th_s, re_s, im_s = line.strip().split(",")
        i, j = int(i_s), int(j_s)
        rho[i] = float(rho_s)
        theta[j] = float(th_s)
        values[i, j] = complex(float(re_s), float(im_s))
    # the radial rule is canonical for (n_r, R0); rebuild its weights
    grid = source_grid(g, n_r, n_theta)
    if not np.allclose(grid.rho, rho, rtol=0, atol=1e-12 * g.R0):
        raise ValueError("radial nodes in file do not match the canonical rule")
    return SourceField(geometry=g, rho=rho, radial_weights=grid.radial_weights,
                       theta=theta, values=values)


def write_source(s: SourceField, path) -> None:
    with _open_write(path) as fh:
        fh.write(_geometry_line(s.geometry, n_r=s.n_r,
                                n_theta=s.n_theta) + "\n")
        _write_source_rows(fh, s)


def read_source(path) -> SourceField:
    with _open_read(path) as fh:
        meta = _parse_header(fh.readline().rstrip("\n"))
        return _read_source_rows(fh, meta)


def write_reconstruction(rec: Reconstruction, path) -> None:
    s = rec.source
    with _open_write(path) as fh:
        fh.write(_geometry_line(s.geometry, n_r=s.n_r, n_theta=s.n_theta,
                                N=rec.N, residual=float(rec.residual),
                                policy=rec.policy) + "\n")
        _write_source_rows(fh, s)


def read_reconstruction(path) -> Reconstruction:
    with _open_read(path) as fh:
        meta = _parse_header(fh.readline().rstrip("\n"))
        source = _read_source_rows(fh, meta)
    return Reconstruction(source=source, N=int(meta["N"]),
                          residual=float(meta["residual"]),
                          policy=meta["policy"])


def dumps(writer, obj) -> str:
    """Render any of the writers above to a string."""
    buf = io.StringIO()
    writer(obj, buf)
    return buf.getvalue()
