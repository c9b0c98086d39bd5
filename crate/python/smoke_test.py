#!/usr/bin/env python3
"""Import the built extension module and exercise the bindings end to end.

Build the cdylib first (`cargo build -p phasekit-py`, optionally --release);
this script copies the freshest build into a temp directory under the
importable name and runs a handful of numerical checks.
"""

import shutil
import sys
import tempfile
from pathlib import Path


def locate_cdylib() -> Path:
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / "libphasekit_py.so"
        for profile in ("release", "debug")
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit("no libphasekit_py.so found; run `cargo build -p phasekit-py` first")
    return max(built, key=lambda p: p.stat().st_mtime)


def close(left, right, tol, label):
    gap = abs(left - right)
    assert gap <= tol, f"{label}: |{left} - {right}| = {gap:.3e} > {tol:.1e}"


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        shutil.copy(locate_cdylib(), Path(tmp) / "phasekit.so")
        sys.path.insert(0, tmp)
        import phasekit

        scale = phasekit.ScaleParam(0.8)
        close(scale.a * scale.b, scale.hbar / 2.0, 1e-15, "scale lock")

        # Coincident labels: the overlap kernel is the identity.
        for n in range(6):
            for m in range(6):
                left = phasekit.PhaseIndex(n, 0.37, -0.8, scale)
                right = phasekit.PhaseIndex(m, 0.37, -0.8, scale)
                chi = phasekit.chi_closed(left, right)
                close(chi, 1.0 if n == m else 0.0, 1e-12, f"chi({n},{m})")

        # Wavefunctions: unit norm by Riemann sum, Fourier phase at the label.
        idx = phasekit.PhaseIndex(2, 0.3, -0.6, scale)
        step = 0.01
        grid = [(-8.0 + step * k) for k in range(1601)]
        norm = sum(abs(phasekit.phi(idx, x)) ** 2 for x in grid) * step
        close(norm, 1.0, 1e-8, "position norm")
        norm_p = sum(abs(phasekit.phi_tilde(idx, -8.0 + step * k)) ** 2
                     for k in range(1601)) * step
        close(norm_p, 1.0, 1e-8, "momentum norm")

        # Dispersions follow the odd-integer ladder on both sides.
        var_x, var_p = idx.dispersions()
        close(var_x, 5 * scale.a ** 2, 1e-14, "position dispersion")
        close(var_p, 5 * scale.b ** 2, 1e-14, "momentum dispersion")
        close(var_x * var_p, 25 * scale.hbar ** 2 / 4.0, 1e-14, "dispersion product")

        # Dense operator: odd integers over four on the diagonal away from
        # the truncation edge, zeros elsewhere.
        dim = 12
        m = phasekit.matrix_dispersion(dim, phasekit.ScaleParam(1.0))
        for k in range(dim - 1):
            close(m[k][k], (2 * k + 1) * 0.25, 1e-13, f"diag {k}")
        off = max(abs(m[i][j]) for i in range(dim) for j in range(dim) if i != j)
        close(off, 0.0, 1e-13, "off-diagonal")

        # Projection: Parseval, reconstruction, JSON round trip, transport.
        packet = phasekit.State.gaussian_packet(0.4, 1.3, 0.6)
        base = phasekit.ScaleParam(1.0)
        spectrum = phasekit.project_spectrum(packet, 0.0, 0.0, base)
        close(spectrum.norm_sum(), 1.0, 1e-8, "Parseval")
        assert 0.0 <= spectrum.tail_bound <= 1e-8, spectrum.tail_bound
        for x in (-1.0, 0.0, 0.4, 2.0):
            close(spectrum.reconstruct(x), packet.eval(x), 1e-7, f"reconstruct({x})")

        reread = phasekit.Spectrum.from_json(spectrum.to_json())
        close(reread.reconstruct(0.4), spectrum.reconstruct(0.4), 0.0, "JSON round trip")
        packet2 = phasekit.State.from_json(packet.to_json())
        close(packet2.eval(0.4), packet.eval(0.4), 0.0, "state JSON round trip")

        target = phasekit.PhaseIndex(2, 1.1, 0.7, phasekit.ScaleParam(1.25))
        moved = spectrum.transport(target)
        direct = phasekit.project_spectrum(packet, 1.1, 0.7, target.scale).amplitudes[2]
        close(moved, direct, 1e-7, "transport")

        # The packet is the ground member of the family at its own label.
        member = phasekit.State.hermite_gaussian(
            phasekit.PhaseIndex(0, 0.4, 0.6, phasekit.ScaleParam(1.3)))
        close(member.eval(0.9), packet.eval(0.9), 1e-15, "packet is ground member")

        # Eigenvalue equation residual for the conjugate ground field.
        residual = phasekit.eigen_residual(0, 0.7, phasekit.ScaleParam(1.0))
        assert residual < 1e-4, f"eigen residual {residual:.3e}"

        # Errors surface as ValueError, not panics.
        for bad in (lambda: phasekit.ScaleParam(-1.0),
                    lambda: phasekit.chi_closed(
                        phasekit.PhaseIndex(0, 0.0, 0.0, phasekit.ScaleParam(1.0, 1.0)),
                        phasekit.PhaseIndex(0, 0.0, 0.0, phasekit.ScaleParam(1.0, 2.0)))):
            try:
                bad()
            except ValueError:
                pass
            else:
                sys.exit("expected ValueError")

        print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
