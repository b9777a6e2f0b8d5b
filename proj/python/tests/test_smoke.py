#!/usr/bin/env python3
"""Smoke tests for the python module and the CLI.

Runs without pytest: `python3 test_smoke.py --fixtures <dir> --cli <binary>`.
The module path must be importable (PYTHONPATH to the build directory).
"""

import argparse
import math
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

import _fresco as fresco

failures = []


def check(name, ok, detail=""):
    print(f"[{'ok' if ok else 'FAIL'}] {name} {detail}")
    if not ok:
        failures.append(name)


def test_module():
    p = fresco.RFParams(delta_sigma=80.0, omega_sigma=2.0, gamma_sigma=1.0)
    model = fresco.resonance_fluorescence(p)
    check("model dimension", model.dimension == 2)
    check("varpi scale", abs(model.varpi_scale - math.sqrt(6416.0)) < 1e-12)

    # spectrum against the closed form
    scale = fresco.mollow_splitting(p)
    omegas = [v * scale for v in np.linspace(-2.5, 2.5, 21)]
    numeric = fresco.spectrum_numeric(model, omegas, 2.0)
    analytic = [fresco.spectrum_analytic_rf(p, 2.0, w) for w in omegas]
    rel = max(abs(a - b) / b for a, b in zip(numeric, analytic))
    check("spectrum matches closed form", rel < 1e-9, f"rel={rel:.2e}")

    # coincidence correlations on and off the circle
    v = (math.sqrt(2.0) - 1.0) / 2.0
    s_on = fresco.SensorConfig(omega_1=v * scale, omega_2=-0.5 * scale, big_gamma=2.0)
    g_on = fresco.g2_coincidence(model, s_on)
    check("circle point antibunched", g_on < 0.1, f"g2={g_on:.4f}")
    s_line = fresco.SensorConfig(omega_1=-scale, omega_2=0.3 * scale, big_gamma=2.0)
    check("bunching line bright", fresco.g2_coincidence(model, s_line) > 10.0)

    # interference identity
    it = fresco.interference_decomposition(model, s_on)
    check("decomposition identity", abs(1 + it.i0 + it.i1 + it.i2 - it.g2) < 1e-9)

    # steady-state density matrix comes back as a numpy array
    rho = np.asarray(fresco.steady_state(model))
    check("steady state trace", abs(np.trace(rho) - 1.0) < 1e-12)
    check("steady state hermitian", np.max(np.abs(rho - rho.conj().T)) < 1e-12)

    # small landscape with channels
    grid = list(np.linspace(-1.6, 1.6, 5))
    channels = fresco.g2_landscape(model, grid, grid, 2.0, interference=True, workers=2)
    g2 = np.asarray(channels["g2"])
    check("landscape symmetric", np.nanmax(np.abs(g2 - g2.T)) < 1e-8)

    # gaussian oracle convergence
    gp = fresco.GaussianParams(alpha1=0.8 + 0.2j, alpha2=0.9 - 0.4j, r1=0.5, theta1=0.3,
                               r2=0.4, theta2=-0.8, t12=0.6, vartheta12=1.1, epsilon=0.04)
    exact = fresco.gaussian_moments_exact(gp, 14)
    lead = fresco.gaussian_moments_leading(gp)
    gp_half = fresco.GaussianParams(alpha1=0.8 + 0.2j, alpha2=0.9 - 0.4j, r1=0.5, theta1=0.3,
                                    r2=0.4, theta2=-0.8, t12=0.6, vartheta12=1.1, epsilon=0.02)
    exact_half = fresco.gaussian_moments_exact(gp_half, 14)
    lead_half = fresco.gaussian_moments_leading(gp_half)
    ratio = abs(exact.g2_12 - lead.g2_12) / abs(exact_half.g2_12 - lead_half.g2_12)
    check("gaussian O(eps^2) convergence", 3.5 < ratio < 4.5, f"ratio={ratio:.2f}")

    # cavity helpers
    cp = fresco.CavityParams(delta_a=80.1, lambda_=0.001, gamma_a=1.0, n_max=12)
    check("phase matching angle", abs(fresco.phase_matching_angle(cp) - 0.7822771053) < 1e-9)
    q = fresco.quantifiers(model, fresco.SensorConfig(0.45 * scale, -0.45 * scale, 2.0))
    check("leapfrog nonclassical", q.R > 1.0 and q.B > 2.0 and q.S > 1.0)


def test_cli(cli, fixtures):
    with tempfile.TemporaryDirectory() as td:
        out_a = Path(td) / "a.csv"
        out_b = Path(td) / "b.csv"
        base = [cli, "g2map", "--config", str(fixtures / "fig2f.cfg"),
                "--grid", "-1.5:1.5:5"]
        ra = subprocess.run(base + ["--out", str(out_a), "--workers", "1"],
                            capture_output=True)
        rb = subprocess.run(base + ["--out", str(out_b), "--workers", "4"],
                            capture_output=True)
        check("cli g2map exit codes", ra.returncode == 0 and rb.returncode == 0,
              ra.stderr.decode()[:200])
        check("cli deterministic across workers",
              out_a.read_bytes() == out_b.read_bytes())
        check("cli sidecar metadata", (Path(td) / "a.csv.json").exists())

        header = out_a.read_text().splitlines()[0]
        check("cli landscape header", header == "varpi1,varpi2,g2,I0,I1,I2,R,B,S")

        spectrum = subprocess.run(
            [cli, "spectrum", "--config", str(fixtures / "fig2a.cfg"),
             "--grid", "-2:2:11"],
            capture_output=True)
        check("cli spectrum to stdout", spectrum.returncode == 0 and
              spectrum.stdout.decode().startswith("varpi,omega,S"))

        bad = subprocess.run([cli, "g2tau", "--set", "nonsense=1"], capture_output=True)
        check("cli config error exit code", bad.returncode == 1)

        tau = subprocess.run(
            [cli, "g2tau", "--config", str(fixtures / "heitler_tau.cfg"),
             "--set", "tau_count=8"],
            capture_output=True)
        check("cli g2tau", tau.returncode == 0 and
              tau.stdout.decode().startswith("tau,g2"))

        gauss = subprocess.run(
            [cli, "gaussian-check", "--set", "gaussian_draws=4", "--out",
             str(Path(td) / "g.csv")],
            capture_output=True)
        check("cli gaussian-check", gauss.returncode == 0 and
              "4/4" in gauss.stderr.decode())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--fixtures", type=Path, required=True)
    ap.add_argument("--cli", type=Path, required=True)
    args = ap.parse_args()

    test_module()
    test_cli(str(args.cli), args.fixtures)

    if failures:
        print(f"{len(failures)} smoke checks failed: {failures}")
        return 1
    print("all smoke checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
