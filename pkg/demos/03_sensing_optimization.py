"""Optimizing single-spin sensitivity: resonant vs detuned driving.

For a weakly coupled spin both nuclear transitions fall inside the RF pulse
bandwidth and the conditional rotations nearly cancel.  Deliberately
detuning the drive to the steepest point of the pulse envelope restores a
linear (rather than quadratic) scaling of the effective Rabi frequency with
the coupling, which buys orders of magnitude in sensitivity for couplings
below about 1 kHz.

Writes the (N, t) sensitivity maps and the protocol-comparison curve.
"""

import pathlib

import numpy as np

import ddrfsim as dd

TWO_PI = 2 * np.pi
OUT = pathlib.Path(__file__).resolve().parent.parent / "out"
OUT.mkdir(exist_ok=True)

# --- maps at one coupling ---------------------------------------------------
delta_hz = 115.0
for proto in ("resonant", "detuned"):
    result = dd.optimize_sensitivity(TWO_PI * delta_hz, protocol=proto)
    dd.write_sweep_csv(result.sweep, OUT / f"sensing_{proto}_vmin.csv")
    b = result.best
    print(f"{proto:>9}: best v_min = {b.v_min:8.3f} at N={b.n_pulses}, "
          f"t={b.t * 1e3:.1f} ms, tau={b.tau * 1e6:.1f} us, "
          f"detuning {b.delta1 / TWO_PI / 1e3:+.2f} kHz, "
          f"amplitude {b.omega_set / TWO_PI / 1e3:.2f} kHz")

res = dd.optimize_sensitivity(TWO_PI * delta_hz, protocol="resonant").best
det = dd.optimize_sensitivity(TWO_PI * delta_hz, protocol="detuned").best
print(f"\nat a {delta_hz:.0f} Hz coupling the detuned protocol is "
      f"{res.v_min / det.v_min:.0f}x more sensitive and still below the "
      f"single-spin threshold (v_min = {det.v_min:.2f})")

# --- the divergence of the two protocols vs coupling -------------------------
deltas = np.geomspace(30.0, 10e3, 21)
rows = []
for d in deltas:
    vr = dd.optimize_sensitivity(TWO_PI * d, protocol="resonant").best.v_min
    vd = dd.optimize_sensitivity(TWO_PI * d, protocol="detuned").best.v_min
    rows.append((vr, vd))
curve = dd.SweepResult(
    x_name="hyperfine_shift", x_unit="Hz", x_values=deltas,
    y_name="protocol", y_unit="0=resonant 1=detuned",
    y_values=np.array([0.0, 1.0]),
    values=np.array(rows),
    metadata={"kind": "sensitivity_vs_delta"},
)
dd.write_sweep_csv(curve, OUT / "sensitivity_vs_delta.csv")
print(f"\nwrote protocol comparison over {deltas[0]:.0f}..{deltas[-1]:.0f} Hz "
      f"-> {OUT / 'sensitivity_vs_delta.csv'}")
crossing = deltas[np.argmax(np.array(rows)[:, 1] < 1.0)]
print(f"single-spin sensitivity (v_min < 1) reached from ~{crossing:.0f} Hz up "
      "with detuned driving")
