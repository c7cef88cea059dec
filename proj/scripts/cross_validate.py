#!/usr/bin/env python3
"""Cross-validates the CLI against an independent NumPy implementation.

Drives the built binary through its JSON interface and recomputes every
criterion margin, entropic sign margin and spectrum with numpy.linalg.
Not part of the regular test suite; needs numpy.

Usage: scripts/cross_validate.py [path-to-entrocrit-binary]
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

CLI = sys.argv[1] if len(sys.argv) > 1 else "build/tools/entrocrit"
TAU_RANK = 1e-10


def state_json(rho, dA, dB):
    return {
        "dims": [dA, dB],
        "matrix": [[[float(rho[i, j].real), float(rho[i, j].imag)]
                    for j in range(rho.shape[1])] for i in range(rho.shape[0])],
    }


def run(args):
    out = subprocess.run([CLI] + args, capture_output=True, text=True)
    if out.returncode != 0:
        raise RuntimeError(out.stderr)
    return json.loads(out.stdout)


def partial_transpose_A(rho, dA, dB):
    r = rho.reshape(dA, dB, dA, dB)
    return r.transpose(2, 1, 0, 3).reshape(dA * dB, dA * dB)


def reductions(rho, dA, dB):
    r = rho.reshape(dA, dB, dA, dB)
    return np.trace(r, axis1=1, axis2=3), np.trace(r, axis1=0, axis2=2)


def trace_power(spec, a):
    if a < 0:
        return float(np.sum(spec ** a))
    s = spec[spec > TAU_RANK]
    return float(len(s)) if a == 0 else float(np.sum(s ** a))


def von_neumann(spec):
    s = spec[spec > TAU_RANK]
    return float(-np.sum(s * np.log(s)))


def sign_margin(spec_state, spec_reduced, alpha):
    if alpha == "inf":
        return (spec_reduced.max() - spec_state.max()) / max(
            spec_reduced.max(), spec_state.max())
    if abs(alpha - 1) < 1e-9:
        return von_neumann(spec_state) - von_neumann(spec_reduced)
    tr_r = trace_power(spec_reduced, alpha)
    tr_s = trace_power(spec_state, alpha)
    diff = tr_r - tr_s if alpha > 1 else tr_s - tr_r
    return diff / max(tr_r, tr_s)


def check_analyze(workdir, trials=40):
    rng = np.random.default_rng(20260809)
    worst = 0.0
    for trial in range(trials):
        dA, dB = [(2, 2), (2, 3), (3, 3), (3, 2)][trial % 4]
        n = dA * dB
        rank = 1 + trial % n
        g = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        rho = (rho + rho.conj().T) / 2

        path = workdir / "state.json"
        path.write_text(json.dumps(state_json(rho, dA, dB)))
        report = run(["analyze", "--input", str(path)])
        verdicts = {v["criterion"]: v for v in report["chain"]["verdicts"]}

        m_ppt = float(np.linalg.eigvalsh(partial_transpose_A(rho, dA, dB)).min())
        worst = max(worst, abs(verdicts["ppt"]["margin"] - m_ppt))

        red_a, red_b = reductions(rho, dA, dB)
        op_a = np.kron(red_a, np.eye(dB)) - rho
        op_b = np.kron(np.eye(dA), red_b) - rho
        worst = max(worst, abs(verdicts["reduction_A"]["margin"] -
                               np.linalg.eigvalsh(op_a).min()))
        worst = max(worst, abs(verdicts["reduction_B"]["margin"] -
                               np.linalg.eigvalsh(op_b).min()))

        spec_s = np.sort(np.linalg.eigvalsh(rho))[::-1]
        spec_a = np.sort(np.linalg.eigvalsh(red_a))[::-1]
        spec_b = np.sort(np.linalg.eigvalsh(red_b))[::-1]
        ranks = [int(np.sum(s > TAU_RANK)) for s in (spec_s, spec_a, spec_b)]
        assert verdicts["rank"]["margin"] == ranks[0] - max(ranks[1], ranks[2])

        for row in report["sweep"]["rows"]:
            if row["sign_margin"] is None:
                continue
            alpha = row["alpha"] if row["alpha"] == "inf" else float(row["alpha"])
            if alpha != "inf" and alpha < 0 and spec_s.min() <= TAU_RANK:
                continue
            reduced = spec_a if row["side"] == "A" else spec_b
            worst = max(worst,
                        abs(row["sign_margin"] - sign_margin(spec_s, reduced,
                                                             alpha)))
    print(f"analyze: {trials} states, worst |margin diff| = {worst:.3e}")
    assert worst < 1e-10


def check_werner():
    report = run(["werner", "--d", "4", "--p-start", "0", "--p-end", "1",
                  "--p-step", "0.1"])
    worst = 0.0
    for row in report["rows"]:
        p = row["p"]
        # min eigenvalue of the partial transpose in closed form
        expected = min((1 - 2 * p) / 4, (1 - p) / 20 + p / 12)
        worst = max(worst, abs(row["ppt_margin"] - expected))
    print(f"werner d=4: worst PPT margin diff vs closed form = {worst:.3e}")
    assert worst < 1e-12
    assert abs(report["ppt_boundary"] - 0.5) <= 1e-6


def check_counterexample():
    report = run(["entropy", "--counterexample",
                  "--alphas", "0,0.5,1,1.5,2,3,5,inf"])
    spec_s = np.array([0.5, 0.5, 0.0, 0.0])
    spec_r = np.array([0.75, 0.25])
    worst = 0.0
    for row in report["sweep"]["rows"]:
        if row["side"] != "A":
            continue
        alpha = row["alpha"]
        if alpha == "inf":
            expected = 0.0
        elif abs(alpha - 1) < 1e-9:
            expected = von_neumann(spec_s) - von_neumann(spec_r)
        else:
            tr_r = trace_power(spec_r, alpha)
            tr_s = trace_power(spec_s, alpha)
            expected = (tr_r - tr_s) / ((alpha - 1) * tr_r)
        worst = max(worst, abs(row["conditional_tsallis"] - expected))
    print(f"counterexample: worst conditional-Tsallis diff = {worst:.3e}")
    assert worst < 1e-13


def check_isospectral(workdir):
    report = run(["isospectral", "--d", "5", "--p", "0.8",
                  "--emit-states", str(workdir / "states")])
    expected = np.sort(np.array([0.2 / 15] * 15 + [0.8 / 10] * 10))[::-1]
    for path in report["emitted"]:
        data = json.loads(Path(path).read_text())
        m = np.array([[complex(e[0], e[1]) for e in row]
                      for row in data["matrix"]])
        spec = np.sort(np.linalg.eigvalsh(m))[::-1]
        assert np.abs(spec - expected).max() < 1e-12, path
        if "ensemble" in data:
            acc = np.zeros_like(m)
            for weight, (fa, fb) in zip(data["ensemble"]["weights"],
                                        data["ensemble"]["factors"]):
                a = np.array([[complex(e[0], e[1]) for e in row] for row in fa])
                b = np.array([[complex(e[0], e[1]) for e in row] for row in fb])
                acc += weight * np.kron(a, b)
            assert np.abs(acc - m).max() < 1e-12
            print("isospectral d=5: certificate reassembles in numpy")


def main():
    with tempfile.TemporaryDirectory() as tmp:
        workdir = Path(tmp)
        check_analyze(workdir)
        check_werner()
        check_counterexample()
        check_isospectral(workdir)
    print("all cross-validation checks passed")


if __name__ == "__main__":
    main()
