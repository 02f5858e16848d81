#!/usr/bin/env python3
"""End-to-end checks for the fdrlab command line tool."""

import json
import os
import subprocess
import sys
import tempfile

FDRLAB = sys.argv[1] if len(sys.argv) > 1 else "fdrlab"
failures = 0


def run(*args, **kwargs):
    return subprocess.run([FDRLAB, *args], capture_output=True, text=True,
                          **kwargs)


def check(name, ok, detail=""):
    global failures
    print(f"{'ok' if ok else 'FAIL'} - {name} {detail}")
    if not ok:
        failures += 1


def main():
    tmp = tempfile.mkdtemp(prefix="fdrlab_cli_")

    pv = os.path.join(tmp, "pv.csv")
    with open(pv, "w") as f:
        f.write("p\n0.01\n0.02\n0.5\n")

    # test subcommand: the classical two-rejection example.
    out_json = os.path.join(tmp, "report.json")
    r = run("test", "-i", pv, "--alpha", "0.05", "--lambda", "0.5",
            "--estimator", "bh", "-o", out_json)
    check("test exit code", r.returncode == 0, r.stderr)
    rep = json.load(open(out_json))
    check("test rejects two", rep["r"] == 2, str(rep))
    check("test threshold", abs(rep["threshold"] - 0.1 / 3) < 1e-12)

    # Idempotence: byte-identical report on rerun.
    first = open(out_json, "rb").read()
    run("test", "-i", pv, "--alpha", "0.05", "--lambda", "0.5",
        "--estimator", "bh", "-o", out_json)
    check("test idempotent output", open(out_json, "rb").read() == first)

    # Config errors exit 2 and write nothing.
    missing = os.path.join(tmp, "missing.json")
    r = run("test", "-i", pv, "--alpha", "0.6", "--lambda", "0.5",
            "--estimator", "bh", "-o", missing)
    check("alpha >= lambda exits 2", r.returncode == 2, str(r.returncode))
    check("alpha error names the rule", "alpha < lambda" in r.stderr, r.stderr)
    check("no partial output on config error", not os.path.exists(missing))

    # Malformed CSV exits 3.
    bad = os.path.join(tmp, "bad.csv")
    with open(bad, "w") as f:
        f.write("p\nnot_a_number\n")
    r = run("test", "-i", bad, "--estimator", "bh", "-o", missing)
    check("malformed csv exits 3", r.returncode == 3, str(r.returncode))
    check("no partial output on io error", not os.path.exists(missing))

    r = run("test", "-i", os.path.join(tmp, "nope.csv"), "--estimator", "bh")
    check("missing file exits 3", r.returncode == 3)

    # simulate from a JSON config.
    cfg = os.path.join(tmp, "sim.json")
    json.dump({
        "n": 200, "truth": {"mode": "fixed", "n0": 120}, "alt": "d1",
        "alpha": 0.05, "lambda": 0.5, "estimator": "storey:0.5",
        "replications": 300, "master_seed": 11,
    }, open(cfg, "w"))
    sim_out = os.path.join(tmp, "sim_report.json")
    r = run("simulate", "--config", cfg, "-o", sim_out)
    check("simulate exit code", r.returncode == 0, r.stderr)
    sim = json.load(open(sim_out))
    check("simulate reports fdr", 0.0 <= sim["fdr_hat"] <= 1.0)
    check("simulate echoes config", sim["config"]["estimator"] == "storey:0.5")

    sim_bytes = open(sim_out, "rb").read()
    run("simulate", "--config", cfg, "-o", sim_out, "--threads", "2")
    check("simulate idempotent across thread counts",
          open(sim_out, "rb").read() == sim_bytes)

    # Unknown keys are rejected with exit 2.
    bad_cfg = os.path.join(tmp, "bad_cfg.json")
    json.dump({
        "n": 200, "truth": {"mode": "fixed", "n0": 120}, "alt": "d1",
        "alpha": 0.05, "lambda": 0.5, "estimator": "storey:0.5",
        "replications": 300, "master_seed": 11, "repz": 1,
    }, open(bad_cfg, "w"))
    r = run("simulate", "--config", bad_cfg)
    check("unknown config key exits 2", r.returncode == 2)
    check("unknown key named", "repz" in r.stderr, r.stderr)

    # Bernoulli truth plus a table alternative, end to end.
    tab = os.path.join(tmp, "alt.csv")
    with open(tab, "w") as f:
        f.write("t,F1\n0,0\n0.5,1\n1,1\n")
    bern_cfg = os.path.join(tmp, "bern.json")
    json.dump({
        "n": 150, "truth": {"mode": "bernoulli", "pi0": 0.7},
        "alt": "table:" + tab, "alpha": 0.05, "lambda": 0.5,
        "direction": "sd", "tie_variant": "modified",
        "estimator": "dynamic:grid=0.5,0.6,0.7,0.8,0.9,0.95,1;eps=0.05",
        "replications": 200, "master_seed": 5,
    }, open(bern_cfg, "w"))
    r = run("simulate", "--config", bern_cfg)
    check("bernoulli + table alt simulate", r.returncode == 0, r.stderr)

    # A config pointing at a missing table file is an I/O failure.
    json.dump({
        "n": 150, "truth": {"mode": "bernoulli", "pi0": 0.7},
        "alt": "table:" + os.path.join(tmp, "gone.csv"), "alpha": 0.05,
        "lambda": 0.5, "estimator": "bh", "replications": 200,
        "master_seed": 5,
    }, open(bern_cfg, "w"))
    r = run("simulate", "--config", bern_cfg)
    check("missing table file exits 3", r.returncode == 3, str(r.returncode))

    # Step-down with modified ties and a dynamic estimator on real input.
    tied = os.path.join(tmp, "tied.csv")
    with open(tied, "w") as f:
        f.write("p,h\n" + "".join("0.0,1\n" for _ in range(5)) +
                "".join(f"{0.51 + 0.004 * i},0\n" for i in range(60)))
    r = run("test", "-i", tied, "--estimator",
            "dynamic:grid=0.5,0.6,0.7,0.8,0.9,0.95,1;eps=0.05",
            "--direction", "sd", "--tie", "modified")
    check("dynamic sd modified on tied input", r.returncode == 0, r.stderr)
    check("tied zeros rejected", "rejections : 5" in r.stdout, r.stdout)

    # verify suites: multinomial passes, exit 0.
    r = run("verify", "multinomial", "--n", "2", "--p", "0.3333,0.3333,0.3334")
    check("verify multinomial", r.returncode == 0 and "PASS" in r.stdout,
          r.stdout + r.stderr)

    r = run("verify", "condition", "--config", cfg)
    check("verify condition", r.returncode == 0 and "PASS" in r.stdout)

    r = run("verify", "lemma2", "--config", cfg)
    check("verify lemma2", r.returncode == 0)

    r = run("verify", "thm1", "--config", cfg)
    check("verify thm1", r.returncode == 0)

    r = run("verify", "bogus", "--config", cfg)
    check("unknown suite exits 2", r.returncode == 2)

    # curves: 512 rows, exact value at t = 0.5.
    curves = os.path.join(tmp, "d3.csv")
    r = run("curves", "--alt", "d3", "-o", curves)
    lines = open(curves).read().strip().splitlines()
    check("curves exit + length", r.returncode == 0 and len(lines) == 513)
    row = [l for l in lines if l.startswith("0.500000000,")]
    check("curves F(0.5) = 0.75", row and row[0].endswith("0.750000000"), row)

    ecdf_curves = os.path.join(tmp, "ecdf.csv")
    r = run("curves", "--pvalues", pv, "-o", ecdf_curves)
    check("ecdf curves", r.returncode == 0)
    r = run("curves", "--alt", "d3", "--pvalues", pv, "-o", curves)
    check("curves with both sources exits 2", r.returncode == 2)

    # table1 with a small replicate count runs end to end.
    t1 = os.path.join(tmp, "t1.csv")
    r = run("table1", "--reps", "60", "--seed", "3", "-o", t1)
    rows = open(t1).read().strip().splitlines()
    check("table1 exit + csv shape", r.returncode == 0 and len(rows) == 4,
          r.stderr)
    check("table1 header",
          rows[0] == "estimator,D1_fdr,D1_se,D2_fdr,D2_se,D3_fdr,D3_se")

    print(f"\n{failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
