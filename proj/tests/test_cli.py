#!/usr/bin/env python3
"""End-to-end tests of the command-line binary: exit codes, output formats,
streams, and config handling. Usage: test_cli.py <path-to-oktrace>."""

import json
import os
import subprocess
import sys
import tempfile

BIN = None
FAILURES = 0


def run(*args, config=None):
    cmd = [BIN]
    if config:
        cmd += ["--config", config]
    cmd += list(args)
    return subprocess.run(cmd, capture_output=True, text=True, timeout=120)


def check(name, cond, detail=""):
    global FAILURES
    status = "ok" if cond else "FAIL"
    print(f"{status:4} {name}" + (f"  [{detail}]" if detail and not cond else ""))
    if not cond:
        FAILURES += 1


def test_analyze_text():
    r = run("analyze", "x^2-2")
    check("analyze text exit 0", r.returncode == 0, r.stderr)
    check("analyze text shows d_K", "d_K" in r.stdout and "8" in r.stdout)
    check("analyze text shows t", "\nt " in r.stdout or "\nt\t" in r.stdout
          or "t               2" in r.stdout, r.stdout)


def test_analyze_json():
    r = run("analyze", "x^3+x-6", "--json")
    check("analyze json exit 0", r.returncode == 0, r.stderr)
    doc = json.loads(r.stdout)
    check("schema is 1", doc["schema"] == 1)
    check("poly high to low", doc["poly"] == ["1", "0", "1", "-6"])
    check("d_K decimal string", doc["d_K"] == "-244")
    check("t surjective", doc["t"] == "1" and doc["criteria"]["surjective"] is True)
    check("no timing key", "elapsed_ms" not in doc)

    r2 = run("analyze", "[1, 0, 1, -6]", "--json")
    check("bracket spelling same bytes", r2.stdout == r.stdout)


def test_analyze_csv():
    r = run("analyze", "x^2-2", "--csv")
    lines = r.stdout.strip().splitlines()
    check("csv exit 0", r.returncode == 0, r.stderr)
    check("csv header", lines[0] == "poly,n,d_K,t,tame,thm4,status")
    check("csv row", lines[1] == "x^2-2,2,8,2,false,false,consistent_negative")


def test_analyze_errors():
    r = run("analyze", "x^2-1")
    check("reducible exit 2", r.returncode == 2, str(r.returncode))
    check("reducible witness printed", "reducible: divisible by" in r.stdout,
          r.stdout)

    r = run("analyze", "x^")
    check("parse error exit 1", r.returncode == 1)
    check("parse error position", "position" in r.stderr, r.stderr)

    r = run("analyze", "2x^2-1")
    check("non-monic exit 1", r.returncode == 1)
    check("non-monic message", "monic" in r.stderr, r.stderr)

    r = run("analyze")
    check("missing argument exits nonzero", r.returncode != 0)


def test_unknown_irreducibility():
    with tempfile.NamedTemporaryFile("w", suffix=".cfg", delete=False) as f:
        f.write("irreducible.witness_primes = 0\n")
        f.write("irreducible.max_subset_tests = 0\n")
        cfg = f.name
    try:
        r = run("analyze", "x^4+1", config=cfg)
        check("irreducibility unknown exit 3", r.returncode == 3, str(r.returncode))
        check("unknown message on stderr", "unknown" in r.stderr, r.stderr)
    finally:
        os.unlink(cfg)


def test_config_errors():
    r = run("analyze", "x^2-2", config="no_such_file.cfg")
    check("missing config exit 4", r.returncode == 4, str(r.returncode))
    with tempfile.NamedTemporaryFile("w", suffix=".cfg", delete=False) as f:
        f.write("nonsense.key = 1\n")
        cfg = f.name
    try:
        r = run("analyze", "x^2-2", config=cfg)
        check("unknown config key exit 1", r.returncode == 1, str(r.returncode))
    finally:
        os.unlink(cfg)


def test_hunt_stdout_stream():
    r = run("hunt", "--degree", "2", "--bound", "1")
    check("hunt stream exit 0", r.returncode == 0, r.stderr)
    lines = [l for l in r.stdout.splitlines() if l.strip()]
    check("hunt streams JSONL on stdout", len(lines) == 5, str(len(lines)))
    for line in lines:
        doc = json.loads(line)
        check_once = doc["schema"] == 1 and doc["degree"] == 2
        if not check_once:
            check("hunt line schema", False, line)
            break
    else:
        check("hunt line schema", True)
    check("hunt summary on stderr", "hunt summary" in r.stderr, r.stderr)


def test_hunt_out_file_and_csv():
    with tempfile.TemporaryDirectory() as d:
        out = os.path.join(d, "hunt.jsonl")
        r = run("hunt", "--degree", "2", "--bound", "1", "--out", out, "--csv")
        check("hunt file exit 0", r.returncode == 0, r.stderr)
        check("hunt summary on stdout", "hunt summary" in r.stdout)
        check("hunt csv table", "poly,n,d_K,t,tame,thm4,status" in r.stdout)
        with open(out) as f:
            n = sum(1 for _ in f)
        check("hunt wrote lines", n == 5, str(n))

        # analyze --json equals the hunt line for the same polynomial
        first = open(out).readline().strip()
        a = run("analyze", "x^2-x-1", "--json").stdout.strip()
        check("hunt line matches analyze --json byte for byte", first == a)

    r = run("hunt", "--degree", "2", "--bound", "1", "--csv")
    check("hunt --csv without --out exits 1", r.returncode == 1, str(r.returncode))


def test_hunt_input_and_errors():
    r = run("hunt", "--input", "missing_candidates.txt")
    check("hunt missing input exit 4", r.returncode == 4, str(r.returncode))

    r = run("hunt", "--degree", "1", "--bound", "2")
    check("hunt degree 1 exit 1", r.returncode == 1)

    r = run("hunt")
    check("hunt without degree/input exit 1", r.returncode == 1, r.stderr)

    with tempfile.TemporaryDirectory() as d:
        inp = os.path.join(d, "polys.txt")
        with open(inp, "w") as f:
            f.write("x^2-2\n# comment\nx^2-1\n")
        r = run("hunt", "--input", inp)
        check("hunt input file exit 0", r.returncode == 0, r.stderr)
        lines = [l for l in r.stdout.splitlines() if l.strip()]
        check("hunt input analyzed one field", len(lines) == 1)


def test_hunt_resume():
    with tempfile.TemporaryDirectory() as d:
        out = os.path.join(d, "h.jsonl")
        run("hunt", "--degree", "3", "--bound", "1", "--out", out)
        full = open(out, "rb").read()
        with open(out, "wb") as f:
            f.write(b"\n".join(full.split(b"\n")[:2]) + b"\n")
        r = run("hunt", "--degree", "3", "--bound", "1", "--out", out, "--resume")
        check("resume exit 0", r.returncode == 0, r.stderr)
        check("resume reproduces bytes", open(out, "rb").read() == full)
        check("resume reports skips", "skipped (recorded)      2" in r.stdout,
              r.stdout)


def test_oracle_diff():
    with tempfile.TemporaryDirectory() as d:
        reports = os.path.join(d, "r.jsonl")
        oracle = os.path.join(d, "o.json")
        doc = json.loads(run("analyze", "x^2-2", "--json").stdout)
        with open(reports, "w") as f:
            f.write(json.dumps(doc, separators=(",", ":")) + "\n")
        entry = {
            "polynomial": ["1", "0", "-2"],
            "d_K": "8",
            "index": "1",
            "t": "2",
            "splittings": [{"p": "2", "shape": [[2, 1]]}],
        }
        with open(oracle, "w") as f:
            json.dump([entry], f)
        r = run("oracle-diff", reports, oracle)
        check("oracle-diff clean exit 0", r.returncode == 0, r.stdout + r.stderr)
        check("oracle-diff matched 1", "matched       1" in r.stdout, r.stdout)

        entry["t"] = "1"
        with open(oracle, "w") as f:
            json.dump([entry], f)
        r = run("oracle-diff", reports, oracle)
        check("oracle-diff mismatch exit 1", r.returncode == 1)
        check("oracle-diff shows both values", "ours=2" in r.stdout
              and "oracle=1" in r.stdout, r.stdout)

    r = run("oracle-diff", "missing.jsonl", "missing.json")
    check("oracle-diff missing file exit 4", r.returncode == 4, str(r.returncode))


def test_determinism():
    a = run("hunt", "--degree", "2..3", "--bound", "1")
    b = run("hunt", "--degree", "2..3", "--bound", "1", "--workers", "4")
    check("stdout hunts identical across workers", a.stdout == b.stdout)


def main():
    global BIN
    if len(sys.argv) != 2:
        print("usage: test_cli.py <path-to-oktrace>")
        return 64
    BIN = sys.argv[1]
    for fn in (test_analyze_text, test_analyze_json, test_analyze_csv,
               test_analyze_errors, test_unknown_irreducibility,
               test_config_errors, test_hunt_stdout_stream,
               test_hunt_out_file_and_csv, test_hunt_input_and_errors,
               test_hunt_resume, test_oracle_diff, test_determinism):
        fn()
    print(f"{FAILURES} failures")
    return 1 if FAILURES else 0


if __name__ == "__main__":
    sys.exit(main())
