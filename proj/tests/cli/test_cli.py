#!/usr/bin/env python3
"""End-to-end checks of the hhbes command line: exit codes, file formats,
and the pipelines between subcommands."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = sys.argv[1] if len(sys.argv) > 1 else "hhbes"
FAILURES = []


def run(*args, stdin=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, input=stdin)


def check(name, cond, extra=""):
    tag = "ok" if cond else "FAIL"
    print(f"[{tag}] {name}{(' — ' + extra) if extra and not cond else ''}")
    if not cond:
        FAILURES.append(name)


def main():
    tmp = Path(tempfile.mkdtemp(prefix="hhbes_cli_"))

    # parse
    r = run("parse", "a & b -> c")
    check("parse exits 0", r.returncode == 0, r.stderr)
    check("parse renders canonically", "a & b -> c" in r.stdout)
    r = run("parse", "a &")
    check("parse error exits 2", r.returncode == 2, r.stdout + r.stderr)

    # solve
    prog = tmp / "p.prog"
    prog.write_text("a\n")
    r = run("solve", "--program", str(prog), "--goal", "a")
    check("solve success exits 0", r.returncode == 0, r.stderr)
    r = run("solve", "--program", str(prog), "--goal", "b")
    check("solve failure exits 1", r.returncode == 1)
    trace = tmp / "trace.json"
    r = run("solve", "--program", str(prog), "--goal", "a | b", "--trace", str(trace))
    check("solve writes a trace", r.returncode == 0 and trace.exists())
    t = json.loads(trace.read_text())
    check("trace JSON shape", t["step"] == "OR" and t["children"][0]["step"] == "IN")

    # fixpoint
    prog2 = tmp / "chain.prog"
    prog2.write_text("a\na -> b\n")
    dump = tmp / "table.json"
    r = run("fixpoint", "--program", str(prog2), "--goal", "b", "--dump", str(dump))
    check("fixpoint satisfied exits 0", r.returncode == 0, r.stderr)
    table = json.loads(dump.read_text())
    check("fixpoint table has the program's atoms",
          sorted(table["a, a -> b"]) == ["a", "b"])

    # oracle
    r = run("oracle", "(a -> b | c) -> ((a -> b) | (a -> c))")
    check("oracle refutes the distribution formula", r.returncode == 1, r.stdout)
    model = json.loads(r.stdout)
    check("oracle countermodel JSON", model["worlds"] >= 1 and "val" in model)
    r = run("oracle", "p -> p")
    check("oracle proves identity", r.returncode == 0)
    r = run("oracle", "p &")
    check("oracle error exits 2", r.returncode == 2)
    r = run("oracle", "p & q |- q")
    check("oracle accepts sequents", r.returncode == 0)

    # encode -> solve pipeline
    sys_json = tmp / "sys.json"
    sys_json.write_text(json.dumps([
        {"concl": "q", "premises": [{"hyps": [], "concl": "p"}]},
        {"concl": "p", "premises": []},
    ]))
    out_prog = tmp / "sys.prog"
    r = run("encode", "--system", str(sys_json), "--out", str(out_prog))
    check("encode writes a program", r.returncode == 0 and out_prog.exists())
    check("encode emits definite clauses", "p -> q" in out_prog.read_text())
    r = run("solve", "--program", str(out_prog), "--goal", "q")
    check("encoded program proves its conclusions", r.returncode == 0)

    # flatten -> solve pipeline (emitted programs must parse back)
    flat_prog = tmp / "n.prog"
    r = run("flatten", "--sequent", "p & q |- p | q", "--out", str(flat_prog))
    check("flatten writes program and map", r.returncode == 0
          and flat_prog.exists() and (tmp / "n.prog.map.json").exists())
    fmap = json.loads((tmp / "n.prog.map.json").read_text())
    goal_flat = fmap["p | q"]
    merged = tmp / "merged.prog"
    merged.write_text(flat_prog.read_text() + fmap["p & q"] + "\n")
    r = run("solve", "--program", str(merged), "--goal", goal_flat)
    check("flattened query solves", r.returncode == 0, r.stderr)

    # support
    r = run("support", "--goal", "p -> p")
    check("support over the empty base", r.returncode == 0, r.stderr)
    r = run("support", "--base", str(sys_json), "--ctx", "", "--goal", "q")
    check("support uses the base", r.returncode == 0, r.stderr)
    r = run("support", "--ctx", "p & q", "--goal", "q & p")
    check("support with a context", r.returncode == 0, r.stderr)
    r = run("support", "--goal", "p | ~p")
    check("unsupported goal exits 1", r.returncode == 1)

    # extract -> kernel-checked NJ JSON
    nj = tmp / "nj.json"
    r = run("extract", "--sequent", "p & q |- q & p", "--out", str(nj))
    check("extract writes NJ JSON", r.returncode == 0 and nj.exists(), r.stderr)
    d = json.loads(nj.read_text())
    check("extract roots at the conclusion", d["formula"] == "q & p"
          and d["rule"] == "AndI")
    r = run("extract", "--sequent", "|- p | ~p")
    check("extract on invalid sequent exits 1", r.returncode == 1)

    # naf
    base = tmp / "contradictory.json"
    base.write_text(json.dumps([
        {"concl": "#bot", "premises": [{"hyps": [], "concl": "p"},
                                       {"hyps": [], "concl": "pbar"}]},
        {"concl": "pbar", "premises": []},
    ]))
    r = run("naf", "--base", str(base), "--formula", "p", "--alphabet", "p,pbar")
    check("contradictory base supports ~p", r.returncode == 0
          and "Supported" in r.stdout, r.stdout)
    r = run("naf", "--formula", "p", "--alphabet", "p")
    check("empty base: NotSupported", r.returncode == 1
          and "NotSupported" in r.stdout)
    deg = tmp / "degenerate.json"
    deg.write_text(json.dumps([
        {"concl": "p", "premises": []},
        {"concl": "#bot", "premises": []},
    ]))
    r = run("naf", "--base", str(deg), "--formula", "p", "--alphabet", "p")
    check("degenerate base reported", "Degenerate" in r.stdout)

    # usage errors
    r = run("solve", "--goal", "a")
    check("missing required option exits 2", r.returncode == 2)
    r = run()
    check("no subcommand exits 2", r.returncode == 2)

    print(f"{len(FAILURES)} failures")
    return 1 if FAILURES else 0


if __name__ == "__main__":
    sys.exit(main())
