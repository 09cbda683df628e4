"""End-to-end checks of the command-line driver: exit codes, key findings,
schema validity of every JSON report, and byte-identical repeated runs."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

BIN, ROOT = sys.argv[1], Path(sys.argv[2])
FIX = ROOT / "tests" / "fixtures"
SCHEMA = json.loads((ROOT / "docs" / "report.schema.json").read_text())
failures = []


def run(*args):
    proc = subprocess.run([BIN, "--report", "json", *map(str, args)], capture_output=True, text=True)
    doc = None
    if proc.stdout.strip():
        doc = json.loads(proc.stdout)
        jsonschema.validate(doc, SCHEMA)
    return proc.returncode, doc


def expect(label, cond):
    if not cond:
        failures.append(label)
    print(("ok   " if cond else "FAIL ") + label)


code, doc = run("analyze", FIX / "d4.json")
expect("analyze D4", code == 0 and doc["results"]["group"]["order"] == 8
       and doc["results"]["nilpotency_class"] == 2 and doc["results"]["abelianization"] == [2, 2])
code, doc = run("analyze", FIX / "c1.json")
expect("analyze trivial group", code == 0 and doc["results"]["abelianization"] == []
       and doc["results"]["center"] == [0])
code, doc = run("analyze", FIX / "s3.json")
expect("analyze S3", code == 0 and doc["results"]["nilpotency_class"] == "not nilpotent")
code, doc = run("analyze", FIX / "klein_table.json")
expect("analyze table input", code == 0 and doc["results"]["abelianization"] == [2, 2])

code, doc = run("qgroup", FIX / "c2.json")
expect("qgroup C2", code == 0 and doc["results"]["order"] == 4 and doc["results"]["abelianization"] == [4])
code, doc = run("passi", FIX / "c2.json", "--degree", "2")
expect("passi C2", code == 0 and doc["results"]["factors"] == [4])
for name, ab in [("q8.json", [2, 2]), ("d4.json", [2, 2]), ("s3.json", [2])]:
    code, doc = run("passi", FIX / name, "--subgroup", "all", "--degree", "2")
    expect("passi all " + name, code == 0 and doc["results"]["factors"] == ab)

code, doc = run("checkmap", FIX / "c4.json", FIX / "c8.json", FIX / "square_c4_c8.json")
expect("checkmap square C4 -> C8", code == 0 and doc["results"]["quadratic"]
       and doc["results"]["w_f_on_tensor_generators"] == [2])
code, doc = run("checkmap", FIX / "s3.json", FIX / "s3.json", FIX / "square_s3.json")
expect("checkmap squaring on S3 fails", code == 1 and not doc["results"]["quadratic"]
       and len(doc["results"]["witness"]["tuple"]) == 3)
code, doc = run("checkpoly", FIX / "c4.json", FIX / "z8.json", FIX / "square_c4_z8.json", "--degree", "2")
expect("checkpoly degree 2", code == 0 and doc["results"]["polynomial"])
code, doc = run("checkpoly", FIX / "c4.json", FIX / "z8.json", FIX / "square_c4_z8.json", "--degree", "1")
expect("checkpoly degree 1 fails", code == 1 and not doc["results"]["polynomial"])

code, doc = run("presented", FIX / "c4_presentation.json", FIX / "c8.json", FIX / "pair_flagship.json")
expect("presented flagship", code == 0 and doc["results"]["map"] == [0, 1, 4, 1])
code, doc = run("presented", FIX / "c4_presentation.json", FIX / "c8.json", FIX / "pair_psi_one.json")
pairings = [c for c in doc["sections"][0]["checks"] if c["name"] == "relator_pairings"]
expect("presented psi = 1 rejected", code == 1 and doc["results"]["verdict"] == "REJECT"
       and pairings[0]["status"] == "FAIL")

code, doc = run("verify", "--zoo", "C2")
instances = {tuple(s["instance"]["subgroup"]) for s in doc["sections"] if s["title"] == "passi_exact_sequences"}
expect("verify C2", code == 0 and instances == {(0,), (0, 1)})

expect("unknown zoo name", run("verify", "--zoo", "A5")[0] == 2)
expect("malformed JSON", run("analyze", FIX / "malformed.json")[0] == 2)
expect("missing file", run("analyze", FIX / "does_not_exist.json")[0] == 2)
expect("no subcommand", run()[0] == 2)
expect("non-associative table", run("analyze", FIX / "bad_table.json")[0] == 3)
expect("non-normal subgroup", run("passi", FIX / "s3.json", "--subgroup", '{"elements":[0,1]}')[0] == 3)
expect("order cap", run("qgroup", FIX / "d4.json", "--max-order", "50")[0] == 4)
expect("degree cap", run("passi", FIX / "c2.json", "--degree", "5")[0] == 4)

with tempfile.TemporaryDirectory() as tmp:
    outs = []
    for k in range(2):
        path = Path(tmp) / f"verify{k}.json"
        proc = subprocess.run([BIN, "verify", "--zoo", "C4,Q8,S3", "--json", path], capture_output=True)
        outs.append(path.read_bytes())
    expect("repeated verify runs are byte-identical", outs[0] == outs[1])

sys.exit(1 if failures else 0)
