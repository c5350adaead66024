"""End-to-end checks of the hptkit command line: usage: cli_test.py HPTKIT DATA_DIR"""

import json
import os
import subprocess
import sys
import tempfile

HPTKIT, DATA = sys.argv[1], sys.argv[2]
failures = []


def run(*args):
    return subprocess.run([HPTKIT, *args], capture_output=True, text=True)


def data(name):
    return os.path.join(DATA, name)


def expect(name, cond, detail=""):
    print(("ok   " if cond else "FAIL ") + name)
    if not cond:
        failures.append(name)
        if detail:
            print("     " + detail.strip().replace("\n", "\n     "))


def entries(ops):
    return {(e["from"], e["to"]): e["coeff"] for e in ops}


tmp = tempfile.mkdtemp()

# validate
r = run("validate", "--input", data("standard_contraction.json"))
expect("validate contraction", r.returncode == 0, r.stdout + r.stderr)
r = run("validate", "--input", data("not_a_complex.json"))
expect("validate d^2 != 0 exits 1", r.returncode == 1, r.stdout + r.stderr)
expect("validate names the degree", "degree 2" in r.stdout, r.stdout)
r = run("validate", "--input", data("zero_denominator.json"))
expect("zero denominator exits 2", r.returncode == 2, r.stdout + r.stderr)
expect("zero denominator names the entry", "d[0].coeff" in r.stderr, r.stderr)
r = run("validate", "--input", data("missing.json"))
expect("missing file exits 2", r.returncode == 2, r.stderr)
r = run("validate", "--input", data("not_a_complex.json"), "--format", "json")
report = json.loads(r.stdout)
expect("json report", report["passed"] is False and report["checks"][0]["label"] == "d2", r.stdout)

# perturb
kit_path = os.path.join(tmp, "kit.json")
r = run("perturb", "--input", data("standard_contraction.json"),
        "--perturbation", data("standard_perturbation.json"), "--emit", kit_path)
expect("perturb standard example", r.returncode == 0, r.stdout + r.stderr)
kit = json.load(open(kit_path))
expect("pi_del(c) = -2a", entries(kit["pi_del"]).get(("c", "a")) == "-2", json.dumps(kit["pi_del"]))
expect("beta(c) = c - 2a, identity elsewhere", entries(kit["beta"]) == {("a", "a"): "1", ("b", "b"): "1", ("c", "c"): "1",
                                                    ("c", "a"): "-2"}, json.dumps(kit["beta"]))
expect("Dcal vanishes", kit["Dcal"] == [], json.dumps(kit["Dcal"]))
r = run("validate", "--input", kit_path)
expect("emitted kit validates", r.returncode == 0, r.stdout + r.stderr)
perturbed = os.path.join(tmp, "perturbed.json")
json.dump(kit["perturbed"], open(perturbed, "w"))
r = run("validate", "--input", perturbed)
expect("emitted structure validates", r.returncode == 0, r.stdout + r.stderr)

zero_kit = os.path.join(tmp, "zero.json")
r = run("perturb", "--input", data("standard_contraction.json"),
        "--perturbation", data("zero_perturbation.json"), "--emit", zero_kit)
expect("zero perturbation", r.returncode == 0, r.stdout + r.stderr)
source = json.load(open(data("standard_contraction.json")))
out = json.load(open(zero_kit))["perturbed"]
same = all(entries(out[k]) == entries(source[k]) for k in ("pi", "nabla", "h"))
same = same and entries(out["N"]["d"]) == entries(source["N"]["d"])
expect("zero perturbation returns the input", same, json.dumps(out))

r = run("perturb", "--input", data("cone_pseudo.json"), "--perturbation", data("cone_perturbation.json"))
expect("cone exits 3", r.returncode == 3, r.stdout + r.stderr)
expect("cone names the operator", "not established" in r.stderr, r.stderr)

# verify
r = run("verify", "--order", "2")
expect("verify --order 2 runs every criterion",
       all(f"criterion {n} " in r.stdout for n in range(1, 9)), r.stdout[-2000:])
failed = [line for line in r.stdout.splitlines() if line.strip().startswith("[FAIL]")]
expect("verify --order 2 passes", r.returncode == 0, "\n".join(failed))
for name in ("structural", "identities", "pseudo", "ordinary", "a0", "hodge", "degenerate"):
    r = run("verify", name, "--order", "4", "--instances", "20")
    expect(f"verify {name}", r.returncode == 0, r.stdout[-2000:] + r.stderr)
a = run("verify", "--seed", "42", "--instances", "10", "--format", "json")
b = run("verify", "--seed", "42", "--instances", "10", "--format", "json")
expect("verify is deterministic", a.stdout == b.stdout and a.stdout != "", a.stderr)
r = run("verify", "sandwich")
expect("unknown criterion exits 2", r.returncode == 2, r.stderr)
r = run("verify", "structural", "--order", "4")
expect("structural prints traces", "→" in r.stdout, r.stdout[-2000:])

# enumerate
for order, count in ((1, 2), (3, 10)):
    r = run("enumerate", "--order", str(order), "--format", "json")
    words = json.loads(r.stdout)
    expect(f"enumerate L={order}", r.returncode == 0 and len(words["words"]) == count, r.stdout)

# transfer
r = run("transfer", "--algebra", "H", "--bound", "10")
expect("transfer H", r.returncode == 0, r.stdout + r.stderr)
r = run("transfer", "--algebra", "P", "--bound", "11")
expect("transfer P", r.returncode == 0, r.stdout + r.stderr)
r = run("transfer", "--algebra", "Ax")
expect("transfer Ax exits 3", r.returncode == 3, r.stdout + r.stderr)
r = run("transfer", "--algebra", "B")
expect("unknown algebra exits 2", r.returncode == 2, r.stderr)

# homology
hom = os.path.join(tmp, "hom.json")
r = run("homology", "--input", data("standard_contraction.json"), "--emit", hom)
expect("homology needs a complex", r.returncode == 2, r.stdout + r.stderr)
cx = os.path.join(tmp, "complex.json")
json.dump(source["N"], open(cx, "w"))
r = run("homology", "--input", cx, "--emit", hom)
expect("homology of N", r.returncode == 0, r.stdout + r.stderr)
r = run("validate", "--input", hom)
expect("homology contraction validates", r.returncode == 0, r.stdout + r.stderr)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
