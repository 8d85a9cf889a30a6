#!/usr/bin/env python3
"""Golden, round-trip and determinism tests for the cfree CLI.

usage: run_cli_tests.py CLI DIR [--update]

Each case runs from DIR/data.  Its stdout is compared byte for byte with
DIR/golden/<name>.out, the run is repeated to check determinism, and JSON
data outputs are fed back into the CLI.
"""

import argparse
import difflib
import json
import os
import subprocess
import sys
import tempfile
from fractions import Fraction

# name, args, expected exit code, optional env
CASES = [
    ("phi_fixed_point", ["phi", "--input", "sc01.json"], 0),
    ("phi_meixner", ["phi", "--input", "psi_sc11.json", "--degree", "8"], 0),
    ("cumulants_free", ["cumulants", "--input", "sc01.json"], 0),
    ("cumulants_free_rmw", ["cumulants", "--input", "sc01.json", "--variant", "rmw"], 0),
    ("cumulants_boolean", ["cumulants", "--kind", "boolean", "--input", "sc01.json"], 0),
    ("cumulants_two_state", ["cumulants", "--kind", "two-state", "--input", "pair2.json"], 0),
    ("cumulants_two_state_genfun", ["cumulants", "--kind", "two-state", "--method", "genfun", "--input", "pair2.json"], 0),
    ("moments_free", ["moments", "--input", "sc11_cum.json"], 0),
    ("convolve_free", ["convolve", "--kind", "free", "--a", "psi_sc11.json", "--b", "phi_sc11.json"], 0),
    ("convolve_boolean", ["convolve", "--kind", "boolean", "--a", "psi_sc11.json", "--b", "phi_sc11.json"], 0),
    ("boolean_power", ["convolve", "--kind", "boolean", "--a", "sc01.json", "--power", "1/2"], 0),
    ("cfree_product", ["convolve", "--kind", "cfree", "--a", "pair_meixner.json", "--b", "pair_meixner.json"], 0),
    ("jacobi", ["jacobi", "--input", "sc01.json"], 0),
    ("jacobi_meixner", ["jacobi", "--input", "phi_sc11.json"], 0),
    ("jacobi_strip", ["jacobi", "--params", "jacobi.json", "--strip"], 0),
    ("jacobi_moments", ["jacobi", "--params", "jacobi.json", "--degree", "6"], 0),
    ("jacobi_matricial", ["jacobi", "--input", "free_product.json", "--degree", "1"], 0),
    ("mops", ["mops", "--input", "phi_sc11.json", "--degree", "4"], 0),
    ("mops_latex", ["mops", "--input", "phi_sc11.json", "--degree", "4", "--format", "latex"], 0),
    ("second_kind", ["second-kind", "--input", "phi_sc11.json", "--degree", "4"], 0),
    ("appell_latex_degree2", ["appell", "--pair", "pair2.json", "--degree", "2", "--format", "latex"], 0),
    ("appell_genfun", ["appell", "--pair", "pair_meixner.json", "--degree", "3"], 0),
    ("appell_recursion", ["appell", "--pair", "pair_meixner.json", "--degree", "3", "--method", "recursion"], 0),
    ("appell_explicit", ["appell", "--pair", "pair_meixner.json", "--degree", "3", "--method", "explicit"], 0),
    ("appell_free", ["appell", "--kind", "free", "--input", "psi_sc11.json", "--degree", "3"], 0),
    ("appell_boolean", ["appell", "--kind", "boolean", "--input", "sc01.json", "--degree", "3", "--format", "latex"], 0),
    ("appell_symbolic", ["appell", "--symbolic", "--degree", "3", "--format", "latex"], 0),
    ("appell_symbolic_json", ["appell", "--symbolic", "--degree", "2"], 0),
    ("ks_latex", ["ks", "--algebra", "alg.json", "--elements", "elems.json", "--format", "latex"], 0),
    ("ks_explicit_latex", ["ks", "--algebra", "alg.json", "--elements", "elems.json", "--method", "explicit", "--format", "latex"], 0),
    ("ks_json", ["ks", "--algebra", "alg.json", "--elements", "elems.json"], 0),
    ("ks_expansion", ["ks", "--algebra", "alg.json", "--elements", "elems.json", "--expansion"], 0),
    ("fock_vector", ["fock", "--algebra", "alg.json", "--elements", "elems.json", "--mode", "vector"], 0),
    ("fock_expectation", ["fock", "--algebra", "alg.json", "--elements", "elems.json", "--mode", "expectation"], 0),
    ("fock_appell", ["fock", "--algebra", "alg.json", "--elements", "elems.json", "--mode", "appell"], 0),
    ("fock_pair", ["fock", "--algebra", "alg.json", "--elements", "elems_disjoint.json", "--mode", "pair", "--degree", "3"], 0),
    ("check_ops_second_kind", ["check", "ops-second-kind", "--phi", "phi_sc11.json", "--psi", "psi_sc11.json"], 0),
    ("check_ops_second_kind_false", ["check", "ops-second-kind", "--phi", "phi_perturbed.json", "--psi", "psi_sc11.json"], 0),
    ("check_c_cumulant_identity", ["check", "c-cumulant-identity", "--pair", "pair2.json"], 0),
    ("check_orthogonality", ["check", "orthogonality", "--pair", "pair_meixner.json"], 0),
    ("check_free_meixner", ["check", "free-meixner", "--input", "phi_sc11.json"], 0),
    ("check_positive", ["check", "positive", "--input", "not_positive.json"], 0),
    ("check_mgf_strip", ["check", "mgf-strip", "--mu", "sc01.json", "--nu", "sc01.json"], 0),
    ("check_appell", ["check", "appell", "--pair", "pair2.json"], 0),
    ("check_factorization", ["check", "factorization", "--algebra", "alg.json", "--elements", "elems_disjoint.json", "--blocks", "1", "2"], 0),
    ("error_malformed", ["phi", "--input", "malformed.json"], 1),
    ("error_not_symmetric", ["phi", "--input", "not_symmetric.json"], 1),
    ("error_truncation", ["appell", "--pair", "pair2.json", "--degree", "5"], 1),
    ("error_vars", ["phi", "--input", "sc01.json", "--vars", "2"], 1),
    ("error_no_mops", ["mops", "--input", "commutative.json", "--degree", "2"], 1),
    ("error_budget", ["phi", "--input", "sc01.json"], 1, {"CFREE_MAX_COEFFS": "5"}),
    ("usage_no_subcommand", [], 2),
    ("usage_bad_method", ["appell", "--pair", "pair2.json", "--degree", "2", "--method", "magic"], 2),
    ("usage_missing_file", ["phi", "--input", "does_not_exist.json"], 2),
    ("usage_bad_budget", ["phi", "--input", "sc01.json"], 2, {"CFREE_MAX_COEFFS": "lots"}),
]

# Outputs that should reproduce a known input.
SAME_AS_INPUT = {"phi_fixed_point": "sc01.json"}
# Pairs of cases whose outputs must be byte-identical.
IDENTICAL = [
    ("cumulants_two_state", "cumulants_two_state_genfun"),
    ("cumulants_free", "cumulants_free_rmw"),
    ("appell_genfun", "appell_recursion"),
    ("appell_genfun", "appell_explicit"),
    ("ks_latex", "ks_explicit_latex"),
]


def run(cli, args, cwd, env=None, stdin=None):
    full_env = dict(os.environ)
    full_env.pop("CFREE_MAX_COEFFS", None)
    full_env.update(env or {})
    p = subprocess.run([cli] + args, cwd=cwd, env=full_env, input=stdin, capture_output=True)
    return p.returncode, p.stdout


def kind_of(doc):
    if not isinstance(doc, dict):
        return None
    keys = set(doc)
    if "error" in keys:
        return "error"
    if {"phi", "psi"} <= keys:
        return "pair"
    if {"d", "trunc_degree", "moments"} <= keys:
        return "state"
    if {"kind", "d", "trunc_degree", "terms"} <= keys:
        return "cumulants"
    if {"beta", "gamma"} <= keys:
        return "jacobi"
    if {"d", "degree", "polys"} <= keys:
        return "family"
    return None


def roundtrip(cli, cwd, name, doc, tmp):
    """Feeds a data output back into a consuming command."""
    kind = kind_of(doc)
    path = os.path.join(tmp, name + ".json")
    with open(path, "w") as f:
        json.dump(doc, f)
    if kind == "state":
        cmds = [["cumulants", "--input", path], ["phi", "--input", path]]
    elif kind == "pair":
        cmds = [["cumulants", "--kind", "two-state", "--input", path], ["check", "c-cumulant-identity", "--pair", path]]
    elif kind == "cumulants":
        if doc["kind"] == "two_state":
            return []
        cmds = [["moments", "--input", path]]
    elif kind == "jacobi":
        cmds = [["jacobi", "--params", path, "--degree", "4"]]
    elif kind == "family":
        cmds = [["second-kind", "--family", path, "--input", "phi_sc11.json"]] if doc["d"] == 1 else []
    else:
        return []
    failures = []
    for cmd in cmds:
        code, out = run(cli, cmd, cwd)
        if code != 0:
            failures.append(f"{name}: round-trip {' '.join(cmd[:1])} exited {code}: {out.decode()[:200]}")
    return failures


def frac(o):
    return Fraction(int(o["num"]), int(o.get("den", "1")))


def terms_of(poly_terms):
    return {tuple(t["word"]): frac(t) for t in poly_terms if frac(t) != 0}


def oracle_checks(cli, data):
    """Low-order Appell and two-element Kailath-Segall formulas, by hand."""
    failures = []
    with open(os.path.join(data, "pair2.json")) as f:
        pair = json.load(f)
    phi = {tuple(t["word"]): frac(t) for t in pair["phi"]["moments"]}
    psi = {tuple(t["word"]): frac(t) for t in pair["psi"]["moments"]}
    m = lambda s, *w: s.get(tuple(w), Fraction(0))
    code, out = run(cli, ["appell", "--pair", "pair2.json", "--degree", "2"], data)
    fam = {tuple(e["word"]): terms_of(e["terms"]) for e in json.loads(out)["polys"]}
    for i in (1, 2):
        if fam[(i,)] != {k: v for k, v in {(i,): Fraction(1), (): -m(phi, i)}.items() if v != 0}:
            failures.append(f"oracle: A_{i} differs from x_i - phi_i")
        for j in (1, 2):
            # x_i x_j - phi_j x_i - psi_i x_j + psi_i phi_j - phi_ij + phi_i phi_j
            want = {}
            def add(w, c):
                want[w] = want.get(w, Fraction(0)) + c
            add((i, j), Fraction(1))
            add((i,), -m(phi, j))
            add((j,), -m(psi, i))
            add((), m(psi, i) * m(phi, j) - m(phi, i, j) + m(phi, i) * m(phi, j))
            want = {k: v for k, v in want.items() if v != 0}
            if fam[(i, j)] != want:
                failures.append(f"oracle: A_{i}{j} differs from the low-order formula")

    with open(os.path.join(data, "alg.json")) as f:
        alg = json.load(f)
    with open(os.path.join(data, "elems.json")) as f:
        f1, f2 = [[frac(x) for x in e] for e in json.load(f)]
    mu = [frac(x) for x in alg["mu_weights"]]
    nu = [frac(x) for x in alg["nu_weights"]]
    mu_f2 = sum(a * b for a, b in zip(mu, f2))
    nu_f1 = sum(a * b for a, b in zip(nu, f1))
    # W(f1,f2) = X(f1)X(f2) - X(f1f2) - mu[f2] X(f1) - nu[f1] X(f2) + nu[f1] mu[f2]
    want = {((1,), (2,)): Fraction(1), ((1, 2),): Fraction(-1), ((1,),): -mu_f2, ((2,),): -nu_f1, (): nu_f1 * mu_f2}
    want = {k: v for k, v in want.items() if v != 0}
    code, out = run(cli, ["ks", "--algebra", "alg.json", "--elements", "elems.json"], data)
    got = {tuple(tuple(s) for s in t["factors"]): frac(t) for t in json.loads(out)["terms"]}
    if got != want:
        failures.append("oracle: W(f1, f2) differs from the two-element formula")
    return failures


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("cli")
    ap.add_argument("dir")
    ap.add_argument("--update", action="store_true", help="rewrite the golden files")
    a = ap.parse_args()
    a.cli = os.path.abspath(a.cli)

    data = os.path.join(a.dir, "data")
    golden = os.path.join(a.dir, "golden")
    failures = []
    outputs = {}
    roundtrips = 0

    with tempfile.TemporaryDirectory() as tmp:
        for case in CASES:
            name, args, want = case[0], case[1], case[2]
            env = case[3] if len(case) > 3 else None
            code, out = run(a.cli, args, data, env)
            outputs[name] = out
            if code != want:
                failures.append(f"{name}: exit {code}, expected {want}")
            code2, out2 = run(a.cli, args, data, env)
            if (code2, out2) != (code, out):
                failures.append(f"{name}: output differs between two identical runs")

            gpath = os.path.join(golden, name + ".out")
            if a.update:
                with open(gpath, "wb") as f:
                    f.write(out)
            elif not os.path.exists(gpath):
                failures.append(f"{name}: missing golden file")
            else:
                with open(gpath, "rb") as f:
                    expect = f.read()
                if expect != out:
                    diff = difflib.unified_diff(expect.decode().splitlines(), out.decode().splitlines(),
                                                "golden", "actual", lineterm="", n=2)
                    failures.append(f"{name}: differs from golden\n" + "\n".join(list(diff)[:40]))

            if want == 1:
                doc = json.loads(out)
                if kind_of(doc) != "error" or "kind" not in doc:
                    failures.append(f"{name}: domain errors must print {{\"error\", \"kind\"}}")
            if want == 0 and out.startswith(b"{"):
                rt = roundtrip(a.cli, data, name, json.loads(out), tmp)
                roundtrips += 1 if kind_of(json.loads(out)) else 0
                failures.extend(rt)

        for name, src in SAME_AS_INPUT.items():
            with open(os.path.join(data, src)) as f:
                if json.loads(outputs[name]) != json.load(f):
                    failures.append(f"{name}: output is not the input {src}")
        for x, y in IDENTICAL:
            if outputs[x] != outputs[y]:
                failures.append(f"{x} and {y} differ")

        # two-state cumulants and psi give back phi
        pair = json.loads(outputs["cumulants_two_state"])
        with open(os.path.join(data, "pair2.json")) as f:
            p2 = json.load(f)
        rpath = os.path.join(tmp, "r.json")
        ppath = os.path.join(tmp, "psi.json")
        with open(rpath, "w") as f:
            json.dump(pair, f)
        with open(ppath, "w") as f:
            json.dump(p2["psi"], f)
        code, out = run(a.cli, ["moments", "--input", rpath, "--psi", ppath], data)
        phi_back = json.loads(out) if code == 0 else None
        if phi_back is None:
            failures.append("two-state round trip: moments failed")
        else:
            norm = lambda s: sorted((tuple(t["word"]), t["num"], t["den"]) for t in s["moments"])
            if norm(phi_back) != norm(p2["phi"]):
                failures.append("two-state round trip: moments from (R, psi) are not phi")

        failures.extend(oracle_checks(a.cli, data))

        # stdin input
        with open(os.path.join(data, "sc01.json"), "rb") as f:
            code, out = run(a.cli, ["phi"], data, stdin=f.read())
        if code != 0 or out != outputs["phi_fixed_point"]:
            failures.append("reading from stdin differs from --input")

        # --output writes the same bytes
        opath = os.path.join(tmp, "out.json")
        run(a.cli, ["phi", "--input", "sc01.json", "--output", opath], data)
        with open(opath, "rb") as f:
            if f.read() != outputs["phi_fixed_point"]:
                failures.append("--output differs from stdout")

    for f in failures:
        print("FAIL", f)
    print(f"{len(CASES)} cases, {roundtrips} round trips, {len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
