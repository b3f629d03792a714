"""End-to-end tests of the rigidcheck CLI: exit codes, schema validation of
every JSON output, text/JSON agreement, budget precedence, input errors."""

import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema

BIN = None
ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "tests" / "data"
SCHEMAS = ROOT / "schemas"


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("RIGIDCHECK_BUDGET", None)
    if env:
        e.update(env)
    p = subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, env=e, timeout=600)
    return p.returncode, p.stdout, p.stderr


def validate(doc, schema):
    jsonschema.validate(doc, json.loads((SCHEMAS / f"{schema}.schema.json").read_text()))


def point_args(case, mode="strict"):
    d = DATA / case
    return ["--params", (d / "params").read_text().strip(), "--g", d / "g.json", "--h", d / "h.json",
            "--point", d / "point.json", "--mode", mode]


def write_json(tmp, name, obj):
    p = Path(tmp) / name
    p.write_text(json.dumps(obj))
    return p


class Xi(unittest.TestCase):
    def test_spot_values(self):
        self.assertEqual(run("xi", 10)[:2], (0, "13\n"))
        self.assertEqual(run("xi", 20)[:2], (0, "78\n"))

    def test_formula_over_range(self):
        for M in list(range(10, 1001, 37)) + [1000]:
            rc, out, _ = run("xi", M, "--json")
            self.assertEqual(rc, 0)
            doc = json.loads(out)
            validate(doc, "xi")
            self.assertEqual(doc["xi"], (M - 9) * (M - 8) // 2 + 12)

    def test_out_of_range(self):
        self.assertEqual(run("xi", 8)[0], 3)
        self.assertEqual(run("xi", "ten")[0], 3)


class Strata(unittest.TestCase):
    def test_cross_check_all_equal(self):
        rc, out, _ = run("cross-check", 11, 200, "--json")
        self.assertEqual(rc, 0)
        doc = json.loads(out)
        validate(doc, "cross-check")
        self.assertTrue(all(r["equal"] for r in doc["rows"]))
        self.assertEqual(len(doc["rows"]), 190)

    def test_cross_check_flags_m10(self):
        rc, out, _ = run("cross-check", 10, 12)
        self.assertEqual(rc, 1)
        self.assertIn("MISMATCH", out)
        rc, out, _ = run("cross-check", 10, 12, "--expect-mismatch", 10, "--json")
        self.assertEqual(rc, 0)
        doc = json.loads(out)
        row = doc["rows"][0]
        self.assertEqual((row["M"], row["bound"], row["xi"], row["equal"]), (10, 12, 13, False))

    def test_codim_table(self):
        rc, out, _ = run("codim-table", 10, "--m", 4, "--json")
        self.assertEqual(rc, 0)
        doc = json.loads(out)
        validate(doc, "codim-table")
        self.assertEqual(doc["theorem2"], 12)
        self.assertFalse(doc["matches_xi"])
        self.assertEqual([p["value"] for p in doc["prefix_bounds"]], ["55", "165", "330"])
        rc, out, _ = run("codim-table", 10)
        self.assertEqual(rc, 0)
        self.assertIn("MISMATCH", out)
        self.assertEqual(run("codim-table", 9)[0], 3)


class Check(unittest.TestCase):
    def report(self, case, mode="strict", *extra):
        rc, out, err = run("check", *point_args(case, mode), *extra, "--json")
        doc = json.loads(out)
        validate(doc, "report")
        return rc, doc

    def test_rank_six_off_ramification(self):
        rc, doc = self.report("r21_fail")
        self.assertEqual(rc, 1)
        self.assertEqual(doc["class"], "QuadraticOffRam")
        self.assertEqual(doc["checks"]["R2.1"]["verdict"], "fail")
        self.assertEqual(doc["checks"]["R2.1"]["witness"]["rank"], 6)
        self.assertEqual(doc["seed"], 0x5EED)

    def test_passes_and_fails(self):
        self.assertEqual(self.report("r21_pass")[0], 0)
        rc, doc = self.report("r12_fail")
        self.assertEqual((rc, doc["checks"]["R1.2"]["verdict"]), (1, "fail"))
        rc, doc = self.report("toy_r01_fail", "toy")
        self.assertEqual((rc, doc["mode"]), (1, "toy"))
        rc, doc = self.report("r2sq_pass", "strict", "--seed", 7, "--jobs", 2)
        self.assertEqual((rc, doc["seed"]), (0, 7))

    def test_text_matches_json(self):
        for case, mode in [("r21_fail", "strict"), ("r12_fail", "strict"), ("toy_r01_fail", "toy")]:
            rc_t, out, _ = run("check", *point_args(case, mode))
            rc_j, doc = self.report(case, mode)
            self.assertEqual(rc_t, rc_j)
            lines = dict(line.split(None, 1) for line in out.splitlines())
            for name, c in doc["checks"].items():
                self.assertEqual(lines[name].split()[0], c["verdict"])
            self.assertEqual(lines["overall"].strip(), doc["verdict"])
            self.assertEqual(lines["class"].strip(), doc["class"])

    def test_classify(self):
        rc, out, _ = run("classify", *point_args("r12_fail"), "--json")
        self.assertEqual(rc, 0)
        doc = json.loads(out)
        validate(doc, "classify")
        self.assertEqual(doc["class"], "NonSingularOnRam")
        self.assertEqual(run("classify", *point_args("r12_fail"))[1], "NonSingularOnRam\n")

    def test_bad_inputs(self):
        with tempfile.TemporaryDirectory() as tmp:
            args = point_args("r21_fail")
            g = json.loads((DATA / "r21_fail" / "g.json").read_text())

            broken = dict(g)
            del broken["terms"]
            rc, _, err = run("check", *args[:2], "--g", write_json(tmp, "a.json", broken), *args[4:])
            self.assertEqual(rc, 3)
            self.assertIn("terms", err)

            broken = json.loads(json.dumps(g))
            broken["terms"][0]["c"] = "x"
            rc, _, err = run("check", *args[:2], "--g", write_json(tmp, "b.json", broken), *args[4:])
            self.assertEqual(rc, 3)
            self.assertIn("terms[0]", err)

            broken = json.loads(json.dumps(g))
            broken["terms"].append(broken["terms"][0])
            rc, _, err = run("check", *args[:2], "--g", write_json(tmp, "c.json", broken), *args[4:])
            self.assertEqual(rc, 3)
            self.assertIn("duplicate", err)

            rc, _, err = run("check", *args[:6], "--point", write_json(tmp, "p.json", {"coords": ["1"]}))
            self.assertEqual(rc, 3)
            self.assertIn("point.u", err)

            bad = (Path(tmp) / "d.json")
            bad.write_text("{ not json")
            rc, _, err = run("check", *args[:2], "--g", bad, *args[4:])
            self.assertEqual(rc, 3)
            self.assertIn("not valid JSON", err)

            off = {"coords": ["1", "0", "1"] + ["0"] * 9, "u": "1"}
            rc, _, err = run("check", *args[:6], "--point", write_json(tmp, "q.json", off))
            self.assertEqual(rc, 3)
            self.assertIn("not on V", err)

        self.assertEqual(run("check", "--params", "10,2", *args[2:])[0], 3)
        self.assertEqual(run("check", *args[:-1], "lenient")[0], 3)
        self.assertEqual(run("check", "--params", "4,3,2", *args[2:])[0], 3)  # strict needs M >= 10


class Sample(unittest.TestCase):
    def test_verify_strata(self):
        rc, out, _ = run("verify-strata", "--n", 3, "--r", 1, "--q", 3, "--json")
        self.assertEqual(rc, 0)
        doc = json.loads(out)
        validate(doc, "verify-strata")
        self.assertEqual((doc["count"], doc["rank_stratum_codim"], doc["consistent"]), (27, 3, True))
        self.assertEqual(run("verify-strata", "--n", 6, "--r", 2, "--q", 5)[0], 3)
        self.assertEqual(run("verify-strata", "--n", 3, "--r", 1, "--q", 4)[0], 3)

    def test_sample_schema_and_jobs(self):
        args = ["sample", "--condition", "R2.1-rank", "--q", 3, "--n", 3, "--r", 1, "--samples", 3000,
                "--seed", 99, "--json"]
        rc, out1, _ = run(*args)
        self.assertEqual(rc, 0)
        doc = json.loads(out1)
        validate(doc, "sample")
        rc, out4, _ = run(*args, "--jobs", 4)
        self.assertEqual(out1, out4)
        for cond in ["R0-prefix-d", "R1.2-membership", "pencil-square", "genericity"]:
            rc, out, _ = run("sample", "--condition", cond, "--q", 101, "--samples", 6, "--params", "3,2,2", "--json")
            self.assertEqual(rc, 0, cond)
            validate(json.loads(out), "sample")

    def test_sample_errors(self):
        self.assertEqual(run("sample", "--condition", "R9", "--samples", 5)[0], 3)
        self.assertEqual(run("sample", "--condition", "R2.1-rank", "--samples", 0)[0], 3)


class Groebner(unittest.TestCase):
    IDEAL = {"nvars": 3, "field": "Q", "generators": [
        [{"c": "1", "e": [2, 0, 0]}, {"c": "-1", "e": [0, 1, 0]}],
        [{"c": "1", "e": [1, 1, 0]}, {"c": "-1", "e": [0, 0, 1]}]]}

    CYCLIC3 = {"nvars": 3, "field": "Q", "generators": [
        [{"c": "1", "e": [1, 0, 0]}, {"c": "1", "e": [0, 1, 0]}, {"c": "1", "e": [0, 0, 1]}],
        [{"c": "1", "e": [1, 1, 0]}, {"c": "1", "e": [0, 1, 1]}, {"c": "1", "e": [1, 0, 1]}],
        [{"c": "1", "e": [1, 1, 1]}, {"c": "-1", "e": [0, 0, 0]}]]}

    def test_basis(self):
        validate(self.IDEAL, "ideal")
        with tempfile.TemporaryDirectory() as tmp:
            path = write_json(tmp, "i.json", self.IDEAL)
            rc, out, _ = run("groebner", path, "--json")
            self.assertEqual(rc, 0)
            doc = json.loads(out)
            validate(doc, "groebner")
            self.assertGreaterEqual(len(doc["basis"]), 3)
            rc, text, _ = run("groebner", path)
            self.assertEqual(len(text.splitlines()), len(doc["basis"]))

    def test_budget_precedence(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_json(tmp, "i.json", self.CYCLIC3)
            self.assertEqual(run("groebner", path, env={"RIGIDCHECK_BUDGET": "1"})[0], 2)
            self.assertEqual(run("groebner", path, "--budget", 100000, env={"RIGIDCHECK_BUDGET": "1"})[0], 0)
            self.assertEqual(run("groebner", path, "--budget", 1)[0], 2)
            self.assertEqual(run("groebner", path, env={"RIGIDCHECK_BUDGET": "garbage"})[0], 0)
            self.assertEqual(run("groebner", path, "--budget", 0)[0], 3)

    def test_malformed(self):
        with tempfile.TemporaryDirectory() as tmp:
            bad = dict(self.IDEAL)
            bad["generators"] = [[{"c": "1", "e": [1, 0]}]]
            rc, _, err = run("groebner", write_json(tmp, "b.json", bad))
            self.assertEqual(rc, 3)
            self.assertIn("generators[0]", err)
            rc, _, err = run("groebner", write_json(tmp, "c.json", {"nvars": 2, "field": {"Fp": 2}, "generators": []}))
            self.assertEqual(rc, 3)
            self.assertIn("characteristic 2", err)


class Usage(unittest.TestCase):
    def test_usage_errors(self):
        self.assertEqual(run()[0], 3)
        self.assertEqual(run("frobnicate")[0], 3)
        self.assertEqual(run("xi", 10, "--no-such-flag")[0], 3)
        self.assertEqual(run("--help")[0], 0)


if __name__ == "__main__":
    BIN = sys.argv.pop(1)
    unittest.main(verbosity=2)
