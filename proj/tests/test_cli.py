#!/usr/bin/env python3
"""End-to-end tests of the qbern command-line tool.

Usage: test_cli.py <path to qbern> <schema directory>
"""

import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema

QBERN = ""
SCHEMAS = Path()


def run(*args, env=None):
    return subprocess.run([QBERN, *args], capture_output=True, text=True, env=env, timeout=600)


def schema(name):
    return json.loads((SCHEMAS / f"{name}.json").read_text())


def json_lines(stdout):
    return [json.loads(line) for line in stdout.splitlines() if line.strip()]


class TextOutput(unittest.TestCase):
    def test_basis_poly(self):
        r = run("basis", "0", "2", "1/2", "--poly")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(r.stdout, "1 - 3/2 x + 1/2 x^2\n")

    def test_basis_value(self):
        # B_{1,3}(1/3, 1/2) = [3] x (1-x)(1-x/2) = 7/4 * 1/3 * 2/3 * 5/6
        r = run("basis", "1", "3", "1/2", "1/3")
        self.assertEqual(r.stdout.strip(), "35/108")

    def test_basis_derivative(self):
        # D_q (x^2) = [2]_q x
        r = run("basis", "2", "2", "1/2", "--derivative")
        self.assertEqual(r.stdout.strip(), "3/2 x")

    def test_matrix_quadratic(self):
        r = run("matrix", "2", "1/2")
        self.assertEqual(r.returncode, 0)
        rows = [line.split() for line in r.stdout.splitlines()]
        self.assertEqual(rows, [["1", "0", "0"], ["-3/2", "3/2", "0"], ["1/2", "-3/2", "1"]])

    def test_matrix_inverse(self):
        r = run("matrix", "2", "1/2", "--inverse")
        rows = [line.split() for line in r.stdout.splitlines()]
        self.assertEqual(rows, [["1", "0", "0"], ["1", "2/3", "0"], ["1", "1", "1"]])

    def test_operator(self):
        self.assertEqual(run("operator", "poly:0,1", "5", "1/3", "2/7").stdout.strip(), "2/7")
        self.assertEqual(run("operator", "poly:1", "5", "1/3", "2/7").stdout.strip(), "1")
        plain = run("operator", "runge", "4", "1/2", "1/3").stdout
        delta = run("operator", "runge", "4", "1/2", "1/3", "--delta").stdout
        self.assertEqual(plain, delta)
        # t^2 at n = 3, q = 1/2: x^2 + x(1-x)/[3]_q
        self.assertEqual(run("operator", "poly:0,0,1", "3", "1/2", "--poly").stdout.strip(), "4/7 x + 3/7 x^2")

    def test_stirling(self):
        self.assertEqual(run("stirling", "5", "2").stdout.strip(), "15")
        self.assertEqual(run("stirling", "4", "2", "--q", "1").stdout.strip(), "7")
        tri = run("stirling", "4", "--triangle").stdout.splitlines()
        self.assertEqual(tri[-1], "0 1 7 6 1")

    def test_bernoulli(self):
        lines = run("bernoulli", "1", "4").stdout.splitlines()
        self.assertEqual([l.split()[1] for l in lines], ["1", "-1/2", "1/6", "0", "-1/30"])

    def test_qbernoulli(self):
        # q = 1, order 1: B_2(x) = x^2 - x + 1/6
        self.assertEqual(run("qbernoulli", "2", "1", "1/2", "1").stdout.strip(), "-1/12")
        self.assertEqual(run("qbernoulli", "0", "2", "1/3", "1/2", "--umbral").stdout.strip(), "1")

    def test_pmf(self):
        two = run("pmf", "3", "2", "1/1000", "1").stdout.strip()
        three = run("pmf", "3", "3", "1/1000", "1").stdout.strip()
        self.assertEqual(two, "2997/1000000000")
        self.assertEqual(three, "1/1000000000")

    def test_approx_inline_and_csv(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "t.csv")
            r = run("approx", "--function", "runge", "--degrees", "4,8", "--schedule", "fixed:1/2", "--csv", path)
            self.assertEqual(r.returncode, 0, r.stderr)
            self.assertEqual(r.stdout, Path(path).read_text())
            lines = r.stdout.splitlines()
            self.assertEqual(lines[0], "n,q,sup_error,mean_error")
            self.assertEqual(len(lines), 3)

    def test_approx_config_file(self):
        with tempfile.TemporaryDirectory() as d:
            cfg = os.path.join(d, "cfg.json")
            Path(cfg).write_text(json.dumps({"function": "sin-pi", "degrees": [2, 3], "grid_size": 11,
                                             "schedule": {"custom": ["1/2", "1"]}}))
            r = run("approx", cfg)
            self.assertEqual(r.returncode, 0, r.stderr)
            self.assertEqual(len(r.stdout.splitlines()), 5)


class Verify(unittest.TestCase):
    def test_filter_moments(self):
        r = run("--json", "verify", "--filter", "thm9")
        self.assertEqual(r.returncode, 0, r.stderr)
        reports = json_lines(r.stdout)
        self.assertEqual(len(reports), 1)
        self.assertEqual(reports[0]["status"], "certified")

    def test_empty_filter_match(self):
        r = run("--json", "verify", "--filter", "no-such-prefix")
        self.assertEqual(r.returncode, 0)
        self.assertEqual(r.stdout, "")

    def test_mutation_fails_with_exit_one(self):
        r = run("--json", "verify", "--filter", "thm5", "--mutation", "drop-qk")
        self.assertEqual(r.returncode, 1)
        rep = json_lines(r.stdout)[0]
        jsonschema.validate(rep, schema("verify_report"))
        self.assertEqual(rep["status"], "failed")
        self.assertNotEqual(rep["counterexample"]["lhs"], rep["counterexample"]["rhs"])

    def test_out_file_and_determinism(self):
        with tempfile.TemporaryDirectory() as d:
            a, b = os.path.join(d, "a.jsonl"), os.path.join(d, "b.jsonl")
            env1 = dict(os.environ, QBERN_WORKERS="1")
            env3 = dict(os.environ, QBERN_WORKERS="3")
            self.assertEqual(run("verify", "--filter", "eq1", "--seed", "5", "--out", a, env=env1).returncode, 0)
            self.assertEqual(run("verify", "--filter", "eq1", "--seed", "5", "--out", b, env=env3).returncode, 0)

            def strip(path):
                out = []
                for rep in json_lines(Path(path).read_text()):
                    rep.pop("wall_time_ms")
                    out.append(rep)
                return out

            self.assertEqual(strip(a), strip(b))
            self.assertGreater(len(strip(a)), 0)

    def test_registry_coverage(self):
        """Every registered identity is reachable and certifies through the CLI."""
        listing = json_lines(run("--json", "verify", "--list").stdout)
        self.assertGreaterEqual(len(listing), 20)
        for entry in listing:
            jsonschema.validate(entry, schema("verify_list"))
        r = run("--json", "verify")
        self.assertEqual(r.returncode, 0, r.stdout[-2000:])
        reports = json_lines(r.stdout)
        self.assertEqual([x["id"] for x in reports], [x["id"] for x in listing])
        for rep in reports:
            jsonschema.validate(rep, schema("verify_report"))
            self.assertEqual(rep["status"], "certified", rep["id"])
        mutations = sum(len(e["mutations"]) for e in listing)
        self.assertGreaterEqual(mutations, 10)


class JsonSchemas(unittest.TestCase):
    CASES = [
        ("basis", ["basis", "0", "2", "1/2", "--poly"]),
        ("basis", ["basis", "1", "2", "1/3", "2/5"]),
        ("basis", ["basis", "1", "3", "1/3", "--derivative"]),
        ("matrix", ["matrix", "3", "2/3"]),
        ("matrix", ["matrix", "3", "2/3", "--inverse"]),
        ("operator", ["operator", "abs-shift", "4", "1/2", "1/3"]),
        ("operator", ["operator", "poly:1,2", "4", "1/2", "--poly"]),
        ("stirling", ["stirling", "6", "3"]),
        ("stirling", ["stirling", "6", "3", "--q", "1/2"]),
        ("stirling", ["stirling", "4", "--triangle"]),
        ("bernoulli", ["bernoulli", "2", "6"]),
        ("qbernoulli", ["qbernoulli", "3", "2", "1/2", "1/3"]),
        ("qbernoulli", ["qbernoulli", "3", "2", "1/2", "1/3", "--umbral"]),
        ("pmf", ["pmf", "3", "2", "1/1000", "1"]),
        ("approx", ["approx", "--function", "exp", "--degrees", "2,5", "--grid", "11"]),
        ("verify_report", ["verify", "--filter", "partition"]),
        ("verify_list", ["verify", "--list"]),
    ]

    def test_outputs_validate(self):
        for name, args in self.CASES:
            with self.subTest(args=args):
                r = run("--json", *args)
                self.assertEqual(r.returncode, 0, r.stderr)
                docs = json_lines(r.stdout)
                self.assertGreater(len(docs), 0)
                for doc in docs:
                    jsonschema.validate(doc, schema(name))

    def test_json_flag_after_subcommand(self):
        r = run("matrix", "1", "1/2", "--json")
        self.assertEqual(json.loads(r.stdout)["matrix"], [["1", "0"], ["-1", "1"]])

    def test_pmf_three_trials(self):
        total = sum(json.loads(run("--json", "pmf", "3", k, "1/1000", "1").stdout)["decimal"] for k in ("2", "3"))
        self.assertAlmostEqual(total, 2.998e-6, delta=1e-9)


class UsageErrors(unittest.TestCase):
    CASES = [
        ["basis", "0", "2", "3/2", "1/2"],
        ["basis", "0", "2", "0", "1/2"],
        ["basis", "0", "2", "1/2"],
        ["basis", "0", "2", "1/2", "1/0"],
        ["basis", "x", "2", "1/2", "1/3"],
        ["operator", "exp", "3", "1/2", "1/2"],
        ["operator", "cosh", "3", "1/2", "1/2"],
        ["operator", "runge", "3", "1/2", "3/2"],
        ["stirling", "4"],
        ["pmf", "3", "4", "1/2", "1/2"],
        ["matrix", "2"],
        ["verify", "--filter", "thm9", "--mutation", "nope"],
        ["approx", "--function", "nope"],
        ["approx", "--degrees", "1"],
        ["approx", "--schedule", "geometric"],
        ["approx", "/nonexistent/config.json"],
        ["frobnicate"],
        [],
    ]

    def test_exit_two_with_hint(self):
        for args in self.CASES:
            with self.subTest(args=args):
                r = run(*args)
                self.assertEqual(r.returncode, 2, r.stdout + r.stderr)
                self.assertIn("hint:", r.stderr)
                self.assertEqual(r.stdout, "")


if __name__ == "__main__":
    QBERN, SCHEMAS = sys.argv[1], Path(sys.argv[2])
    unittest.main(argv=[sys.argv[0], "-v"])
