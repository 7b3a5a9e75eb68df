"""Acceptance criteria AC1–AC11, one test each.

Each test prints a single ``AC<n> PASS|FAIL: ...`` line (also under
pytest's output capture) before asserting. Run just this file with
``pytest tests/test_acceptance.py -v``.
"""

import json
import math
import subprocess
import sys
import time
from pathlib import Path

import pytest

from mspecial import modfun, mseries
from mspecial.mseries import ParameterSet, m_series
from mspecial.reductions import list_cases, run_reduction
from mspecial.suites import run_verification, verification_cases
from mspecial.transforms import THEOREMS, TolerancePolicy, fuzz_grid

GOLDEN = Path(__file__).parent / "golden"
sys.path.insert(0, str(GOLDEN))
from regenerate import RUNS  # noqa: E402


@pytest.fixture
def announce(capsys):
    def emit(label: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{label} {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def _cold() -> None:
    modfun.clear_caches()
    mseries.clear_caches()


def _failures(reports):
    return [(r.theorem_id, r.inputs, r.cause) for r in reports if not r.passed]


def test_ac1_classical_reductions(announce):
    _cold()
    start = time.perf_counter()
    reports = [r for case in list_cases("classic") for r in run_reduction(case)]
    elapsed = time.perf_counter() - start
    worst = max(r.rel_diff for r in reports)
    functions = {c.function for c in list_cases("classic")}
    ok = (
        len(reports) >= 40
        and not _failures(reports)
        and worst <= 1e-8
        and functions == {"m_gamma", "m_beta", "m_gauss", "m_confluent"}
        and elapsed < 10.0
    )
    announce("AC1", ok, f"{len(reports)} classical points, max rel {worst:.2e}, {elapsed:.1f} s")


def test_ac2_chaudhry_closed_form(announce):
    classical = ParameterSet.classical()
    worst = 0.0
    for rho in (0.25, 1.0, 4.0):
        value = modfun.m_gamma(classical, 0.5, rho).value
        expected = math.sqrt(math.pi) * math.exp(-2.0 * math.sqrt(rho))
        worst = max(worst, abs(value - expected) / expected)
    announce("AC2", worst <= 1e-7, f"max rel {worst:.2e} over rho in (0.25, 1, 4)")


def test_ac3_beta_recurrence(announce):
    reports = run_verification(("m_beta_recurrence",))
    sets = {r.inputs["set"] for r in reports}
    ok = len(reports) == 4 * 4 * 4 * len(sets) and len(sets - {"classical"}) >= 2 and not _failures(reports)
    announce("AC3", ok, f"{len(reports)} instances over sets {sorted(sets)}, {len(_failures(reports))} failed")


def test_ac4_representation_equivalence(announce):
    beta = run_verification(("m_beta_representations",))
    confluent = run_verification(("m_confluent_representations",))
    failed = _failures(beta) + _failures(confluent)
    announce(
        "AC4",
        not failed and len(beta) >= 192 and len(confluent) > 0,
        f"{len(beta)} beta pairs, {len(confluent)} confluent pairs, {len(failed)} failed",
    )


def test_ac5_transform_theorems(announce):
    _cold()
    policy = TolerancePolicy(1e-5, 0.0, 3.0)
    start = time.perf_counter()
    reports = [case.run(policy) for case in fuzz_grid()]
    elapsed = time.perf_counter() - start
    covered = {r.theorem_id for r in reports}
    ok = covered == set(THEOREMS) and not _failures(reports) and elapsed < 300.0
    announce("AC5", ok, f"{len(reports)} grid instances over {len(covered)} theorems, "
             f"{len(_failures(reports))} failed, {elapsed:.1f} s")


def test_ac6_derivatives(announce):
    lines, ok = [], True
    for theorem in ("m_gauss_derivative", "m_confluent_derivative"):
        reports = run_verification((theorem,))
        for n in (1, 2):
            subset = [r for r in reports if r.inputs["n"] == n]
            worst = max(r.rel_diff for r in subset)
            ok = ok and len(subset) >= 6 and worst <= 1e-5 and not _failures(subset)
            lines.append(f"{theorem} n={n}: {len(subset)} points, max rel {worst:.1e}")
    announce("AC6", ok, "; ".join(lines))


def test_ac7_pfaff_and_kummer(announce):
    pfaff = run_verification(("m_gauss_pfaff",))
    kummer = run_verification(("m_confluent_kummer",))
    stabilized = [r for r in pfaff if r.inputs["z"] < -1.0]
    failed = _failures(pfaff) + _failures(kummer)
    announce(
        "AC7",
        not failed and len(stabilized) > 0,
        f"{len(pfaff)} Pfaff ({len(stabilized)} on the z/(z-1) path), {len(kummer)} Kummer, {len(failed)} failed",
    )


def test_ac8_gamma_product(announce):
    reports = run_verification(("m_gamma_product",))
    worst = max(r.rel_diff for r in reports)
    ok = len(reports) == 4 and worst <= 1e-4 and not _failures(reports)
    announce("AC8", ok, f"{len(reports)} cases, max rel {worst:.2e}")


def test_ac9_binomial_sum(announce):
    reports = run_verification(("m_beta_binomial",))
    within = all(r.abs_diff <= 1e-6 + r.details["truncation_bound"] for r in reports)
    announce("AC9", within and not _failures(reports), f"{len(reports)} cases within 1e-6 + truncation bound")


def test_ac10_cancellation(announce):
    classical = ParameterSet.classical()
    parts, ok = [], True
    for z in (-10.0, -20.0, -30.0):
        res = m_series(classical, z)
        rel = abs(res.value - math.exp(z)) / math.exp(z)
        ok = ok and rel <= 1e-9 and res.precision_tier == "extended"
        parts.append(f"z={z:g}: rel {rel:.1e} tier {res.precision_tier}")
    announce("AC10", ok, "; ".join(parts))


def _cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "mspecial", *argv], capture_output=True, text=True, check=False)
    return proc.returncode, proc.stdout


def _close(actual, expected) -> bool:
    if isinstance(expected, float) and isinstance(actual, float):
        return actual == expected or abs(actual - expected) <= 1e-12 * max(abs(expected), 1e-300)
    if isinstance(expected, dict):
        return isinstance(actual, dict) and actual.keys() == expected.keys() and all(
            _close(actual[k], expected[k]) for k in expected
        )
    if isinstance(expected, list):
        return isinstance(actual, list) and len(actual) == len(expected) and all(
            _close(a, e) for a, e in zip(actual, expected)
        )
    return actual == expected


def test_ac11_cli_contract(announce):
    problems = []
    for name, (argv, expected_code) in RUNS.items():
        code, out = _cli(*argv, "--format", "json")
        if code != expected_code:
            problems.append(f"{name}: exit {code}, expected {expected_code}")
        elif not _close(json.loads(out), json.loads((GOLDEN / f"{name}.json").read_text())):
            problems.append(f"{name}: output differs from golden")
    first, second = _cli("verify", "--seed", "42", "--theorem", "beta_m_beta"), _cli(
        "verify", "--seed", "42", "--theorem", "beta_m_beta"
    )
    if first != second:
        problems.append("seeded verify is not byte-identical across runs")
    for argv in (("reductions", "--family", "bogus"), ("eval", "m_beta", "-x", "1")):
        if _cli(*argv)[0] != 2:
            problems.append(f"{' '.join(argv)} did not exit 2")
    for argv in (("verify",), ("reductions",)):
        code, _ = _cli(*argv)
        if code != 0:
            problems.append(f"{argv[0]} exited {code} on the shipped defaults")
    total = len(verification_cases())
    detail = "; ".join(problems) or f"{len(RUNS)} golden runs, determinism, exit codes, full verify ({total} instances) and reductions exit 0"
    announce("AC11", not problems, detail)
