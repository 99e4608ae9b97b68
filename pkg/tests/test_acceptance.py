"""Acceptance gate: one test per criterion, each printing a single verdict line.

Run on its own with ``pytest tests/test_acceptance.py -s`` (or
``python3 tests/test_acceptance.py``) to see the verdict lines inline; they
are also repeated in the terminal summary of any pytest run that includes
this module.
"""

from __future__ import annotations

import itertools
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from commulab import registry
from commulab.cli import main as cli_main
from commulab.equations import generic_membership_check
from commulab.groebner import variety_dimension_experiment
from commulab.matrix import Matrix
from commulab.report import INCONCLUSIVE, PASS
from commulab.rings import GF, Mod
from commulab.spectral import simultaneous_triangularization

HERE = Path(__file__).resolve().parent
VERDICTS: dict[int, str] = {}


def _verdict(capsys, k: int, ok: bool, note: str) -> None:
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} - {note}"
    VERDICTS[k] = line
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def _timed(fn, *a, **kw):
    t = time.perf_counter()
    out = fn(*a, **kw)
    return out, time.perf_counter() - t


# 1. dimension table over GF(32003), each run <= 60 s

TABLE = [
    ("Y", 2, 2, 1),
    ("Y", 3, 2, 2),
    ("Y", 3, 3, 2),
    ("N", 2, None, 2),
    ("N", 3, None, 6),
    ("S", 2, 2, 3),
    ("S", 2, 3, 3),
    ("W", 2, None, 3),
]


def test_criterion_1_dimension_table(capsys):
    rows, ok = [], True
    for system, n, alpha, want in TABLE:
        rep, secs = _timed(variety_dimension_experiment, system, n, alpha, char=32003)
        got = rep.metrics.get("dimension")
        good = rep.status == PASS and got == want and secs <= 60
        ok &= good
        rows.append(f"{system}({n}{',' + str(alpha) if alpha else ''})={got}")
    # the fiber route to the S totals must agree with the full system
    for alpha in (2, 3):
        rep = variety_dimension_experiment("S_fiber", 2, alpha, char=32003)
        ok &= rep.status == PASS and rep.metrics["total"] == 3
    _verdict(capsys, 1, ok, " ".join(rows))


# 2. V4 fiber over J_4 (extended; budget 30 min)


def test_criterion_2_v4(capsys):
    rep = registry.run_check("D6")
    if rep.status == INCONCLUSIVE:
        _verdict(capsys, 2, rep.detail.startswith("budget"), f"INCONCLUSIVE ({rep.detail})")
        return
    m = rep.metrics
    fib, com = m["V4_fiber(4)"], m["V4_commuting_fiber(4)"]
    ok = rep.status == PASS and (fib["dimension"], fib["total"], com["total"]) == (6, 18, 14)
    _verdict(capsys, 2, ok, f"fiber {fib['dimension']}, totals {fib['total']} and {com['total']}")


# 3. counterexamples, each <= 1 s


def test_criterion_3_counterexamples(capsys):
    reps = {}
    for cid in ("C1", "C2", "C4", "C5"):
        reps[cid], secs = _timed(registry.run_check, cid)
        assert secs <= 1.0, f"{cid} took {secs:.2f}s"
    ok = all(r.status == PASS for r in reps.values())

    # independent recomputation of the headline facts
    A, B = registry.char3_pair()
    ok &= A * B - B * A == A * A and A ** 3 == Matrix.identity(3, GF(3))
    ok &= simultaneous_triangularization(A, B).status == "NotST"
    ok &= reps["C2"].metrics["det_commutator"] == "-7/16"
    ok &= reps["C2"].metrics["non_nilpotent_a"] == ["1", "2", "3"]
    ok &= (3 ** 2) % 27 != 0 and (3 ** 3) % 27 == 0 and reps["C4"].metrics["nilindex"] == 3
    ok &= reps["C5"].metrics["resultant"] == "4" and reps["C5"].metrics["resultant_unit"] is False
    _verdict(capsys, 3, ok, ", ".join(f"{k} {r.status}" for k, r in reps.items()))


# 4. exhaustive structural checks, each <= 2 min


def _all_mats(q: int, n: int) -> np.ndarray:
    return np.array(list(itertools.product(range(q), repeat=n * n)), dtype=np.int64).reshape(-1, n, n)


def _z9_oracle() -> tuple[int, bool]:
    X = _all_mats(9, 2)
    A = np.diag([0, 1])
    res = (A @ X - X @ A - X @ X) % 9
    sols = X[(res == 0).all(axis=(1, 2))]
    diag = (sols[:, 0, 1] == 0) & (sols[:, 1, 0] == 0)
    mu_sq = (sols[:, [0, 1], [0, 1]] ** 2) % 9 == 0
    return len(sols), bool(diag.all() and mu_sq.all())


def _gf2_block_oracle() -> tuple[int, bool]:
    X = _all_mats(2, 3)
    A = np.diag([0, 0, 1])
    X2 = X @ X % 2
    X3 = X2 @ X % 2
    res = (X @ A - A @ X - X2 - X3) % 2
    nil = (X3 == 0).all(axis=(1, 2))
    sols = X[(res == 0).all(axis=(1, 2)) & nil]
    off = sols[:, [0, 1, 2, 2], [2, 2, 0, 1]]
    return len(sols), bool((off == 0).all() and ((sols @ sols % 2) == 0).all())


def _square_pairs_oracle(q: int) -> tuple[int, bool]:
    M = _all_mats(q, 2)
    sols, commute = 0, True
    for A in M:
        lhs = A @ A - 2 * (A @ M) + M @ M
        hit = (lhs % q == 0).all(axis=(1, 2))
        B = M[hit]
        sols += len(B)
        commute &= bool(((A @ B - B @ A) % q == 0).all())
    return sols, commute


def test_criterion_4_exhaustive(capsys):
    notes, ok = [], True

    rep, secs = _timed(registry.run_check, "T13", {"ring": "Zmod:9"})
    census = rep.metrics["Zmod:9 diag(0,1) alpha=2"]
    count, shape = _z9_oracle()
    ok &= rep.status == PASS and secs <= 120 and census["candidates"] == 6561
    ok &= census["solutions"] == census["diagonal"] == census["mu_alpha_zero"] == count and shape
    notes.append(f"Z/9 {count} solutions diagonal")

    rep, secs = _timed(registry.run_check, "T14")
    key = next(k for k in rep.metrics if k.startswith("GF:2 A=diag(0, 0, 1)"))
    count, shape = _gf2_block_oracle()
    ok &= rep.status == PASS and secs <= 120 and rep.metrics[key]["nilpotent_solutions"] == count and shape
    notes.append(f"GF(2) {count} nilpotent solutions block-diagonal")

    rep, secs = _timed(registry.run_check, "T1")
    ok &= rep.status == PASS and secs <= 120
    for q in (3, 5):
        sols, commute = _square_pairs_oracle(q)
        m = rep.metrics[f"GF:{q}"]
        ok &= commute and m["solutions"] == sols and m["non_commuting"] == 0
        notes.append(f"GF({q}) {sols} pairs commute")
    _verdict(capsys, 4, ok, "; ".join(notes))


# 5. generic ideal membership over Q, <= 5 min per alpha


def test_criterion_5_generic_membership(capsys):
    notes, ok = [], True
    for alpha in (2, 3):
        member, t1 = _timed(generic_membership_check, 2, alpha, 2 * alpha - 1, char=0, expect="member")
        control, t2 = _timed(generic_membership_check, 2, alpha, 2 * alpha - 2, char=0, expect="nonmember")
        ok &= member.status == PASS and control.status == PASS and t1 + t2 <= 300
        ok &= all(member.metrics["X_alpha_members"].values())
        ok &= all(member.metrics["x_power_members"].values())
        ok &= not any(control.metrics["x_power_members"].values())
        notes.append(f"alpha={alpha}: X^{alpha}, x^{2 * alpha - 1} in ideal, x^{2 * alpha - 2} not ({t1 + t2:.1f}s)")
    _verdict(capsys, 5, ok, "; ".join(notes))


# 6. property suites, >= 500 seed-fixed cases each

PROPERTY_SUITES = [
    "test_matrix.py::test_trace_of_commutator_vanishes",
    "test_matrix.py::test_cayley_hamilton_all_ring_kinds",
    "test_matrix.py::test_charpoly_matches_leibniz",
    "test_equations.py::test_recurrence_for_constructed_pairs",
    "test_spectral.py::test_st_certificates_re_verify",
    "test_equations.py::test_jacobson_identity_on_all_enumerated_solutions",
    "test_equations.py::test_shift_invariance_square",
    "test_equations.py::test_shift_invariance_genbinom",
]


def test_criterion_6_property_suites(capsys):
    ids = [str(HERE / s) for s in PROPERTY_SUITES]
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", "--hypothesis-show-statistics", *ids],
        capture_output=True,
        text=True,
        cwd=HERE.parent,
    )
    passed = f"{len(ids)} passed" in proc.stdout
    # every hypothesis-driven suite must have run at least 500 passing examples
    counts = [int(tok) for tok in _passing_counts(proc.stdout)]
    ok = proc.returncode == 0 and passed and len(counts) == len(ids) - 1 and min(counts) >= 500
    _verdict(capsys, 6, ok, f"{len(ids)} suites green, fewest examples {min(counts) if counts else 0}")


def _passing_counts(text: str):
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("- ") and "passing examples" in line:
            yield line.split()[1]


# 7. determinism of the quick profile


def test_criterion_7_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    start = time.perf_counter()
    ca = cli_main(["verify", "--all", "--profile", "quick", "--seed", "2024", "--out", str(a)])
    cb = cli_main(["verify", "--all", "--profile", "quick", "--seed", "2024", "--out", str(b), "--workers", "2"])
    secs = time.perf_counter() - start
    same = a.read_bytes() == b.read_bytes()
    ok = same and ca == cb == 0 and secs < 600
    _verdict(capsys, 7, ok, f"byte-identical={same}, exit {ca}/{cb}, {secs:.0f}s for both runs")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-s", "-p", "no:cacheprovider"]))
