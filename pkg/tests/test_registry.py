from __future__ import annotations

import json
import re

import pytest

from commulab import registry
from commulab.matrix import Matrix
from commulab.registry import REGISTRY, Entry, profile_ids, run_check
from commulab.report import FAIL, INCONCLUSIVE, PASS, to_json
from commulab.rings import GF


def test_catalogue_is_complete():
    ids = [f"T{i}" for i in range(1, 15)] + [f"C{i}" for i in range(1, 6)] + [f"D{i}" for i in range(1, 7)]
    assert list(REGISTRY) == ids
    for e in REGISTRY.values():
        assert e.anchor and e.title
        assert not re.search(r"(Prop|Thm|Theorem|Lemma|Remark|Eq \(|§)", e.anchor)


def test_profiles():
    quick, full, ext = profile_ids("quick"), profile_ids("full"), profile_ids("extended")
    assert "D6" not in quick and "T9" not in quick
    assert set(full) - set(quick) == {"T9"}
    assert set(ext) - set(full) == {"D6"}
    with pytest.raises(ValueError):
        profile_ids("huge")


def test_unknown_id():
    with pytest.raises(KeyError):
        run_check("T99")


@pytest.mark.parametrize("cid", ["C1", "C2", "C3", "C4", "C5", "D3", "D4", "D5"])
def test_fast_entries_pass(cid):
    rep = run_check(cid)
    assert rep.status == PASS, rep.detail
    assert rep.metrics["assertions"] >= 1
    assert rep.seed == registry.default_seed(cid)


def test_c4_metrics():
    rep = run_check("C4")
    assert rep.metrics["nilindex"] == 3 and rep.metrics["n"] == 2


def test_d1_single_case():
    rep = run_check("D1", {"n": 3, "alpha": 2})
    assert rep.status == PASS and rep.metrics["Y(3,2)"]["dimension"] == 2


def test_t13_census_over_z9():
    rep = run_check("T13", {"ring": "Zmod:9"})
    assert rep.status == PASS
    census = rep.metrics["Zmod:9 diag(0,1) alpha=2"]
    assert census == {"candidates": 6561, "solutions": 9, "diagonal": 9, "mu_alpha_zero": 9}


def test_hypothesis_and_budget_give_inconclusive():
    assert run_check("T1", {"ring": "GF:2"}).status == INCONCLUSIVE
    assert run_check("T13", {"ring": "Zmod:8"}).status == INCONCLUSIVE
    rep = run_check("T5", {"budget": 100})
    assert rep.status == INCONCLUSIVE and rep.detail.startswith("budget")


def test_pass_requires_an_executed_assertion(monkeypatch):
    monkeypatch.setitem(REGISTRY, "X0", Entry("X0", "empty", "nothing", lambda ctx: {}))
    rep = run_check("X0")
    assert rep.status == INCONCLUSIVE and rep.metrics["assertions"] == 0


def test_fail_carries_certificate(monkeypatch):
    def bogus(ctx):
        M = Matrix.identity(2, GF(3))
        ctx.check(True, "fine")
        ctx.check(M.is_zero(), "identity is not zero", M=M)
        return {}

    monkeypatch.setitem(REGISTRY, "X1", Entry("X1", "bogus", "identity vanishes", bogus))
    rep = run_check("X1")
    assert rep.status == FAIL and "identity is not zero" in rep.detail
    art = json.loads(to_json([rep]))["reports"][0]["artifacts"]
    assert art["M"]["entries"] == [["1", "0"], ["0", "1"]]


def test_seeded_checks_are_reproducible():
    a = to_json([run_check("T3")])
    b = to_json([run_check("T3")])
    c = to_json([run_check("T3", {"seed": 12345})])
    assert a == b
    assert json.loads(c)["reports"][0]["seed"] == 12345
