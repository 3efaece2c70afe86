import json
import os
from pathlib import Path

import pytest

from zsinv.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def strip_timings(doc):
    if isinstance(doc, dict):
        return {k: strip_timings(v) for k, v in doc.items() if k not in ("elapsed_ms",)}
    if isinstance(doc, list):
        return [strip_timings(v) for v in doc]
    return doc


CASES = {
    "davenport_c3x3": ["davenport", "--group", "3,3"],
    "davenport_k_c3x3_k2": ["davenport-k", "--group", "3,3", "-k", "2"],
    "factor_c3x3": ["factor", "--group", "3,3", "--seq", "(1,0)^3 (0,1)^3 (1,1)^2"],
    "lemma_zsf_5": ["lemma", "zsf", "-p", "5"],
    "noether_h3": ["noether", "--module", "p=3;V=[1:1]", "--dmax", "11"],
    "hilbert_top_h3": ["hilbert-top", "--module", "p=3;V=[1:1]", "--dmax", "10"],
    "verify_davenport": ["verify", "--filter", "davenport.*", "--no-timings"],
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(capsys, name):
    code, doc = run(capsys, *CASES[name])
    assert code == 0
    doc = strip_timings(doc)
    path = GOLDEN / f"{name}.json"
    if os.environ.get("ZSINV_UPDATE_GOLDEN"):
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    assert doc == json.loads(path.read_text())


def test_noether_output_shape(capsys):
    code, doc = run(capsys, "noether", "--abelian", "3,3", "--dmax", "5")
    assert code == 0
    assert set(doc) >= {"module", "degrees", "beta", "certified", "elapsed_ms"}
    assert doc["beta"] == 5 and doc["certified"]
    assert doc["degrees"][-1] == {"d": 5, "dim_inv": 88, "dim_products": 64, "gap": 24}


def test_noether_k(capsys):
    code, doc = run(capsys, "noether-k", "-k", "2", "--abelian", "3", "--dmax", "6")
    assert code == 0 and doc["beta_k"] == 6 and doc["certified"]


def test_lemmas(capsys):
    code, doc = run(capsys, "lemma", "cd", "--group", "7", "--seq", "3^10")
    assert code == 0 and doc["result"] == {"sigma_size": 7, "bound": 7}
    code, doc = run(capsys, "lemma", "eta", "--group", "3,3", "--seq", "(1,0)^7")
    assert code == 0 and doc["witness"] == "(1,0)^3"
    code, doc = run(capsys, "lemma", "nullak", "--group", "3", "--seq", "0^4 1^3 2")
    assert code == 0 and doc["result"]["length"] >= 5
    import random
    from zsinv.suite import random_separ_instance

    S, T = random_separ_instance(random.Random(1))
    code, doc = run(capsys, "lemma", "separ", "--group", "5,5", "--seq", str(S), "--T", str(T) if len(T) else "[]")
    assert code == 0 and doc["result"]["length"] == 4 and doc["result"]["case"] in ("p", "2p")
    code, doc = run(capsys, "lemma", "hk", "--group", "3,3", "--seq", "(1,0)^4 (0,1)^4", "-k", "2")
    assert code == 0 and doc["result"]["length"] == 2


def test_check_subcommand(capsys):
    code, doc = run(capsys, "check", "polar")
    assert code == 0
    assert [c["id"] for c in doc["checks"]] == ["polar.identity", "property.polar"]


def test_errors_exit_nonzero(capsys):
    code, doc = run(capsys, "verify", "--filter", "nothing.here")
    assert code == 2 and "unknown check id" in doc["error"]
    code, doc = run(capsys, "davenport", "--group", "3,x")
    assert code == 2 and "position 2" in doc["error"]
    code, doc = run(capsys, "lemma", "cd", "--group", "7", "--seq", "0 1")
    assert code == 2 and "PreconditionError" in doc["error"]
    code, doc = run(capsys, "davenport", "--group", "3,3,3,3")
    assert code == 2 and "81" in doc["error"]


def test_failing_check_sets_exit_status(capsys, monkeypatch):
    from zsinv import suite

    monkeypatch.setitem(suite.CHECKS, "zz.wrong", suite.Check("zz.wrong", "mismatch", lambda rng: (1, 2, False)))
    code, doc = run(capsys, "verify", "--filter", "zz.*")
    assert code == 1 and doc["summary"]["failed"] == 1
