import pytest

from wavefront.algebra import psc, resultant
from wavefront.algebra.modular import (
    STRATEGIES, Budget, BudgetExceeded, det_modular, psc_modular, resultant_modular,
)
from wavefront.algebra.resultant import sylvester
from wavefront import factory
from wavefront.maps import parse_type

from conftest import modular_corpus, upoly

CORPUS = modular_corpus()


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_corpus_matches_direct(strategy):
    assert len(CORPUS) == 50
    for a, b in CORPUS:
        assert resultant_modular(a, b, strategy) == resultant(a, b)


def test_corpus_psc_matches_direct():
    for a, b in CORPUS[:20]:
        if min(a.declared_degree, b.declared_degree) >= 1:
            assert psc_modular(a, b, 1) == psc(a, b, 1)


def test_d_type_strategies_agree():
    cs = factory.char_system(parse_type("D5+"))
    direct = resultant(cs.A, cs.B)
    for s in STRATEGIES:
        assert resultant_modular(cs.A, cs.B, s) == direct


def test_workers_give_same_answer():
    cs = factory.char_system(parse_type("A5"))
    assert resultant_modular(cs.A, cs.B, "hybrid", workers=2) == resultant(cs.A, cs.B)


def test_unknown_strategy():
    a, b = upoly("v^2 + x"), upoly("v + y")
    with pytest.raises(ValueError):
        det_modular(sylvester(a, b), "magic")


def test_budget_exceeded():
    cs = factory.char_system(parse_type("D7+"))
    with pytest.raises(BudgetExceeded):
        resultant_modular(cs.A, cs.B, "hybrid", budget=Budget(0.0))


def test_checkpoint_resume(tmp_path):
    cs = factory.char_system(parse_type("D5-"))
    path = str(tmp_path / "ck.jsonl")
    first = resultant_modular(cs.A, cs.B, "hybrid", checkpoint=path)
    assert (tmp_path / "ck.jsonl").exists()
    again = resultant_modular(cs.A, cs.B, "hybrid", checkpoint=path)
    assert first == again == resultant(cs.A, cs.B)
