"""Run-configuration validation: defaults, JSON-pointer error messages, and
lazy context construction."""

from fractions import Fraction

import pytest

from padharm.config import DEFAULTS, RunConfig
from padharm.errors import SchemaError


def test_empty_document_gets_defaults():
    cfg = RunConfig()
    assert cfg.p == DEFAULTS["p"]
    assert cfg.N == DEFAULTS["N"]
    assert cfg.delta_fraction == Fraction(2)
    assert cfg.measure == "unnormalized"
    assert cfg.seed == 0
    assert cfg.budgets == DEFAULTS["budgets"]


def test_unknown_top_level_key():
    with pytest.raises(SchemaError, match="/bogus"):
        RunConfig({"bogus": 1})


def test_p_validation_pointer():
    with pytest.raises(SchemaError, match="/p"):
        RunConfig({"p": 2})
    with pytest.raises(SchemaError, match="/p"):
        RunConfig({"p": "3"})
    with pytest.raises(SchemaError, match="/p"):
        RunConfig({"p": 7})  # exceeds budgets/max_p default


def test_delta_forms():
    assert RunConfig({"delta": 5}).delta_fraction == 5
    cfg = RunConfig({"delta": {"val": 1, "unit": 2}})
    assert cfg.delta_fraction == 6
    with pytest.raises(SchemaError, match="/delta/val"):
        RunConfig({"delta": {"val": 2}})
    with pytest.raises(SchemaError, match="/delta/unit"):
        RunConfig({"delta": {"unit": 0}})
    with pytest.raises(SchemaError, match="/delta"):
        RunConfig({"delta": "two"})


def test_character_specs():
    cfg = RunConfig({"eta": {"r_pi": "1/2", "k": 0}})
    assert cfg._eta_spec == {"r_pi": Fraction(1, 2), "k": 0}
    with pytest.raises(SchemaError, match="/eta/kind"):
        RunConfig({"eta": {"kind": "nonsense"}})
    with pytest.raises(SchemaError, match="/eta/r_pi"):
        RunConfig({"eta": {"kind": "extension", "r_pi": "1/2"}})
    with pytest.raises(SchemaError, match="/eta_prime/r_pi"):
        RunConfig({"eta_prime": {"r_pi": "x"}})


def test_budget_validation():
    cfg = RunConfig({"budgets": {"max_cosets": 10}})
    assert cfg.budgets["max_cosets"] == 10
    assert cfg.budgets["max_n"] == DEFAULTS["budgets"]["max_n"]
    with pytest.raises(SchemaError, match="/budgets/nope"):
        RunConfig({"budgets": {"nope": 1}})
    with pytest.raises(SchemaError, match="/budgets/max_n"):
        RunConfig({"budgets": {"max_n": 0}})


def test_measure_and_seed():
    assert RunConfig({"measure": "norm"}).measure == "normalized"
    assert RunConfig({"measure": "unnorm"}).measure == "unnormalized"
    with pytest.raises(SchemaError, match="/measure"):
        RunConfig({"measure": "tamagawa"})
    with pytest.raises(SchemaError, match="/seed"):
        RunConfig({"seed": -1})
    with pytest.raises(SchemaError, match="/seed"):
        RunConfig({"seed": 2**64})


def test_rejected_document_builds_nothing():
    # validation happens before any context is constructed
    with pytest.raises(SchemaError):
        RunConfig({"p": 3, "N": 0, "delta": 2})


def test_lazy_contexts():
    cfg = RunConfig({"p": 5, "N": 4, "delta": 2})
    F = cfg.field()
    assert F.p == 5 and cfg.field() is F
    ext = cfg.ext()
    assert cfg.ext() is ext
    psi = cfg.psi()
    assert psi(Fraction(1)).as_rational() == 1
    eta = cfg.eta()
    assert eta(Fraction(5)).as_rational() == -1  # inert: eta(pi) = -1
    cfg.eta_prime()  # constructible
    cfg.check_rank(3)
    with pytest.raises(SchemaError, match="/n"):
        cfg.check_rank(4)
