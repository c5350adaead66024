import pytest

import hptkit


def test_standard_example_kit():
    ex = hptkit.standard_example()
    assert hptkit.validate(ex["structure"])["passed"]
    kit = hptkit.perturb(ex["structure"], ex["perturbation"])
    assert kit["kind"] == "kit"
    assert kit["report"]["passed"]
    pi_del = {(e["from"], e["to"]): e["coeff"] for e in kit["pi_del"]}
    assert pi_del[("c", "a")] == "-2"
    assert hptkit.validate(kit)["passed"]


def test_errors():
    with pytest.raises(hptkit.ParseError):
        hptkit.validate('{"degrees": {"0": ["a"], "1": ["b"]}, "d": [{"from": "b", "to": "a", "coeff": "1/0"}]}')
    with pytest.raises(hptkit.ParseError):
        hptkit.validate("{")
    cone = {
        "kind": "pseudocontraction",
        "N": {"degrees": {"0": ["e0"], "1": ["e1"]}, "d": [{"from": "e1", "to": "e0", "coeff": 1}]},
        "tau": [{"from": "e0", "to": "e0", "coeff": 1}, {"from": "e1", "to": "e1", "coeff": 1}],
        "h": [{"from": "e0", "to": "e1", "coeff": 1}],
    }
    with pytest.raises(hptkit.NonNilpotentError):
        hptkit.perturb(cone, {"del": [{"from": "e1", "to": "e0", "coeff": 1}]})
    assert issubclass(hptkit.NonNilpotentError, hptkit.Error)


def test_enumerate_and_transfer():
    assert hptkit.enumerate_a0(1)["count"] == 2
    assert hptkit.enumerate_a0(3)["count"] == 10
    h = hptkit.transfer("H", 10)
    assert h["passed"] and h["valid_through"] == 10
    assert "nontermination" in hptkit.transfer("Ax", 4)


def test_verify():
    assert "structural" in hptkit.criterion_names()
    r = hptkit.verify("identities", order=4, instances=10)
    assert r["passed"] and r["criterion"] == 2
    assert hptkit.verify("a0", order=3)["passed"]
