import json
from pathlib import Path

import pytest

import reconfig_calc as rc

CORPUS = Path(__file__).resolve().parents[2] / "corpus"
SENSOR_CCS = "S = v!.S + e!.S; R = v?.R + e?.{ S | R / S }; main = S | R"


def load(name, calculus):
    return rc.parse((CORPUS / f"{name}.proc").read_text(), calculus)


def test_parse_and_print():
    p = rc.parse(SENSOR_CCS)
    assert p.calculus == "ccsdp"
    assert str(p.main) == "S | R"
    assert str(p.definitions["S"]) == "v!.S + e!.S"
    again = rc.parse(str(p))
    assert again.main == p.main
    assert rc.parse_term("a!", "webpi").kind == "output-atom"


def test_parse_error_is_raised():
    with pytest.raises(rc.ParseError, match="1:"):
        rc.parse("main = a?.")
    with pytest.raises(rc.ReconfigError):
        rc.parse("main = wu(0 ; 0 ; x)", "ccsdp")


def test_alpha_and_normalize():
    a = rc.parse_term("new a in a?.0")
    b = rc.parse_term("new b in b?.0")
    assert rc.alpha_equivalent(a, b)
    assert rc.normalize(rc.parse_term("0 | b?.0 | a!.0")) == rc.parse_term("b?.0 | a!.0")


def test_ccsdp_transitions():
    p = rc.parse(SENSOR_CCS)
    labels = {label for label, _ in rc.transitions(p.main, p)}
    assert labels == {"in v", "in e", "out v", "out e", "tau"}
    succ = [str(t) for t in rc.reduce_step(p.main, p)]
    assert succ == ["R | S", "S | { R | S / S }"]
    fraction = rc.reduce_step(p.main, p)[1]
    rcf = [label for label, _ in rc.transitions(fraction, p) if label.startswith("rcf")]
    assert len(rcf) == 1


def test_webpi_reductions():
    p = load("sensor_webpi", "webpi")
    steps = rc.wp_step(p.main, p)
    assert steps
    assert all(rule in {"COMM", "TRANSPARENT-COMM", "BODY", "TRIGGER"} for rule, _, _ in steps)
    assert [s for _, _, s in steps] == rc.wp_reduce(p.main, p)


def test_bisim_terms():
    p = rc.parse("A = a?.A; B = a?.a?.B; main = 0")
    A, B = rc.parse_term("A"), rc.parse_term("B")
    assert rc.bisim_terms(A, B, p)
    assert not rc.bisim_terms(A, rc.parse_term("a?.0"), p)
    with pytest.raises(rc.StateBoundExceeded):
        chain = rc.parse("G = a?.(G | a!.0); main = G")
        rc.bisim_terms(chain.main, chain.main, chain, bound=3)


def test_explore_and_check():
    pair = load("deadlock_pair", "ccsdp")
    space = rc.explore(pair)
    assert len(space.deadlocks()) == 1
    assert space.termination()[0] == "Terminates"

    sensor = rc.explore(rc.parse(SENSOR_CCS), workers=2)
    assert not space.truncated
    assert sensor.deadlocks() == []
    verdict, witness = sensor.termination()
    assert verdict == "Diverges"
    assert witness[0] == witness[-1]
    assert sensor.to_dot().startswith("digraph")
    assert len(json.loads(sensor.to_json())["states"]) == len(sensor.states)


def test_trace_matches_golden():
    p = load("sensor_webpi", "webpi")
    got = json.loads(rc.trace(p, steps=5, seed=0))
    want = json.loads((CORPUS / "golden" / "webpi_normal.json").read_text())
    assert got == want
    assert rc.trace(p, steps=5, seed=0) == rc.trace(p, steps=5, seed=0)
