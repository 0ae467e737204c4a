from palsums import prover
from palsums.nwa import word_str


def test_base3_threshold_is_tight():
    assert prover.prove_base3().holds
    r = prover.prove_base3(min_length=8)
    assert not r.holds and r.confirmed


def test_base3_without_case_d():
    r = prover.prove_base3("abc")
    assert not r.holds and r.confirmed
    assert r.counterexample_value == 6573


def test_base3_report_lines():
    r = prover.prove_base3()
    lines = r.lines()
    assert lines[:2] == ["theorem=base3", "holds=true"]
    assert "size.minimized=22" in lines
    assert "check.disagreements=0" in lines
    assert all("elapsed" not in line for line in lines)


def test_genpal():
    r = prover.prove_genpal()
    assert r.holds
    assert r.machine_sizes["gpalChecker"] == 39
    assert r.checks["sweep_4096_at_most_3"]


def test_genpal_threshold():
    r = prover.prove_genpal(min_half=2)
    assert not r.holds and r.confirmed
    assert word_str(r.counterexample) == "abef"


def test_corollary():
    r = prover.prove_corollary_main(2 ** 12)
    assert r.holds
    assert r.checks["max_min_summands"] == 4
    assert r.checks["first_needing_max"] == 176


def test_negative_control_list():
    names = [name for name, _ in prover.negative_controls()]
    assert len(names) == 20 and len(set(names)) == 20
