import json
from pathlib import Path

import pytest

from lalg.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_check_valid_table(capsys):
    code, out, _ = run(capsys, "check", "table1")
    assert code == 0
    assert out.strip() == "L-algebra: valid"


def test_check_reports_axiom_five_witness(capsys):
    code, out, _ = run(capsys, "check", "table4")
    assert code == 1
    assert "axiom (5) fails at (a, b)" in out


@pytest.mark.parametrize("flag", [["--lenient"], ["--mode", "lenient"]])
def test_lenient_mode_is_stamped(capsys, flag):
    code, out, _ = run(capsys, "check", "table4", *flag)
    assert code == 0
    assert out.splitlines()[0] == "mode: lenient (axiom (5) not enforced)"


def test_lenient_stamp_in_json(capsys):
    _, out, _ = run(capsys, "check", "table4", "--lenient", "--format", "json")
    assert json.loads(out)["mode"] == "lenient"


def test_broken_json_is_structural(capsys):
    code, out, err = run(capsys, "check", DATA / "broken.json")
    assert code == 2
    assert not out
    assert err.startswith("lalg: StructuralError:") and "invalid JSON" in err


def test_missing_file_is_structural(capsys):
    code, _, err = run(capsys, "check", DATA / "nope.json")
    assert code == 2 and err.startswith("lalg:")


def test_corrupted_state_names_condition(capsys):
    code, out, _ = run(capsys, "partitions", DATA / "corrupted_state.json")
    assert code == 1
    assert "(ii)" in out


def test_partitions_csv(capsys):
    code, out, _ = run(capsys, "partitions", DATA / "luk3_state.json", "--format", "csv")
    rows = out.strip().splitlines()
    assert code == 0
    assert rows[0] == "blocks,measures"
    assert "h h,1/2 1/2" in rows
    assert len(rows) == 11


def test_partitions_distinct(capsys):
    _, out, _ = run(capsys, "partitions", DATA / "luk3_state.json", "--distinct", "--format", "csv")
    assert "h h,1/2 1/2" not in out.splitlines()


def test_entropy_and_conditioning(capsys):
    code, out, _ = run(capsys, "entropy", DATA / "luk3_hh.json", "--format", "json")
    assert code == 0
    assert json.loads(out)["entropy"] == 1.0
    _, out, _ = run(capsys, "entropy", DATA / "luk3_hh.json", "--given", DATA / "luk3_unit.json")
    assert "1.0 bits" in out
    _, out, _ = run(capsys, "entropy", DATA / "luk3_hh.json", "--given", '["h", "h"]')
    assert "exactly zero: True" in out


def test_entropy_in_nats(capsys):
    _, out, _ = run(capsys, "entropy", DATA / "luk3_hh.json", "--base", "e", "--format", "json")
    assert json.loads(out)["entropy"] == pytest.approx(0.6931471805599453)


def test_bad_base_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["entropy", str(DATA / "luk3_hh.json"), "--base", "10"])
    assert exc.value.code == 2


def test_dynamics_with_inline_partition(capsys):
    code, out, _ = run(capsys, "dynamics", DATA / "table2_system.json", "--xi", '["c"]', "--N", "4")
    assert code == 0
    assert "N = 4" in out and "subadditivity certificate: ok" in out


def test_operator_documents(capsys):
    code, out, _ = run(capsys, "operators", DATA / "table3_operator.json")
    assert code == 0
    assert "closure operator: yes" in out and "{1, b, c}" in out
    code, out, _ = run(capsys, "operators", DATA / "table3_not_closure.json")
    assert code == 1
    assert "closure operator: no" in out


def test_enumerate_counts(capsys):
    code, out, _ = run(capsys, "enumerate", "--order", "3", "--up-to-iso", "--format", "json")
    assert code == 0
    assert json.loads(out)["count"] == 5


def test_enumerate_respects_max_order(capsys):
    code, _, err = run(capsys, "enumerate", "--order", "5", "--max-order", "4")
    assert code == 2 and "CapacityError" in err


def test_out_file_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for dest in (a, b):
        assert run(capsys, "partitions", DATA / "luk3_state.json", "--format", "json", "--out", dest)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())


def test_empty_bundle_verifies_cleanly(capsys):
    code, out, _ = run(capsys, "verify", "--bundle", "empty", "--format", "json")
    assert code == 0
    assert json.loads(out)["claims"] == []
