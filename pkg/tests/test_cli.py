import json

import pytest

from whsg.cli import main, tokenize
from whsg.errors import OperandError
from whsg.fixtures import rees, z2
from whsg.oracle import dumps_table, z2_table
from whsg.structure import dumps_structure, load_structure


@pytest.fixture(scope="module")
def fixture_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("whs")
    (root / "rees.whs").write_text(dumps_structure(rees()))
    (root / "z2.whs").write_text(dumps_structure(z2()))
    (root / "z2_table.json").write_text(dumps_table(z2_table()))
    import whsg.fixtures as fx

    (root / "null3.whs").write_text(dumps_structure(fx.null3()))
    (root / "free2.whs").write_text(dumps_structure(fx.free2()))
    (root / "mirror.json").write_text(json.dumps({
        "alphabet": ["a", "b"],
        "grammar": {
            "nonterminals": ["P"],
            "start": "P",
            "productions": [["P", ["a", "P", "a"]], ["P", ["b", "P", "b"]],
                            ["P", ["a", "#2", "a"]], ["P", ["b", "#2", "b"]]],
        },
    }))
    (root / "skewed.json").write_text(json.dumps({
        "alphabet": ["a", "b"],
        "grammar": {
            "nonterminals": ["P"],
            "start": "P",
            "productions": [["P", ["a", "#2", "b"]]],
        },
    }))
    return root


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    report = json.loads(capsys.readouterr().out)
    assert set(report) == {"answer", "witnesses", "reason", "elapsed_ms"}
    return code, report


def test_tokenize():
    assert tokenize("bc", {"a", "b", "c"}) == ("b", "c")
    assert tokenize("x11,x22", {"x11", "x22"}) == ("x11", "x22")
    assert tokenize("x11x22", {"x11", "x22"}) == ("x11", "x22")
    with pytest.raises(OperandError):
        tokenize("bz", {"a", "b"})


def test_is_monoid_report(fixture_dir, capsys):
    code, report = run(capsys, "is-monoid", fixture_dir / "rees.whs")
    assert code == 0
    assert report["answer"] == "yes"
    assert report["witnesses"]["identity"] == ["i"]


def test_word_eq_report(fixture_dir, capsys):
    code, report = run(capsys, "word-eq", fixture_dir / "null3.whs", "bc", "cb")
    assert code == 0 and report["answer"] == "true"
    code, report = run(capsys, "word-eq", fixture_dir / "null3.whs", "b", "c")
    assert code == 0 and report["answer"] == "false"


def test_is_free_report(fixture_dir, capsys):
    code, report = run(capsys, "is-free", fixture_dir / "free2.whs")
    assert code == 0 and report["answer"] == "yes"


def test_multiply_and_represent(fixture_dir, capsys):
    code, report = run(capsys, "multiply", fixture_dir / "z2.whs", "g", "g")
    assert code == 0 and report["witnesses"]["result"] == ["e"]
    code, report = run(capsys, "represent", fixture_dir / "z2.whs", "ggg")
    assert code == 0 and report["witnesses"]["result"] == ["g"]


def test_green_flag(fixture_dir, capsys):
    code, report = run(capsys, "green", fixture_dir / "rees.whs", "a", "b",
                       "--rel", "R")
    assert code == 0 and report["answer"] == "true"
    code, report = run(capsys, "green", fixture_dir / "rees.whs", "b", "c",
                       "--rel", "R")
    assert code == 0 and report["answer"] == "false"


def test_validate_and_normalize(fixture_dir, capsys):
    code, report = run(capsys, "validate", fixture_dir / "rees.whs",
                       "--depth", "4")
    assert code == 0 and report["answer"] == "yes"
    out = fixture_dir / "rees_norm.whs"
    code, report = run(capsys, "normalize", fixture_dir / "rees.whs",
                       "-o", out)
    assert code == 0 and report["answer"] == "yes"
    ns = load_structure(out)
    assert ns.in_reps(("e",))


def test_from_table(fixture_dir, capsys):
    out = fixture_dir / "z2_made.whs"
    code, report = run(capsys, "from-table", fixture_dir / "z2_table.json",
                       "-o", out)
    assert code == 0
    s = load_structure(out)
    assert s.alphabet == ("e", "g")


def test_defect_check(fixture_dir, capsys):
    code, report = run(capsys, "defect-check", fixture_dir / "mirror.json")
    assert code == 0 and report["answer"] == "no"
    code, report = run(capsys, "defect-check", fixture_dir / "skewed.json")
    assert code == 0 and report["answer"] == "yes"
    assert report["witnesses"]["defect"] == ["a", "#2", "b"]


def test_input_error_exit_code(fixture_dir, capsys):
    bad = fixture_dir / "broken.whs"
    bad.write_text("{not json")
    code, report = run(capsys, "is-monoid", bad)
    assert code == 1 and report["answer"] == "error"
    code, report = run(capsys, "word-eq", fixture_dir / "null3.whs", "bz", "c")
    assert code == 1 and report["answer"] == "error"


def test_cap_exceeded_exit_code(fixture_dir, capsys):
    code, report = run(capsys, "is-completely-simple", fixture_dir / "z2.whs",
                       "--max-species", "1")
    assert code == 2 and report["answer"] == "error"


def test_reports_are_deterministic(fixture_dir, capsys):
    _, first = run(capsys, "is-monoid", fixture_dir / "rees.whs")
    _, second = run(capsys, "is-monoid", fixture_dir / "rees.whs")
    first.pop("elapsed_ms")
    second.pop("elapsed_ms")
    assert first == second


def test_structure_flag_replaces_positional(fixture_dir, capsys):
    code, report = run(capsys, "is-group", "--structure", fixture_dir / "z2.whs")
    assert code == 0 and report["answer"] == "yes"
    code, report = run(capsys, "is-group")
    assert code == 1 and "no structure file" in report["reason"]


def test_multicharacter_symbols_tokenize_end_to_end(fixture_dir, capsys):
    from whsg.fixtures import rb22

    (fixture_dir / "rb22.whs").write_text(dumps_structure(rb22()))
    code, report = run(capsys, "word-eq", fixture_dir / "rb22.whs",
                       "x11x22x22", "x11x22")
    assert code == 0 and report["answer"] == "true"
    code, report = run(capsys, "multiply", fixture_dir / "rb22.whs",
                       "x22", "x11")
    assert code == 0 and report["witnesses"]["result"] == ["x22", "x11"]
