from contsem.cli import main
from contsem.golden import default_corpus_dir


def test_derive_basic(capsys):
    code = main(["derive", "((Alice (loves Bob)))", "--order", "0", "--goal", "t"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines() == ["Love Bob Alice : t", "1 reading"]


def test_derive_no_reading_exits_one(capsys):
    code = main(["derive", "(what (what (we (bought _))))"])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.out.strip() == "no derivation"
    assert "(we (bought _))" in captured.err


def test_derive_formats(capsys):
    main(["derive", "(someone (loves everyone))", "--order", "1",
          "--goal", "t", "--format", "terms"])
    out = capsys.readouterr().out.splitlines()
    assert out == ["exists v0. forall v1. Love v1 v0",
                   "forall v0. exists v1. Love v0 v1"]
    main(["derive", "(someone (loves everyone))", "--order", "1",
          "--goal", "t", "--format", "types"])
    assert capsys.readouterr().out.splitlines() == ["t", "t"]


def test_derive_trees(capsys):
    code = main(["derive", "(Alice (loves everyone))", "--order", "1",
                 "--goal", "t", "--trees"])
    out = capsys.readouterr().out
    assert code == 0
    assert "lex:everyone" in out
    assert "[∨]" in out


def test_derive_prefer_ltr(capsys):
    main(["derive", "(someone (loves everyone))", "--order", "1",
          "--goal", "t", "--prefer-ltr", "--format", "terms"])
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("exists")


def test_derive_all_bracketings(capsys):
    code = main(["derive", "Alice loves Bob", "--all-bracketings",
                 "--order", "0", "--goal", "t", "--format", "terms"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert "Love Bob Alice" in out


def test_rules_dump(capsys):
    code = main(["rules", "--order", "2"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "order 2: 4 unary, 7 binary"
    assert len(lines) == 12
    assert any(line.startswith("lowerL\t∨*") for line in lines)


def test_rules_dump_action_word(capsys):
    assert main(["rules", "dump", "--order", "1"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "order 1: 2 unary, 3 binary"


def test_lexicon_dump(capsys):
    code = main(["lexicon"])
    out = capsys.readouterr().out
    assert code == 0
    assert "everyone : e{t|t} = \\c. forall x. c x" in out
    assert "_ : e{g|e #> g} = \\c. c" in out


def test_lexicon_file_and_extend(tmp_path, capsys):
    path = tmp_path / "more.lex"
    path.write_text("const Carol : e\ncarol : e = Carol\n", encoding="utf-8")
    code = main(["derive", "(carol (loves Bob))", "--order", "0", "--goal", "t",
                 "--lexicon", str(path), "--extend"])
    out = capsys.readouterr().out
    assert code == 0
    assert "Love Bob Carol : t" in out


def test_bad_lexicon_file_exits_two(tmp_path, capsys):
    path = tmp_path / "bad.lex"
    path.write_text("bad : e = \\x. x\n", encoding="utf-8")
    code = main(["derive", "(bad bad)", "--lexicon", str(path)])
    err = capsys.readouterr().err
    assert code == 2
    assert "error:" in err


def test_usage_error_exits_two(capsys):
    assert main(["derive"]) == 2
    assert main(["nonsense"]) == 2
    capsys.readouterr()


def test_bad_goal_exits_two(capsys):
    assert main(["derive", "(Alice (loves Bob))", "--goal", "t ->"]) == 2
    capsys.readouterr()


def test_order_too_large_exits_two(capsys):
    assert main(["derive", "(Alice (loves Bob))", "--order", "9"]) == 2
    capsys.readouterr()


def test_corpus_runs_packaged_cases(capsys):
    code = main(["corpus"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1].endswith("passed")


def test_corpus_env_override(tmp_path, capsys, monkeypatch):
    case = tmp_path / "case.txt"
    case.write_text(
        "input: (Alice (loves Bob))\norder: 0\ngoal: t\n--- readings\n"
        "Love Bob Alice : t\n",
        encoding="utf-8",
    )
    monkeypatch.setenv("CONTSEM_CORPUS", str(tmp_path))
    assert default_corpus_dir() == tmp_path
    code = main(["corpus"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS case" in out


def test_corpus_reports_failures(tmp_path, capsys):
    case = tmp_path / "wrong.txt"
    case.write_text(
        "input: (Alice (loves Bob))\norder: 0\ngoal: t\n--- readings\n"
        "Love Alice Bob : t\n",
        encoding="utf-8",
    )
    code = main(["corpus", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL wrong" in out
    assert "expected:" in out


def test_output_is_byte_deterministic(capsys):
    main(["derive", "(someone (loves everyone))", "--order", "2", "--goal", "t"])
    first = capsys.readouterr().out
    main(["derive", "(someone (loves everyone))", "--order", "2", "--goal", "t"])
    second = capsys.readouterr().out
    assert first == second
