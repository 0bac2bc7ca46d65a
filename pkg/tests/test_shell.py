import io
import subprocess
import sys
from decimal import Decimal

from conftest import make_session, ora_code, run_sql

from handysql.executor import ResultSet
from handysql.shell import (PROMPT, continuation_prompt, main,
                            read_statement, render_result_set,
                            substitute_variables)


def scripted_session(*lines):
    session = make_session()
    session.instream = io.StringIO("".join(line + "\n" for line in lines))
    return session


def test_prompts():
    assert PROMPT == "SQL> "
    assert continuation_prompt(2) == "  2  "
    assert continuation_prompt(3) == "  3  "
    assert continuation_prompt(10) == " 10  "


def test_read_statement_joins_continuations():
    session = scripted_session("SELECT *", "FROM DUAL;")
    assert read_statement(session) == "SELECT *\nFROM DUAL"


def test_read_statement_slash_terminates_buffer():
    session = scripted_session("SELECT * FROM DUAL", "/")
    assert read_statement(session) == "SELECT * FROM DUAL"


def test_leading_blank_lines_and_bare_slash_are_skipped():
    session = scripted_session("", "/", "", "SELECT 1 FROM DUAL;")
    assert read_statement(session) == "SELECT 1 FROM DUAL"


def test_exit_quit_and_eof_end_session():
    for closer in ("exit", "QUIT", "Exit;", "quit ;"):
        session = scripted_session(closer)
        assert read_statement(session) is None
    assert read_statement(scripted_session()) is None


def test_exit_only_recognized_at_statement_start():
    session = scripted_session("SELECT 'exit'", "FROM DUAL;")
    assert read_statement(session) == "SELECT 'exit'\nFROM DUAL"


def test_interactive_substitution_prompts_every_occurrence():
    session = scripted_session("first", "second")
    resolved, lines = substitute_variables(
        session, "SELECT '&V', '&V' FROM DUAL")
    assert resolved == "SELECT 'first', 'second' FROM DUAL"
    assert lines == []
    assert session.subst_cache == {"V": "second"}
    assert session.out.getvalue() == ""


def test_script_bindings_consumed_first_match_case_insensitive():
    session = make_session()
    resolved, lines = substitute_variables(
        session, "SELECT '&name', '&NAME' FROM DUAL",
        bindings=[("NAME", "a"), ("name", "b"), ("other", "c")])
    assert resolved == "SELECT 'a', 'b' FROM DUAL"
    assert lines == ["Enter value for name: a", "Enter value for name: b"]


def test_missing_binding_yields_diagnostic_block():
    session = make_session()
    block = run_sql(session, "SELECT '&WHO' FROM DUAL", bindings=[])
    assert block[-2] == 'no binding for substitution variable "WHO"'
    assert session.error_count == 1


def test_feedback_block_shape(session):
    block = run_sql(session, "CREATE TABLE T(A NUMBER)")
    assert block == ["", "Table created.", ""]


def test_error_block_shape(session):
    block = run_sql(session, "SELECT * FROM NOWHERE")
    assert block[0] == "SELECT * FROM NOWHERE"
    assert block[-1] == ""
    assert ora_code(block) == 942


def test_listing_block_has_no_leading_blank(session):
    run_sql(session, "CREATE TABLE T(A NUMBER)")
    block = run_sql(session, "DESC T")
    assert block[0].startswith("Name")
    assert block[-1] == ""


def test_empty_result_block(session):
    run_sql(session, "CREATE TABLE T(A NUMBER)")
    assert run_sql(session, "SELECT * FROM T") == ["", "no rows selected"]


def test_render_result_set_alignment():
    rs = ResultSet(["ID", "NAME"],
                   [[Decimal(7), "A"], [Decimal(123), None]])
    assert render_result_set(rs) == [
        "ID  NAME",
        "--- ----",
        "  7 A",
        "123",
        "",
    ]


def test_render_widens_rule_to_value_width():
    rs = ResultSet(["N"], [[Decimal(98765)]])
    assert render_result_set(rs) == ["N", "-----", "98765", ""]


def test_date_cells_render_dd_mon_yy(classroom):
    block = run_sql(classroom,
                    "SELECT DOB FROM STUDENTS WHERE S_ROLL = 1")
    assert block[3] == "29-AUG-90"


def run_cli(args, stdin_text=""):
    proc = subprocess.run(
        [sys.executable, "-m", "handysql.shell", *args],
        input=stdin_text, capture_output=True, text=True)
    return proc


def write_script(tmp_path, text):
    path = tmp_path / "demo.sql"
    path.write_text(text)
    return str(path)


SCRIPT = """CREATE TABLE T(A NUMBER(3));
INSERT INTO T VALUES(5);
SELECT A
FROM T;
"""


def test_script_and_pipe_transcripts_match(tmp_path):
    script = write_script(tmp_path, SCRIPT)
    from_script = run_cli(["--script", script])
    from_pipe = run_cli([], stdin_text=SCRIPT)
    assert from_script.returncode == 0
    assert from_script.stdout == from_pipe.stdout
    assert "1 row created." in from_script.stdout
    assert from_script.stdout.endswith(PROMPT + "\n")


def test_script_statements_echo_with_prompts(tmp_path):
    script = write_script(tmp_path, "SELECT A\nFROM T;\n")
    out = run_cli(["--script", script]).stdout
    assert "SQL> SELECT A" in out
    assert "  2  FROM T;" in out


def test_bind_directives_feed_substitution(tmp_path):
    text = ("CREATE TABLE T(A NUMBER(3));\n"
            "-- bind v=42\n"
            "INSERT INTO T VALUES(&V);\n"
            "SELECT A FROM T;\n")
    script = write_script(tmp_path, text)
    proc = run_cli(["--script", script])
    assert "Enter value for v: 42" in proc.stdout
    assert "-- bind" not in proc.stdout
    assert "42" in proc.stdout


def test_strict_exit_code(tmp_path):
    script = write_script(tmp_path, "SELECT * FROM NOWHERE;\n")
    assert run_cli(["--script", script]).returncode == 0
    assert run_cli(["--strict", "--script", script]).returncode == 1


def test_missing_script_is_usage_error(tmp_path):
    proc = run_cli(["--script", str(tmp_path / "absent.sql")])
    assert proc.returncode == 2


def test_corrupt_db_is_usage_error(tmp_path):
    bad = tmp_path / "bad.handydb"
    bad.write_text("HANDYDB 9\n")
    proc = run_cli(["--db", str(bad)], stdin_text="exit\n")
    assert proc.returncode == 2


def test_db_round_trip_through_cli(tmp_path):
    db = tmp_path / "state.handydb"
    first = run_cli(["--db", str(db)],
                    stdin_text="CREATE TABLE T(A NUMBER(3));\n"
                               "INSERT INTO T VALUES(7);\nexit\n")
    assert first.returncode == 0
    second = run_cli(["--db", str(db)], stdin_text="SELECT A FROM T;\n")
    assert "A\n-\n7\n" in second.stdout


def test_quiet_suppresses_prompts(tmp_path):
    proc = run_cli(["--quiet"], stdin_text="SELECT * FROM DUAL;\n")
    assert "SQL>" not in proc.stdout
    assert "DUMMY" in proc.stdout


def test_main_runs_repl_on_patched_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("exit\n"))
    assert main(["--quiet"]) == 0
    assert capsys.readouterr().out == ""
