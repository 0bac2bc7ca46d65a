from conftest import ora_code, run_sql

from handysql.catalog import SYS_NAME_SEED, Catalog, next_sys_name


def blocks(session, *statements, bindings=None):
    return [run_sql(session, text) for text in statements]


def test_create_then_describe_shows_normalized_types(session):
    create, desc = blocks(
        session,
        "CREATE TABLE STUDENTS(S_ROLL NUMBER(2), S_NAME VARCHAR(20), "
        "S_PHONE NUMBER(10), DOB DATE, S_MARKS INTEGER)",
        "DESC STUDENTS")
    assert create == ["", "Table created.", ""]
    assert desc == [
        "Name                           Null?    Type",
        "------------------------------ -------- --------------------",
        "S_ROLL                                  NUMBER(2)",
        "S_NAME                                  VARCHAR2(20)",
        "S_PHONE                                 NUMBER(10)",
        "DOB                                     DATE",
        "S_MARKS                                 NUMBER(38)",
        "",
    ]


def test_bare_number_and_scale_display(session):
    blocks(session, "CREATE TABLE T(A NUMBER, B NUMBER(10,4))")
    desc = run_sql(session, "DESC T")
    assert desc[2].endswith(" NUMBER")
    assert desc[3].endswith(" NUMBER(10,4)")


def test_describe_folds_table_name(session):
    blocks(session, "CREATE TABLE T(A NUMBER)")
    assert run_sql(session, "desc t") == run_sql(session, "DESC T")


def test_describe_unknown_table_is_4043_with_name(session):
    block = run_sql(session, "DESC NOWHERE")
    assert ora_code(block) == 4043
    assert "ORA-04043: object NOWHERE does not exist" in block


def test_duplicate_table_is_955(session):
    blocks(session, "CREATE TABLE T(A NUMBER)")
    assert ora_code(run_sql(session, "CREATE TABLE T(B NUMBER)")) == 955


def test_duplicate_column_in_create_is_957(session):
    assert ora_code(
        run_sql(session, "CREATE TABLE T(A NUMBER, A DATE)")) == 957


def test_virtual_tables_cannot_be_shadowed_or_written(session):
    assert ora_code(run_sql(session, "CREATE TABLE DUAL(X NUMBER)")) == 955
    assert ora_code(
        run_sql(session, "CREATE TABLE USER_CONSTRAINTS(X NUMBER)")) == 955
    assert ora_code(
        run_sql(session, "INSERT INTO DUAL VALUES('Y')")) == 942


def test_dual_is_selectable_and_describable(session):
    assert run_sql(session, "SELECT * FROM DUAL") == [
        "", "DUMMY", "-----", "X", ""]
    desc = run_sql(session, "DESC DUAL")
    assert desc[2].startswith("DUMMY")
    assert desc[2].endswith("VARCHAR2(1)")


def test_primary_key_marks_not_null_in_describe(classroom):
    blocks(classroom,
           "ALTER TABLE STUDENTS ADD CONSTRAINT PK_P PRIMARY KEY (S_ROLL)")
    desc = run_sql(classroom, "DESC STUDENTS")
    assert desc[2] == "S_ROLL                         NOT NULL NUMBER(2)"


def test_unique_and_check_leave_describe_unchanged(classroom):
    before = run_sql(classroom, "DESC STUDENTS")
    blocks(classroom,
           "ALTER TABLE STUDENTS ADD CONSTRAINT UK_S UNIQUE(S_PHONE)",
           "ALTER TABLE STUDENTS ADD CONSTRAINT CHK_S CHECK(S_MARKS >= 60)")
    assert run_sql(classroom, "DESC STUDENTS") == before


def test_second_primary_key_is_2260(classroom):
    blocks(classroom,
           "ALTER TABLE STUDENTS ADD CONSTRAINT PK_P PRIMARY KEY (S_ROLL)")
    block = run_sql(
        classroom, "ALTER TABLE STUDENTS ADD CONSTRAINT P2 PRIMARY KEY (DOB)")
    assert ora_code(block) == 2260


def test_duplicate_constraint_name_is_2264(classroom):
    blocks(classroom,
           "ALTER TABLE STUDENTS ADD CONSTRAINT UK_S UNIQUE(S_PHONE)")
    block = run_sql(
        classroom, "ALTER TABLE STUDENTS ADD CONSTRAINT UK_S UNIQUE(DOB)")
    assert ora_code(block) == 2264


def test_constraint_on_unknown_column_is_904(classroom):
    block = run_sql(
        classroom, "ALTER TABLE STUDENTS ADD CONSTRAINT U UNIQUE(NOPE)")
    assert ora_code(block) == 904


def test_constraint_on_unknown_table_is_942(session):
    block = run_sql(
        session, "ALTER TABLE NOWHERE ADD CONSTRAINT U UNIQUE(A)")
    assert ora_code(block) == 942


def test_check_with_aggregate_is_934(classroom):
    block = run_sql(
        classroom,
        "ALTER TABLE STUDENTS ADD CONSTRAINT C CHECK(COUNT(S_ROLL) > 0)")
    assert ora_code(block) == 934


def test_check_qualifier_must_match_table(classroom):
    ok = run_sql(
        classroom,
        "ALTER TABLE STUDENTS ADD CONSTRAINT C1 "
        "CHECK(STUDENTS.S_MARKS >= 0)")
    assert ora_code(ok) is None
    bad = run_sql(
        classroom,
        "ALTER TABLE STUDENTS ADD CONSTRAINT C2 CHECK(X.S_MARKS >= 0)")
    assert ora_code(bad) == 904


def test_fallback_naming_column_is_1430(classroom):
    block = run_sql(
        classroom, "ALTER TABLE STUDENTS ADD CONSTRAINT NN DOB NOTNULL")
    assert ora_code(block) == 1430
    assert block[0] == "ALTER TABLE STUDENTS ADD CONSTRAINT NN DOB NOTNULL"
    assert block[1] == " " * 36 + "*"
    assert block[2] == "ERROR at line 1:"


def test_fallback_without_known_column_is_900(classroom):
    block = run_sql(
        classroom, "ALTER TABLE STUDENTS ADD CONSTRAINT NN XYZ NOTNULL")
    assert ora_code(block) == 900


def test_modify_widen_and_narrow(classroom):
    ok = run_sql(classroom, "ALTER TABLE STUDENTS MODIFY S_NAME VARCHAR(30)")
    assert ora_code(ok) is None
    narrower = run_sql(
        classroom, "ALTER TABLE STUDENTS MODIFY S_NAME VARCHAR(5)")
    assert ora_code(narrower) == 1439
    kind_change = run_sql(
        classroom, "ALTER TABLE STUDENTS MODIFY S_NAME NUMBER(5)")
    assert ora_code(kind_change) == 1439


def test_modify_not_null_generates_sys_constraint(classroom):
    blocks(classroom, "ALTER TABLE STUDENTS MODIFY DOB DATE NOT NULL")
    names = run_sql(
        classroom,
        "SELECT CONSTRAINT_NAME FROM USER_CONSTRAINTS "
        "WHERE TABLE_NAME = 'STUDENTS'")
    assert "SYS_C005545" in names
    desc = run_sql(classroom, "DESC STUDENTS")
    assert desc[6] == "DOB                            NOT NULL DATE"


def test_modify_not_null_with_nulls_is_2296(classroom):
    block = run_sql(
        classroom, "ALTER TABLE STUDENTS MODIFY S_ADDRESS VARCHAR(20) "
                   "NOT NULL")
    assert ora_code(block) == 2296


def test_modify_back_to_null_clears_flag(classroom):
    blocks(classroom, "ALTER TABLE STUDENTS MODIFY DOB DATE NOT NULL")
    blocks(classroom, "ALTER TABLE STUDENTS MODIFY DOB DATE NULL")
    desc = run_sql(classroom, "DESC STUDENTS")
    assert desc[6] == "DOB                                     DATE"
    names = run_sql(
        classroom,
        "SELECT CONSTRAINT_NAME FROM USER_CONSTRAINTS "
        "WHERE TABLE_NAME = 'STUDENTS'")
    assert "SYS_C005545" not in names


def test_null_modify_keeps_primary_key_not_null(classroom):
    blocks(classroom,
           "ALTER TABLE STUDENTS ADD CONSTRAINT PK_P PRIMARY KEY (S_ROLL)")
    blocks(classroom, "ALTER TABLE STUDENTS MODIFY S_ROLL NUMBER(2) NULL")
    desc = run_sql(classroom, "DESC STUDENTS")
    assert "NOT NULL" in desc[2]


def test_sys_names_increment_and_skip_taken():
    cat = Catalog()
    assert cat.sys_name_counter == SYS_NAME_SEED
    first = next_sys_name(cat)
    assert first == "SYS_C005545"
    assert next_sys_name(cat) == "SYS_C005546"


def test_user_constraints_types(classroom):
    for text in (
            "ALTER TABLE STUDENTS ADD CONSTRAINT PK_P PRIMARY KEY (S_ROLL)",
            "ALTER TABLE STUDENTS ADD CONSTRAINT UK_S UNIQUE(S_PHONE)",
            "ALTER TABLE STUDENTS ADD CONSTRAINT CHK_S CHECK(S_MARKS >= 60)",
            "ALTER TABLE STUDENTS MODIFY DOB DATE NOT NULL"):
        run_sql(classroom, text)
    rows = run_sql(
        classroom,
        "SELECT CONSTRAINT_NAME, CONSTRAINT_TYPE FROM USER_CONSTRAINTS "
        "WHERE TABLE_NAME = 'STUDENTS'")
    grid = [line.split() for line in rows[3:-1]]
    assert grid == [["PK_P", "P"], ["UK_S", "U"], ["CHK_S", "C"],
                    ["SYS_C005545", "C"]]


def test_user_constraints_values_are_case_sensitive(classroom):
    run_sql(classroom,
            "ALTER TABLE STUDENTS ADD CONSTRAINT PK_P PRIMARY KEY (S_ROLL)")
    block = run_sql(
        classroom,
        "SELECT CONSTRAINT_NAME FROM USER_CONSTRAINTS "
        "WHERE TABLE_NAME = 'students'")
    assert block == ["", "no rows selected"]


def test_alter_on_missing_table_reports_table_position(session):
    block = run_sql(session, "ALTER TABLE NOWHERE MODIFY A NUMBER(5)")
    assert ora_code(block) == 942
    assert block[1] == "            *"
