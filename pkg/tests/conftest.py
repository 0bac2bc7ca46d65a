import io

import pytest

from handysql import conformance
from handysql.executor import Database
from handysql.shell import Session, execute_statement


def make_session(db: Database | None = None) -> Session:
    return Session(db if db is not None else Database(),
                   out=io.StringIO(), instream=io.StringIO(), quiet=True)


def run_sql(session: Session, text: str, bindings=None) -> list[str]:
    return execute_statement(session, text, bindings)


def ora_code(block: list[str]) -> int | None:
    """The ORA code of an error block, or None for a success block."""
    for line in block:
        if line.startswith("ORA-"):
            return int(line[4:9])
    return None


@pytest.fixture
def session() -> Session:
    return make_session()


@pytest.fixture
def classroom() -> Session:
    return make_session(conformance.load_fixture("classroom_full"))
