from pathlib import Path

import pytest

from jex import config
from jex.syntax import Arrow, Atom, Context, Exists

FIXTURES_DIR = Path(__file__).parent.parent / "fixtures"
GOLDEN_DIR = Path(__file__).parent / "golden"

P, Q, R = Atom("p"), Atom("q"), Atom("r")

# (source text, separator, proposition text), all closed and well typed
WELL_TYPED_DATA = [
    (r"\(x:p). x", ":", "p -> p"),
    (r"\(x:p). \(y:q). x", ":", "p -> q -> p"),
    (r"\(x:p). [x]", ":", "p -> Ex p"),
    (r"\(f:p -> q). \(x:p). f x", ":", "(p -> q) -> p -> q"),
    (r"\(y:Ex Ex p). [let [z] = y in let [x] = z in x]", ":", "Ex Ex p -> Ex p"),
    (r"\j(y:Ex p). let [x] = y in [x]", "::", "Ex p -> Ex p"),
    (r"\j(x:p). x", "::", "p -> p"),
    (r"(\j(x:p -> p). x) @j (\(x:p). x)", "::", "p -> p"),
    (r"[\(x:p). x]j", "::", "Ex (p -> p)"),
    (r"\j(y:Ex p). let [x]j = y in x", "::", "Ex p -> p"),
]

# (source text, hypotheses, error class name)
ILL_TYPED_DATA = [
    ("x", [], "UnboundVariable"),
    (r"(\(x:p). x) y", ["y:q"], "ArgMismatch"),
    ("f x", ["f:p", "x:p"], "ArrowExpected"),
    ("let [x] = y in x", ["y:p"], "ExistsExpected"),
    (r"\(x:p). \j(y:q). y", [], "NotATerm"),
]


@pytest.fixture
def well_typed_data():
    return list(WELL_TYPED_DATA)


@pytest.fixture
def ill_typed_data():
    return list(ILL_TYPED_DATA)


@pytest.fixture
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture
def golden_dir():
    return GOLDEN_DIR


@pytest.fixture
def ambient():
    """a : p, b : Ex p, f : p -> q"""
    return Context.of(("a", P), ("b", Exists(P)), ("f", Arrow(P, Q)))


@pytest.fixture
def restore_config():
    saved = {
        name: getattr(config.CONFIG, name)
        for name in ("fuel", "max_depth", "atoms", "workers")
    }
    yield config.CONFIG
    for name, value in saved.items():
        setattr(config.CONFIG, name, value)
