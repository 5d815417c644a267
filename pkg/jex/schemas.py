"""jex.schemas"""

import enum

from pydantic import BaseModel, Field, RootModel


class StatusEnum(str, enum.Enum):
    """Outcome of a declaration, a program or a fuzz run"""

    OK = "ok"
    FAIL = "fail"
    ERROR = "error"
    FUEL = "fuel"
    COUNTEREXAMPLE = "counterexample"


class StepReport(BaseModel):
    """One reduction step: the outermost tag, the full tag path and the result"""

    kind: str
    path: list[str]
    expression: str


class DeclarationReport(BaseModel):
    """Pydantic model for the result of one source declaration"""

    line: int
    column: int
    declaration: str
    status: StatusEnum
    judgment: str | None = None
    output: str | None = None
    message: str | None = None
    steps: list[StepReport] | None = None
    open_premises: list[str] | None = None

    model_config = {"use_enum_values": True}


class CheckReport(BaseModel):
    """Pydantic model for a whole source file"""

    status: StatusEnum
    results: list[DeclarationReport]

    model_config = {"use_enum_values": True}


class CounterexampleReport(BaseModel):
    """Pydantic model for the smallest failing fuzz case"""

    seed: int
    kind: str | None = None
    message: str
    program: str


class FuzzReport(BaseModel):
    """Pydantic model for a fuzz run; contains nothing run dependent"""

    suite: str
    seed: int
    count: int
    status: StatusEnum
    cases: int
    passed: int
    failed: int
    fuel_exhausted: int
    counterexample: CounterexampleReport | None = None

    model_config = {"use_enum_values": True}


# service


class CheckRequest(BaseModel):
    """Pydantic model for check requests: a whole source text"""

    source: str


class NormalizeRequest(BaseModel):
    """Pydantic model for normalize requests"""

    expression: str
    hypotheses: list[str] = []
    fuel: int | None = Field(default=None, gt=0)


class NormalizeResponse(BaseModel):
    """Pydantic model for normalize responses"""

    status: StatusEnum
    normal_form: str | None = None
    judgment: str | None = None
    steps: list[StepReport]

    model_config = {"use_enum_values": True}


class DirectionEnum(str, enum.Enum):
    """Translation direction"""

    TO_LAX = "to-lax"
    FROM_LAX = "from-lax"


class TranslateRequest(BaseModel):
    """Pydantic model for translate requests"""

    proposition: str
    direction: DirectionEnum = DirectionEnum.TO_LAX


class TranslateResponse(BaseModel):
    """Pydantic model for translate responses"""

    proposition: str


class DeriveRequest(BaseModel):
    """Pydantic model for derive requests"""

    builder: str
    arguments: list[str]
    hypotheses: list[str] = []


class DeriveResponse(BaseModel):
    """Pydantic model for derive responses"""

    builder: str
    expression: str | None = None
    judgment: str
    derivation: str
    open_premises: list[str] = []


class BuilderListResponse(RootModel):
    """Pydantic model for listing the available builders"""

    root: list[str]
