"""Problem file models (schema "gdual/1").

Unknown fields are rejected everywhere; scalar literals are integers,
rational strings ("-1/3") or, over cyclotomic fields, coefficient lists.
"""

import json
from pathlib import Path
from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from config.logger import get_logger

logger = get_logger(__name__)

SCHEMA_VERSION = "gdual/1"

ScalarLiteral = Union[int, str, list[Union[int, str]]]


class ProblemFileError(ValueError):
    """Raised for unreadable, schema-invalid or unresolvable problem files."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class FieldSpec(StrictModel):
    kind: Literal["Q", "Fp", "QCyclo"] = "Q"
    p: Optional[int] = None
    n: Optional[int] = None


class GroupSpec(StrictModel):
    free_rank: int = 0
    torsion: list[int] = []


class BicharacterSpec(StrictModel):
    kind: Literal["trivial", "super", "matrix"] = "trivial"
    q: Optional[list[list[ScalarLiteral]]] = None

    @model_validator(mode="after")
    def _matrix_needs_values(self):
        if self.kind == "matrix" and self.q is None:
            raise ValueError("a matrix bicharacter needs q")
        return self


class BasisEntry(StrictModel):
    label: str
    degree: str = ""


class ProductTerm(StrictModel):
    left: str
    right: str
    result: dict[str, ScalarLiteral]


class TensorTerm(StrictModel):
    left: str
    right: str
    coefficient: ScalarLiteral = 1


class ObjectSpec(StrictModel):
    name: str
    kind: Literal["algebra", "coalgebra", "bialgebra"]
    builder: Optional[Literal["ground_field", "group_algebra", "truncated_polynomial", "super_exterior"]] = None
    args: dict[str, Any] = {}
    basis: list[BasisEntry] = []
    product: list[ProductTerm] = []
    unit: dict[str, ScalarLiteral] = {}
    coproduct: dict[str, list[TensorTerm]] = {}
    counit: dict[str, ScalarLiteral] = {}

    @model_validator(mode="after")
    def _builder_or_tables(self):
        if self.builder is None and not self.basis:
            raise ValueError(f"object {self.name!r} needs a builder or a basis")
        labels = [b.label for b in self.basis]
        if len(set(labels)) != len(labels):
            raise ValueError(f"object {self.name!r} has duplicate basis labels")
        return self


class GeneratorSpec(StrictModel):
    name: str
    degree: str = ""


class PresentationSpec(StrictModel):
    name: str = "B"
    generators: list[GeneratorSpec]
    relations: list[str] = []


class FunctionalSpec(StrictModel):
    name: str = "f"
    kind: Literal["values", "geometric", "polynomial", "factorial", "recurrence", "character"] = "values"
    degree: str = ""
    values: dict[str, ScalarLiteral] = {}
    ratio: Optional[ScalarLiteral] = None
    coefficients: list[ScalarLiteral] = []
    initial: list[ScalarLiteral] = []
    images: dict[str, ScalarLiteral] = {}


class Parameters(StrictModel):
    truncate: Optional[int] = None
    window: Optional[int] = None
    codim_bound: Optional[int] = None
    enumerate_ideals: bool = False
    cases: int = 100
    max_dim: int = 6
    s: Optional[str] = None
    b: Optional[str] = None
    colax: Literal["phi", "psi"] = "phi"
    pi_n: int = 0

    @field_validator("truncate", "window", "cases", "max_dim")
    @classmethod
    def _positive(cls, value):
        if value is not None and value < 0:
            raise ValueError("must be nonnegative")
        return value


class ProblemFile(StrictModel):
    schema_version: str = Field(SCHEMA_VERSION, alias="schema")
    field: FieldSpec = FieldSpec()
    group: GroupSpec = GroupSpec()
    bicharacter: Optional[BicharacterSpec] = None
    objects: list[ObjectSpec] = []
    presentation: Optional[PresentationSpec] = None
    functionals: list[FunctionalSpec] = []
    ideals: list[list[str]] = []
    parameters: Parameters = Parameters()

    @field_validator("schema_version")
    @classmethod
    def _known_schema(cls, value):
        if value != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema {value!r}, expected {SCHEMA_VERSION!r}")
        return value

    @model_validator(mode="after")
    def _unique_names(self):
        names = [o.name for o in self.objects]
        if len(set(names)) != len(names):
            raise ValueError("object names must be unique")
        return self

    def object_named(self, name: str) -> ObjectSpec:
        for o in self.objects:
            if o.name == name:
                return o
        raise ProblemFileError(f"no object named {name!r}", "objects")


def _location(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first["loc"]) or "<root>"


def parse_problem(raw: bytes, source: str = "<input>") -> ProblemFile:
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ProblemFileError(f"invalid JSON: {e}", source) from e
    try:
        return ProblemFile.model_validate(data)
    except ValidationError as e:
        message = e.errors()[0]["msg"]
        raise ProblemFileError(message, f"{source}:{_location(e)}") from e


def load_problem(path: Union[str, Path]) -> tuple[ProblemFile, bytes]:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise ProblemFileError(f"cannot read file: {e.strerror}", str(path)) from e
    logger.info(f"Loaded problem file {path} ({len(raw)} bytes)")
    return parse_problem(raw, str(path)), raw
