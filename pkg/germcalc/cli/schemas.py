"""
JSON payload models of the germcalc command line.

Every subcommand returns one of these models; ``germcalc schema`` prints
their JSON Schemas and docs/schemas.md documents them.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

if TYPE_CHECKING:
    from ..asymptotics.height import EhValue
    from ..asymptotics.limits import LimitValue, MonomialNF

LevelJson = Union[int, Literal["-inf"]]


class Payload(BaseModel):
    """Base class of all command payloads"""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)


# ---------------------------------------------------------------------------
# Shared value models
# ---------------------------------------------------------------------------


class LimitSchema(Payload):
    kind: Literal["PlusInfinity", "MinusInfinity", "Zero", "FiniteNonzero"]
    sign: Optional[int] = None
    enclosure: Optional[list[str]] = None
    exact: Optional[str] = None

    @classmethod
    def from_value(cls, value: "LimitValue") -> "LimitSchema":
        return cls.model_validate(value.to_dict())


class EhExact(Payload):
    exact: LevelJson


class EhRange(Payload):
    range: list[LevelJson] = Field(min_length=2, max_length=2)


EhSchema = Union[EhExact, EhRange]


def eh_schema(value: "EhValue") -> EhSchema:
    data = value.to_dict()
    return EhExact(**data) if "exact" in data else EhRange(**data)


class FactorSchema(Payload):
    tower: str
    exponent: str


class MonomialSchema(Payload):
    log_depth: int
    factors: list[FactorSchema]
    text: str
    eh: EhSchema

    @classmethod
    def from_value(cls, value: "MonomialNF") -> "MonomialSchema":
        from ..terms.printer import format_term

        return cls(
            log_depth=value.log_depth,
            factors=[
                FactorSchema(tower=format_term(t), exponent=str(r))
                for t, r in value.factors
            ],
            text=value.text,
            eh=eh_schema(value.eh()),
        )


# ---------------------------------------------------------------------------
# term-core
# ---------------------------------------------------------------------------


class ParsePayload(Payload):
    term: str
    ast: dict[str, Any]
    tower_height: int


class SimplifyPayload(Payload):
    simplified: str
    term_id: str


# ---------------------------------------------------------------------------
# asymptotics
# ---------------------------------------------------------------------------


class ClassifyPayload(Payload):
    germ_class: str = Field(alias="class")


class LimitPayload(Payload):
    limit: LimitSchema


class ComparePayload(Payload):
    relation: Literal["≺", "≍", "≻"]
    ratio: Optional[LimitSchema] = None


class LmPayload(Payload):
    coefficient: LimitSchema
    monomial: MonomialSchema


class LevelPayload(Payload):
    level: LevelJson


class EhPayload(Payload):
    eh: EhSchema


class AlevelPayload(Payload):
    alevel: int = Field(ge=-1)


class DecomposePayload(Payload):
    purely_infinite: str
    bounded: str


class ComponentsPayload(Payload):
    components: dict[str, str]


class SimplePayload(Payload):
    simple: Optional[bool]
    eh: EhSchema
    level: LevelJson


class InverseBoundPayload(Payload):
    bound: int


class InverseLevelPayload(Payload):
    inverse_level: int


class ProfilePayload(Payload):
    eh: int
    level: int
    eta: int
    lambda_: int = Field(alias="lambda")
    source_class: int
    image_class: int
    maps: str
    inverse_level: int
    inverse_simple: Optional[bool]


# ---------------------------------------------------------------------------
# domain-arith
# ---------------------------------------------------------------------------


class DomainClassPayload(Payload):
    k: int = Field(ge=-1)
    witnesses: Optional[list[str]] = None


class TermPayload(Payload):
    term: str


class NuLogPayload(Payload):
    germ_class: int = Field(alias="class", ge=-1)
    quotient: str
    asymptotic_form: str


class NuExpPayload(Payload):
    germ_class: int = Field(alias="class", ge=-1)


class StandardPayload(Payload):
    standard: Optional[bool]


class SandwichPayload(Payload):
    lower: str
    upper: str


class AngleBoundedPayload(Payload):
    angle_bounded: bool


# ---------------------------------------------------------------------------
# lchart-eval
# ---------------------------------------------------------------------------


class LPointSchema(Payload):
    logmod: float
    arg: float


class EvalPayload(Payload):
    values: list[LPointSchema]


class CheckPayload(Payload):
    check: str
    verdict: Literal["pass", "fail", "inconclusive"]
    samples: int
    statistic: Optional[float] = None
    witnesses: list[dict[str, Any]] = Field(default_factory=list)
    details: dict[str, Any] = Field(default_factory=dict)


# ---------------------------------------------------------------------------
# oracle and selftest
# ---------------------------------------------------------------------------


class OraclePayload(Payload):
    quantity: Literal["limit", "compare", "level"]
    value: Any
    confidence: Literal["confirmed", "weak"]
    trace: dict[str, Any]


class SelftestCase(Payload):
    name: str
    status: Literal["passed", "failed", "skipped"]
    detail: str = ""


class SelftestPayload(Payload):
    passed: int
    failed: int
    skipped: int
    cases: list[SelftestCase]


class SchemaPayload(Payload):
    schemas: dict[str, dict[str, Any]]


# ---------------------------------------------------------------------------
# Envelope
# ---------------------------------------------------------------------------


class CommandResult(BaseModel):
    """Envelope printed for failing commands"""

    model_config = ConfigDict(extra="forbid")

    status: Literal["ok", "error"]
    code: Optional[str] = None
    message: Optional[str] = None
    payload: Optional[dict[str, Any]] = None
    diagnostics: list[str] = Field(default_factory=list)


PAYLOAD_MODELS: dict[str, type[BaseModel]] = {
    "parse": ParsePayload,
    "simplify": SimplifyPayload,
    "classify": ClassifyPayload,
    "limit": LimitPayload,
    "cmp": ComparePayload,
    "lm": LmPayload,
    "level": LevelPayload,
    "eh": EhPayload,
    "alevel": AlevelPayload,
    "decompose": DecomposePayload,
    "components": ComponentsPayload,
    "simple": SimplePayload,
    "inv-eh-bound": InverseBoundPayload,
    "inv-level": InverseLevelPayload,
    "domain class": DomainClassPayload,
    "domain witnesses": DomainClassPayload,
    "domain nu-mr": TermPayload,
    "domain nu-pr": TermPayload,
    "domain nu-log": NuLogPayload,
    "domain nu-exp": NuExpPayload,
    "domain standard": StandardPayload,
    "domain sandwich": SandwichPayload,
    "domain angle-bounded": AngleBoundedPayload,
    "continue eval": EvalPayload,
    "continue profile": ProfilePayload,
    "continue <check>": CheckPayload,
    "oracle": OraclePayload,
    "selftest": SelftestPayload,
    "schema": SchemaPayload,
    "error": CommandResult,
}
