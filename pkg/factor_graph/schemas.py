# factor_graph/schemas.py
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field, StrictInt, StrictStr, validator


class VariableSchema(BaseModel):
    name: StrictStr
    range: List[StrictStr]
    evidence: Optional[StrictStr] = None

    @validator("name")
    def name_not_empty(cls, value):
        if not value:
            raise ValueError("variable name must not be empty")
        return value


class FactorSchema(BaseModel):
    name: StrictStr
    args: List[StrictStr]
    # Decimal strings keep potentials exact; plain integers are accepted too.
    table: List[Union[StrictStr, StrictInt]]

    @validator("name")
    def name_not_empty(cls, value):
        if not value:
            raise ValueError("factor name must not be empty")
        return value


class FactorGraphSchema(BaseModel):
    variables: List[VariableSchema]
    factors: List[FactorSchema] = Field(default_factory=list)


class GroupingSchema(BaseModel):
    variable_groups: List[List[str]]
    factor_groups: List[List[str]]


class CandidateSchema(BaseModel):
    positions: List[int]
    arguments: List[str]


class DetectionSchema(BaseModel):
    factor: str
    algorithm: str
    status: str
    candidates: List[CandidateSchema]
    max_candidate: Optional[CandidateSchema] = None
    verified: Optional[bool] = None
    stats: Dict[str, int] = Field(default_factory=dict)
