"""
Pydantic models for the JSON reports written by the command line.
Every numeric field is exact: rationals travel as "num/den" strings and
field elements through the operator printer.
"""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

SCHEMA = "qdiff-lab/1"


# ==================== Polygon Models ====================

class SlopeSets(BaseModel):
    """Slopes at 0 (lower chain) and at infinity (upper chain)."""
    zero: List[str] = Field(..., description="Slopes of the lower chain, 'oo' for vertical edges")
    infinity: List[str] = Field(..., description="Slopes of the upper chain, as drawn")


class PolygonModel(BaseModel):
    """Model for a Newton-Ramis polygon, shifted so that its lowest point has v = 0."""
    form: str = Field(..., description="Generator the polygon is taken with: 'sigma' or 'dq'")
    leftward: bool = Field(..., description="Whether the points carry leftward rays (d-polygons)")
    points: List[List[int]] = Field(..., description="Monomial points [u, v]")
    hull: List[List[int]] = Field(..., description="Vertices of the boundary")
    slopes: SlopeSets = Field(..., description="Slope sets at both ends")

    model_config = ConfigDict(json_schema_extra={
        "examples": [
            {
                "form": "sigma",
                "leftward": False,
                "points": [[0, 1], [1, 0], [1, 1], [2, 0]],
                "hull": [[0, 1], [1, 0], [2, 0], [1, 1]],
                "slopes": {"zero": ["-1", "0"], "infinity": ["0", "oo"]}
            }
        ]
    })

    @field_validator("points", "hull")
    @classmethod
    def validate_pairs(cls, v: List[List[int]]) -> List[List[int]]:
        if any(len(p) != 2 for p in v):
            raise ValueError("polygon points are pairs [u, v]")
        return v


# ==================== Report Envelope ====================

class Provenance(BaseModel):
    """Model for the truncations and windows a result depends on."""
    field_root: int = Field(..., ge=1, description="r: computations over Q(q^(1/r))")
    truncation: Optional[int] = Field(None, ge=0, description="Number of series terms used, if any")
    notes: List[str] = Field(default_factory=list, description="Finite-horizon caveats")


class ReportEnvelope(BaseModel):
    """Model for one command report."""
    schema_name: str = Field(SCHEMA, alias="schema", description="Report schema version")
    command: str = Field(..., description="Subcommand that produced the report")
    inputs: Dict[str, Any] = Field(..., description="Echo of the parsed inputs")
    results: Dict[str, Any] = Field(..., description="Structured results")
    provenance: Provenance = Field(..., description="Truncations and windows")

    model_config = ConfigDict(populate_by_name=True, json_schema_extra={
        "examples": [
            {
                "schema": SCHEMA,
                "command": "nrp",
                "inputs": {"operator": "sigma^2 - (1+q^2*x)*sigma + q*x", "form": "sigma"},
                "results": {"polygon": {"form": "sigma", "slopes": {"zero": ["-1", "0"]}}},
                "provenance": {"field_root": 1, "truncation": None, "notes": []}
            }
        ]
    })

    @field_validator("schema_name")
    @classmethod
    def validate_schema(cls, v: str) -> str:
        if not v.startswith("qdiff-lab/"):
            raise ValueError(f"unknown report schema {v!r}")
        return v

    def to_json(self) -> str:
        """Sorted-key JSON; identical inputs give identical bytes."""
        return json.dumps(self.model_dump(mode="json", by_alias=True), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReportEnvelope":
        return cls.model_validate_json(text)


class ErrorReport(BaseModel):
    """Model for errors written to standard error."""
    error: str = Field(..., description="Exception class name")
    detail: str = Field(..., description="Error message")
    exit_code: int = Field(..., description="Process exit code")
