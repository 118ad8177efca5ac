# algebra/schema.py
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .basis import TAGS, NormalForm
from .parsing import render_rational


CheckStatus = Literal["pass", "fail"]


class NormalFormEntry(BaseModel):
    """One basis monomial with its coefficient, exponents keyed by prime."""
    model_config = ConfigDict(extra="forbid")

    tag: str
    t: int = Field(..., ge=0, le=1)
    exponents: Dict[str, Dict[str, int]]
    coeff: str
    word: str

    @field_validator("tag")
    @classmethod
    def _known_tag(cls, v: str) -> str:
        if v not in TAGS:
            raise ValueError(f"unknown tag '{v}'.")
        return v

    @field_validator("coeff")
    @classmethod
    def _rational(cls, v: str) -> str:
        Fraction(v)
        return v


class NormalFormPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    expression: str
    method: str
    primes: List[int]
    seeds: List[int]
    rendered: str
    entries: List[NormalFormEntry] = Field(default_factory=list)


def normal_form_payload(expression: str, method: str, nf: NormalForm, primes: List[int], seeds: List[int]) -> NormalFormPayload:
    entries = [
        NormalFormEntry(tag=m.tag, t=m.t, exponents=m.exponents(), coeff=render_rational(c), word=str(m))
        for m, c in nf.entries
    ]
    return NormalFormPayload(
        expression=expression,
        method=method,
        primes=primes,
        seeds=seeds,
        rendered=nf.render(),
        entries=entries,
    )


class CheckResultModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    suite: str
    name: str
    status: CheckStatus
    checked: int = 0
    detail: Optional[str] = None
    counterexample: Optional[str] = None


class VerifyReport(BaseModel):
    """Machine-readable outcome of one `verify` run."""
    model_config = ConfigDict(extra="forbid")

    suite: str
    config: str
    depth: int
    passed: bool
    checks: List[CheckResultModel] = Field(default_factory=list)

    @property
    def failures(self) -> List[CheckResultModel]:
        return [c for c in self.checks if c.status == "fail"]
