"""Input schema and validation for report generation.

Inputs are JSON: a coefficient field, the local-field invariants, the
generator list (matrix plus omega value per generator) and options.
Validation failures carry the dotted path of the offending field.
"""

from __future__ import annotations

import json
from typing import List, Optional

from pydantic import BaseModel, Field as PField, ValidationError as PydanticValidationError

from . import ffalg
from .errors import InputValidationError
from .gmodules import LocalFieldData, ResidualRep


class FieldSpec(BaseModel):
    p: int
    f: int = 1
    modulus: Optional[List[int]] = None


class LocalFieldSpec(BaseModel):
    p: int
    e: int = 1
    f: int = 1
    mu_order: int = 1


class GeneratorSpec(BaseModel):
    matrix: List[List[int]]
    omega: int = 1


class OptionsSpec(BaseModel):
    cap: Optional[int] = None
    kummer_subgroups: Optional[List[List[List[int]]]] = None
    exhaustive_limit: Optional[int] = None


class InputSpec(BaseModel):
    field: FieldSpec
    local_field: LocalFieldSpec
    generators: List[GeneratorSpec] = PField(min_length=1)
    options: OptionsSpec = OptionsSpec()

    def build_field(self) -> ffalg.Field:
        try:
            return ffalg.Field(self.field.p, self.field.f,
                               tuple(self.field.modulus) if self.field.modulus else None)
        except Exception as exc:
            raise InputValidationError(f"field: {exc}") from exc

    def build_local_field(self) -> LocalFieldData:
        try:
            return LocalFieldData(p=self.local_field.p, e=self.local_field.e,
                                  f=self.local_field.f,
                                  mu_order=self.local_field.mu_order)
        except Exception as exc:
            raise InputValidationError(f"local_field: {exc}") from exc

    def build_rep(self) -> ResidualRep:
        F = self.build_field()
        lf = self.build_local_field()
        if F.p != lf.p:
            raise InputValidationError(
                "local_field.p: does not match field.p")
        gens = []
        d = len(self.generators[0].matrix)
        for idx, g in enumerate(self.generators):
            mat = tuple(tuple(x % F.q for x in row) for row in g.matrix)
            if len(mat) != d or any(len(r) != d for r in mat):
                raise InputValidationError(
                    f"generators[{idx}].matrix: expected a {d}x{d} array")
            if ffalg.det(F, mat) == 0:
                raise InputValidationError(
                    f"generators[{idx}].matrix: matrix is singular over GF({F.q})")
            if F.p == 2:
                if g.omega != 1:
                    raise InputValidationError(
                        f"generators[{idx}].omega: must be 1 when p=2")
            elif not 1 <= g.omega <= F.p - 1:
                raise InputValidationError(
                    f"generators[{idx}].omega: {g.omega} not in [1, {F.p - 1}]")
            gens.append((mat, g.omega))
        try:
            return ResidualRep(field=F, local_field=lf, generators=tuple(gens))
        except Exception as exc:
            raise InputValidationError(f"generators: {exc}") from exc


def ingest(path: str) -> InputSpec:
    """Read and validate a JSON input file; errors name the offending field."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError as exc:
        raise InputValidationError(f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputValidationError(f"not valid JSON: {path}: {exc}") from exc
    return parse_input(raw)


def parse_input(raw: dict) -> InputSpec:
    try:
        spec = InputSpec.model_validate(raw)
    except PydanticValidationError as exc:
        parts = []
        for err in exc.errors():
            loc = ".".join(str(x) for x in err["loc"])
            parts.append(f"{loc}: {err['msg']}")
        raise InputValidationError("; ".join(parts)) from exc
    # run the builders so structural errors surface at ingest time
    spec.build_rep()
    return spec
