"""Pydantic field types and validators for Stasheff values.

This module provides custom pydantic field types for the Stasheff value classes:
- DyadicField: Validates and converts to stasheff.Dyadic
- ArcField: Validates dyadic arcs
- PartitionField: Validates standard dyadic partitions
- TessellationField: Validates F-tessellations given as (removed, added) deltas
- ElementField: Validates elements of T^no (JSON form or shorthand)

Usage:
    from pydantic import BaseModel
    from stasheff.integrations.pydantic import ElementField, TessellationField

    class Experiment(BaseModel):
        element: ElementField
        start: TessellationField

    experiment = Experiment(element="rot 1/4", start={"removed": ["[0,1/2]"]})
"""

from __future__ import annotations

from typing import Any

# Check if pydantic is available
try:
    from pydantic import GetCoreSchemaHandler
    from pydantic.annotated_handlers import GetJsonSchemaHandler
    from pydantic.json_schema import JsonSchemaValue
    from pydantic_core import CoreSchema, core_schema
except ImportError as e:
    raise ImportError(
        "Pydantic is required for stasheff.integrations.pydantic. "
        "Install it with: pip install stasheff[pydantic]"
    ) from e

from stasheff.core.dyadic import Arc, Dyadic, StandardPartition
from stasheff.core.exceptions import StasheffError
from stasheff.core.ftess import FTessellation
from stasheff.core.thompson import ThompsonElement, parse_element, reduce_minimal


def validate_dyadic(value: Any) -> Dyadic:
    """Validate and convert input to Dyadic."""
    if isinstance(value, Dyadic):
        return value
    elif isinstance(value, str):
        try:
            return Dyadic.parse(value)
        except StasheffError as e:
            raise ValueError(f"Invalid dyadic string: {value}") from e
    elif isinstance(value, int) and not isinstance(value, bool):
        return Dyadic(value)
    else:
        raise ValueError(f"Expected Dyadic or str, got {type(value)}")


def validate_arc(value: Any) -> Arc:
    """Validate and convert input to Arc."""
    if isinstance(value, Arc):
        return value
    elif isinstance(value, str):
        try:
            return Arc.parse(value)
        except StasheffError as e:
            raise ValueError(f"Invalid arc string: {value}") from e
    elif isinstance(value, (list, tuple)) and len(value) == 2:  # type: ignore[arg-type]
        try:
            return Arc(validate_dyadic(value[0]), validate_dyadic(value[1]))
        except StasheffError as e:
            raise ValueError(f"Invalid arc pair: {value}") from e
    else:
        raise ValueError(f"Expected Arc, str, or pair, got {type(value)}")


def validate_partition(value: Any) -> StandardPartition:
    """Validate and convert input to StandardPartition."""
    if isinstance(value, StandardPartition):
        return value
    elif isinstance(value, str):
        try:
            return StandardPartition.parse(value)
        except StasheffError as e:
            raise ValueError(f"Invalid partition string: {value}") from e
    elif isinstance(value, (list, tuple)):  # type: ignore[arg-type]
        try:
            return StandardPartition.from_breakpoints(
                validate_dyadic(point) for point in value
            )
        except StasheffError as e:
            raise ValueError(f"Invalid partition breakpoints: {value}") from e
    else:
        raise ValueError(f"Expected StandardPartition, str, or list, got {type(value)}")


def validate_tessellation(value: Any) -> FTessellation:
    """Validate and convert input to FTessellation."""
    if isinstance(value, FTessellation):
        return value
    elif isinstance(value, dict):  # type: ignore[arg-type]
        try:
            return FTessellation.from_dict(value)  # type: ignore[arg-type]
        except StasheffError as e:
            raise ValueError(f"Invalid tessellation: {e}") from e
    else:
        raise ValueError(f"Expected FTessellation or dict, got {type(value)}")


def validate_element(value: Any) -> ThompsonElement:
    """Validate and convert input to a reduced ThompsonElement."""
    if isinstance(value, ThompsonElement):
        return reduce_minimal(value)
    elif isinstance(value, str):
        try:
            return parse_element(value)
        except StasheffError as e:
            raise ValueError(f"Invalid element string: {value}") from e
    elif isinstance(value, dict):  # type: ignore[arg-type]
        try:
            return reduce_minimal(ThompsonElement.from_dict(value))  # type: ignore[arg-type]
        except StasheffError as e:
            raise ValueError(f"Invalid element dict: {e}") from e
    else:
        raise ValueError(f"Expected ThompsonElement, str, or dict, got {type(value)}")


def _get_dyadic_core_schema(
    source_type: Any, handler: GetCoreSchemaHandler
) -> CoreSchema:
    """Generate pydantic-core schema for Dyadic field type."""
    return core_schema.no_info_plain_validator_function(
        validate_dyadic, serialization=core_schema.to_string_ser_schema(when_used="json")
    )


def _get_arc_core_schema(source_type: Any, handler: GetCoreSchemaHandler) -> CoreSchema:
    """Generate pydantic-core schema for Arc field type."""
    return core_schema.no_info_plain_validator_function(
        validate_arc, serialization=core_schema.to_string_ser_schema(when_used="json")
    )


def _get_partition_core_schema(
    source_type: Any, handler: GetCoreSchemaHandler
) -> CoreSchema:
    """Generate pydantic-core schema for StandardPartition field type."""
    return core_schema.no_info_plain_validator_function(
        validate_partition,
        serialization=core_schema.to_string_ser_schema(when_used="json"),
    )


def _get_tessellation_core_schema(
    source_type: Any, handler: GetCoreSchemaHandler
) -> CoreSchema:
    """Generate pydantic-core schema for FTessellation field type."""

    def serialize_tessellation(value: FTessellation) -> dict[str, list[str]]:
        return value.to_dict()

    return core_schema.no_info_plain_validator_function(
        validate_tessellation,
        serialization=core_schema.plain_serializer_function_ser_schema(
            serialize_tessellation, when_used="json"
        ),
    )


def _get_element_core_schema(
    source_type: Any, handler: GetCoreSchemaHandler
) -> CoreSchema:
    """Generate pydantic-core schema for ThompsonElement field type."""

    def serialize_element(value: ThompsonElement) -> dict[str, Any]:
        return reduce_minimal(value).to_dict()

    return core_schema.no_info_plain_validator_function(
        validate_element,
        serialization=core_schema.plain_serializer_function_ser_schema(
            serialize_element, when_used="json"
        ),
    )


_ARC_STRING = {"type": "string", "pattern": r"^\[[^,\]]+,[^,\]]+\]$"}


class DyadicField:
    """Pydantic field type for stasheff.Dyadic.

    Accepts:
    - stasheff.Dyadic instances
    - Strings like "3/8", "3/2^3", "0"
    - Integers (reduced modulo 1, so always 0)

    Examples:
        >>> from pydantic import BaseModel
        >>> from stasheff.integrations.pydantic import DyadicField
        >>>
        >>> class Point(BaseModel):
        ...     x: DyadicField
        >>>
        >>> Point(x="3/2^3").x
        Dyadic(3, 3)
    """

    @classmethod
    def __get_pydantic_core_schema__(
        cls, source_type: Any, handler: GetCoreSchemaHandler
    ) -> CoreSchema:
        return _get_dyadic_core_schema(source_type, handler)

    @classmethod
    def __get_pydantic_json_schema__(
        cls, core_schema: CoreSchema, handler: GetJsonSchemaHandler
    ) -> JsonSchemaValue:
        return {
            "type": "string",
            "description": "Dyadic rational m/2^n on the circle [0, 1)",
            "examples": ["0", "1/2", "3/8"],
        }


class ArcField:
    """Pydantic field type for stasheff.Arc.

    Accepts:
    - stasheff.Arc instances
    - Strings like "[1/4,3/4]"
    - Pairs of dyadic strings
    """

    @classmethod
    def __get_pydantic_core_schema__(
        cls, source_type: Any, handler: GetCoreSchemaHandler
    ) -> CoreSchema:
        return _get_arc_core_schema(source_type, handler)

    @classmethod
    def __get_pydantic_json_schema__(
        cls, core_schema: CoreSchema, handler: GetJsonSchemaHandler
    ) -> JsonSchemaValue:
        return {**_ARC_STRING, "description": "Dyadic arc", "examples": ["[0,1/2]"]}


class PartitionField:
    """Pydantic field type for stasheff.StandardPartition.

    Accepts:
    - stasheff.StandardPartition instances
    - Strings like "0,1/4,1/2,3/4"
    - Lists of breakpoints
    """

    @classmethod
    def __get_pydantic_core_schema__(
        cls, source_type: Any, handler: GetCoreSchemaHandler
    ) -> CoreSchema:
        return _get_partition_core_schema(source_type, handler)

    @classmethod
    def __get_pydantic_json_schema__(
        cls, core_schema: CoreSchema, handler: GetJsonSchemaHandler
    ) -> JsonSchemaValue:
        return {
            "type": "string",
            "description": "Comma-separated breakpoints of a standard dyadic partition",
            "examples": ["0,1/2,3/4", "0,1/4,1/2,3/4"],
        }


class TessellationField:
    """Pydantic field type for stasheff.FTessellation.

    Accepts:
    - stasheff.FTessellation instances
    - Dicts {"removed": [...], "added": [...]}

    Examples:
        >>> from pydantic import BaseModel
        >>> from stasheff.integrations.pydantic import TessellationField
        >>>
        >>> class Cell(BaseModel):
        ...     index: TessellationField
        >>>
        >>> Cell(index={"removed": ["[0,1/2]"]}).index.rank
        1
    """

    @classmethod
    def __get_pydantic_core_schema__(
        cls, source_type: Any, handler: GetCoreSchemaHandler
    ) -> CoreSchema:
        return _get_tessellation_core_schema(source_type, handler)

    @classmethod
    def __get_pydantic_json_schema__(
        cls, core_schema: CoreSchema, handler: GetJsonSchemaHandler
    ) -> JsonSchemaValue:
        return {
            "type": "object",
            "properties": {
                "removed": {"type": "array", "items": _ARC_STRING},
                "added": {"type": "array", "items": _ARC_STRING},
            },
            "description": "F-tessellation as its delta against A_F",
        }


class ElementField:
    """Pydantic field type for stasheff.ThompsonElement.

    Accepts:
    - stasheff.ThompsonElement instances
    - Shorthand strings: "id", "refl", "slope", "rot 1/4", products with "*"
    - Dicts {"intervals": [{"src": [...], "dst": [...]}], "orientation": 1}
    """

    @classmethod
    def __get_pydantic_core_schema__(
        cls, source_type: Any, handler: GetCoreSchemaHandler
    ) -> CoreSchema:
        return _get_element_core_schema(source_type, handler)

    @classmethod
    def __get_pydantic_json_schema__(
        cls, core_schema: CoreSchema, handler: GetJsonSchemaHandler
    ) -> JsonSchemaValue:
        return {
            "anyOf": [
                {
                    "type": "string",
                    "description": "Generator shorthand",
                    "examples": ["rot 1/4", "refl", "slope * refl"],
                },
                {
                    "type": "object",
                    "properties": {
                        "intervals": {"type": "array"},
                        "orientation": {"enum": [1, -1]},
                    },
                    "required": ["intervals"],
                },
            ]
        }
