"""Tool registry: named, schema-described callables for the validation stage.

Descriptors declare inputs, outputs, and resource bounds so an orchestrating
agent can discover and invoke analysis tools uniformly. Aliases let older
tool names keep resolving after a rename.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional


@dataclass(frozen=True)
class ToolDescriptor:
    name: str
    description: str
    input_schema: Mapping
    output_schema: Mapping
    resource_bounds: Mapping = field(default_factory=lambda: {"max_seconds": 60, "max_memory_mb": 512})
    implemented: bool = True
    fn: Optional[Callable] = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "input_schema": dict(self.input_schema),
            "output_schema": dict(self.output_schema),
            "resource_bounds": dict(self.resource_bounds),
            "implemented": self.implemented,
        }


class ToolRegistry:
    def __init__(self):
        self._tools: dict[str, ToolDescriptor] = {}
        self._aliases: dict[str, str] = {}

    def register(self, descriptor: ToolDescriptor, aliases: tuple[str, ...] = ()) -> None:
        if descriptor.name in self._tools or descriptor.name in self._aliases:
            raise ValueError(f"tool {descriptor.name!r} already registered")
        for alias in aliases:
            if alias in self._tools or alias in self._aliases:
                raise ValueError(f"tool alias {alias!r} already registered")
        self._tools[descriptor.name] = descriptor
        for alias in aliases:
            self._aliases[alias] = descriptor.name

    def resolve(self, name: str) -> ToolDescriptor:
        canonical = self._aliases.get(name, name)
        if canonical not in self._tools:
            raise KeyError(f"no tool named {name!r}; known: {self.list_names()}")
        return self._tools[canonical]

    def invoke(self, name: str, **kwargs):
        descriptor = self.resolve(name)
        if not descriptor.implemented or descriptor.fn is None:
            raise NotImplementedError(f"tool {descriptor.name!r} is a declared stub")
        return descriptor.fn(**kwargs)

    def list_names(self) -> list[str]:
        return sorted(self._tools)

    def to_dict(self) -> dict:
        return {name: d.to_dict() for name, d in sorted(self._tools.items())}
