"""Plugin registries keyed by name or by a ``str`` enum tag.

Each registry lists its built-in implementations in ``_default_impls``;
they are loaded on first access so user registrations can shadow them.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Mapping
from enum import Enum
from typing import Any, ClassVar


def registry_key(name: str | Enum) -> str:
    """``ShiftMethod.EIG`` and ``"eig"`` address the same entry."""
    return str(name.value) if isinstance(name, Enum) else name


class PluginFactory[T](ABC):
    """Registry of implementation classes for one protocol.

    Subclasses set ``_registry``, ``_default_type`` and ``_entity_name`` and
    return their built-ins from ``_default_impls``::

        class NonlinearityFactory(PluginFactory[NonlinearityProtocol]):
            _registry: ClassVar[dict[str, type[Any]]] = {}
            _default_type: ClassVar[str] = "tanh"
            _entity_name: ClassVar[str] = "nonlinearity"

            @classmethod
            def _default_impls(cls) -> Mapping[str, type[Any]]:
                return {"tanh": Tanh, "identity": Identity}
    """

    _registry: ClassVar[dict[str, type[Any]]]
    _default_type: ClassVar[str]
    _entity_name: ClassVar[str]

    @classmethod
    @abstractmethod
    def _default_impls(cls) -> Mapping[str, type[Any]]:
        """Built-in implementations; imports may be deferred to this call."""
        ...

    @classmethod
    def _ensure_defaults_registered(cls) -> None:
        for name, impl in cls._default_impls().items():
            cls._registry.setdefault(name, impl)

    @classmethod
    def register(cls, name: str | Enum, impl_class: type[T]) -> None:
        cls._registry[registry_key(name)] = impl_class

    @classmethod
    def unregister(cls, name: str | Enum) -> None:
        """Drop ``name``; a built-in comes back on the next lookup."""
        cls._registry.pop(registry_key(name), None)

    @classmethod
    def get_class(cls, name: str | Enum | None = None) -> type[T]:
        """Implementation class registered under ``name`` (default when ``None``).

        Raises:
            ValueError: ``name`` is not registered.
        """
        cls._ensure_defaults_registered()
        key = registry_key(name) if name is not None else cls._default_type
        try:
            return cls._registry[key]
        except KeyError:
            available = ", ".join(sorted(cls._registry))
            raise ValueError(
                f"Unknown {cls._entity_name} type: {key}. Available types: {available}"
            ) from None

    @classmethod
    def create(cls, name: str | Enum | None = None, **kwargs: Any) -> T:
        """Instantiate the implementation registered under ``name``."""
        return cls.get_class(name)(**kwargs)

    @classmethod
    def available_types(cls) -> list[str]:
        cls._ensure_defaults_registered()
        return sorted(cls._registry)
