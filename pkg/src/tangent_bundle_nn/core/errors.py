"""Package error classes.

Numerical failures are raised as ``TangentBundleError`` subclasses. They are
Pydantic custom errors, so the error kind lives in ``.type`` and the
formatted message is built from a template and a context dict that always
contains the package name.
"""

from __future__ import annotations

from typing import Any, Self

from pydantic_core import PydanticCustomError

# Package identifier for error context
PACKAGE_NAME = "tangent_bundle_nn"


class TangentBundleError(PydanticCustomError):
    """Base error for every numerical failure raised by the package.

    Instantiate through :meth:`build` so the package context is always
    present::

        raise SheafError.build(
            "isolated_node",
            "Node {node} has no neighbors; increase epsilon",
            node=3,
        )
    """

    @classmethod
    def build(cls, error_type: str, message_template: str, **context: Any) -> Self:
        """Create an error of this class with package context attached."""
        return cls(error_type, message_template, {"package": PACKAGE_NAME, **context})

    @property
    def loc(self) -> tuple[str, ...]:
        """Pydantic-compatible location tuple (``node``/``field`` from context)."""
        ctx = self.context or {}
        for key in ("field", "node"):
            if key in ctx:
                return (str(ctx[key]),)
        return ("unknown",)

    @classmethod
    def from_exception(cls, error_type: str, error: Exception, **context: Any) -> Self:
        """Wrap a foreign exception (e.g. ``LinAlgError``) keeping its message."""
        return cls.build(error_type, "{reason}", reason=str(error), **context)


class GeometryError(TangentBundleError):
    """Point cloud and ambient field errors."""


class SheafError(TangentBundleError):
    """Sheaf construction and serialization errors."""


class SpectralError(TangentBundleError):
    """Eigendecomposition and spectral filtering errors."""


class FilterError(TangentBundleError):
    """Shift operator and FIR filter errors."""


class TrainingError(TangentBundleError):
    """Network forward/backward and optimization errors."""


class ConfigurationError(Exception):
    """Wraps a ``pydantic.ValidationError`` raised while loading a config.

    Keeps the original error and its error list so callers can report every
    offending key at once.
    """

    def __init__(self, validation_error: Exception, context: dict | None = None):
        from pydantic import ValidationError as PydanticValidationError

        self.original_error = validation_error
        self.context = {"package": PACKAGE_NAME, **(context or {})}

        if isinstance(validation_error, PydanticValidationError):
            self.errors_list = validation_error.errors()
            error_messages = "; ".join(
                f"{'.'.join(str(p) for p in e.get('loc', ()))}: {e.get('msg', str(e))}"
                for e in self.errors_list
            )
        else:
            self.errors_list = []
            error_messages = str(validation_error)

        super().__init__(error_messages)

    def errors(self) -> list:
        """Get the list of validation errors."""
        return self.errors_list

    def __repr__(self) -> str:
        return f"ConfigurationError({self.original_error!r}, context={self.context})"


def check_same_length(
    field: str, expected: int, actual: int, error_cls: type[TangentBundleError]
) -> None:
    """Raise ``dimension_mismatch`` when two sizes disagree."""
    if expected != actual:
        raise error_cls.build(
            "dimension_mismatch",
            "{field}: expected size {expected}, got {actual}",
            field=field,
            expected=expected,
            actual=actual,
        )


def error_from_validation(
    error: Exception, error_cls: type[TangentBundleError] = TangentBundleError
) -> TangentBundleError:
    """Recover the package error from a ``pydantic.ValidationError``.

    Model validators raise package errors, which pydantic wraps; this returns
    the first wrapped error as an instance of ``error_cls`` so callers outside
    pydantic see the original kind.
    """
    from pydantic import ValidationError

    if isinstance(error, ValidationError):
        for err_dict in error.errors():
            ctx = {
                k: v
                for k, v in (err_dict.get("ctx") or {}).items()
                if k not in {"package", "reason"}
            }
            return error_cls.build(
                err_dict.get("type", "validation_error"),
                "{reason}",
                reason=err_dict.get("msg", str(error)),
                **ctx,
            )
    return error_cls.build("validation_error", "{reason}", reason=str(error))
