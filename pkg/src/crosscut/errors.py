"""Error types shared across the crosscut packages."""

from __future__ import annotations


class CrosscutError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(CrosscutError):
    def __init__(self, message, span=None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self):
        if self.span is not None:
            return f"{self.span.module_path}:{self.span.start_line}:{self.span.start_col}: {self.message}"
        return self.message


# Error kinds a script run can fail with.
EVAL_ERROR_KINDS = (
    "undefined-name",
    "type-mismatch",
    "arity",
    "division-by-zero",
    "integer-overflow",
    "uncaught-throw",
    "step-limit",
)


class EvalError(CrosscutError):
    """A script runtime failure; `value` is set only for kind uncaught-throw."""

    def __init__(self, kind, message, span=None, value=None):
        assert kind in EVAL_ERROR_KINDS, kind
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.span = span
        self.value = value

    def __str__(self):
        loc = ""
        if self.span is not None:
            loc = f" at {self.span.module_path}:{self.span.start_line}:{self.span.start_col}"
        return f"{self.kind}{loc}: {self.message}"


class AnnotationError(CrosscutError):
    pass


class UnknownExample(CrosscutError):
    def __init__(self, example_id):
        super().__init__(f"unknown example: {example_id}")
        self.example_id = example_id


class ExampleInactive(CrosscutError):
    def __init__(self, example_id):
        super().__init__(f"example is inactive: {example_id}")
        self.example_id = example_id


class MalformedTrace(CrosscutError):
    pass


class OrdinalOutOfRange(CrosscutError):
    pass


class NoSources(CrosscutError):
    pass


class InvalidScope(CrosscutError):
    pass


class Unmeasurable(CrosscutError):
    """Raised when an example is too fast to time reliably (base < 0.1 ms)."""

    def __init__(self, base_ms):
        super().__init__(f"base runtime {base_ms:.4f} ms is below the 0.1 ms floor")
        self.base_ms = base_ms


class ApiError(CrosscutError):
    """A request-level failure; serialized as {code, message, detail}."""

    def __init__(self, code, message, detail=None, status=400):
        super().__init__(message)
        self.code = code
        self.message = message
        self.detail = detail
        self.status = status

    def to_json(self):
        return {"code": self.code, "message": self.message, "detail": self.detail}
