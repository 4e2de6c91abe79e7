"""Error taxonomy. Everything raised on purpose subclasses ExtractorError."""


class ExtractorError(Exception):
    """Base class for all extraction failures."""


class InvalidConfig(ExtractorError, ValueError):
    """A configuration value or input structure is unusable."""


class ModelLoadError(ExtractorError):
    """The model could not be loaded or does not fit the tokenizer."""


class TokenizationError(ExtractorError):
    """A text cannot be turned into a scoreable token sequence."""

    def __init__(self, text_id: str, message: str):
        super().__init__(f"{text_id}: {message}")
        self.text_id = text_id


class InferenceError(ExtractorError):
    """The forward pass failed; the message says what to change."""


class ParseError(ExtractorError):
    """An input JSONL line is not valid JSON."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(ExtractorError):
    """An input JSONL line is valid JSON but violates the schema."""

    def __init__(self, line: int, field: str, message: str):
        super().__init__(f"line {line}: field {field!r} {message}")
        self.line = line
        self.field = field


class IoError(ExtractorError):
    """A file could not be read or written."""
