"""Exception types shared across the package."""


class KlusTreeError(Exception):
    """Base class for every error this package raises on purpose."""


class GraphParseError(KlusTreeError):
    """A TSV line could not be parsed as a triple."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class EmptyGraphError(KlusTreeError):
    """The input contained no triples at all."""


class NotFoundError(KlusTreeError, LookupError):
    """A requested entity or predicate is not present in the graph."""

    def __init__(self, kind: str, label: str):
        super().__init__(f"{kind} not found: {label!r}")
        self.kind = kind
        self.label = label


class UnmatchedKeywordError(KlusTreeError):
    """A query keyword matched no node label."""

    def __init__(self, keyword: str):
        super().__init__(f"no node label matches keyword {keyword!r}")
        self.keyword = keyword


class ContractError(KlusTreeError, ValueError):
    """An argument violates an operation's contract."""


class DegenerateInputError(KlusTreeError, ValueError):
    """Fewer items than the operation can meaningfully process."""


class PipelineError(KlusTreeError):
    """Wraps a failure together with the pipeline stage it occurred in."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause
