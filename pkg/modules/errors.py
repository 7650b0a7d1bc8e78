"""
Error hierarchy
Every error carries the process exit code the CLI reports for it
"""


class TapCertError(Exception):
    """Base class for all errors raised by the toolkit"""
    exit_code = 1

    def __init__(self, message=None):
        super().__init__(message or self.__class__.__name__)
        self.reason = message or self.__class__.__name__


class InternalError(TapCertError):
    exit_code = 1


# Validation (exit code 2)

class ValidationError(TapCertError):
    exit_code = 2


class NotATree(ValidationError):
    pass


class DuplicateEdge(ValidationError):
    pass


class LoopEdge(ValidationError):
    pass


class NegativeCost(ValidationError):
    pass


class TooFewNodes(ValidationError):
    pass


class NoLinks(ValidationError):
    pass


class LeafNode(ValidationError):
    pass


class Not2NC(ValidationError):
    pass


class DegreeTooSmall(ValidationError):
    pass


class UnknownFamily(ValidationError):
    pass


class BadParams(ValidationError):
    pass


class SchemaError(ValidationError):
    """Malformed instance/certificate file; `cause` names the violated rule"""

    def __init__(self, message, field=None, cause=None):
        where = f" (field '{field}')" if field else ""
        super().__init__(f"{message}{where}")
        self.field = field
        self.cause = cause


# Infeasibility (exit code 3)

class Infeasible(TapCertError):
    exit_code = 3


class InfeasibleInput(Infeasible):
    pass


# Size caps (exit code 4)

class InstanceTooLarge(TapCertError):
    exit_code = 4


class TooManyBlocks(InstanceTooLarge):
    pass


# Certificate checks (exit code 5)

class CheckFailed(TapCertError):
    exit_code = 5

    def __init__(self, check, detail=None):
        super().__init__(f"check failed: {check}" + (f" ({detail})" if detail else ""))
        self.check = check


class MismatchedDigest(CheckFailed):
    def __init__(self, detail=None):
        super().__init__("digest", detail)


class MalformedTrace(CheckFailed):
    def __init__(self, detail=None):
        super().__init__("trace", detail)
