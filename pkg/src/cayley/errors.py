"""Exception types raised by the cayley package."""


class CayleyError(Exception):
    """Base class for every error raised by this package."""


class MalformedInput(CayleyError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class UnsupportedSize(CayleyError):
    pass


class NotSubgroup(CayleyError):
    pass


class NotNormal(CayleyError):
    pass


class NotAGroup(CayleyError):
    pass


class NotASemigroup(CayleyError):
    pass


class NotAQuasigroup(CayleyError):
    pass


class ZeroPowerInSemigroup(CayleyError):
    pass


class NotNilpotent(CayleyError):
    pass


class NotPGroup(CayleyError):
    pass


class EmptyGeneratingSet(CayleyError):
    pass


class NotGenerating(CayleyError):
    pass


class NotMember(CayleyError):
    pass


class MalformedSlp(CayleyError):
    pass


class TooLarge(CayleyError):
    pass


class ConstructionFailed(CayleyError):
    pass


class LengthMismatch(CayleyError):
    pass


class NotSimple(CayleyError):
    pass


class NotApplicable(CayleyError):
    """The structural precondition of a specialised algorithm does not hold."""


class InvalidDesign(CayleyError):
    pass
