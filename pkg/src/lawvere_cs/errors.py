class LawvereCSError(Exception):
    pass


class MalformedTermError(LawvereCSError, ValueError):
    pass


class DimensionError(LawvereCSError, ValueError):
    pass


class PreconditionError(LawvereCSError, ValueError):
    pass


class BudgetExceeded(LawvereCSError, RuntimeError):
    pass


class ParseError(LawvereCSError, ValueError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            where = f"{line}:{col}: "
        else:
            where = f"column {col}: " if col is not None else ""
        super().__init__(where + message)
