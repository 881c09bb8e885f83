"""Exception hierarchy shared by all modules."""


class TreeCutError(Exception):
    pass


# graph construction / queries
class EmptyGraph(TreeCutError, ValueError):
    pass


class LoopEdge(TreeCutError, ValueError):
    pass


class BadEndpoint(TreeCutError, ValueError):
    pass


class BadVertex(TreeCutError, ValueError):
    pass


class SameVertex(TreeCutError, ValueError):
    pass


class InvalidSeparation(TreeCutError, ValueError):
    pass


class InvalidPartition(TreeCutError, ValueError):
    pass


class MalformedModel(TreeCutError, ValueError):
    pass


class InvalidModel(TreeCutError, ValueError):
    pass


# decompositions
class InvalidDecomposition(TreeCutError, ValueError):
    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class UnknownTreeEdge(TreeCutError, KeyError):
    pass


class UnknownNode(TreeCutError, KeyError):
    pass


class VertexNotInBags(TreeCutError, KeyError):
    pass


# 3ECC torsos and gluing
class NotA3ECC(TreeCutError, ValueError):
    pass


class MissingComponent(TreeCutError, KeyError):
    pass


class InvalidInputDecomposition(InvalidDecomposition):
    pass


# certificates and solver
class InsufficientOrders(TreeCutError, ValueError):
    pass


class CertificateCorrupt(TreeCutError, RuntimeError):
    pass


class PreconditionViolated(TreeCutError, ValueError):
    pass


class DegenerateStar(PreconditionViolated):
    pass


class BudgetExceeded(TreeCutError, RuntimeError):
    pass


# game
class TooManyCops(TreeCutError, ValueError):
    pass


class IllegalRobberMove(TreeCutError, ValueError):
    pass


class NoSafeSlab(TreeCutError, RuntimeError):
    pass


# file formats
class ParseError(TreeCutError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CountMismatch(ParseError):
    pass
