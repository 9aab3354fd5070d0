"""Exception hierarchy shared by the rfg modules."""


class RFGError(Exception):
    """Base class for every error raised by this package."""


class GraphError(RFGError, ValueError):
    pass


class DuplicateVertex(GraphError):
    def __init__(self, vertex):
        super().__init__(f"duplicate vertex {vertex!r}")
        self.vertex = vertex


class SelfLoop(GraphError):
    def __init__(self, vertex):
        super().__init__(f"self-loop at vertex {vertex!r}")
        self.vertex = vertex


class UnknownEndpoint(GraphError):
    def __init__(self, vertex, edge):
        super().__init__(f"edge {edge!r} has undeclared endpoint {vertex!r}")
        self.vertex = vertex
        self.edge = edge


class WordSyntaxError(RFGError, ValueError):
    pass


class UnknownGenerator(RFGError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unknown generator {self.name!r}"


class IdentityElement(RFGError):
    """The input word represents the identity, which nothing separates."""


class NotAPermutation(RFGError, ValueError):
    pass


class NotAPartialInjection(RFGError, ValueError):
    pass


class CommutationFailure(RFGError):
    def __init__(self, edge, vertex):
        a, b = edge
        super().__init__(
            f"permutations for edge {{{a},{b}}} do not commute at vertex {vertex}"
        )
        self.edge = edge
        self.vertex = vertex


class CompletionCommutationFailure(CommutationFailure):
    """Canonical completion produced non-commuting permutations.

    Only possible when the partial cover was not locally isometric.
    """


class IndexOfIntransitive(RFGError):
    pass


class NotLocallyIsometric(RFGError):
    def __init__(self, report):
        super().__init__(f"partial cover has missing corners: {report.violations[:3]}")
        self.report = report


class InternalSearchExhausted(RFGError):
    pass


class FoldingCollapse(RFGError):
    pass


class CertificateError(RFGError):
    pass


class BudgetExceeded(RFGError):
    def __init__(self, limit, what="search"):
        super().__init__(f"{what} exceeded budget {limit}")
        self.limit = limit


class NotInduced(RFGError, ValueError):
    pass


class BadIndices(RFGError, ValueError):
    pass


class BadDimension(RFGError, ValueError):
    pass


class NotUnimodular(RFGError, ValueError):
    pass


class CentralInput(RFGError, ValueError):
    pass


class IdentityInput(RFGError, ValueError):
    pass
