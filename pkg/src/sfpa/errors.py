"""Exception hierarchy for the sfpa package.

The CLI maps these onto exit codes: input problems (parsing, validation)
exit with 1, violated algorithm preconditions (wrong tree shape, caps)
exit with 2.
"""


class SfpaError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SfpaError):
    """Malformed input text.

    Attributes:
        line: 1-based line number of the offending declaration, or None.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class ValidationError(SfpaError):
    """A structurally invalid fault tree."""


class NotATreeError(SfpaError):
    """A tree-only algorithm was applied to a DAG-shaped fault tree.

    Attributes:
        node_name: name of a node with more than one parent.
    """

    def __init__(self, node_name):
        super().__init__("node %r has multiple parents" % node_name)
        self.node_name = node_name


class CapExceededError(SfpaError):
    """An exhaustive operation was asked to enumerate too many events.

    Attributes:
        size: the offending count (e.g. number of basic events).
        cap: the configured limit.
    """

    def __init__(self, size, cap):
        super().__init__("%d basic events exceeds enumeration cap %d" % (size, cap))
        self.size = size
        self.cap = cap


class NoCutSetError(SfpaError):
    """The tree has no cut sets at all (unreliability is exactly zero)."""


class AlgebraError(SfpaError):
    """Invalid polynomial operation (e.g. substituting a variable into
    a polynomial that already contains it)."""


class InfeasibleConfigError(SfpaError):
    """A generator configuration that cannot produce a valid fault tree."""
