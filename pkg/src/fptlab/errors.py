"""Exception hierarchy.

Domain errors (a hypothesis fails, a precondition is violated) and input
errors (unparseable text, malformed JSON) are kept apart because the CLI maps
them to different exit codes.
"""


class FptlabError(Exception):
    """Base class for all library errors."""


class DomainError(FptlabError, ValueError):
    """A mathematical precondition or hypothesis does not hold."""


class TheoremInapplicable(DomainError):
    """The closed-form formula's hypothesis (a1 + a2 <= 1) is violated."""


class NotStabilized(DomainError):
    """A test-ideal chain did not stabilize inside the requested window."""


class InputError(FptlabError, ValueError):
    """Malformed user input: polynomial text, JSON payloads, flags."""


class ParseError(InputError):
    def __init__(self, message, text=None, pos=None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)
