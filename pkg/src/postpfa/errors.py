"""Exception types shared across the package."""


class PostPFAError(Exception):
    """Base class for all package errors."""


class MalformedAutomaton(PostPFAError):
    """An automaton failed structural validation."""


class ValidationError(MalformedAutomaton):
    """A parsed document describes an inconsistent automaton."""


class ParseError(PostPFAError):
    """A serialized document could not be parsed."""


class BadParameter(PostPFAError):
    """A builder was given a parameter outside its admissible range."""


class NotAMember(PostPFAError):
    """Asked for an honest certificate of a string outside the language."""


class PostselectionUndefined(PostPFAError):
    """Both postselecting states carry zero mass, so no decision exists."""


class EmptyTrialSet(PostPFAError):
    """A Monte Carlo estimate was requested with zero trials."""


class RestartCapExceeded(PostPFAError):
    """A simulated run restarted more times than the configured cap."""


class BudgetExceeded(PostPFAError):
    """An exhaustive search would exceed its certificate budget."""
