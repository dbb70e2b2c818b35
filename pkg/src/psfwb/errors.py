"""Exception types shared across the workbench."""


class PsfwbError(Exception):
    """Base class for domain errors raised by this package."""


class SquareDetected(PsfwbError):
    """A square-free expansion hit a repeated variable."""

    def __init__(self, index):
        super().__init__(f"variable {index} occurs squared")
        self.index = index


class CycleOfLengthAtLeastTwo(PsfwbError):
    """A matrix power's transition graph contains a non-loop cycle.

    Raised by triangularisation when the input is not polynomially
    ambiguous (or the supplied exponent is too small).
    """

    def __init__(self, states):
        super().__init__(f"states {sorted(states)} lie on a common cycle of length >= 2")
        self.states = tuple(sorted(states))


class BudgetExceeded(PsfwbError):
    """A translation would exceed the configured size budget."""

    def __init__(self, required, budget):
        super().__init__(f"translation needs {required} coordinates, budget is {budget}")
        self.required = required
        self.budget = budget


class InsufficientData(PsfwbError):
    """A finite prefix did not pin down a minimal recurrence."""


class IrrationalRoots(PsfwbError):
    """A characteristic polynomial is not a product of rational linear factors."""

    def __init__(self, witness):
        super().__init__(f"characteristic polynomial has irrational roots: {witness}")
        self.witness = witness


class FactorBoundExceeded(PsfwbError):
    """Trial division hit the configured ceiling before finishing."""

    def __init__(self, value, ceiling):
        super().__init__(f"cannot factor {value} by trial division up to {ceiling}")
        self.value = value
        self.ceiling = ceiling


class CopylessViolation(PsfwbError):
    """An update or output expression reads some register more than once."""

    def __init__(self, message, offender=None):
        super().__init__(message)
        self.offender = offender


class CopyPoolExhausted(PsfwbError):
    """A circuit needs more copies of a variable than the pool provides."""

    def __init__(self, variable, copies):
        super().__init__(f"variable {variable!r} needs more than {copies} copies")
        self.variable = variable
        self.copies = copies


class FormatError(PsfwbError):
    """A textual document failed to parse."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
