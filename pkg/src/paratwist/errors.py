"""Exception hierarchy shared by all modules."""


class ParatwistError(Exception):
    """Base class for every error raised by this package."""


class InputError(ParatwistError, ValueError):
    """Bad user input: malformed forms, primes, levels or files."""


class NonIntegralResult(InputError):
    """A transform S[A] left the half-integral lattice."""


class NotPositiveDefinite(InputError):
    pass


class NonPIntegral(ParatwistError, ValueError):
    """A rational character argument has p in its denominator."""


class BothVanish(InputError):
    """Leading and linear coefficients both vanish mod p."""


class HypothesisViolated(InputError):
    pass


class LeadingCoeffDivisible(InputError):
    pass


class NotInvertible(InputError, ZeroDivisionError):
    pass


class NonIntegralCoefficient(InputError):
    pass


class OutsideANplus(InputError):
    pass


class OutsideLevel(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateKeyConflict(ParseError):
    pass


class InvalidHeader(ParseError):
    pass


class MissingCoefficient(ParatwistError, KeyError):
    """Raised when a coefficient lookup needs keys that a table lacks.

    ``keys`` holds every missing canonical key, sorted.
    """

    def __init__(self, keys):
        self.keys = sorted(set(keys))
        super().__init__(self.keys)

    def __str__(self) -> str:
        shown = " ".join(",".join(map(str, k)) for k in self.keys)
        return f"missing coefficients for {len(self.keys)} key(s): {shown}"


class MissingJacobiCoefficient(ParatwistError, KeyError):
    def __init__(self, discriminants):
        self.discriminants = sorted(set(discriminants))
        super().__init__(self.discriminants)

    def __str__(self) -> str:
        return "missing Jacobi coefficients for D = " + " ".join(map(str, self.discriminants))


class InternalInvariantError(ParatwistError, AssertionError):
    """A guard that the case hypotheses should make impossible has failed."""
