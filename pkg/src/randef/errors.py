"""Exception hierarchy shared across the package."""


class RandefError(Exception):
    """Base class for all domain errors raised by randef."""


# --- stepcode ---

class InvalidSequence(RandefError):
    """Sequence violates the codec's invariants (count, order, bounds)."""


class DuplicateNumberInDraw(InvalidSequence):
    pass


class OutOfRange(InvalidSequence):
    pass


class MalformedBits(RandefError):
    """Bit string is not a valid codeword sequence."""


class InvalidDecode(RandefError):
    """Codewords parsed but the decoded steps are not a legal sequence."""


# --- models ---

class ZeroProbabilityBlock(RandefError):
    """Event string contains a block the model assigns probability 0."""


class IncompatibleModels(RandefError):
    """Two models disagree on block size or precision."""


class NegativeCost(RandefError):
    pass


# --- observer ---

class NoAdmissibleModel(RandefError):
    """No candidate-family member is both optimal and typical for the history."""


# --- conjunction ---

class EmptyString(RandefError):
    pass


class NoTypicalSample(RandefError):
    """Rejection sampling failed to produce a typical string within budget."""


class DegenerateModel(RandefError):
    """Model is a point mass; no conjunction witness can exist."""


class NotFoundWithinBudget(RandefError):
    pass


# --- lotto ---

class ParseError(RandefError):
    pass


class EmptyCorpus(RandefError):
    pass


class BudgetExceeded(RandefError):
    pass


class BandUnsatisfiable(RandefError):
    pass


class TooFewCandidates(RandefError):
    pass
