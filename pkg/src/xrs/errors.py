"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A scheme or field parameter violates one of its constraints."""


class SingularMatrixError(ValueError):
    """A matrix that was required to be invertible is singular."""


class DecodingFailure(Exception):
    """No error vector within the decoding radius matches the syndrome."""


class DecryptionError(Exception):
    """The ciphertext is not a valid encryption under this private key."""


class FormatError(ValueError):
    """A key, ciphertext or message file does not follow the expected layout."""


class AttackBudgetExceeded(Exception):
    """The decoding attack ran out of iterations before finding a solution."""
