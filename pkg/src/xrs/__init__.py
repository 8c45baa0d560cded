"""Code-based encryption from shortened expanded generalized Reed-Solomon
codes, together with the square-code and information-set-decoding
analysis tools around it."""

from .cryptosystem import (BlockErrorVector, Ciphertext, PRESETS, PrivateKey,
                           PublicKey, SchemeParams, decode_plaintext,
                           decrypt, encode_plaintext, encrypt, keygen,
                           message_capacity)
from .errors import (AttackBudgetExceeded, DecodingFailure, DecryptionError,
                     FormatError, ParameterError, SingularMatrixError)
from .fields import ExtField, PrimeField
from .grs import GrsCode, random_code, syndrome_decode

__version__ = "0.1.0"

__all__ = [
    "BlockErrorVector", "Ciphertext", "PRESETS", "PrivateKey", "PublicKey",
    "SchemeParams", "decode_plaintext", "decrypt", "encode_plaintext",
    "encrypt", "keygen", "message_capacity",
    "AttackBudgetExceeded", "DecodingFailure", "DecryptionError",
    "FormatError", "ParameterError", "SingularMatrixError",
    "ExtField", "PrimeField", "GrsCode", "random_code", "syndrome_decode",
    "__version__",
]
