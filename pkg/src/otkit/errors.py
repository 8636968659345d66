"""Error taxonomy shared by every module.

ProtocolError covers failures that a party detects mid-protocol (aborts,
tag mismatches, malformed peer data). CodecError covers wire and embedding
failures. UsageError is reserved for caller mistakes (bad flags, out-of-range
inputs) and maps to exit code 2 on the command line.
"""


class OtkitError(Exception):
    """Base class for all toolkit errors."""


class UsageError(OtkitError):
    """Caller passed an input that violates an operation's contract."""


class ProtocolError(OtkitError):
    """A party aborted or rejected data during a protocol run."""


class PrimeSearchExhausted(OtkitError):
    """No suitable prime found within the retry budget."""


class InputTooShort(UsageError):
    """Byte string shorter than the requested split boundary."""


class LengthMismatch(UsageError):
    """Operands that must share a length do not."""


class PlaintextOutOfRange(UsageError):
    """Plaintext outside [0, n) for the given public key."""


class MalformedCiphertext(ProtocolError):
    """Ciphertext not invertible mod n, cannot be decrypted."""


class ConsistencyAbort(ProtocolError):
    """Query pair failed the b0 * b1 = C well-formedness relation."""


class NoTagMatch(ProtocolError):
    """Neither decryption candidate carries the expected tag."""


class AmbiguousTag(ProtocolError):
    """Both decryption candidates carry the expected tag."""


class KeyTooSmall(UsageError):
    """Homomorphic key modulus too short to embed protocol payloads."""


class IndexOutOfRange(UsageError):
    """Record or selector index outside [0, z)."""


class EmbeddingOverflow(UsageError):
    """Payload does not fit below the homomorphic plaintext modulus."""


class DecodeError(ProtocolError):
    """Serialized structure cannot be parsed back."""


class TruncatedFrame(DecodeError):
    """Wire frame shorter than its declared length."""


class UnknownTag(DecodeError):
    """Message-type byte not in the tag table."""


class UnknownRole(DecodeError):
    """Role byte not in the role table."""
