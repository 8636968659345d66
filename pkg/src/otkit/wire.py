"""Low-level payload codecs.

Big integers travel as a 4-byte big-endian length followed by the minimal
big-endian magnitude (zero encodes as length 0, no sign). Byte strings travel
as a 4-byte big-endian length followed by the raw bytes. Composite payloads
are plain concatenations in a fixed field order; Reader walks them back.
"""

from .errors import DecodeError, TruncatedFrame


def encode_uint(x: int) -> bytes:
    if x < 0:
        raise ValueError("negative integers have no wire form")
    mag = x.to_bytes((x.bit_length() + 7) // 8, "big")
    return len(mag).to_bytes(4, "big") + mag


def encode_bytes(b: bytes) -> bytes:
    if len(b) >= 1 << 32:
        raise ValueError("byte string too long for a 4-byte length")
    return len(b).to_bytes(4, "big") + b


class Reader:
    """Sequential decoder over one payload buffer."""

    def __init__(self, buf: bytes):
        self._buf = buf
        self._pos = 0

    def _take(self, n: int) -> bytes:
        if self._pos + n > len(self._buf):
            raise TruncatedFrame(
                f"needed {n} bytes at offset {self._pos}, "
                f"have {len(self._buf) - self._pos}"
            )
        out = self._buf[self._pos : self._pos + n]
        self._pos += n
        return out

    def read_byte(self) -> int:
        return self._take(1)[0]

    def read_u32(self) -> int:
        return int.from_bytes(self._take(4), "big")

    def read_uint(self) -> int:
        n = self.read_u32()
        return int.from_bytes(self._take(n), "big")

    def read_bytes(self) -> bytes:
        n = self.read_u32()
        return self._take(n)

    def expect_end(self) -> None:
        if self._pos != len(self._buf):
            raise DecodeError(
                f"{len(self._buf) - self._pos} unconsumed bytes after payload"
            )
