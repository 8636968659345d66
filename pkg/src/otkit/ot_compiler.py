"""Constant-size-response wrapper around any conventional OT suite.

The receiver ships an encrypted one-hot selector along with its base query.
The sender still computes every base response element, but collapses them
into a single element's worth of ciphertexts by a component-wise homomorphic
inner product with the selector, so the response size stops depending on the
message count.

Embedding: every component travels through the plaintext space as the
big-endian integer of a 2-byte length header followed by the component bytes,
which keeps decoding unambiguous after decryption.
"""

from dataclasses import dataclass

from .base_ot import ConventionalOtSuite
from .errors import (
    DecodeError,
    EmbeddingOverflow,
    IndexOutOfRange,
    KeyTooSmall,
    LengthMismatch,
)
from .paillier import (
    HomCiphertext,
    PaillierPublicKey,
    PaillierSecretKey,
    dec,
    enc,
    hadd,
    hscale,
)
from .primitives import ByteString
from .rng import RandomSource
from .wire import Reader


@dataclass(frozen=True)
class SelectorVector:
    """n encryptions under the receiver's key, decrypting to one-hot at s."""

    entries: tuple[HomCiphertext, ...]


@dataclass(frozen=True)
class CompressedResponse:
    """w ciphertexts, one per base response component; w is constant in n."""

    components: tuple[HomCiphertext, ...]


HEADER_BYTES = 2


def _component_bytes(component) -> bytes:
    if isinstance(component, int):
        return component.to_bytes((component.bit_length() + 7) // 8, "big")
    return bytes(component)


def embed_component(component, pk_R: PaillierPublicKey) -> int:
    """Header + payload as one integer below the plaintext modulus."""
    payload = _component_bytes(component)
    if len(payload) >= 1 << (8 * HEADER_BYTES):
        raise EmbeddingOverflow("component too long for the length header")
    value = int.from_bytes(len(payload).to_bytes(HEADER_BYTES, "big") + payload, "big")
    if value >= pk_R.n:
        raise EmbeddingOverflow("component does not fit below the modulus")
    return value


def unembed_component(value: int, kind: str):
    """Invert embed_component; the header pins the payload length."""
    if value == 0:
        payload = b""
    else:
        minimal = (value.bit_length() + 7) // 8
        payload = None
        for k in range(max(minimal, HEADER_BYTES), minimal + HEADER_BYTES + 1):
            buf = value.to_bytes(k, "big")
            if int.from_bytes(buf[:HEADER_BYTES], "big") == k - HEADER_BYTES:
                payload = buf[HEADER_BYTES:]
                break
        if payload is None:
            raise DecodeError("no length header matches the decrypted value")
    if kind == "elem":
        return int.from_bytes(payload, "big")
    return payload


def comp_gen_query(
    suite: ConventionalOtSuite,
    pk_base,
    n: int,
    s: int,
    pk_R: PaillierPublicKey,
    rng: RandomSource,
    component_bits: int | None = None,
):
    """Base query plus a fresh encrypted one-hot selector at s.

    component_bits, when known at query time, is the widest component the
    base suite will produce; the key must clear it plus header and slack.
    """
    if not 0 <= s < n:
        raise IndexOutOfRange(f"choice {s} outside [0, {n})")
    if component_bits is not None:
        needed = component_bits + 8 * HEADER_BYTES + 8
        if pk_R.bits() <= needed:
            raise KeyTooSmall(f"need a modulus over {needed} bits")
    base_query, base_secret = suite.gen_query(pk_base, n, s, rng)
    selector = SelectorVector(
        entries=tuple(enc(pk_R, 1 if i == s else 0, rng) for i in range(n))
    )
    return base_query, base_secret, selector


def comp_gen_res(
    suite: ConventionalOtSuite,
    msgs: list[ByteString],
    pk_base,
    base_query,
    selector: SelectorVector,
    pk_R: PaillierPublicKey,
    rng: RandomSource,
) -> CompressedResponse:
    """Component-wise inner product of the base response with the selector."""
    if len(msgs) != len(selector.entries):
        raise LengthMismatch(
            f"{len(msgs)} messages against {len(selector.entries)} selector entries"
        )
    elements = suite.gen_res(msgs, pk_base, base_query, rng)
    w = len(suite.component_kinds)
    components = []
    for c in range(w):
        acc = None
        for i, element in enumerate(elements):
            term = hscale(
                pk_R, selector.entries[i], embed_component(element[c], pk_R)
            )
            acc = term if acc is None else hadd(pk_R, acc, term)
        components.append(acc)
    return CompressedResponse(components=tuple(components))


def comp_retrieve(
    suite: ConventionalOtSuite,
    compressed: CompressedResponse,
    sk_R: PaillierSecretKey,
    base_query,
    base_secret,
    pk_base,
    s: int,
) -> ByteString:
    """Decrypt and decode the surviving element, then finish with the suite."""
    element = tuple(
        unembed_component(dec(sk_R, ct), kind)
        for ct, kind in zip(compressed.components, suite.component_kinds)
    )
    return suite.retrieve([element], base_query, base_secret, pk_base, s)


def encode_compressed_response(cr: CompressedResponse, pk_R: PaillierPublicKey) -> bytes:
    """Ciphertexts at the full modulus width, so length is blind to n."""
    width = (pk_R.n_squared.bit_length() + 7) // 8
    out = [len(cr.components).to_bytes(4, "big")]
    for ct in cr.components:
        out.append(width.to_bytes(4, "big") + ct.value.to_bytes(width, "big"))
    return b"".join(out)


def decode_compressed_response(buf: bytes) -> CompressedResponse:
    r = Reader(buf)
    count = r.read_u32()
    components = tuple(HomCiphertext(r.read_uint()) for _ in range(count))
    r.expect_end()
    return CompressedResponse(components=components)
