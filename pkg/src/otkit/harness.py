"""Multi-party session engine with transcript capture.

One session owns every role's state and plays the protocol's phases in
their canonical order over an in-process bus. Every inter-role message is framed,
encoded, decoded, and only then consumed by the receiving role, so the wire
codecs are exercised on every hop even without sockets. Transcripts record
the envelopes in send order plus per-role outputs; phase wall-clock timings
ride along for the bench command but stay out of the canonical export.
"""

import enum
import secrets
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from . import supersonic as sup
from .base_ot import (
    decode_np_response,
    encode_np_response,
    encode_response_element,
    np_gen_query,
    np_gen_res,
    np_retrieve,
    np_suite,
    read_response_element,
    NpResponse,
)
from .dq_family import (
    DelegationRequest,
    FinalQueryPair,
    MessageDatabase,
    PartialQueryPair,
    dq_p1_gen_query,
    dq_p2_gen_query,
    dq_r_request,
    dq_r_retrieve,
    dq_s_gen_res,
    dqmr_p1_filter,
    dqmr_s_gen_res_multi,
)
from .duq_family import (
    CompressVector,
    FilteredResponse,
    TaggedResponse,
    duq_r_request,
    duq_r_retrieve,
    duq_s_gen_res,
    duq_t_request,
    duqmr_p1_filter,
    duqmr_r_retrieve,
    duqmr_r_setup,
    duqmr_s_gen_res_multi,
    duqmr_t_setup,
    embedding_min_bits,
)
from .errors import (
    DecodeError,
    ProtocolError,
    TruncatedFrame,
    UnknownRole,
    UnknownTag,
    UsageError,
)
from .groupmath import GroupParams, TOY_Q, elem_mul, gen_group, toy_group
from .ot_compiler import (
    SelectorVector,
    comp_gen_query,
    comp_gen_res,
    comp_retrieve,
    decode_compressed_response,
    encode_compressed_response,
)
from .paillier import HomCiphertext, kgen
from .rng import SeededSource
from .wire import Reader, encode_bytes, encode_uint


class Role(enum.IntEnum):
    SENDER = 1
    RECEIVER = 2
    P1 = 3
    P2 = 4
    ISSUER = 5
    SERVER = 6


class MsgType(enum.IntEnum):
    REQ1 = 0x01
    REQ2 = 0x02
    PARTIAL_Q = 0x03
    FINAL_Q = 0x04
    RESPONSE = 0x05
    RESPONSE_VEC = 0x06
    ISSUER_REQ1 = 0x07
    ISSUER_REQ2 = 0x08
    SP_S = 0x09
    SP_R = 0x0A
    COMPRESS_VEC = 0x0B
    TAGGED_RESPONSE_VEC = 0x0C
    FILTERED_RESPONSE = 0x0D
    SELECTOR_VEC = 0x0E
    COMPRESSED_RESPONSE = 0x0F
    PAD_KEYS = 0x10
    SUP_Q1 = 0x11
    SUP_Q2 = 0x12
    SUP_EPAIR = 0x13
    SUP_RESULT = 0x14
    NP_QUERY = 0x15


@dataclass(frozen=True)
class Envelope:
    src: Role
    dst: Role
    msg_type: MsgType
    payload: bytes


def encode_envelope(e: Envelope) -> bytes:
    """4-byte total length, from-role byte, to-role byte, tag byte, payload."""
    if len(e.payload) >= (1 << 32) - 3:
        raise ValueError("payload too long for the frame")
    total = 3 + len(e.payload)
    return (
        total.to_bytes(4, "big")
        + bytes((e.src.value, e.dst.value, e.msg_type.value))
        + e.payload
    )


def decode_envelope(buf: bytes) -> Envelope:
    if len(buf) < 4:
        raise TruncatedFrame("frame shorter than its length field")
    total = int.from_bytes(buf[:4], "big")
    if total < 3 or len(buf) - 4 != total:
        raise TruncatedFrame(
            f"declared {total} bytes, frame carries {len(buf) - 4}"
        )
    try:
        src = Role(buf[4])
        dst = Role(buf[5])
    except ValueError:
        raise UnknownRole(f"role bytes {buf[4]:#x}/{buf[5]:#x}") from None
    try:
        mtype = MsgType(buf[6])
    except ValueError:
        raise UnknownTag(f"message type byte {buf[6]:#x}") from None
    return Envelope(src=src, dst=dst, msg_type=mtype, payload=buf[7:])


PROTOCOLS = (
    "np-ot",
    "dq-ot",
    "duq-ot",
    "dq-mr",
    "duq-mr",
    "comp-np",
    "supersonic",
)

# per-protocol message-type sequence, in canonical phase order
GOLDEN_PHASES: dict[str, tuple[MsgType, ...]] = {
    "np-ot": (MsgType.NP_QUERY, MsgType.RESPONSE),
    "dq-ot": (
        MsgType.REQ1,
        MsgType.REQ2,
        MsgType.PARTIAL_Q,
        MsgType.FINAL_Q,
        MsgType.RESPONSE,
    ),
    "duq-ot": (
        MsgType.REQ1,
        MsgType.REQ2,
        MsgType.ISSUER_REQ1,
        MsgType.ISSUER_REQ2,
        MsgType.SP_S,
        MsgType.SP_R,
        MsgType.PARTIAL_Q,
        MsgType.FINAL_Q,
        MsgType.RESPONSE,
    ),
    "dq-mr": (
        MsgType.REQ1,
        MsgType.REQ2,
        MsgType.PARTIAL_Q,
        MsgType.FINAL_Q,
        MsgType.RESPONSE_VEC,
        MsgType.RESPONSE,
    ),
    "duq-mr": (
        MsgType.COMPRESS_VEC,
        MsgType.REQ1,
        MsgType.REQ2,
        MsgType.ISSUER_REQ1,
        MsgType.ISSUER_REQ2,
        MsgType.SP_S,
        MsgType.SP_R,
        MsgType.PARTIAL_Q,
        MsgType.FINAL_Q,
        MsgType.TAGGED_RESPONSE_VEC,
        MsgType.FILTERED_RESPONSE,
    ),
    "comp-np": (
        MsgType.NP_QUERY,
        MsgType.SELECTOR_VEC,
        MsgType.COMPRESSED_RESPONSE,
    ),
    "supersonic": (
        MsgType.PAD_KEYS,
        MsgType.SUP_Q1,
        MsgType.SUP_Q2,
        MsgType.SUP_EPAIR,
        MsgType.SUP_RESULT,
    ),
}


@dataclass
class SessionConfig:
    """Inputs and security parameters for one protocol run.

    m0/m1 feed the two-message protocols, db and v the multi-receiver ones.
    s is the choice bit (held by the receiver, or by the issuer in the
    unknown-query variants). tamper is test plumbing: "beta" multiplies one
    final query element, "tag" flips a tag byte at the sender.
    """

    protocol: str
    sigma_bits: int = 128
    lambda_bits: int = 128
    group_bits: int | None = None
    paillier_bits: int | None = None
    toy: bool = False
    seed: int | None = None
    s: int | None = None
    m0: bytes | None = None
    m1: bytes | None = None
    db: tuple[tuple[bytes, bytes], ...] | None = None
    v: int | None = None
    tamper: str | None = None


@dataclass
class SessionTranscript:
    protocol: str
    seed: int
    events: list[Envelope] = field(default_factory=list)
    outputs: dict[str, bytes | str] = field(default_factory=dict)
    phase_times: list[tuple[str, float]] = field(default_factory=list)


def export_transcript(t: SessionTranscript) -> str:
    """Canonical line format: one record per envelope, hex payloads.

    Phase timings are deliberately absent so the export is deterministic
    under a fixed seed.
    """
    lines = [f"protocol {t.protocol}", f"seed {t.seed}"]
    for i, e in enumerate(t.events):
        lines.append(
            f"event {i} {e.src.name} {e.dst.name} {e.msg_type.name} "
            f"{e.payload.hex()}"
        )
    for role in sorted(t.outputs):
        val = t.outputs[role]
        shown = val if isinstance(val, str) else val.hex()
        lines.append(f"output {role} {shown}")
    return "\n".join(lines) + "\n"


def project_view(t: SessionTranscript, role: Role) -> list[Envelope]:
    """The envelopes a role saw: everything it sent or received."""
    return [e for e in t.events if role in (e.src, e.dst)]


def _send(t: SessionTranscript, src: Role, dst: Role, mtype: MsgType, payload: bytes) -> bytes:
    """Frame, encode, decode, record; hand back the decoded payload."""
    env = Envelope(src=src, dst=dst, msg_type=mtype, payload=payload)
    round_tripped = decode_envelope(encode_envelope(env))
    if round_tripped != env:
        raise DecodeError("envelope did not survive its wire round trip")
    t.events.append(round_tripped)
    return round_tripped.payload


@contextmanager
def _phase(t: SessionTranscript, label: str):
    t0 = time.perf_counter()
    yield
    t.phase_times.append((label, time.perf_counter() - t0))


def _validate(cfg: SessionConfig) -> None:
    if cfg.protocol not in PROTOCOLS:
        raise UsageError(f"unknown protocol {cfg.protocol!r}")
    if cfg.sigma_bits <= 0 or cfg.sigma_bits % 8:
        raise UsageError("sigma_bits must be a positive multiple of 8")
    if cfg.lambda_bits <= 0 or cfg.lambda_bits % 8:
        raise UsageError("lambda_bits must be a positive multiple of 8")
    if cfg.s not in (0, 1):
        raise UsageError("choice bit s must be 0 or 1")
    sigma = cfg.sigma_bits // 8
    multi = cfg.protocol in ("dq-mr", "duq-mr")
    if multi:
        if not cfg.db:
            raise UsageError("multi-receiver protocols need a message database")
        if cfg.v is None:
            raise UsageError("multi-receiver protocols need the index v")
        for m0, m1 in cfg.db:
            if len(m0) != sigma or len(m1) != sigma:
                raise UsageError("database entries must be exactly sigma bits")
        if not 0 <= cfg.v < len(cfg.db):
            raise UsageError(f"index v={cfg.v} outside the database")
    else:
        if cfg.m0 is None or cfg.m1 is None:
            raise UsageError("two-message protocols need m0 and m1")
        if len(cfg.m0) != sigma or len(cfg.m1) != sigma:
            raise UsageError("messages must be exactly sigma bits")
    if cfg.tamper is not None:
        allowed = {
            "dq-ot": ("beta",),
            "dq-mr": ("beta",),
            "duq-ot": ("beta", "tag"),
            "duq-mr": ("beta", "tag"),
        }.get(cfg.protocol, ())
        if cfg.tamper not in allowed:
            raise UsageError(
                f"tamper {cfg.tamper!r} not applicable to {cfg.protocol}"
            )
    needs_group = cfg.protocol != "supersonic"
    if needs_group and not cfg.toy and cfg.group_bits is None:
        raise UsageError("group protocols need group_bits or toy mode")


def _make_group(cfg: SessionConfig, rng) -> GroupParams:
    if cfg.toy:
        return toy_group(a=1 + rng.randbelow(TOY_Q - 1))
    return gen_group(cfg.group_bits, rng)


def _paillier_bits(cfg: SessionConfig, params: GroupParams) -> int:
    if cfg.paillier_bits is not None:
        return cfg.paillier_bits
    needed = embedding_min_bits(params, cfg.sigma_bits, cfg.lambda_bits)
    return max(256, (needed // 64 + 2) * 64)


def run_session(config: SessionConfig) -> SessionTranscript:
    """Execute one protocol run and return its full transcript.

    Protocol errors (aborts, tag failures) do not raise: they are recorded
    in outputs against the role that hit them, and the run stops there.
    """
    _validate(config)
    seed = config.seed if config.seed is not None else secrets.randbits(64)
    rng = SeededSource(seed)
    t = SessionTranscript(protocol=config.protocol, seed=seed)
    runner = _RUNNERS[config.protocol]
    runner(config, rng, t)
    return t


# ---------------------------------------------------------------- runners


def _run_np(cfg: SessionConfig, rng, t: SessionTranscript) -> None:
    with _phase(t, "init"):
        params = _make_group(cfg, rng)
    with _phase(t, "gen_query"):
        query, secret = np_gen_query(params, cfg.s, rng)
        q_rx = Reader(_send(t, Role.RECEIVER, Role.SENDER, MsgType.NP_QUERY,
                            encode_uint(query))).read_uint()
    with _phase(t, "gen_res"):
        res = np_gen_res(cfg.m0, cfg.m1, params, q_rx, rng)
        res_rx = decode_np_response(
            _send(t, Role.SENDER, Role.RECEIVER, MsgType.RESPONSE,
                  encode_np_response(res))
        )
    with _phase(t, "retrieve"):
        t.outputs[Role.RECEIVER.name] = np_retrieve(res_rx, secret, params)


def _encode_delegation(req: DelegationRequest) -> bytes:
    return bytes((req.share,)) + encode_uint(req.blind)


def _decode_delegation(buf: bytes) -> DelegationRequest:
    r = Reader(buf)
    share = r.read_byte()
    blind = r.read_uint()
    r.expect_end()
    return DelegationRequest(share=share, blind=blind)


def _encode_pair(x: int, y: int) -> bytes:
    return encode_uint(x) + encode_uint(y)


def _decode_pair(buf: bytes) -> tuple[int, int]:
    r = Reader(buf)
    out = (r.read_uint(), r.read_uint())
    r.expect_end()
    return out


def _tampered(query: FinalQueryPair, cfg: SessionConfig, params: GroupParams) -> FinalQueryPair:
    if cfg.tamper == "beta":
        return FinalQueryPair(b0=elem_mul(query.b0, params.g, params), b1=query.b1)
    return query


def _flip_tag(tag: bytes, cfg: SessionConfig) -> bytes:
    if cfg.tamper == "tag":
        return bytes((tag[0] ^ 0x01,)) + tag[1:]
    return tag


def _run_dq(cfg: SessionConfig, rng, t: SessionTranscript) -> None:
    with _phase(t, "init"):
        params = _make_group(cfg, rng)
    with _phase(t, "request"):
        req1, req2 = dq_r_request(cfg.s, params, rng)
        req1_rx = _decode_delegation(
            _send(t, Role.RECEIVER, Role.P1, MsgType.REQ1, _encode_delegation(req1))
        )
        req2_rx = _decode_delegation(
            _send(t, Role.RECEIVER, Role.P2, MsgType.REQ2, _encode_delegation(req2))
        )
    with _phase(t, "partial_query"):
        partial = dq_p2_gen_query(req2_rx, params)
        d_rx = _decode_pair(
            _send(t, Role.P2, Role.P1, MsgType.PARTIAL_Q,
                  _encode_pair(partial.d0, partial.d1))
        )
    with _phase(t, "final_query"):
        final = dq_p1_gen_query(req1_rx, PartialQueryPair(*d_rx), params)
        final = _tampered(final, cfg, params)
        b_rx = _decode_pair(
            _send(t, Role.P1, Role.SENDER, MsgType.FINAL_Q,
                  _encode_pair(final.b0, final.b1))
        )
    with _phase(t, "gen_res"):
        try:
            res = dq_s_gen_res(cfg.m0, cfg.m1, params, FinalQueryPair(*b_rx), rng)
        except ProtocolError as err:
            t.outputs[Role.SENDER.name] = f"error:{type(err).__name__}"
            return
        res_rx = decode_np_response(
            _send(t, Role.SENDER, Role.RECEIVER, MsgType.RESPONSE,
                  encode_np_response(res))
        )
    with _phase(t, "retrieve"):
        t.outputs[Role.RECEIVER.name] = dq_r_retrieve(
            res_rx, req1, req2, cfg.s, params
        )


def _encode_response_vec(responses) -> bytes:
    out = [len(responses).to_bytes(4, "big")]
    for res in responses:
        out.append(encode_np_response(res))
    return b"".join(out)


def _decode_response_vec(buf: bytes) -> list[NpResponse]:
    r = Reader(buf)
    count = r.read_u32()
    out = []
    for _ in range(count):
        e0 = read_response_element(r)
        e1 = read_response_element(r)
        out.append(NpResponse(e0=e0, e1=e1))
    r.expect_end()
    return out


def _run_dq_mr(cfg: SessionConfig, rng, t: SessionTranscript) -> None:
    with _phase(t, "init"):
        params = _make_group(cfg, rng)
        db = MessageDatabase(pairs=tuple(cfg.db))
    with _phase(t, "request"):
        req1, req2 = dq_r_request(cfg.s, params, rng)
        req1_rx = _decode_delegation(
            _send(t, Role.RECEIVER, Role.P1, MsgType.REQ1, _encode_delegation(req1))
        )
        req2_rx = _decode_delegation(
            _send(t, Role.RECEIVER, Role.P2, MsgType.REQ2, _encode_delegation(req2))
        )
    with _phase(t, "partial_query"):
        partial = dq_p2_gen_query(req2_rx, params)
        d_rx = _decode_pair(
            _send(t, Role.P2, Role.P1, MsgType.PARTIAL_Q,
                  _encode_pair(partial.d0, partial.d1))
        )
    with _phase(t, "final_query"):
        final = dq_p1_gen_query(req1_rx, PartialQueryPair(*d_rx), params)
        final = _tampered(final, cfg, params)
        b_rx = _decode_pair(
            _send(t, Role.P1, Role.SENDER, MsgType.FINAL_Q,
                  _encode_pair(final.b0, final.b1))
        )
    with _phase(t, "gen_res"):
        try:
            responses = dqmr_s_gen_res_multi(db, params, FinalQueryPair(*b_rx), rng)
        except ProtocolError as err:
            t.outputs[Role.SENDER.name] = f"error:{type(err).__name__}"
            return
        vec_rx = _decode_response_vec(
            _send(t, Role.SENDER, Role.P1, MsgType.RESPONSE_VEC,
                  _encode_response_vec(responses))
        )
    with _phase(t, "filter"):
        picked = dqmr_p1_filter(vec_rx, cfg.v)
        res_rx = decode_np_response(
            _send(t, Role.P1, Role.RECEIVER, MsgType.RESPONSE,
                  encode_np_response(picked))
        )
    with _phase(t, "retrieve"):
        t.outputs[Role.RECEIVER.name] = dq_r_retrieve(
            res_rx, req1, req2, cfg.s, params
        )


def _issuer_phase(cfg, rng, t: SessionTranscript):
    """Issuer distribution common to both unknown-query runs.

    Returns what each party decoded: (s1, s2 at helpers, tag at sender,
    (share2, tag) at receiver, bundle at issuer).
    """
    bundle = duq_t_request(cfg.s, cfg.lambda_bits, rng)
    s1_rx = Reader(
        _send(t, Role.ISSUER, Role.P1, MsgType.ISSUER_REQ1, bytes((bundle.share1,)))
    ).read_byte()
    s2_rx = Reader(
        _send(t, Role.ISSUER, Role.P2, MsgType.ISSUER_REQ2, bytes((bundle.share2,)))
    ).read_byte()
    tag_s = _flip_tag(bundle.tag, cfg)
    sp_s = Reader(
        _send(t, Role.ISSUER, Role.SENDER, MsgType.SP_S, encode_bytes(tag_s))
    ).read_bytes()
    sp_r_reader = Reader(
        _send(t, Role.ISSUER, Role.RECEIVER, MsgType.SP_R,
              bytes((bundle.share2,)) + encode_bytes(bundle.tag))
    )
    r_share2 = sp_r_reader.read_byte()
    r_tag = sp_r_reader.read_bytes()
    return s1_rx, s2_rx, sp_s, (r_share2, r_tag)


def _run_duq(cfg: SessionConfig, rng, t: SessionTranscript) -> None:
    with _phase(t, "init"):
        params = _make_group(cfg, rng)
    with _phase(t, "request"):
        r1, r2 = duq_r_request(params, rng)
        r1_rx = Reader(
            _send(t, Role.RECEIVER, Role.P1, MsgType.REQ1, encode_uint(r1))
        ).read_uint()
        r2_rx = Reader(
            _send(t, Role.RECEIVER, Role.P2, MsgType.REQ2, encode_uint(r2))
        ).read_uint()
    with _phase(t, "issue"):
        s1_rx, s2_rx, tag_at_s, (r_share2, r_tag) = _issuer_phase(cfg, rng, t)
    with _phase(t, "partial_query"):
        partial = dq_p2_gen_query(
            DelegationRequest(share=s2_rx, blind=r2_rx), params
        )
        d_rx = _decode_pair(
            _send(t, Role.P2, Role.P1, MsgType.PARTIAL_Q,
                  _encode_pair(partial.d0, partial.d1))
        )
    with _phase(t, "final_query"):
        final = dq_p1_gen_query(
            DelegationRequest(share=s1_rx, blind=r1_rx),
            PartialQueryPair(*d_rx),
            params,
        )
        final = _tampered(final, cfg, params)
        b_rx = _decode_pair(
            _send(t, Role.P1, Role.SENDER, MsgType.FINAL_Q,
                  _encode_pair(final.b0, final.b1))
        )
    with _phase(t, "gen_res"):
        try:
            res = duq_s_gen_res(
                cfg.m0, cfg.m1, params, FinalQueryPair(*b_rx), tag_at_s, rng
            )
        except ProtocolError as err:
            t.outputs[Role.SENDER.name] = f"error:{type(err).__name__}"
            return
        res_rx = decode_np_response(
            _send(t, Role.SENDER, Role.RECEIVER, MsgType.RESPONSE,
                  encode_response_element(res.pair[0])
                  + encode_response_element(res.pair[1]))
        )
    with _phase(t, "retrieve"):
        try:
            t.outputs[Role.RECEIVER.name] = duq_r_retrieve(
                TaggedResponse(pair=(res_rx.e0, res_rx.e1)),
                r1, r2, r_share2, r_tag, params,
            )
        except ProtocolError as err:
            t.outputs[Role.RECEIVER.name] = f"error:{type(err).__name__}"


def _run_duq_mr(cfg: SessionConfig, rng, t: SessionTranscript) -> None:
    with _phase(t, "init"):
        params = _make_group(cfg, rng)
        db = MessageDatabase(pairs=tuple(cfg.db))
        pk_j, sk_j = duqmr_r_setup(
            _paillier_bits(cfg, params),
            rng,
            group=params,
            sigma_bits=cfg.sigma_bits,
            lambda_bits=cfg.lambda_bits,
        )
    with _phase(t, "compress_vector"):
        w = duqmr_t_setup(db.z, cfg.v, pk_j, rng)
        w_reader = Reader(
            _send(t, Role.ISSUER, Role.P1, MsgType.COMPRESS_VEC,
                  len(w.entries).to_bytes(4, "big")
                  + b"".join(encode_uint(c.value) for c in w.entries))
        )
        w_rx = CompressVector(
            entries=tuple(
                HomCiphertext(w_reader.read_uint())
                for _ in range(w_reader.read_u32())
            )
        )
        w_reader.expect_end()
    with _phase(t, "request"):
        r1, r2 = duq_r_request(params, rng)
        r1_rx = Reader(
            _send(t, Role.RECEIVER, Role.P1, MsgType.REQ1, encode_uint(r1))
        ).read_uint()
        r2_rx = Reader(
            _send(t, Role.RECEIVER, Role.P2, MsgType.REQ2, encode_uint(r2))
        ).read_uint()
    with _phase(t, "issue"):
        s1_rx, s2_rx, tag_at_s, (r_share2, r_tag) = _issuer_phase(cfg, rng, t)
    with _phase(t, "partial_query"):
        partial = dq_p2_gen_query(
            DelegationRequest(share=s2_rx, blind=r2_rx), params
        )
        d_rx = _decode_pair(
            _send(t, Role.P2, Role.P1, MsgType.PARTIAL_Q,
                  _encode_pair(partial.d0, partial.d1))
        )
    with _phase(t, "final_query"):
        final = dq_p1_gen_query(
            DelegationRequest(share=s1_rx, blind=r1_rx),
            PartialQueryPair(*d_rx),
            params,
        )
        final = _tampered(final, cfg, params)
        b_rx = _decode_pair(
            _send(t, Role.P1, Role.SENDER, MsgType.FINAL_Q,
                  _encode_pair(final.b0, final.b1))
        )
    with _phase(t, "gen_res"):
        try:
            responses = duqmr_s_gen_res_multi(
                db, params, FinalQueryPair(*b_rx), tag_at_s, rng
            )
        except ProtocolError as err:
            t.outputs[Role.SENDER.name] = f"error:{type(err).__name__}"
            return
        vec_reader = Reader(
            _send(t, Role.SENDER, Role.P1, MsgType.TAGGED_RESPONSE_VEC,
                  len(responses).to_bytes(4, "big")
                  + b"".join(
                      encode_response_element(res.pair[0])
                      + encode_response_element(res.pair[1])
                      for res in responses
                  ))
        )
        count = vec_reader.read_u32()
        vec_rx = [
            TaggedResponse(pair=(read_response_element(vec_reader),
                                 read_response_element(vec_reader)))
            for _ in range(count)
        ]
        vec_reader.expect_end()
    with _phase(t, "filter"):
        filtered = duqmr_p1_filter(vec_rx, w_rx, pk_j)
        f_reader = Reader(
            _send(t, Role.P1, Role.RECEIVER, MsgType.FILTERED_RESPONSE,
                  b"".join(encode_uint(o.value)
                           for o in (filtered.o00, filtered.o01,
                                     filtered.o10, filtered.o11)))
        )
        f_rx = FilteredResponse(
            o00=HomCiphertext(f_reader.read_uint()),
            o01=HomCiphertext(f_reader.read_uint()),
            o10=HomCiphertext(f_reader.read_uint()),
            o11=HomCiphertext(f_reader.read_uint()),
        )
        f_reader.expect_end()
    with _phase(t, "retrieve"):
        try:
            t.outputs[Role.RECEIVER.name] = duqmr_r_retrieve(
                f_rx, sk_j, r1, r2, r_share2, r_tag, cfg.sigma_bits, params
            )
        except ProtocolError as err:
            t.outputs[Role.RECEIVER.name] = f"error:{type(err).__name__}"


def _run_comp_np(cfg: SessionConfig, rng, t: SessionTranscript) -> None:
    suite = np_suite()
    with _phase(t, "init"):
        params = _make_group(cfg, rng)
        pk_R, sk_R = kgen(_paillier_bits(cfg, params), rng)
    with _phase(t, "gen_query"):
        query, secret, selector = comp_gen_query(
            suite, params, 2, cfg.s, pk_R, rng,
            component_bits=max(params.P.bit_length(), cfg.sigma_bits),
        )
        q_rx = Reader(
            _send(t, Role.RECEIVER, Role.SENDER, MsgType.NP_QUERY,
                  encode_uint(query))
        ).read_uint()
        sel_reader = Reader(
            _send(t, Role.RECEIVER, Role.SENDER, MsgType.SELECTOR_VEC,
                  len(selector.entries).to_bytes(4, "big")
                  + b"".join(encode_uint(c.value) for c in selector.entries))
        )
        sel_rx = SelectorVector(
            entries=tuple(
                HomCiphertext(sel_reader.read_uint())
                for _ in range(sel_reader.read_u32())
            )
        )
        sel_reader.expect_end()
    with _phase(t, "gen_res"):
        compressed = comp_gen_res(
            suite, [cfg.m0, cfg.m1], params, q_rx, sel_rx, pk_R, rng
        )
        cr_rx = decode_compressed_response(
            _send(t, Role.SENDER, Role.RECEIVER, MsgType.COMPRESSED_RESPONSE,
                  encode_compressed_response(compressed, pk_R))
        )
    with _phase(t, "retrieve"):
        t.outputs[Role.RECEIVER.name] = comp_retrieve(
            suite, cr_rx, sk_R, query, secret, params, cfg.s
        )


def _run_supersonic(cfg: SessionConfig, rng, t: SessionTranscript) -> None:
    with _phase(t, "setup"):
        keys = sup.sup_setup(cfg.sigma_bits, rng)
        k_reader = Reader(
            _send(t, Role.RECEIVER, Role.SENDER, MsgType.PAD_KEYS,
                  encode_bytes(keys.k0) + encode_bytes(keys.k1))
        )
        keys_at_s = sup.PadKeys(k0=k_reader.read_bytes(), k1=k_reader.read_bytes())
        k_reader.expect_end()
    with _phase(t, "gen_query"):
        q1, q2 = sup.sup_gen_query(cfg.s, rng)
        q1_rx = Reader(
            _send(t, Role.RECEIVER, Role.SENDER, MsgType.SUP_Q1, bytes((q1,)))
        ).read_byte()
        q2_rx = Reader(
            _send(t, Role.RECEIVER, Role.SERVER, MsgType.SUP_Q2, bytes((q2,)))
        ).read_byte()
    with _phase(t, "gen_res"):
        ep = sup.sup_gen_res(cfg.m0, cfg.m1, keys_at_s, q1_rx)
        ep_reader = Reader(
            _send(t, Role.SENDER, Role.SERVER, MsgType.SUP_EPAIR,
                  encode_bytes(ep.c0) + encode_bytes(ep.c1))
        )
        ep_rx = sup.EncPair(c0=ep_reader.read_bytes(), c1=ep_reader.read_bytes())
        ep_reader.expect_end()
    with _phase(t, "obl_filter"):
        res = sup.sup_obl_filter(ep_rx, q2_rx)
        res_rx = Reader(
            _send(t, Role.SERVER, Role.RECEIVER, MsgType.SUP_RESULT,
                  encode_bytes(res))
        ).read_bytes()
    with _phase(t, "retrieve"):
        t.outputs[Role.RECEIVER.name] = sup.sup_retrieve(res_rx, keys, cfg.s)


_RUNNERS = {
    "np-ot": _run_np,
    "dq-ot": _run_dq,
    "duq-ot": _run_duq,
    "dq-mr": _run_dq_mr,
    "duq-mr": _run_duq_mr,
    "comp-np": _run_comp_np,
    "supersonic": _run_supersonic,
}
