"""Delegated-query OT and its multi-receiver extension.

The receiver never computes its own query: it splits the choice bit into XOR
shares and hands each helper server a share plus a fresh blind. P2 builds a
partial query pair from C and its blind, P1 finishes the pair with its own
blind, and the sender answers only if the pair multiplies back to C. The
receiver unmasks with the combined exponent x = r2 + r1 * (-1)^s2.

In the multi-receiver form the sender answers with one response pair per
database entry and P1 forwards exactly the pair at the receiver's index v.
"""

from dataclasses import dataclass

from .base_ot import NpResponse, np_gen_res, unmask_element
from .errors import ConsistencyAbort, IndexOutOfRange, UsageError
from .groupmath import (
    GroupElement,
    GroupParams,
    Scalar,
    elem_div,
    elem_mul,
    modexp,
    rand_scalar,
)
from .primitives import ByteString, ss_share
from .rng import RandomSource


@dataclass(frozen=True)
class DelegationRequest:
    """One helper's slice of the delegated query: a bit share and a blind."""

    share: int
    blind: Scalar


@dataclass(frozen=True)
class PartialQueryPair:
    d0: GroupElement
    d1: GroupElement


@dataclass(frozen=True)
class FinalQueryPair:
    b0: GroupElement
    b1: GroupElement


@dataclass(frozen=True)
class MessageDatabase:
    """Sender's ordered vector of message pairs, uniform length per component."""

    pairs: tuple[tuple[ByteString, ByteString], ...]

    def __post_init__(self):
        if not self.pairs:
            raise UsageError("database needs at least one pair")
        sigma = len(self.pairs[0][0])
        for m0, m1 in self.pairs:
            if len(m0) != sigma or len(m1) != sigma:
                raise UsageError("database entries must share one length")

    @property
    def z(self) -> int:
        return len(self.pairs)

    def sigma_bytes(self) -> int:
        return len(self.pairs[0][0])


def dq_r_request(
    s: int, pk: GroupParams, rng: RandomSource
) -> tuple[DelegationRequest, DelegationRequest]:
    """Split s into shares and pair each with an independent blind."""
    if s not in (0, 1):
        raise UsageError("choice bit must be 0 or 1")
    shares = ss_share(s, rng)
    r1 = rand_scalar(pk, rng)
    r2 = rand_scalar(pk, rng)
    return (
        DelegationRequest(share=shares.s1, blind=r1),
        DelegationRequest(share=shares.s2, blind=r2),
    )


def dq_p2_gen_query(req2: DelegationRequest, pk: GroupParams) -> PartialQueryPair:
    """Pair with g^r2 in slot share and C/g^r2 in the other slot."""
    gr2 = modexp(pk.g, req2.blind, pk)
    d = [0, 0]
    d[req2.share] = gr2
    d[1 - req2.share] = elem_div(pk.C, gr2, pk)
    return PartialQueryPair(d0=d[0], d1=d[1])


def dq_p1_gen_query(
    req1: DelegationRequest, partial: PartialQueryPair, pk: GroupParams
) -> FinalQueryPair:
    """Finish the pair: slot share takes d0 * g^r1, the other d1 / g^r1."""
    gr1 = modexp(pk.g, req1.blind, pk)
    b = [0, 0]
    b[req1.share] = elem_mul(partial.d0, gr1, pk)
    b[1 - req1.share] = elem_div(partial.d1, gr1, pk)
    return FinalQueryPair(b0=b[0], b1=b[1])


def check_consistency(query: FinalQueryPair, pk: GroupParams) -> None:
    """Abort unless b0 * b1 = C."""
    if elem_mul(query.b0, query.b1, pk) != pk.C:
        raise ConsistencyAbort("query pair does not multiply to C")


def dq_s_gen_res(
    m0: ByteString,
    m1: ByteString,
    pk: GroupParams,
    query: FinalQueryPair,
    rng: RandomSource,
) -> NpResponse:
    """Answer a well-formed pair exactly like the base OT sender."""
    check_consistency(query, pk)
    return np_gen_res(m0, m1, pk, query.b0, rng)


def retrieval_exponent(
    blind1: Scalar, blind2: Scalar, share2: int, pk: GroupParams
) -> Scalar:
    """x = r2 + r1 * (-1)^s2, reduced into [0, q)."""
    sign = 1 if share2 == 0 else -1
    return (blind2 + sign * blind1) % pk.q


def dq_r_retrieve(
    res: NpResponse,
    req1: DelegationRequest,
    req2: DelegationRequest,
    s: int,
    pk: GroupParams,
) -> ByteString:
    """m_s, unmasked with the combined exponent."""
    x = retrieval_exponent(req1.blind, req2.blind, req2.share, pk)
    element = res.e0 if s == 0 else res.e1
    return unmask_element(element, x, pk)


def dqmr_s_gen_res_multi(
    db: MessageDatabase,
    pk: GroupParams,
    query: FinalQueryPair,
    rng: RandomSource,
) -> list[NpResponse]:
    """One independent response pair per database entry."""
    check_consistency(query, pk)
    return [np_gen_res(m0, m1, pk, query.b0, rng) for m0, m1 in db.pairs]


def dqmr_p1_filter(responses: list[NpResponse], v: int) -> NpResponse:
    """Forward exactly the pair at index v; the rest never leave P1."""
    if not 0 <= v < len(responses):
        raise IndexOutOfRange(f"index {v} outside [0, {len(responses)})")
    return responses[v]
