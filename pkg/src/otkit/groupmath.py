"""Prime-order multiplicative group arithmetic.

The group is the order-q subgroup of quadratic residues mod a safe prime
P = 2q + 1. Elements are plain ints in [1, P-1] with x^q = 1 mod P; scalars
(exponents) are plain ints reduced mod q. The public element C is sampled as
g^a with a discarded, except in debug groups that retain a so the query-pair
exponent identities can be checked directly.

Fresh safe-prime searches are only practical at small sizes, so the common
production sizes come from pinned moduli (generated once by
scripts/gen_pinned_groups.py and verified by the test suite); C is still
freshly sampled per session.
"""

from dataclasses import dataclass

from .errors import PrimeSearchExhausted, UsageError
from .numth import gen_safe_prime, invmod, powmod
from .rng import RandomSource
from .wire import Reader, encode_uint

GroupElement = int
Scalar = int


@dataclass(frozen=True)
class GroupParams:
    """Subgroup description (P, q, g) plus the public random element C.

    a is normally None; a debug group retains the discrete log of C.
    """

    P: int
    q: int
    g: int
    C: int
    lambda_bits: int
    a: int | None = None

    def elem_bytes(self) -> int:
        return (self.P.bit_length() + 7) // 8


TOY_P, TOY_Q, TOY_G = 23, 11, 4

# Safe primes with q of exactly the keyed bit length; g = 4 = 2^2 is a square,
# so it generates the order-q subgroup in each.
PINNED_SAFE_PRIMES: dict[int, int] = {
    512: 0x13B0B3860808D61F6766990969FF60D1D1E270C51C364203AD2A3477CFC013A7D071D1A97AEB443F9216C3393A6EF5AFCF60053FDDEFEA5A1C25617754ABB620B,
    1024: 0x1EEC692260FA93843898334F5DE9C73519AAE262EB73DCCAE235E40EF5E61A12A6C037F54188F1B8EEC1C411B17AE85AC289864B50ED500AE7CD5208D5BC06516FB904F172352121F349B4198F3F31FE51643D5110423A0091FE6179D9FEAA2EC47EC566DA7B31817ACA390A4F94B0788F456CDEB4D6C2325EC0CEC67237DB153,
    2048: 0x127FF81DBCCB82A8A543F9E3184B4EE14C543D55FF87AC685FD779DB368C6475F4F31373C73176F947D2FAA83A82931A7FC58369929B2A9FC3BA4B48F153411677EF9BC0688E1E53562839AE5880B08C781992103C730EB352B5C15949FCAE2C64C2A0F5BD0A3F0DB592C3CD53A5E0AE14C047175558968F17A93C3F6E3C913A3773CFE565EEFFE2782EE80ADD1F0670C5B6695B95DA36002BA97E33D8F45F07254BEBB906230683FC436D333B10F67EE1CA0031CD9C0A26D2BB13215AF5E23197A5BF170EE4D55623DF24493D1B959296AFBC435AB1B8C65980B082A79CED7466959EF33D505D71B59B64F7414AE66B4B8C2F4286F67A2D0DBB75415594C6B8F,
}
PINNED_G = 4


def toy_group(a: int = 8, retain_dlog: bool = False) -> GroupParams:
    """The canonical brute-forceable group P=23, q=11, g=4 (C = 4^a, default 9)."""
    if not 1 <= a < TOY_Q:
        raise UsageError("toy dlog must be in [1, q)")
    return GroupParams(
        P=TOY_P,
        q=TOY_Q,
        g=TOY_G,
        C=pow(TOY_G, a, TOY_P),
        lambda_bits=TOY_Q.bit_length(),
        a=a if retain_dlog else None,
    )


def gen_group(
    lambda_bits: int,
    rng: RandomSource,
    retain_dlog: bool = False,
    fresh_modulus: bool = False,
    max_attempts: int | None = None,
) -> GroupParams:
    """Group parameters with a q of lambda_bits bits and a fresh C = g^a.

    Pinned moduli are used when available unless fresh_modulus forces a
    search. Raises PrimeSearchExhausted when the search budget runs out.
    """
    if lambda_bits < 4:
        raise UsageError("lambda_bits must be at least 4")
    if not fresh_modulus and lambda_bits in PINNED_SAFE_PRIMES:
        P = PINNED_SAFE_PRIMES[lambda_bits]
        q = (P - 1) // 2
        g = PINNED_G
    else:
        P, q = gen_safe_prime(lambda_bits, rng, max_attempts)
        while True:
            h = 2 + rng.randbelow(P - 3)
            g = powmod(h, 2, P)
            if g != 1:
                break
    a = 1 + rng.randbelow(q - 1)
    C = powmod(g, a, P)
    return GroupParams(
        P=P, q=q, g=g, C=C, lambda_bits=lambda_bits, a=a if retain_dlog else None
    )


def modexp(base: GroupElement, e: Scalar, params: GroupParams) -> GroupElement:
    """base^e mod P with the exponent reduced mod q."""
    return powmod(base, e % params.q, params.P)


def elem_mul(x: GroupElement, y: GroupElement, params: GroupParams) -> GroupElement:
    return x * y % params.P


def elem_div(x: GroupElement, y: GroupElement, params: GroupParams) -> GroupElement:
    """x * y^(-1) mod P."""
    return x * invmod(y, params.P) % params.P


def rand_scalar(params: GroupParams, rng: RandomSource, nonzero: bool = False) -> Scalar:
    """Uniform scalar in [0, q), or [1, q) in nonzero mode."""
    while True:
        v = rng.randbelow(params.q)
        if v or not nonzero:
            return v


def in_subgroup(x: int, params: GroupParams) -> bool:
    return 1 <= x < params.P and powmod(x, params.q, params.P) == 1


def elem_to_bytes(x: GroupElement, params: GroupParams) -> bytes:
    """Canonical fixed-width big-endian form, used as hash input."""
    return x.to_bytes(params.elem_bytes(), "big")


def encode_group_params(params: GroupParams) -> bytes:
    return (
        encode_uint(params.P)
        + encode_uint(params.q)
        + encode_uint(params.g)
        + encode_uint(params.C)
    )


def decode_group_params(buf: bytes) -> GroupParams:
    r = Reader(buf)
    P, q, g, C = r.read_uint(), r.read_uint(), r.read_uint(), r.read_uint()
    r.expect_end()
    return GroupParams(P=P, q=q, g=g, C=C, lambda_bits=q.bit_length())
