"""Rate-1/2, K=3 (7,5) convolutional code with hard-decision Viterbi decoding."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BadLength, BitString, EmptyInput, as_bits


@dataclass(frozen=True)
class ConvCodeSpec:
    constraint_length: int = 3
    generators_octal: tuple[int, int] = (0o7, 0o5)
    rate: tuple[int, int] = (1, 2)
    termination: str = "zero_tail"

    def __post_init__(self):
        if (self.constraint_length, tuple(self.generators_octal), tuple(self.rate),
                self.termination) != (3, (0o7, 0o5), (1, 2), "zero_tail"):
            raise ValueError("only the K=3 (7,5) rate-1/2 zero-tail code is supported")


K3_75 = ConvCodeSpec()

TAIL = 2

# State s = (s1 << 1) | s2 with s1 the most recent input bit.
# _NEXT[s][b] is the successor state, _OUT[s][b] the (o1, o2) pair.
_NEXT = [[(b << 1) | (s >> 1) for b in (0, 1)] for s in range(4)]
_OUT = [[(b ^ (s >> 1) ^ (s & 1), b ^ (s & 1)) for b in (0, 1)] for s in range(4)]


def conv_encode(message, spec: ConvCodeSpec = K3_75) -> BitString:
    """Encode ``message`` plus two zero tail bits.

    Per input bit ``b`` with register ``(s1, s2)``: ``o1 = b^s1^s2`` and
    ``o2 = b^s2``. Output length is ``2 * (len(message) + 2)``.

    Raises:
        EmptyInput: if ``message`` is empty.
    """
    m = as_bits(message)
    if m.size == 0:
        raise EmptyInput("cannot encode an empty message")
    u = np.concatenate([m, np.zeros(TAIL, dtype=np.uint8)])
    s1 = np.concatenate([[0], u[:-1]]).astype(np.uint8)
    s2 = np.concatenate([[0, 0], u[:-2]]).astype(np.uint8)
    out = np.empty(2 * u.size, dtype=np.uint8)
    out[0::2] = u ^ s1 ^ s2
    out[1::2] = u ^ s2
    return out


def viterbi_decode(coded, spec: ConvCodeSpec = K3_75) -> BitString:
    """Maximum-likelihood (Hamming metric) decode of a zero-tail codeword.

    Among equally likely messages the lexicographically smallest wins, i.e.
    the one whose first differing bit is 0. Each state keeps the rank of its
    survivor in lexicographic order; since both paths entering a state carry
    the same new input bit, comparing predecessor ranks breaks ties exactly.

    Raises:
        BadLength: if the length is odd or shorter than one tail.
    """
    r = as_bits(coded)
    if r.size % 2 or r.size < 2 * (TAIL + 1):
        raise BadLength(f"coded length must be even and >= 6, got {r.size}")
    steps = r.size // 2
    pairs = r.reshape(steps, 2).tolist()

    inf = float("inf")
    metric = [0.0, inf, inf, inf]
    rank = [0, 1, 2, 3]
    history = []  # per step: (predecessor, input bit) for each state
    for o1, o2 in pairs:
        new_metric = [inf] * 4
        choice = [None] * 4
        key = [None] * 4
        for s in range(4):
            if metric[s] == inf:
                continue
            for b in (0, 1):
                e1, e2 = _OUT[s][b]
                cand = metric[s] + (e1 != o1) + (e2 != o2)
                t = _NEXT[s][b]
                if cand < new_metric[t] or (cand == new_metric[t] and rank[s] < key[t][0]):
                    new_metric[t] = cand
                    choice[t] = (s, b)
                    key[t] = (rank[s], b)
        order = sorted((k, t) for t, k in enumerate(key) if k is not None)
        rank = [4] * 4
        for i, (_, t) in enumerate(order):
            rank[t] = i
        metric = new_metric
        history.append(choice)

    state = 0
    bits = []
    for choice in reversed(history):
        s, b = choice[state]
        bits.append(b)
        state = s
    bits.reverse()
    return np.array(bits[:-TAIL], dtype=np.uint8)
