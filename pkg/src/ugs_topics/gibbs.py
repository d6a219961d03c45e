"""Compiled collapsed Gibbs sampling kernel.

The xoshiro256** generator from rng.py is re-implemented here on numba's
uint64 arithmetic so the compiled sampler consumes the exact stream the
pure-Python generator describes; debug_uniform_stream exposes it for
equivalence tests.

Stream consumption contract (one uniform double per event):
  1. initialization draws one double per token, topic = floor(u * K)
  2. every sweep draws one double per token
Tokens are ordered by document, then ascending token id within the
document's bag, repeated count times.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

_SM_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SM_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_SM_MUL2 = np.uint64(0x94D049BB133111EB)
_U5 = np.uint64(5)
_U7 = np.uint64(7)
_U9 = np.uint64(9)
_U11 = np.uint64(11)
_U17 = np.uint64(17)
_U27 = np.uint64(27)
_U30 = np.uint64(30)
_U31 = np.uint64(31)
_U45 = np.uint64(45)
_U64 = np.uint64(64)
_DOUBLE_UNIT = 2.0 ** -53


@njit(cache=True)
def _rotl(x, k):
    return (x << k) | (x >> (_U64 - k))


@njit(cache=True)
def seed_state_array(seed):
    """SplitMix64-expanded initial state, identical to rng.seed_state."""
    state = np.empty(4, dtype=np.uint64)
    x = np.uint64(seed)
    for i in range(4):
        x = x + _SM_GAMMA
        z = x
        z = (z ^ (z >> _U30)) * _SM_MUL1
        z = (z ^ (z >> _U27)) * _SM_MUL2
        state[i] = z ^ (z >> _U31)
    return state


@njit(cache=True)
def _next_uint64(state):
    result = _rotl(state[1] * _U5, _U7) * _U9
    t = state[1] << _U17
    state[2] ^= state[0]
    state[3] ^= state[1]
    state[1] ^= state[2]
    state[0] ^= state[3]
    state[2] ^= t
    state[3] = _rotl(state[3], _U45)
    return result


@njit(cache=True)
def _next_double(state):
    return (_next_uint64(state) >> _U11) * _DOUBLE_UNIT


@njit(cache=True)
def debug_uniform_stream(seed, n):
    """First n uniform doubles for a seed; test hook for stream equality."""
    state = seed_state_array(seed)
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = _next_double(state)
    return out


@njit(cache=True)
def init_assignments(n_tokens, n_topics, state):
    z = np.empty(n_tokens, dtype=np.int32)
    for j in range(n_tokens):
        k = int(_next_double(state) * n_topics)
        if k >= n_topics:
            k = n_topics - 1
        z[j] = k
    return z


@njit(cache=True)
def run_sweep(z, doc_ids, word_ids, n_dk, n_kv, n_k, alpha, beta, state):
    n_topics = n_kv.shape[0]
    vbeta = n_kv.shape[1] * beta
    cumulative = np.empty(n_topics, dtype=np.float64)
    for j in range(z.shape[0]):
        d = doc_ids[j]
        v = word_ids[j]
        old = z[j]
        n_dk[d, old] -= 1
        n_kv[old, v] -= 1
        n_k[old] -= 1

        total = 0.0
        for k in range(n_topics):
            total += (n_dk[d, k] + alpha[k]) * (n_kv[k, v] + beta) / (n_k[k] + vbeta)
            cumulative[k] = total

        u = _next_double(state) * total
        new = n_topics - 1
        for k in range(n_topics):
            if u < cumulative[k]:
                new = k
                break

        z[j] = new
        n_dk[d, new] += 1
        n_kv[new, v] += 1
        n_k[new] += 1


@njit(cache=True)
def joint_log_likelihood(n_dk, n_kv, n_k, doc_lens, alpha, beta):
    """Collapsed log p(W, Z) up to the assignment-independent constant terms.

    All terms are included, so values are comparable across sweeps and
    against direct enumeration of assignment vectors.
    """
    n_docs, n_topics = n_dk.shape
    vocab_size = n_kv.shape[1]
    alpha0 = 0.0
    lg_alpha = 0.0
    for k in range(n_topics):
        alpha0 += alpha[k]
        lg_alpha += math.lgamma(alpha[k])

    total = n_docs * (math.lgamma(alpha0) - lg_alpha)
    for d in range(n_docs):
        for k in range(n_topics):
            total += math.lgamma(n_dk[d, k] + alpha[k])
        total -= math.lgamma(doc_lens[d] + alpha0)

    vbeta = vocab_size * beta
    total += n_topics * (math.lgamma(vbeta) - vocab_size * math.lgamma(beta))
    for k in range(n_topics):
        for v in range(vocab_size):
            total += math.lgamma(n_kv[k, v] + beta)
        total -= math.lgamma(n_k[k] + vbeta)
    return total


def flatten_bows(bows):
    """Token-stream arrays (doc_ids, word_ids) in the documented order."""
    doc_ids = []
    word_ids = []
    for d, bow in enumerate(bows):
        for v, count in bow:
            doc_ids.extend([d] * count)
            word_ids.extend([v] * count)
    return (
        np.asarray(doc_ids, dtype=np.int32),
        np.asarray(word_ids, dtype=np.int32),
    )


class CollapsedGibbsSampler:
    """Mutable sampling state over a fixed corpus.

    Exposes the count matrices and assignment vector so tests can check
    the consistency invariants after any sweep.
    """

    def __init__(self, bows, vocab_size, n_topics, alpha, beta, seed):
        if not bows:
            raise ValueError("empty corpus")
        for bow in bows:
            if not bow:
                raise ValueError("every document needs at least one token")
        self.alpha = np.asarray(alpha, dtype=np.float64)
        if self.alpha.shape != (n_topics,):
            raise ValueError("alpha length must equal the topic count")
        self.beta = float(beta)
        self.n_topics = n_topics
        self.vocab_size = vocab_size
        self.doc_ids, self.word_ids = flatten_bows(bows)
        if int(self.word_ids.max()) >= vocab_size:
            raise ValueError("token id outside vocabulary")
        self.n_docs = len(bows)
        self.doc_lens = np.bincount(self.doc_ids, minlength=self.n_docs).astype(
            np.int64
        )
        self.state = seed_state_array(np.uint64(seed % (1 << 64)))
        self.z = init_assignments(len(self.doc_ids), n_topics, self.state)

        self.n_dk = np.zeros((self.n_docs, n_topics), dtype=np.int64)
        self.n_kv = np.zeros((n_topics, vocab_size), dtype=np.int64)
        self.n_k = np.zeros(n_topics, dtype=np.int64)
        np.add.at(self.n_dk, (self.doc_ids, self.z), 1)
        np.add.at(self.n_kv, (self.z, self.word_ids), 1)
        np.add.at(self.n_k, self.z, 1)

    def sweep(self):
        run_sweep(
            self.z,
            self.doc_ids,
            self.word_ids,
            self.n_dk,
            self.n_kv,
            self.n_k,
            self.alpha,
            self.beta,
            self.state,
        )

    def joint_log_likelihood(self):
        return joint_log_likelihood(
            self.n_dk, self.n_kv, self.n_k, self.doc_lens, self.alpha, self.beta
        )

    def check_counts(self):
        assert (self.n_dk >= 0).all() and (self.n_kv >= 0).all()
        assert (self.n_dk.sum(axis=1) == self.doc_lens).all()
        assert (self.n_kv.sum(axis=1) == self.n_k).all()
        assert self.n_k.sum() == len(self.z)
