"""Minimally balanced bivariate words: recognition, enumeration, counting.

A nonempty word over {x, y} is minimally balanced when its imbalance is
zero and every proper nonempty prefix has strictly positive imbalance;
equivalently it is x*d*y for a Dyck word d.  Such words form a
prefix-free set, which is what makes parsing concatenations of them
unambiguous.
"""

from __future__ import annotations

from math import comb

from ncfactor.ncpoly import X, Y


def catalan(k):
    """The exact k-th Catalan number."""
    if k < 0:
        raise ValueError("catalan of negative index")
    return comb(2 * k, k) // (k + 1)


def is_minimally_balanced(word):
    if not word:
        return False
    run = 0
    for c in word[:-1]:
        run += 1 if c == X else -1
        if run <= 0:
            return False
    run += 1 if word[-1] == X else -1
    return run == 0


def dyck_words(half_length):
    """All Dyck words of length 2*half_length, ascending in the word order.

    y sorts below x, so the generator takes the y-branch first whenever
    the prefix condition (never more y than x) allows it.
    """
    word = [0] * (2 * half_length)

    def rec(pos, xs, ys):
        if pos == len(word):
            yield tuple(word)
            return
        if ys < xs:
            word[pos] = Y
            yield from rec(pos + 1, xs, ys + 1)
        if xs < half_length:
            word[pos] = X
            yield from rec(pos + 1, xs + 1, ys)

    yield from rec(0, 0, 0)


def minimally_balanced_words(length):
    """All minimally balanced words of the given even length, ascending."""
    if length < 2 or length % 2:
        return
    for d in dyck_words(length // 2 - 1):
        yield (X,) + d + (Y,)


def minimally_balanced_up_to(max_length):
    """All minimally balanced words of length <= max_length, shortest first
    and ascending within a length — the canonical indexing u_1, u_2, ...
    """
    out = []
    for length in range(2, max_length + 1, 2):
        out.extend(minimally_balanced_words(length))
    return out


def paper_family_words(length):
    """Words xx*d*yy of the given length (d Dyck), ascending; these are the
    uniform-length minimally balanced words the recovery automaton uses."""
    if length < 4 or length % 2:
        return
    for d in dyck_words(length // 2 - 2):
        yield (X, X) + d + (Y, Y)


class WordSet:
    """An ordered list of n distinct minimally balanced words."""

    __slots__ = ("n", "words", "mode")

    def __init__(self, words, mode):
        words = tuple(tuple(w) for w in words)
        if not words:
            raise ValueError("empty word set")
        for w in words:
            if not is_minimally_balanced(w):
                raise ValueError("word is not minimally balanced")
        if len(set(words)) != len(words):
            raise ValueError("duplicate words")
        for i, w1 in enumerate(words):
            for w2 in words[i + 1:]:
                shorter, longer = sorted((w1, w2), key=len)
                assert longer[:len(shorter)] != shorter, \
                    "minimally balanced words should be prefix-free"
        self.n = len(words)
        self.words = words
        self.mode = mode

    def max_length(self):
        return max(len(w) for w in self.words)

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, WordSet) and self.words == other.words

    def __repr__(self):
        return "WordSet(n=%d, mode=%s)" % (self.n, self.mode)


def enumerate_words(n, mode="compact"):
    """The word set defining the embedding of n variables.

    compact: the n shortest minimally balanced words, shortest first and
    ascending within a length.  paper: the first n words xx*d*yy of the
    single length 2*l with l = max(ceil(log2(4n)), 7), ascending.
    """
    if n < 1:
        raise ValueError("need at least one word")
    if mode == "compact":
        words = []
        length = 2
        while len(words) < n:
            for w in minimally_balanced_words(length):
                words.append(w)
                if len(words) == n:
                    break
            length += 2
        return WordSet(words, "compact")
    if mode == "paper":
        ell = max((4 * n - 1).bit_length(), 7)
        assert n <= catalan(ell - 2), "length bound leaves too few words"
        words = []
        for w in paper_family_words(2 * ell):
            words.append(w)
            if len(words) == n:
                break
        return WordSet(words, "paper")
    raise ValueError("mode must be 'paper' or 'compact', got %r" % mode)
