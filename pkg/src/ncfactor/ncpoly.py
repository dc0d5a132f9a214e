"""Sparse polynomials over a free noncommutative algebra.

A word is a tuple of letter indices into a declared alphabet; a
polynomial is a map from words to nonzero field coefficients.  The
monomial order compares degree first, then the leftmost differing
position, where a lower letter index wins.  On the bivariate alphabet
{x, y} (x = 0, y = 1) this is exactly: longer words are larger, and at
equal degree x beats y — so the order is multiplicative on both sides
and leading monomials multiply: lm(f*g) = lm(f)lm(g).
"""

from __future__ import annotations

from ncfactor.errors import FormatError
from ncfactor.fields import field_spec, parse_field

NEG_INF = float("-inf")

X = 0
Y = 1


class Alphabet:
    """Ordered set of variable names; words index into it."""

    __slots__ = ("names",)

    def __init__(self, names):
        names = tuple(names)
        if not names:
            raise ValueError("empty alphabet")
        self.names = names

    @classmethod
    def bivariate(cls):
        return cls(("x", "y"))

    @classmethod
    def nvars(cls, n):
        return cls(tuple("x%d" % (i + 1) for i in range(n)))

    @property
    def size(self):
        return len(self.names)

    @property
    def is_bivariate(self):
        return self.names == ("x", "y")

    def spec(self):
        if self.is_bivariate:
            return "xy"
        return "x1..x%d" % self.size

    @classmethod
    def parse_spec(cls, text):
        if text == "xy":
            return cls.bivariate()
        if text.startswith("x1..x"):
            try:
                return cls.nvars(int(text[5:]))
            except ValueError as exc:
                raise FormatError("bad alphabet spec %r" % text) from exc
        raise FormatError("bad alphabet spec %r" % text)

    def word_to_str(self, word):
        if not word:
            return "1"
        if self.is_bivariate:
            return "".join(self.names[c] for c in word)
        return ".".join(self.names[c] for c in word)

    def word_from_str(self, text):
        if text == "1":
            return ()
        if self.is_bivariate:
            try:
                return tuple({"x": X, "y": Y}[ch] for ch in text)
            except KeyError as exc:
                raise FormatError("bad bivariate word %r" % text) from exc
        index = {name: i for i, name in enumerate(self.names)}
        try:
            return tuple(index[tok] for tok in text.split("."))
        except KeyError as exc:
            raise FormatError("unknown variable in word %r" % text) from exc

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "Alphabet(%s)" % (self.names,)


def word_key(word):
    """Sort key realizing the monomial order (larger key = larger word)."""
    return (len(word), tuple(-c for c in word))


def imbalance(word):
    """#x minus #y of a bivariate word."""
    return sum(1 if c == X else -1 for c in word)


def bar(word):
    """Swap x and y letterwise (an involution on bivariate words)."""
    return tuple(1 - c for c in word)


class NcPoly:
    """Sparse free noncommutative polynomial with exact coefficients."""

    __slots__ = ("alphabet", "field", "terms")

    def __init__(self, alphabet, field, terms=()):
        self.alphabet = alphabet
        self.field = field
        data = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for word, coeff in items:
            word = tuple(word)
            if coeff == field.zero:
                continue
            acc = data.get(word)
            coeff = coeff if acc is None else acc + coeff
            if coeff == field.zero:
                data.pop(word, None)
            else:
                data[word] = coeff
        self.terms = data

    @classmethod
    def zero(cls, alphabet, field):
        return cls(alphabet, field)

    @classmethod
    def one(cls, alphabet, field):
        return cls(alphabet, field, [((), field.one)])

    @classmethod
    def variable(cls, alphabet, field, index):
        if not 0 <= index < alphabet.size:
            raise ValueError("variable index %d out of range" % index)
        return cls(alphabet, field, [((index,), field.one)])

    @classmethod
    def constant(cls, alphabet, field, c):
        return cls(alphabet, field, [((), c)])

    @classmethod
    def monomial(cls, alphabet, field, word, coeff=None):
        return cls(alphabet, field, [(tuple(word), field.one if coeff is None else coeff)])

    def _compatible(self, other):
        if self.alphabet != other.alphabet or self.field != other.field:
            raise ValueError("alphabet/field mismatch")

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        if not self.terms:
            return NEG_INF
        return max(len(w) for w in self.terms)

    def coeff(self, word):
        return self.terms.get(tuple(word), self.field.zero)

    def support(self):
        """Words with nonzero coefficient, largest first."""
        return sorted(self.terms, key=word_key, reverse=True)

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("leading monomial of the zero polynomial")
        return max(self.terms, key=word_key)

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def __eq__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, self.field, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        self._compatible(other)
        out = dict(self.terms)
        zero = self.field.zero
        for w, c in other.terms.items():
            s = out.get(w, zero) + c
            if s == zero:
                out.pop(w, None)
            else:
                out[w] = s
        return NcPoly(self.alphabet, self.field, out)

    def __neg__(self):
        return NcPoly(self.alphabet, self.field,
                      {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Convolution product: words concatenate, coefficients multiply."""
        self._compatible(other)
        zero = self.field.zero
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, zero) + c1 * c2
                if s == zero:
                    out.pop(w, None)
                else:
                    out[w] = s
        return NcPoly(self.alphabet, self.field, out)

    def scale(self, c):
        if c == self.field.zero:
            return NcPoly.zero(self.alphabet, self.field)
        return NcPoly(self.alphabet, self.field,
                      {w: c * v for w, v in self.terms.items()})

    def monic(self):
        """(leading coefficient, self / leading coefficient)."""
        lc = self.leading_coeff()
        return lc, self.scale(self.field.one / lc)

    def reversed_words(self):
        """Anti-automorphism: every word reversed in place."""
        return NcPoly(self.alphabet, self.field,
                      {tuple(reversed(w)): c for w, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "NcPoly(0)"
        parts = ["%s %s" % (c, self.alphabet.word_to_str(w))
                 for w, c in sorted(self.terms.items(), key=lambda t: word_key(t[0]),
                                    reverse=True)]
        return "NcPoly(%s)" % " + ".join(parts)

    # -- serialization -------------------------------------------------

    def to_text(self):
        """Canonical text form: header, then one term per line, largest first."""
        lines = ["ncpoly field=%s alphabet=%s" % (field_spec(self.field),
                                                  self.alphabet.spec())]
        for w in self.support():
            lines.append("%s %s" % (self.field.format(self.terms[w]),
                                    self.alphabet.word_to_str(w)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("ncpoly "):
            raise FormatError("missing ncpoly header")
        fields = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
        try:
            field = parse_field(fields["field"])
            alphabet = Alphabet.parse_spec(fields["alphabet"])
        except KeyError as exc:
            raise FormatError("ncpoly header missing %s" % exc) from exc
        terms = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise FormatError("bad term line %r" % ln)
            terms.append((alphabet.word_from_str(parts[1]), field.parse(parts[0])))
        return cls(alphabet, field, terms)


def left_divide(f, g):
    """Exact left quotient: h with f = g*h, or None when no such h exists.

    Repeatedly matches the leading monomial of the remainder against
    lm(g)*suffix; the quotient is unique because the free algebra is a
    domain and the order is multiplicative.
    """
    f._compatible(g)
    if g.is_zero():
        raise ZeroDivisionError("left division by the zero polynomial")
    h = NcPoly.zero(f.alphabet, f.field)
    rem = f
    glm = g.leading_monomial()
    glc = g.leading_coeff()
    k = len(glm)
    while not rem.is_zero():
        m = rem.leading_monomial()
        if m[:k] != glm:
            return None
        suffix = m[k:]
        c = rem.terms[m] / glc
        t = NcPoly.monomial(f.alphabet, f.field, suffix, c)
        h = h + t
        rem = rem - g * t
    return h


def right_divide(f, g):
    """Exact right quotient: h with f = h*g, or None.

    Word reversal is an anti-automorphism, so f = h*g iff
    rev(f) = rev(g)*rev(h); delegate to left division.
    """
    h = left_divide(f.reversed_words(), g.reversed_words())
    return None if h is None else h.reversed_words()
