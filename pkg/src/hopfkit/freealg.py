"""Free associative algebra over the rationals with weighted generators.

Words are tuples of generator indices, elements are finite maps from words
to nonzero rational coefficients.  Everything is exact: coefficients are
`fractions.Fraction` values and floats are rejected outright.

The canonical order on words is (total weight, then lexicographic by
generator index, a proper prefix counting as smaller); all rendering and
iteration follows it, so printed output is reproducible byte for byte.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import AlphabetMismatch, BudgetExceeded

Word = tuple

DEFAULT_MAX_TERMS = 10_000_000


def term_budget():
    raw = os.environ.get("HOPFKIT_MAX_TERMS")
    if raw is None:
        return DEFAULT_MAX_TERMS
    return int(raw)


def check_budget(count):
    budget = term_budget()
    if count > budget:
        raise BudgetExceeded(
            f"intermediate expression has {count} terms, budget is {budget} "
            "(raise HOPFKIT_MAX_TERMS to override)"
        )


def as_coeff(value):
    """Coerce to an exact rational; floats are forbidden everywhere."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"exact rational required, got {type(value).__name__}")


@dataclass(frozen=True)
class Generator:
    index: int
    name: str
    weight: int


class Alphabet:
    """Ordered list of named generators with positive integer weights."""

    def __init__(self, generators):
        gens = []
        seen = set()
        for i, (name, weight) in enumerate(generators):
            if not isinstance(name, str) or not name:
                raise ValueError("generator names must be nonempty strings")
            if name in seen:
                raise ValueError(f"duplicate generator name {name!r}")
            if not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
                raise ValueError(f"generator {name!r} needs integer weight >= 1")
            seen.add(name)
            gens.append(Generator(i, name, weight))
        if not gens:
            raise ValueError("alphabet needs at least one generator")
        self.generators = tuple(gens)
        self.names = tuple(g.name for g in gens)
        self.weights = tuple(g.weight for g in gens)
        self._by_name = {g.name: g.index for g in gens}

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        return (
            isinstance(other, Alphabet)
            and self.names == other.names
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.names, self.weights))

    def __repr__(self):
        body = " ".join(f"{g.name}:{g.weight}" for g in self.generators)
        return f"Alphabet({body})"

    def index_of(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def word_weight(self, word):
        weights = self.weights
        return sum(weights[i] for i in word)

    def word_key(self, word):
        """Canonical sort key: weight, then the letter sequence itself."""
        return (self.word_weight(word), word)

    def render_word(self, word):
        """Juxtaposed generator names, runs of a letter shown as powers."""
        if not word:
            return "1"
        parts = []
        run_letter, run_len = word[0], 1
        for letter in word[1:]:
            if letter == run_letter:
                run_len += 1
            else:
                parts.append(self._run(run_letter, run_len))
                run_letter, run_len = letter, 1
        parts.append(self._run(run_letter, run_len))
        return "".join(parts)

    def _run(self, letter, count):
        name = self.names[letter]
        return name if count == 1 else f"{name}^{count}"


def render_terms(pairs):
    """Join (coefficient, rendered word) pairs into a signed sum.

    `pairs` must already be in canonical order; a word of "1" stands for
    the empty word.  Returns "0" for an empty list.
    """
    if not pairs:
        return "0"
    chunks = []
    for coeff, word_text in pairs:
        negative = coeff < 0
        mag = -coeff if negative else coeff
        if word_text == "1":
            body = str(mag)
        elif mag == 1:
            body = word_text
        elif mag.denominator == 1:
            body = f"{mag}{word_text}"
        else:
            body = f"{mag} {word_text}"
        if not chunks:
            chunks.append(f"-{body}" if negative else body)
        else:
            chunks.append(f" - {body}" if negative else f" + {body}")
    return "".join(chunks)


class FreeElement:
    """Finite rational linear combination of words."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet, terms=None):
        self.alphabet = alphabet
        clean = {}
        if terms:
            for word, coeff in terms.items():
                coeff = as_coeff(coeff)
                if coeff:
                    clean[tuple(word)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet):
        return cls(alphabet, {(): Fraction(1)})

    @classmethod
    def letter(cls, alphabet, index):
        return cls(alphabet, {(index,): Fraction(1)})

    @classmethod
    def from_word(cls, alphabet, word, coeff=1):
        return cls(alphabet, {tuple(word): as_coeff(coeff)})

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def _check(self, other):
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("elements live over different alphabets")

    def __add__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            new = terms.get(word, 0) + coeff
            if new:
                terms[word] = new
            else:
                terms.pop(word, None)
        out = FreeElement(self.alphabet)
        out.terms = terms
        return out

    def __neg__(self):
        out = FreeElement(self.alphabet)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FreeElement):
            self._check(other)
            terms = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    word = w1 + w2
                    new = terms.get(word, 0) + c1 * c2
                    if new:
                        terms[word] = new
                    else:
                        terms.pop(word, None)
            check_budget(len(terms))
            out = FreeElement(self.alphabet)
            out.terms = terms
            return out
        coeff = as_coeff(other)
        if not coeff:
            return FreeElement.zero(self.alphabet)
        out = FreeElement(self.alphabet)
        out.terms = {w: c * coeff for w, c in self.terms.items()}
        return out

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        return (
            isinstance(other, FreeElement)
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    __hash__ = None

    def sorted_terms(self):
        key = self.alphabet.word_key
        return sorted(self.terms.items(), key=lambda item: key(item[0]))

    def __str__(self):
        render = self.alphabet.render_word
        return render_terms([(c, render(w)) for w, c in self.sorted_terms()])

    def __repr__(self):
        return f"<free {self}>"


def word_weight(alphabet, word):
    """Total weight of a word under the alphabet's weight function."""
    return alphabet.word_weight(word)


def free_add(x, y):
    """Sum of two free elements over the same alphabet."""
    return x + y


def free_mul(x, y):
    """Concatenation product, extended bilinearly."""
    if not isinstance(y, FreeElement):
        raise TypeError("free_mul needs two free elements")
    return x * y
