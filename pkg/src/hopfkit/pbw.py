"""Finitely presented algebras of PBW type.

A presentation fixes an ordered alphabet of weighted generators and, for
every pair j > i, a straightening rule

    g_j g_i  ->  q * g_i g_j  +  tail

with q a nonzero rational and tail a combination of ordered monomials.
Pairs without an explicit rule commute.  Normal forms are computed by
repeatedly rewriting the largest reducible word, and validation certifies
termination before any rewriting is attempted.

Termination certificate.  Rewriting must strictly decrease every produced
word in some monomial order.  Weight alone is not enough when a tail keeps
the head's weight (the enveloping-algebra examples here do exactly that),
and plain weight-then-lex fails too: a single-letter tail can be
lex-larger than its two-letter head while a three-letter tail elsewhere
must be lex-smaller, and no letter order fixes both at once.  Validation
therefore searches for an auxiliary positive weight vector psi and uses
the order

    (weight, psi-weight, length, lexicographic by index).

All four components are compatible with concatenation, so each rewrite
step strictly decreases the multiset of term words and straightening
terminates.  If no psi up to the search bound certifies the tails, the
presentation is rejected with TailNotSmaller; systems such as
yx -> xy + yy - xx, where rewriting genuinely cycles, are refused this way.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .errors import (
    AlphabetMismatch,
    InvalidCoproduct,
    NotConfluent,
    TailNotNormal,
    TailNotSmaller,
    UnknownBuiltin,
    ZeroQ,
)
from .freealg import (
    Alphabet,
    FreeElement,
    as_coeff,
    check_budget,
    render_terms,
)

Monomial = tuple

PSI_SEARCH_BOUND = 6

_DEBUG_ORDER = bool(os.environ.get("HOPFKIT_DEBUG_ORDER"))


def _is_ordered(word):
    return all(word[i] <= word[i + 1] for i in range(len(word) - 1))


def _word_to_monomial(word, size):
    expo = [0] * size
    for letter in word:
        expo[letter] += 1
    return tuple(expo)


@dataclass(frozen=True)
class Relation:
    """Straightening rule g_hi g_lo -> q g_lo g_hi + tail."""

    hi: int
    lo: int
    q: Fraction
    tail: dict = field(compare=False)
    tail_items: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "tail_items", tuple(sorted(self.tail.items())))

    def __eq__(self, other):
        return (
            isinstance(other, Relation)
            and (self.hi, self.lo, self.q) == (other.hi, other.lo, other.q)
            and self.tail_items == other.tail_items
        )

    def is_default(self):
        return self.q == 1 and not self.tail


@dataclass(frozen=True)
class ValidationReport:
    graded: bool
    psi: tuple
    relation_count: int
    nontrivial_relations: int
    messages: tuple

    @property
    def classification(self):
        return "weight-graded" if self.graded else "filtered"


@dataclass
class ConfluenceReport:
    triples_checked: int
    residuals: list  # [(triple names, PBWElement)] for failing triples

    @property
    def ok(self):
        return not self.residuals


class Presentation:
    """Validated PBW-type presentation, optionally with coproduct data.

    generators: iterable of (name, weight) pairs, in presentation order.
    relations: mapping (hi, lo) -> (q, tail); hi and lo may be names or
        indices with hi later than lo, and tail maps words (tuples of
        letter indices, which must be ordered) to rational coefficients.
    coproduct: None to leave the algebra bare, otherwise a mapping
        gen -> {(left word, right word): coefficient} giving the reduced
        coproduct of each non-primitive generator.
    """

    def __init__(self, generators, relations=None, coproduct=None, name=None):
        self.alphabet = generators if isinstance(generators, Alphabet) else Alphabet(generators)
        self.name = name
        self.relations = self._build_relations(relations or {})
        self.validation = self._validate()
        self.psi = self.validation.psi
        self.is_graded = self.validation.graded
        self.delta = self._build_coproduct(coproduct)
        self._confluence = None
        self._mono_product_cache = {}

    # ----- construction helpers -------------------------------------

    def _resolve_gen(self, g):
        if isinstance(g, str):
            return self.alphabet.index_of(g)
        if isinstance(g, int) and 0 <= g < len(self.alphabet):
            return g
        raise KeyError(f"unknown generator {g!r}")

    def _build_relations(self, given):
        n = len(self.alphabet)
        rels = {}
        for pair, (q, tail) in given.items():
            hi, lo = (self._resolve_gen(pair[0]), self._resolve_gen(pair[1]))
            if hi <= lo:
                raise ValueError(
                    f"relation pair must name the later generator first, got "
                    f"({self.alphabet.names[hi]}, {self.alphabet.names[lo]})"
                )
            if (hi, lo) in rels:
                raise ValueError(f"duplicate relation for pair ({hi}, {lo})")
            q = as_coeff(q)
            if q == 0:
                raise ZeroQ(
                    f"relation {self.alphabet.names[hi]} {self.alphabet.names[lo]} has q = 0"
                )
            clean = {}
            for word, coeff in tail.items():
                word = tuple(word)
                coeff = as_coeff(coeff)
                if not coeff:
                    continue
                for letter in word:
                    if not (0 <= letter < n):
                        raise KeyError(f"tail letter {letter} out of range")
                if not _is_ordered(word):
                    raise TailNotNormal(
                        f"tail word {self.alphabet.render_word(word)} of relation "
                        f"{self.alphabet.names[hi]} {self.alphabet.names[lo]} is not an "
                        "ordered monomial"
                    )
                clean[word] = clean.get(word, Fraction(0)) + coeff
            clean = {w: c for w, c in clean.items() if c}
            rels[(hi, lo)] = Relation(hi, lo, q, clean)
        # total relation map: unspecified pairs commute
        for hi in range(n):
            for lo in range(hi):
                rels.setdefault((hi, lo), Relation(hi, lo, Fraction(1), {}))
        return rels

    def _validate(self):
        names = self.alphabet.names
        ww = self.alphabet.word_weight
        graded = True
        messages = []
        # (head psi-vector is psi[hi] + psi[lo]; constraint rows collect the
        #  equal-weight tails that the psi search must dominate)
        constraints = []
        nontrivial = 0
        for (hi, lo), rel in sorted(self.relations.items()):
            if not rel.is_default():
                nontrivial += 1
            head_weight = ww((hi, lo))
            for word in rel.tail:
                tw = ww(word)
                if tw > head_weight:
                    raise TailNotSmaller(
                        f"tail word {self.alphabet.render_word(word)} of relation "
                        f"{names[hi]} {names[lo]} has weight {tw} above head weight {head_weight}"
                    )
                if tw < head_weight:
                    graded = False
                else:
                    constraints.append(((hi, lo), word))
        psi = self._find_psi(constraints)
        if psi is None:
            raise TailNotSmaller(
                "no termination certificate: equal-weight tails admit no auxiliary "
                f"weight vector up to bound {PSI_SEARCH_BOUND}"
            )
        label = "weight-graded" if graded else "filtered"
        messages.append(f"presentation is {label}")
        if constraints:
            messages.append(f"termination certified with auxiliary weights {psi}")
        return ValidationReport(
            graded=graded,
            psi=psi,
            relation_count=len(self.relations),
            nontrivial_relations=nontrivial,
            messages=tuple(messages),
        )

    def _psi_ok(self, psi, constraints):
        for (hi, lo), word in constraints:
            head = (psi[hi] + psi[lo], 2, (hi, lo))
            tail = (sum(psi[letter] for letter in word), len(word), word)
            if not tail < head:
                return False
        return True

    def _find_psi(self, constraints):
        n = len(self.alphabet)
        if not constraints:
            return tuple([1] * n)
        if n > 8:
            # keep the search bounded on large alphabets
            for psi in ((1,) * n, self.alphabet.weights):
                if self._psi_ok(psi, constraints):
                    return tuple(psi)
            return None
        for bound in range(1, PSI_SEARCH_BOUND + 1):
            for psi in product(range(1, bound + 1), repeat=n):
                if max(psi) != bound:
                    continue
                if self._psi_ok(psi, constraints):
                    return psi
        return None

    def _build_coproduct(self, given):
        if given is None:
            return None
        names = self.alphabet.names
        ww = self.alphabet.word_weight
        n = len(self.alphabet)
        delta = {}
        for g, terms in given.items():
            gi = self._resolve_gen(g)
            gw = self.alphabet.weights[gi]
            clean = {}
            for (left, right), coeff in terms.items():
                coeff = as_coeff(coeff)
                if not coeff:
                    continue
                left, right = tuple(left), tuple(right)
                for side, word in (("left", left), ("right", right)):
                    if not word:
                        raise InvalidCoproduct(
                            f"delta({names[gi]}) has a constant {side} factor; reduced "
                            "coproduct factors must sit in the augmentation ideal"
                        )
                    if not _is_ordered(word):
                        raise InvalidCoproduct(
                            f"delta({names[gi]}) {side} factor "
                            f"{self.alphabet.render_word(word)} is not an ordered monomial"
                        )
                    if ww(word) >= gw:
                        raise InvalidCoproduct(
                            f"delta({names[gi]}) {side} factor "
                            f"{self.alphabet.render_word(word)} has weight >= weight({names[gi]})"
                        )
                if ww(left) + ww(right) > gw:
                    raise InvalidCoproduct(
                        f"delta({names[gi]}) term exceeds the weight of {names[gi]}"
                    )
                key = (_word_to_monomial(left, n), _word_to_monomial(right, n))
                clean[key] = clean.get(key, Fraction(0)) + coeff
            clean = {k: c for k, c in clean.items() if c}
            if clean:
                delta[gi] = clean
        return delta

    # ----- basic structure ------------------------------------------

    @property
    def has_coproduct(self):
        return self.delta is not None

    @property
    def max_weight(self):
        return max(self.alphabet.weights)

    def __eq__(self, other):
        return (
            isinstance(other, Presentation)
            and self.alphabet == other.alphabet
            and self.relations == other.relations
            and self.delta == other.delta
        )

    __hash__ = None

    def __repr__(self):
        label = self.name or "presentation"
        return f"<{label}: {len(self.alphabet)} generators, {self.validation.classification}>"

    def word_weight(self, word):
        return self.alphabet.word_weight(word)

    def mono_weight(self, mono):
        weights = self.alphabet.weights
        return sum(e * weights[i] for i, e in enumerate(mono))

    def mono_degree(self, mono):
        return sum(mono)

    def mono_word(self, mono):
        word = []
        for i, e in enumerate(mono):
            word.extend([i] * e)
        return tuple(word)

    def mono_key(self, mono):
        return (self.mono_weight(mono), self.mono_word(mono))

    def render_mono(self, mono):
        return self.alphabet.render_word(self.mono_word(mono))

    # ----- elements ---------------------------------------------------

    def zero(self):
        return PBWElement(self, {})

    def one(self, coeff=1):
        return self.scalar(coeff)

    def scalar(self, coeff):
        coeff = as_coeff(coeff)
        empty = (0,) * len(self.alphabet)
        return PBWElement(self, {empty: coeff} if coeff else {})

    def gen(self, g):
        gi = self._resolve_gen(g)
        mono = [0] * len(self.alphabet)
        mono[gi] = 1
        return PBWElement(self, {tuple(mono): Fraction(1)})

    def element(self, terms):
        """Build an element from {monomial exponents: coefficient}."""
        return PBWElement(self, {tuple(m): as_coeff(c) for m, c in terms.items()})

    # ----- rewriting ---------------------------------------------------

    def rewrite_key(self, word):
        psi = self.psi
        return (
            self.alphabet.word_weight(word),
            sum(psi[letter] for letter in word),
            len(word),
            word,
        )

    def normal_form(self, x):
        """Straighten to the ordered-monomial basis.

        Accepts a FreeElement over the same alphabet, a PBWElement over
        this presentation, or a plain {word: coefficient} map.  Rewrites
        the largest reducible word (leftmost misordered pair first) until
        none remains.
        """
        if isinstance(x, PBWElement):
            if x.pres is not self and x.pres != self:
                raise AlphabetMismatch("element belongs to a different presentation")
            return x
        if isinstance(x, FreeElement):
            if x.alphabet != self.alphabet:
                raise AlphabetMismatch("element lives over a different alphabet")
            work = dict(x.terms)
        else:
            work = {}
            for word, coeff in x.items():
                coeff = as_coeff(coeff)
                if coeff:
                    word = tuple(word)
                    work[word] = work.get(word, Fraction(0)) + coeff
        out = {}
        key = self.rewrite_key
        n = len(self.alphabet)
        while work:
            word = max(work, key=key)
            coeff = work.pop(word)
            if not coeff:
                continue
            pos = -1
            for i in range(len(word) - 1):
                if word[i] > word[i + 1]:
                    pos = i
                    break
            if pos < 0:
                mono = _word_to_monomial(word, n)
                new = out.get(mono, 0) + coeff
                if new:
                    out[mono] = new
                else:
                    del out[mono]
                continue
            hi, lo = word[pos], word[pos + 1]
            rel = self.relations[(hi, lo)]
            prefix, suffix = word[:pos], word[pos + 2:]
            swapped = prefix + (lo, hi) + suffix
            if _DEBUG_ORDER:
                assert key(swapped) < key(word)
            new = work.get(swapped, 0) + coeff * rel.q
            if new:
                work[swapped] = new
            else:
                work.pop(swapped, None)
            for tail_word, tail_coeff in rel.tail.items():
                produced = prefix + tail_word + suffix
                if _DEBUG_ORDER:
                    assert key(produced) < key(word)
                new = work.get(produced, 0) + coeff * tail_coeff
                if new:
                    work[produced] = new
                else:
                    work.pop(produced, None)
            check_budget(len(work) + len(out))
        return PBWElement(self, out)

    def multiply(self, x, y):
        """Product of two elements of this algebra, in normal form."""
        x, y = self.normal_form(x), self.normal_form(y)
        words = {}
        for m1, c1 in x.terms.items():
            w1 = self.mono_word(m1)
            for m2, c2 in y.terms.items():
                word = w1 + self.mono_word(m2)
                words[word] = words.get(word, Fraction(0)) + c1 * c2
        check_budget(len(words))
        return self.normal_form(words)

    def mono_product(self, m1, m2):
        """Normal form of the product of two basis monomials, cached.

        Tensor-component arithmetic multiplies the same small monomials
        over and over; the cache keeps that quadratic churn cheap.
        """
        key = (m1, m2)
        hit = self._mono_product_cache.get(key)
        if hit is None:
            hit = self.normal_form({self.mono_word(m1) + self.mono_word(m2): Fraction(1)})
            self._mono_product_cache[key] = hit
        return hit

    def commutator(self, x, y):
        return self.multiply(x, y) - self.multiply(y, x)

    # ----- basis enumeration -------------------------------------------

    def enumerate_basis(self, max_weight):
        """All ordered monomials of weight <= max_weight, canonically sorted."""
        if max_weight < 0:
            return []
        partial = [((), 0)]
        for gi, gw in enumerate(self.alphabet.weights):
            extended = []
            for mono, weight in partial:
                e = 0
                while weight + e * gw <= max_weight:
                    extended.append((mono + (e,), weight + e * gw))
                    e += 1
            partial = extended
        monos = [m for m, _ in partial]
        monos.sort(key=self.mono_key)
        return monos

    def basis_counts(self, max_weight):
        counts = [0] * (max_weight + 1)
        for mono in self.enumerate_basis(max_weight):
            counts[self.mono_weight(mono)] += 1
        return tuple(counts)

    # ----- confluence ---------------------------------------------------

    def confluence(self):
        """Resolve every overlap word g_k g_j g_i both ways and compare."""
        if self._confluence is not None:
            return self._confluence
        names = self.alphabet.names
        residuals = []
        count = 0
        for k, j, i in combinations(range(len(self.alphabet) - 1, -1, -1), 3):
            count += 1
            first = self._one_step((k, j, i), 0)
            second = self._one_step((k, j, i), 1)
            diff = self.normal_form(first) - self.normal_form(second)
            if not diff.is_zero():
                residuals.append(((names[k], names[j], names[i]), diff))
        self._confluence = ConfluenceReport(triples_checked=count, residuals=residuals)
        return self._confluence

    def _one_step(self, word, pos):
        hi, lo = word[pos], word[pos + 1]
        rel = self.relations[(hi, lo)]
        prefix, suffix = word[:pos], word[pos + 2:]
        terms = {prefix + (lo, hi) + suffix: rel.q}
        for tail_word, coeff in rel.tail.items():
            produced = prefix + tail_word + suffix
            terms[produced] = terms.get(produced, Fraction(0)) + coeff
        return {w: c for w, c in terms.items() if c}

    def require_confluent(self):
        report = self.confluence()
        if not report.ok:
            triple, diff = report.residuals[0]
            raise NotConfluent(
                f"overlap {' '.join(triple)} does not resolve; residual {diff}"
            )
        return report


class PBWElement:
    """Rational linear combination of ordered monomials of a presentation."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres, terms=None):
        self.pres = pres
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = as_coeff(coeff)
                if coeff:
                    clean[tuple(mono)] = coeff
        self.terms = clean

    def _check(self, other):
        if self.pres is not other.pres and self.pres != other.pres:
            raise AlphabetMismatch("elements belong to different presentations")

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        empty = (0,) * len(self.pres.alphabet)
        return self.terms.get(empty, Fraction(0))

    def max_weight(self):
        if not self.terms:
            return 0
        return max(self.pres.mono_weight(m) for m in self.terms)

    def augmentation_part(self):
        """The element with its constant term removed."""
        empty = (0,) * len(self.pres.alphabet)
        terms = {m: c for m, c in self.terms.items() if m != empty}
        return PBWElement(self.pres, terms)

    def __add__(self, other):
        if isinstance(other, PBWElement):
            self._check(other)
            terms = dict(self.terms)
            for mono, coeff in other.terms.items():
                new = terms.get(mono, 0) + coeff
                if new:
                    terms[mono] = new
                else:
                    terms.pop(mono, None)
            out = PBWElement(self.pres)
            out.terms = terms
            return out
        return self + self.pres.scalar(other)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        out = PBWElement(self.pres)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, PBWElement):
            return self + (-other)
        return self + (-self.pres.scalar(other))

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return self.pres.multiply(self, other)
        coeff = as_coeff(other)
        out = PBWElement(self.pres)
        if coeff:
            out.terms = {m: c * coeff for m, c in self.terms.items()}
        return out

    def __rmul__(self, other):
        coeff = as_coeff(other)
        return self.__mul__(coeff)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("powers must be nonnegative integers")
        result = self.pres.scalar(1)
        for _ in range(n):
            result = self.pres.multiply(result, self)
        return result

    def __eq__(self, other):
        return (
            isinstance(other, PBWElement)
            and (self.pres is other.pres or self.pres == other.pres)
            and self.terms == other.terms
        )

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: self.pres.mono_key(item[0]))

    def __str__(self):
        return render_terms(
            [(c, self.pres.render_mono(m)) for m, c in self.sorted_terms()]
        )

    def __repr__(self):
        return f"<pbw {self}>"


# ----- module-level operation surface ------------------------------------


def validate_presentation(p):
    """Validation report of a presentation (construction already enforces it)."""
    return p.validation


def normal_form(p, x):
    return p.normal_form(x)


def confluence_check(p):
    return p.confluence()


def commutator(p, x, y):
    return p.commutator(x, y)


def enumerate_basis(p, max_weight):
    return p.enumerate_basis(max_weight)


# ----- builtin catalogue ---------------------------------------------------

BUILTIN_NAMES = ("H6", "J", "L", "U_n5", "heis3", "poly(d)", "qplane(q)")

_F = Fraction


def _h6_core(coproduct, name):
    # two commuting Heisenberg copies: [a,b] = c and [z,w] = d, c and d central
    return Presentation(
        [("a", 1), ("b", 1), ("c", 1), ("z", 2), ("w", 2), ("d", 3)],
        relations={
            ("b", "a"): (1, {(2,): _F(-1)}),
            ("w", "z"): (1, {(5,): _F(-1)}),
        },
        coproduct=coproduct,
        name=name,
    )


def _builtin_h6():
    return _h6_core(coproduct={}, name="H6")


def _builtin_j():
    # same algebra as H6 with the deformed coproduct that couples the copies
    delta = {
        "z": {((0,), (2,)): _F(1), ((2,), (0,)): _F(-1)},
        "w": {((1,), (2,)): _F(1), ((2,), (1,)): _F(-1)},
        "d": {((2,), (2, 2)): _F(1), ((2, 2), (2,)): _F(1)},
    }
    return _h6_core(coproduct=delta, name="J")


def _builtin_l():
    # quotient of J by its central primitive: [z,w] becomes (1/3)c^3
    delta = {
        "z": {((0,), (2,)): _F(1), ((2,), (0,)): _F(-1)},
        "w": {((1,), (2,)): _F(1), ((2,), (1,)): _F(-1)},
    }
    return Presentation(
        [("a", 1), ("b", 1), ("c", 2), ("z", 3), ("w", 3)],
        relations={
            ("b", "a"): (1, {(2,): _F(-1)}),
            ("w", "z"): (1, {(2, 2, 2): _F(-1, 3)}),
        },
        coproduct=delta,
        name="L",
    )


def _builtin_u_n5():
    # five-dimensional nilpotent Lie algebra: [x1,x2] = x = [x3,x4]
    return Presentation(
        [("x", 1), ("x1", 1), ("x2", 1), ("x3", 1), ("x4", 1)],
        relations={
            ("x2", "x1"): (1, {(0,): _F(-1)}),
            ("x4", "x3"): (1, {(0,): _F(-1)}),
        },
        coproduct={},
        name="U_n5",
    )


def _builtin_heis3():
    return Presentation(
        [("x", 1), ("y", 1), ("z", 2)],
        relations={("y", "x"): (1, {(2,): _F(-1)})},
        coproduct={},
        name="heis3",
    )


def _builtin_poly(d):
    if d < 1:
        raise UnknownBuiltin("poly(d) needs d >= 1")
    return Presentation(
        [(f"x{i}", 1) for i in range(1, d + 1)],
        coproduct={},
        name=f"poly({d})",
    )


def _builtin_qplane(q):
    q = as_coeff(q)
    return Presentation(
        [("x", 1), ("y", 1)],
        relations={("y", "x"): (q, {})},
        name=f"qplane({q})",
    )


def builtin(name):
    """Compiled-in example presentations by name.

    Plain names: H6, J, L, U_n5, heis3.  Parametrized: poly(d) for d >= 1
    commuting generators, qplane(q) for the q-commuting plane (q nonzero).
    """
    text = name.strip()
    plain = {
        "H6": _builtin_h6,
        "J": _builtin_j,
        "L": _builtin_l,
        "U_n5": _builtin_u_n5,
        "heis3": _builtin_heis3,
    }
    if text in plain:
        return plain[text]()
    if text.startswith("poly(") and text.endswith(")"):
        body = text[5:-1]
        try:
            d = int(body)
        except ValueError:
            raise UnknownBuiltin(f"poly takes an integer, got {body!r}") from None
        return _builtin_poly(d)
    if text.startswith("qplane(") and text.endswith(")"):
        body = text[7:-1]
        try:
            q = Fraction(body)
        except (ValueError, ZeroDivisionError):
            raise UnknownBuiltin(f"qplane takes a rational, got {body!r}") from None
        return _builtin_qplane(q)
    raise UnknownBuiltin(
        f"unknown builtin {name!r}; available: {', '.join(BUILTIN_NAMES)}"
    )
