"""Exact linear algebra over the integers for graded free modules.

Elements are integer linear combinations of *words*: tuples of letters, one
letter per tensor factor.  A letter is any hashable object exposing a ``zdeg``
attribute (the cohomological degree, the only degree that contributes Koszul
signs) and optionally ``wdeg`` (a sign-inert natural-number weight) and
``label`` (used for printing).  Maps are degree-homogeneous and act on a fixed
number of adjacent tensor factors; applying a map inside a longer word picks
up the Koszul sign of moving it past the preceding factors.
"""

from dataclasses import dataclass


# ---------------------------------------------------------------------------
# letters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Gen:
    """A named basis generator of a graded module."""

    name: str
    zdeg: int = 0
    wdeg: int = 0
    arity: int | None = None

    @property
    def label(self):
        return self.name

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Shifted:
    """The letter x·sigma^a, an element of M[a]; its degree drops by a."""

    base: object
    a: int

    @property
    def zdeg(self):
        return zdeg(self.base) - self.a

    @property
    def wdeg(self):
        return wdeg(self.base)

    @property
    def arity(self):
        return self.base.arity

    @property
    def label(self):
        return f"{letter_label(self.base)}*s^{self.a}"

    def __repr__(self):
        return self.label


def shift_letter(x, a):
    """x ⋅ sigma^a with collapsing of nested shifts (no sign: this is the
    bare identification of basis letters, not the map f[a])."""
    if isinstance(x, Shifted):
        return shift_letter(x.base, x.a + a)
    if a == 0:
        return x
    return Shifted(x, a)


class _Unit:
    """The basis letter of the unit module in degree 0."""

    zdeg = 0
    wdeg = 0
    label = "1"
    __slots__ = ()

    def __repr__(self):
        return "1"


UNIT = _Unit()


def zdeg(letter):
    return letter.zdeg


def wdeg(letter):
    return getattr(letter, "wdeg", 0)


def letter_label(letter):
    return getattr(letter, "label", str(letter))


def word_zdeg(word):
    return sum(zdeg(x) for x in word)


# ---------------------------------------------------------------------------
# Koszul signs
# ---------------------------------------------------------------------------


def koszul_sign(degrees, perm):
    """Sign of reordering homogeneous factors: ``perm[i]`` is the original
    position of the factor landing at output position i.  Each transposition
    of adjacent factors of degrees p, q contributes (-1)^{pq}."""
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                if degrees[perm[i]] % 2 and degrees[perm[j]] % 2:
                    sign = -sign
    return sign


def sign_pow(exponent):
    return -1 if exponent % 2 else 1


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class Element:
    """An integer linear combination of words (tuples of letters)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for word, coef in terms.items():
                if coef:
                    self.terms[word] = self.terms.get(word, 0) + coef
            self.terms = {w: c for w, c in self.terms.items() if c}

    @staticmethod
    def zero():
        return Element()

    @staticmethod
    def from_word(word, coef=1):
        return Element({tuple(word): coef})

    @staticmethod
    def scalar(coef):
        return Element({(): coef})

    @staticmethod
    def from_letter(letter, coef=1):
        return Element({(letter,): coef})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return Element(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) - c
        return Element(out)

    def __neg__(self):
        return Element({w: -c for w, c in self.terms.items()})

    def __rmul__(self, scalar):
        if scalar == 0:
            return Element()
        return Element({w: scalar * c for w, c in self.terms.items()})

    def __mul__(self, scalar):
        return self.__rmul__(scalar)

    def tensor(self, other):
        """Juxtaposition of elements; no sign (elements are not maps)."""
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return Element(out)

    def map_words(self, fn):
        """Apply ``word -> Element`` linearly (no automatic signs)."""
        out = Element()
        for w, c in self.terms.items():
            out = out + c * fn(w)
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda it: tuple(letter_label(x) for x in it[0])
        )

    def __repr__(self):
        return element_to_text(self)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def element_to_text(elt):
    if elt.is_zero():
        return "0"
    parts = []
    for word, coef in elt.sorted_terms():
        body = "(1)" if not word else "⊗".join(letter_label(x) for x in word)
        mag = abs(coef)
        piece = body if mag == 1 else f"{mag}·{body}"
        if not parts:
            parts.append(piece if coef > 0 else f"-{piece}")
        else:
            parts.append(f"+ {piece}" if coef > 0 else f"- {piece}")
    return " ".join(parts)


def element_to_json(elt):
    return [
        {"coef": coef, "word": [letter_label(x) for x in word]}
        for word, coef in elt.sorted_terms()
    ]


# ---------------------------------------------------------------------------
# graded maps
# ---------------------------------------------------------------------------


@dataclass
class GradedMap:
    """A degree-homogeneous linear map on words of a fixed width.

    ``fn`` sends a tuple of ``width`` letters to an Element; composition is
    written left to right: ``(f @ g)(x) = g(f(x))``.
    """

    zdeg: int
    width: int
    fn: object
    wdeg: int = 0

    def __call__(self, arg):
        if isinstance(arg, Element):
            out = Element()
            for word, coef in arg.terms.items():
                if len(word) != self.width:
                    raise ValueError(
                        f"word width {len(word)} != map width {self.width}"
                    )
                out = out + coef * self.fn(word)
            return out
        return self(Element.from_word(arg))

    def then(self, other):
        def fn(word):
            return other(self.fn(word))

        return GradedMap(self.zdeg + other.zdeg, self.width, fn, self.wdeg + other.wdeg)

    def __matmul__(self, other):
        return self.then(other)


def identity_map(width=1):
    return GradedMap(0, width, lambda w: Element.from_word(w))


def tensor_map(f, g):
    """(f⊗g)(x⊗y) = (-1)^{deg g · deg x} f(x)⊗g(y)."""

    def fn(word):
        x, y = word[: f.width], word[f.width :]
        sign = sign_pow(g.zdeg * word_zdeg(x))
        return sign * f(Element.from_word(x)).tensor(g(Element.from_word(y)))

    return GradedMap(f.zdeg + g.zdeg, f.width + g.width, fn, f.wdeg + g.wdeg)


def sigma_map(a):
    """The degree -a isomorphism M -> M[a], x ↦ x·sigma^a."""
    return GradedMap(-a, 1, lambda w: Element.from_letter(shift_letter(w[0], a)))


def shift_map(f, a):
    """f[a] = (-1)^{a·deg f} sigma^{-a} f sigma^a on single letters."""
    if f.width != 1:
        raise ValueError("shift_map is defined for width-1 maps")
    sign = sign_pow(a * f.zdeg)

    def fn(word):
        unshifted = shift_letter(word[0], -a)
        return sign * (sigma_map(a)(f(Element.from_letter(unshifted))))

    return GradedMap(f.zdeg, 1, fn, f.wdeg)


def apply_at(elt, pos, f):
    """Apply the width-``f.width`` map ``f`` to the factors starting at
    ``pos`` of every word, with the Koszul sign of moving f past the first
    ``pos`` factors."""
    out = Element()
    for word, coef in elt.terms.items():
        x = word[pos : pos + f.width]
        sign = sign_pow(f.zdeg * word_zdeg(word[:pos]))
        img = f(Element.from_word(x))
        for w2, c2 in img.terms.items():
            full = word[:pos] + w2 + word[pos + f.width :]
            out = out + Element({full: sign * coef * c2})
    return out


def reorder_word(elt, perm):
    """Permute tensor factors with the Koszul sign: ``perm[i]`` is the input
    position of the factor landing at output position i."""
    out = {}
    for word, coef in elt.terms.items():
        degs = [zdeg(x) for x in word]
        sign = koszul_sign(degs, perm)
        new = tuple(word[perm[i]] for i in range(len(perm)))
        out[new] = out.get(new, 0) + sign * coef
    return Element(out)
