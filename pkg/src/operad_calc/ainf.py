"""The homotopy-unital example pack.

The cooperad C has a basis f_{n0;n1;...;nt} (arity n = sum n_i, degree -2t)
plus the counit generator f_1 = f_{1}.  Its comultiplication is computed by
the absorption algorithm for the factorization C = J ⊙ P: a generator is a
row of n unit slots interleaved with t copies of the degree -2 nullary
letter j; every way of cutting the row into consecutive blocks produces one
term, where each block is absorbed by an inner factor, except that a block
consisting of a single j may instead pass through and be absorbed by the
outer factor.

C carries an augmented curved structure with d = 0 and a two-valued
curvature functional; its cobar construction is the free dg operad on
generators b_{n0;...;nt} of degree 1-2t with an explicit closed-form
differential, and verify_iso certifies the match term by term.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .curved import CurvedCooperad, linear_functional
from .graded import Element
from .operads import DecTree, FreeOperad

__all__ = [
    "CGen",
    "BGen",
    "F1",
    "c_generators",
    "comult_full",
    "c_comult",
    "CBackend",
    "build_C",
    "build_ainfhu",
    "ainfhu_diff",
    "verify_iso",
]


# ---------------------------------------------------------------------------
# generator letters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CGen:
    """The basis element f_{n0;n1;...;nt}; blocks = (n0, ..., nt)."""

    blocks: tuple

    @property
    def t(self):
        return len(self.blocks) - 1

    @property
    def arity(self):
        return sum(self.blocks)

    @property
    def zdeg(self):
        return -2 * self.t

    @property
    def wdeg(self):
        return 2 * self.t

    @property
    def label(self):
        return "f_{%s}" % ";".join(str(b) for b in self.blocks)

    def __repr__(self):
        return self.label


@dataclass(frozen=True)
class BGen:
    """The free-operad generator b_{n0;...;nt} of degree 1-2t; b_{0;0} is
    the nullary degree -1 generator."""

    blocks: tuple

    @property
    def t(self):
        return len(self.blocks) - 1

    @property
    def arity(self):
        return sum(self.blocks)

    @property
    def zdeg(self):
        return 1 - 2 * self.t

    @property
    def wdeg(self):
        return 2 * self.t

    @property
    def label(self):
        return "b_{%s}" % ";".join(str(b) for b in self.blocks)

    def __repr__(self):
        return self.label


F1 = CGen((1,))  # the counit generator


def _compositions(total, parts):
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def c_generators(n, max_t, max_nt=None):
    """All CGen letters of arity n with t <= max_t (and n + t <= max_nt)."""
    out = []
    for t in range(max_t + 1):
        if n + t == 0 or (max_nt is not None and n + t > max_nt):
            continue
        for blocks in _compositions(n, t + 1):
            out.append(CGen(blocks))
    return out


# ---------------------------------------------------------------------------
# comultiplication by absorption
# ---------------------------------------------------------------------------


def _jword(blocks):
    """The slot row of f_blocks: False = unit slot, True = j."""
    word = []
    for i, b in enumerate(blocks):
        word.extend([False] * b)
        if i < len(blocks) - 1:
            word.append(True)
    return tuple(word)


def _blocks(word):
    """Inverse of _jword: run lengths of unit slots between j's."""
    blocks = [0]
    for is_j in word:
        if is_j:
            blocks.append(0)
        else:
            blocks[-1] += 1
    return tuple(blocks)


def _cuts(total, parts):
    """Compositions of ``total`` into ``parts`` positive integers."""
    for bars in itertools.combinations(range(1, total), parts - 1):
        prev, out = 0, []
        for b in bars:
            out.append(b - prev)
            prev = b
        out.append(total - prev)
        yield tuple(out)


@lru_cache(maxsize=None)
def comult_full(x):
    """The full comultiplication of the CGen x, as an Element whose words
    are (inner_1, ..., inner_k, outer) with k = outer.arity.

    Each composition of the slot row into consecutive blocks gives one term
    per choice: a block reading exactly (j) either becomes an inner f_{0;0}
    or passes its j through to the outer factor (dropping the inner slot);
    every other block is absorbed by an inner factor verbatim.  All
    coefficients are +1 (every letter has even degree).
    """
    word = _jword(x.blocks)
    n_slots = len(word)
    terms = {}
    for parts in range(1, n_slots + 1):
        for sizes in _cuts(n_slots, parts):
            blocks, pos = [], 0
            for s in sizes:
                blocks.append(word[pos : pos + s])
                pos += s
            options = [
                ((True,), (False,)) if blk == (True,) else ((False,),)
                for blk in blocks
            ]
            for choice in itertools.product(*options):
                inner = tuple(
                    CGen(_blocks(blk))
                    for blk, (passed,) in zip(blocks, choice)
                    if not passed
                )
                outer = CGen(_blocks(tuple(p for (p,) in choice)))
                key = inner + (outer,)
                terms[key] = terms.get(key, 0) + 1
    return Element(terms)


def c_comult(x, shape=None):
    """comult_full filtered by an optional shape (k, (n_1, ..., n_k))."""
    full = comult_full(x)
    if shape is None:
        return full
    k, arities = shape
    if sum(arities) != x.arity:
        raise ValueError("shape does not sum to the arity of the generator")
    out = {}
    for wkey, coef in full.terms.items():
        inner, outer = wkey[:-1], wkey[-1]
        if len(inner) == k and tuple(g.arity for g in inner) == tuple(arities):
            out[wkey] = coef
    return Element(out)


# ---------------------------------------------------------------------------
# the cooperad backend
# ---------------------------------------------------------------------------


class CBackend:
    """Tree-component comultiplication for C.

    delta(elt, t) returns words with one CGen per internal vertex of t in
    postorder (subtree factors first, root last); slots of t that are bare
    inputs contract an inner f_1 away.
    """

    def __init__(self, max_nt=6):
        self.max_nt = max_nt

    def basis(self, n, max_iv=3):
        return c_generators(n, max_iv, max_nt=self.max_nt)

    def counit(self, elt):
        return elt.terms.get((F1,), 0)

    def delta(self, elt, t):
        if t.is_circ:
            return Element()
        rec = t.to_rec()
        out = Element()
        for word, coef in elt.terms.items():
            (x,) = word
            if x.arity != t.n_inputs:
                raise ValueError("arity mismatch between element and tree")
            for factors, c in self._delta_letter(x, rec).items():
                out = out + Element({factors: coef * c})
        return out

    def _delta_letter(self, x, rec):
        """dict (postorder factor tuple) -> coefficient for the component of
        the iterated comultiplication of x shaped by the node ``rec``."""
        children = rec[1]
        k = len(children)
        out = {}
        for wkey, coef in comult_full(x).terms.items():
            inner, outer = wkey[:-1], wkey[-1]
            if len(inner) != k:
                continue
            rows = []
            ok = True
            for g, child in zip(inner, children):
                if child[0] == "inp":
                    if g != F1:
                        ok = False
                        break
                    rows.append({(): 1})
                else:
                    sub = self._delta_letter(g, child)
                    if not sub:
                        ok = False
                        break
                    rows.append(sub)
            if not ok:
                continue
            for combo in itertools.product(*(r.items() for r in rows)):
                factors = tuple(
                    g for (fs, _c) in combo for g in fs
                ) + (outer,)
                c = coef
                for _fs, c2 in combo:
                    c *= c2
                out[factors] = out.get(factors, 0) + c
        return {w: c for w, c in out.items() if c}


def build_C(max_nt=6):
    """The augmented curved cooperad (C, d = 0, delta0, w = f_1)."""

    def delta0_letter(x):
        if x.blocks == (0, 1):
            return -1
        if x.blocks == (1, 0):
            return 1
        return 0

    return CurvedCooperad(
        CBackend(max_nt),
        lambda e: Element.zero(),
        linear_functional(delta0_letter),
        w=Element.from_letter(F1),
        tag="CACoop",
        flags=frozenset({"curved_augmented", "augmented_curved"}),
    )


# ---------------------------------------------------------------------------
# the free dg operad on the b-generators
# ---------------------------------------------------------------------------


def build_ainfhu(max_nt=6):
    """The free graded operad on b_{n0;...;nt} with n + t <= max_nt,
    excluding b_1 (blocks (1,)) and including b_{0;0}."""
    gens = {}
    for n in range(max_nt + 1):
        letters = [
            BGen(g.blocks)
            for g in c_generators(n, max_nt - n, max_nt=max_nt)
            if g.blocks != (1,)
        ]
        if letters:
            gens[n] = letters
    return FreeOperad(gens)


def _insert_word(free, inner, x, z, outer):
    return free.compose(
        free.gen_element(inner), x, z, free.gen_element(outer)
    )


def ainfhu_diff(b, free):
    """The closed-form differential value on the generator b.

    Parts: the curvature-functional scalar on the operad unit; minus the
    b_{0;0} insertions merging adjacent blocks; minus one term for every
    interior segment of the slot row of length >= 2 that does not exhaust
    the row, absorbed by an inner generator while the outer keeps the
    outside slots.
    """
    blocks = b.blocks
    out = Element()
    if blocks == (0, 1):
        out = out - free.unit()
    elif blocks == (1, 0):
        out = out + free.unit()

    # b_{0;0} insertions: merge blocks i-1, i around a new unit slot
    t = len(blocks) - 1
    for i in range(1, t + 1):
        merged = (
            blocks[: i - 1]
            + (blocks[i - 1] + 1 + blocks[i],)
            + blocks[i + 1 :]
        )
        if merged == (1,):
            # the outer factor would be the excluded arity-one generator
            continue
        x = sum(blocks[:i])
        z = sum(blocks[i:])
        out = out - _insert_word(free, BGen((0, 0)), x, z, BGen(merged))

    # interior segments of the slot row, r >= 2 and a + c > 0
    word = _jword(blocks)
    total = len(word)
    for a in range(total + 1):
        for r in range(2, total - a + 1):
            c = total - a - r
            if a + c == 0:
                continue
            inner = BGen(_blocks(word[a : a + r]))
            outer = BGen(_blocks(word[:a] + (False,) + word[a + r :]))
            x = sum(1 for p in word[:a] if not p)
            z = sum(1 for p in word[a + r :] if not p)
            out = out - _insert_word(free, inner, x, z, outer)
    return out


# ---------------------------------------------------------------------------
# the isomorphism certificate
# ---------------------------------------------------------------------------


def _transport(elt, free_b):
    """Rewrite a cobar element over f-generator letters (shifted CGen) as an
    element of the free operad over the matching b-generators."""
    out = Element()
    for word, coef in elt.terms.items():
        (x,) = word
        dec = tuple(BGen(g.base.blocks) for g in x.dec)
        out = out + Element({(DecTree(x.tree, dec),): coef})
    return out


def verify_iso(bound, cobar_result=None):
    """Compare the cobar differential of every generator f_{n0;...;nt} with
    n + t <= bound against the closed-form b-differential under the
    identification f sigma^{-1} -> b.  Returns a certificate dict."""
    from .cobar_bar import cobar

    if cobar_result is None:
        C = build_C(max_nt=bound)
        cobar_result = cobar(C, max_arity=bound, gen_max_iv=bound)
    free_b = build_ainfhu(max_nt=bound)
    records = []
    mismatches = 0
    for gens in cobar_result.gens_by_arity.values():
        for g in gens:
            lhs = _transport(cobar_result.d_check(g), free_b)
            rhs = ainfhu_diff(BGen(g.base.blocks), free_b)
            match = lhs == rhs
            if not match:
                mismatches += 1
            records.append(
                {
                    "generator": BGen(g.base.blocks).label,
                    "cobar": repr(lhs),
                    "closed_form": repr(rhs),
                    "match": match,
                }
            )
    records.sort(key=lambda r: r["generator"])
    return {
        "bound": bound,
        "curvature": repr(cobar_result.m0),
        "curvature_zero": cobar_result.m0.is_zero(),
        "compared": len(records),
        "mismatches": mismatches,
        "ok": mismatches == 0 and cobar_result.m0.is_zero(),
        "records": records,
    }
