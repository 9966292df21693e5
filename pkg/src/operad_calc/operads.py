"""The free operad on a graded collection.

Basis words are decorated trees: a planar tree together with one generator
per internal vertex, stored in postorder (children left to right, parents
after children, root last).  The operadic multiplication substitutes trees
into vertices; the tensor factors of the inputs are reordered into the
postorder of the substituted tree, picking up the Koszul sign of that
permutation.
"""

import itertools
from dataclasses import dataclass

from .graded import Element, koszul_sign, sign_pow, zdeg
from .trees import (
    circ,
    corolla,
    substitute_with_maps,
    tee,
    tree_to_text,
    trees_with_iv,
)


@dataclass(frozen=True)
class DecTree:
    """A decorated tree: one generator letter per internal vertex, in
    postorder.  The empty tree circ with no decorations is the operad unit."""

    tree: object
    dec: tuple

    @property
    def zdeg(self):
        return sum(zdeg(g) for g in self.dec)

    @property
    def wdeg(self):
        return sum(getattr(g, "wdeg", 0) for g in self.dec)

    @property
    def arity(self):
        return self.tree.n_inputs

    @property
    def label(self):
        if self.tree.is_circ:
            return "1"
        body = ";".join(getattr(g, "label", str(g)) for g in self.dec)
        return f"{tree_to_text(self.tree)}[{body}]"

    def __repr__(self):
        return self.label


class FreeOperad:
    """The free operad on arity-indexed generator letters."""

    def __init__(self, gens_by_arity, plus_plus=False):
        self.gens_by_arity = {n: tuple(gs) for n, gs in gens_by_arity.items() if gs}
        self.max_gen_arity = max(self.gens_by_arity, default=0)
        if plus_plus:
            for n in (0, 1):
                for g in self.gens_by_arity.get(n, ()):
                    if getattr(g, "wdeg", 0) == 0:
                        raise ValueError(
                            "weight-0 generator in arity 0 or 1 violates the "
                            "finiteness condition"
                        )
        self.plus_plus = plus_plus

    # -- elements ----------------------------------------------------------

    def unit(self):
        return Element.from_letter(DecTree(circ(), ()))

    def gen_element(self, g):
        return Element.from_letter(DecTree(corolla(g.arity), (g,)))

    def basis(self, n, max_iv=3):
        """All decorated trees of arity n with at most max_iv internal
        vertices (plus the unit for n = 1)."""
        out = []
        if n == 1:
            out.append(DecTree(circ(), ()))
        for t in trees_with_iv(n, max_iv):
            arities = [t.arity(v) for v in t.iv()]
            pools = [self.gens_by_arity.get(a, ()) for a in arities]
            if any(not p for p in pools):
                continue
            for dec in itertools.product(*pools):
                out.append(DecTree(t, dec))
        return out

    # -- multiplication ----------------------------------------------------

    def multiply(self, t, args):
        """mu_t applied to one Element per internal vertex of t (postorder).

        Inputs are read as the tensor word args[0] ⊗ … ⊗ args[m-1]; the
        output decoration order is the postorder of the substituted tree and
        the reordering contributes its Koszul sign.
        """
        ivs = t.iv()
        if len(args) != len(ivs):
            raise ValueError("one argument per internal vertex required")
        out = Element()
        for combo in itertools.product(*[list(a.terms.items()) for a in args]):
            words, coefs = zip(*combo) if combo else ((), ())
            letters = [w[0] if len(w) == 1 else None for w in words]
            if any(x is None for x in letters):
                raise ValueError("operad elements must be single-letter words")
            coef = 1
            for c in coefs:
                coef *= c
            out = out + coef * self._multiply_word(t, letters)
        return out

    def _multiply_word(self, t, letters):
        for p, x in enumerate(letters):
            if x.arity != t.arity(t.iv()[p]):
                raise ValueError(
                    f"decorated tree of arity {x.arity} at a vertex of arity "
                    f"{t.arity(t.iv()[p])}"
                )
        tau, iv_map, _ = substitute_with_maps(t, [x.tree for x in letters])
        # input tensor word: decorations of letters[0], then letters[1], ...
        flat = [g for x in letters for g in x.dec]
        offsets = []
        total = 0
        for x in letters:
            offsets.append(total)
            total += len(x.dec)
        inverse = {}
        for (p, q), j in iv_map.items():
            inverse[j] = offsets[p] + q
        perm = [inverse[j] for j in range(total)]
        degs = [zdeg(g) for g in flat]
        sign = koszul_sign(degs, perm)
        dec = tuple(flat[perm[j]] for j in range(total))
        return Element({(DecTree(tau, dec),): sign})

    def compose(self, a, x, z, b):
        """a •_{x,y,z} b = mu_{T(x,y,z)}(a ⊗ b), y = arity of a."""
        if a.is_zero() or b.is_zero():
            return Element()
        ys = {w[0].arity for w in a.terms}
        if len(ys) != 1:
            raise ValueError("left factor must have homogeneous arity")
        (y,) = ys
        return self.multiply(tee(x, y, z), [a, b])

    def extend_morphism(self, values, target=None):
        """The operad morphism with the given degree-0 generator values.

        ``values`` maps generator letters to Elements of ``target`` (same
        arity, degree 0); the extension is multiplicative, sending the unit
        to the target unit.
        """
        tgt = self if target is None else target

        def f(elt):
            out = Element()
            for word, coef in elt.terms.items():
                (x,) = word
                if x.tree.is_circ:
                    out = out + coef * tgt.unit()
                    continue
                args = [values(g) for g in x.dec]
                out = out + coef * tgt.multiply(x.tree, args)
            return out

        return f

    # -- derivations -------------------------------------------------------

    def extend_derivation(self, values, deg, phi=None):
        """The phi-derivation with the given generator values.

        ``values`` maps generator letters to Elements of this operad (same
        arity, degree shifted by ``deg``); ``phi`` is an optional letter map
        gen -> Element over single-generator corollas (defaults to the
        identity), applied to the untouched decorations.
        """

        def phi_elem(g):
            if phi is None:
                return self.gen_element(g)
            return phi(g)

        def xi(elt):
            out = Element()
            for word, coef in elt.terms.items():
                (x,) = word
                tree, dec = x.tree, x.dec
                for i in range(len(dec)):
                    val = values(dec[i]) if callable(values) else values.get(dec[i])
                    if val is None or val.is_zero():
                        continue
                    sign = sign_pow(deg * sum(zdeg(g) for g in dec[:i]))
                    args = [
                        val if p == i else phi_elem(dec[p])
                        for p in range(len(dec))
                    ]
                    out = out + coef * sign * self.multiply(tree, args)
            return out

        return xi


# ---------------------------------------------------------------------------
# generic identity checking (shared by free operads, END, cobar outputs)
# ---------------------------------------------------------------------------


def check_operad_identities(op, bound, max_iv=1, report=None):
    """Check the unit and associativity identities of binary compositions on
    all basis tuples within the arity bound:

      (1)  eta •_{x,1,z} c = c
      (2)  a •_{0,y,0} eta = a
      (3)  a •_{v,w,x+y+z} (b •_{v+1+x,y,z} c)
             = (-1)^{|a||b|} b •_{v+w+x,y,z} (a •_{v,w,x+1+z} c)
      (4)  a •_{v+w,x,y+z} (b •_{v,w+1+y,z} c)
             = (a •_{w,x,y} b) •_{v,w+x+y,z} c

    ``op`` must expose unit(), compose(a, x, z, b) and basis(n, max_iv).
    Returns a list of failure descriptions (empty on success).
    """
    failures = [] if report is None else report
    eta = op.unit()

    def basis_elems(n):
        return [Element.from_letter(x) for x in op.basis(n, max_iv)]

    # (1) and (2)
    for n in range(bound + 1):
        for c in basis_elems(n):
            for x in range(n):
                z = n - 1 - x
                got = op.compose(eta, x, z, c)
                if got != c:
                    failures.append(("unit-left", x, z, c, got))
        for a in basis_elems(n):
            got = op.compose(a, 0, 0, eta)
            if got != a:
                failures.append(("unit-right", n, a, got))

    # (3): a in O(w), b in O(y), c in O(v+1+x+1+z)
    for v, w, x, y, z in _tuples5(bound):
        nc = v + 1 + x + 1 + z
        if nc > bound or w > bound or y > bound:
            continue
        for a in basis_elems(w):
            for b in basis_elems(y):
                for c in basis_elems(nc):
                    inner = op.compose(b, v + 1 + x, z, c)
                    lhs = op.compose(a, v, x + y + z, inner)
                    inner2 = op.compose(a, v, x + 1 + z, c)
                    rhs = op.compose(b, v + w + x, z, inner2)
                    sa = next(iter(a.terms))
                    sb = next(iter(b.terms))
                    sign = sign_pow(
                        sum(zdeg(l) for l in sa) * sum(zdeg(l) for l in sb)
                    )
                    if lhs != sign * rhs:
                        failures.append(("assoc-parallel", (v, w, x, y, z), a, b, c))

    # (4): a in O(x), b in O(w+1+y), c in O(v+1+z)
    for v, w, x, y, z in _tuples5(bound):
        nb = w + 1 + y
        nc = v + 1 + z
        if nb > bound or nc > bound or x > bound:
            continue
        for a in basis_elems(x):
            for b in basis_elems(nb):
                for c in basis_elems(nc):
                    inner = op.compose(b, v, z, c)
                    lhs = op.compose(a, v + w, y + z, inner)
                    left = op.compose(a, w, y, b)
                    rhs = op.compose(left, v, z, c)
                    if lhs != rhs:
                        failures.append(("assoc-nested", (v, w, x, y, z), a, b, c))

    return failures


def _tuples5(bound):
    for v in range(bound + 1):
        for w in range(bound + 1 - v):
            for x in range(bound + 1 - v - w):
                for y in range(bound + 1 - v - w - x):
                    for z in range(bound + 1 - v - w - x - y):
                        yield v, w, x, y, z
