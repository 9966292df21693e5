"""Cofree conilpotent cooperads and coderivations.

The carrier of the augmented cofree cooperad on a collection X is spanned by
decorated trees (one generator per internal vertex, postorder) together with
the unit word (the undecorated tree circ).  The comultiplication splits a
decorated tree along a subset of its internal edges; the non-counital family
delta_bar_t collects the splittings with outer shape t, and the augmented
family delta_t additionally inserts unit factors at unary vertices of t.
"""

import itertools
from functools import lru_cache

from .graded import Element, koszul_sign, sign_pow, zdeg
from .operads import DecTree
from .trees import (
    circ,
    corolla,
    decompose,
    insert_unary,
    strip_unary,
    substitute_with_maps,
    tee,
    trees_with_iv,
)


@lru_cache(maxsize=None)
def _splittings_of(tau):
    out = []
    for outer, fam in decompose(tau):
        _, iv_map, _ = substitute_with_maps(outer, fam)
        out.append((outer, fam, iv_map))
    return tuple(out)


def _is_unit(letter):
    return isinstance(letter, DecTree) and letter.tree.is_circ


UNIT_WORD = None  # assigned below


def unit_letter():
    return DecTree(circ(), ())


def split_decorated(x, t, fam, iv_map):
    """Split the decorated tree ``x`` along the decomposition (t, fam) of its
    underlying tree: returns (sign, factors) where factors[p] is the decorated
    tree on fam[p] and sign is the Koszul sign of regrouping the decorations
    from the postorder of x.tree into the blocks (in postorder of t, each
    block in its own postorder)."""
    dec = x.dec
    degs = [zdeg(g) for g in dec]
    perm = []
    factors = []
    for p, sub in enumerate(fam):
        idxs = [iv_map[(p, q)] for q in range(len(sub.iv()))]
        perm.extend(idxs)
        factors.append(DecTree(sub, tuple(dec[i] for i in idxs)))
    sign = koszul_sign(degs, perm)
    return sign, factors


class CofreeCooperad:
    """The augmented cofree conilpotent cooperad on arity-indexed generator
    letters."""

    def __init__(self, gens_by_arity, plus_plus=True):
        self.gens_by_arity = {n: tuple(gs) for n, gs in gens_by_arity.items() if gs}
        if plus_plus:
            for n in (0, 1):
                for g in self.gens_by_arity.get(n, ()):
                    if getattr(g, "wdeg", 0) == 0:
                        raise ValueError(
                            "weight-0 generator in arity 0 or 1 breaks "
                            "conilpotency"
                        )
        self.plus_plus = plus_plus

    # -- elements ----------------------------------------------------------

    def unit(self):
        return Element.from_letter(unit_letter())

    def cogen_element(self, g):
        return Element.from_letter(DecTree(corolla(g.arity), (g,)))

    def basis(self, n, max_iv=3):
        out = []
        if n == 1:
            out.append(unit_letter())
        for t in trees_with_iv(n, max_iv):
            arities = [t.arity(v) for v in t.iv()]
            pools = [self.gens_by_arity.get(a, ()) for a in arities]
            if any(not p for p in pools):
                continue
            for dec in itertools.product(*pools):
                out.append(DecTree(t, dec))
        return out

    def counit(self, elt):
        """Coefficient of the unit word."""
        return elt.terms.get((unit_letter(),), 0)

    def cogen_proj(self, elt):
        """The cogenerating projection pr: X bot -> X (corolla components)."""
        out = {}
        for word, coef in elt.terms.items():
            (x,) = word
            if not x.tree.is_circ and len(x.dec) == 1 and x.tree == corolla(x.arity):
                out[(x.dec[0],)] = out.get((x.dec[0],), 0) + coef
        return Element(out)

    # -- comultiplication --------------------------------------------------

    def delta_bar(self, elt, t):
        """Non-counital comultiplication with outer shape t (t != circ);
        returns an Element whose words have one decorated-tree letter per
        internal vertex of t."""
        out = Element()
        for word, coef in elt.terms.items():
            (x,) = word
            if _is_unit(x):
                continue
            for outer, fam, iv_map in self._splittings(x.tree):
                if outer != t:
                    continue
                sign, factors = split_decorated(x, t, fam, iv_map)
                out = out + Element({tuple(factors): sign * coef})
        return out

    def _splittings(self, tau):
        return _splittings_of(tau)

    def delta_bar_support(self, elt, max_iv=None):
        """All outer shapes t with delta_bar(elt, t) != 0."""
        shapes = set()
        for word in elt.terms:
            (x,) = word
            if _is_unit(x):
                continue
            for outer, _fam in decompose(x.tree):
                shapes.add(outer)
        return sorted(shapes, key=lambda t: (len(t.iv()), t.stages, sorted(t.inputs)))

    def delta(self, elt, t):
        """Augmented comultiplication for the cooperad 1 ⊕ X bot: includes
        unit insertions at subsets N of the unary vertices of t, and the
        theta_m component on the unit word."""
        out = Element()
        m = len(t.iv())
        for word, coef in elt.terms.items():
            (x,) = word
            if x.arity != t.n_inputs:
                raise ValueError("arity mismatch between element and tree")
            if _is_unit(x):
                # nonzero only when every internal vertex of t is unary
                if all(t.arity(v) == 1 for v in t.iv()) and t.n_inputs == 1:
                    out = out + Element({(unit_letter(),) * m: coef})
                continue
            unary = [i for i, v in enumerate(t.iv()) if t.arity(v) == 1]
            for r in range(len(unary) + 1):
                for N in itertools.combinations(unary, r):
                    if len(N) == m:
                        continue  # the all-units component vanishes on X bot
                    stripped = strip_unary(t, N)
                    inner = self.delta_bar(Element({word: coef}), stripped)
                    if inner.is_zero():
                        continue
                    keep = [i for i in range(m) if i not in N]
                    for w2, c2 in inner.terms.items():
                        full = [unit_letter()] * m
                        for j, i in enumerate(keep):
                            full[i] = w2[j]
                        out = out + Element({tuple(full): c2})
        return out

    comult = delta

    def delta_support(self, x, max_iv):
        """Shapes t with |IV(t)| <= max_iv where delta at the letter ``x``
        can be nonzero: contractions of x.tree together with unit-carrying
        unary-vertex insertions (towers theta_m for the unit letter)."""
        from .trees import linear_tree

        if _is_unit(x):
            return [linear_tree(m) for m in range(1, max_iv + 1)]
        shapes = {
            outer
            for outer, _fam, _m in self._splittings(x.tree)
            if len(outer.iv()) <= max_iv
        }
        frontier = set(shapes)
        while frontier:
            grown = set()
            for s in frontier:
                if len(s.iv()) >= max_iv:
                    continue
                for spot in range(len(s.postorder())):
                    t2 = insert_unary(s, spot)
                    if t2 not in shapes:
                        grown.add(t2)
            shapes |= grown
            frontier = grown
        return sorted(
            shapes, key=lambda t: (len(t.iv()), t.stages, sorted(t.inputs))
        )

    # -- coderivations -----------------------------------------------------

    def extend_coderivation(self, check, deg, phi=None):
        """The id-coderivation xi with xi·pr = check.

        ``check`` maps basis letters (decorated trees, plus the unit word for
        the circ-component) to Elements over single generator letters of the
        matching arity.  ``phi`` optionally maps generator letters to
        generator-letter Elements (degree 0) and is applied to the untouched
        decorations.
        """

        def phi_letter(g):
            if phi is None:
                return Element.from_letter(g)
            return phi(g)

        def apply_check_at(t, factors, sign, p0, coef, out):
            # factors: DecTree letters in t-postorder; check eats factor p0
            val = check(factors[p0])
            if val is None or val.is_zero():
                return out
            pass_sign = sign_pow(deg * sum(f.zdeg for f in factors[:p0]))
            pools = []
            for p, f in enumerate(factors):
                if p == p0:
                    pools.append(list(val.terms.items()))
                else:
                    if len(f.dec) != 1:
                        raise AssertionError("non-corolla untouched factor")
                    pools.append(list(phi_letter(f.dec[0]).terms.items()))
            for combo in itertools.product(*pools):
                dec = tuple(w[0] for w, _c in combo)
                c = coef * sign * pass_sign
                for _w, ci in combo:
                    c *= ci
                out = out + Element({(DecTree(t, dec),): c})
            return out

        unit_value = check(unit_letter())

        def xi(elt):
            out = Element()
            for word, coef in elt.terms.items():
                (x,) = word
                if _is_unit(x):
                    # xi'' on the unit word: insert one unary vertex into circ
                    if unit_value is not None and not unit_value.is_zero():
                        for w2, c2 in unit_value.terms.items():
                            out = out + Element(
                                {(DecTree(corolla(1), (w2[0],)),): coef * c2}
                            )
                    continue
                tau = x.tree
                # xi': contract one connected block, check eats it
                for t, fam, iv_map in self._splittings(tau):
                    nonsingleton = [
                        p for p, s in enumerate(fam) if len(s.iv()) != 1
                    ]
                    if len(nonsingleton) > 1:
                        continue
                    sign, factors = split_decorated(x, t, fam, iv_map)
                    p0s = nonsingleton if nonsingleton else range(len(fam))
                    for p0 in p0s:
                        out = apply_check_at(t, factors, sign, p0, coef, out)
                # xi'': insert one unary vertex decorated by check of the unit
                if unit_value is None or unit_value.is_zero():
                    continue
                verts = tau.postorder()
                ivset = set(tau.iv())
                for spot in range(len(verts)):
                    t = insert_unary(tau, spot)
                    i = sum(1 for w in verts[: spot + 1] if w in ivset)
                    pass_sign = sign_pow(deg * sum(zdeg(g) for g in x.dec[:i]))
                    for w2, c2 in unit_value.terms.items():
                        dec = x.dec[:i] + (w2[0],) + x.dec[i:]
                        out = out + Element(
                            {(DecTree(t, dec),): coef * pass_sign * c2}
                        )
            return out

        return xi


# ---------------------------------------------------------------------------
# generic cooperad utilities (any backend with delta / counit)
# ---------------------------------------------------------------------------


def inner_coderivation(coop, psi, deg):
    """The id-coderivation xi = Delta_{T(0,n,0)}(1⊗psi) − Σ_{e+1+f=n}
    Delta_{T(e,1,f)}(psi⊗1) built from a functional psi on the arity-1
    component (psi: basis letter -> integer-valued Element scalar)."""

    def psi_of(letter):
        val = psi(letter)
        return val if isinstance(val, int) else val

    def xi(elt):
        out = Element()
        for word, coef in elt.terms.items():
            (x,) = word
            n = _letter_arity(x)
            part = Element({word: coef})
            top = coop.delta(part, tee(0, n, 0))
            for w2, c2 in top.terms.items():
                a, b = w2
                # (1 ⊗ psi): psi passes a
                s = sign_pow(deg * a.zdeg) if deg % 2 else 1
                out = out + Element({(a,): s * c2 * psi_of(b)})
            for e in range(n):
                f = n - 1 - e
                mid = coop.delta(part, tee(e, 1, f))
                for w2, c2 in mid.terms.items():
                    a, b = w2
                    out = out - Element({(b,): c2 * psi_of(a)})
        return out

    return xi


def _letter_arity(x):
    return x.arity


def morphism_from_check(source, f, f_deg=0, max_iv=6):
    """The cooperad morphism g into a cofree cooperad determined by its
    cogenerating component f = g·pr.

    ``source`` exposes delta(elt, t) and counit(elt); ``f`` maps source basis
    letters to Elements over the target's generator letters (arity matching,
    unit letters typically to zero).  Component at the tree t:
    g·pr_t = Delta_t·(f ⊗ … ⊗ f).  Raises if the finite-support condition
    fails at ``max_iv``.
    """

    supp_fn = getattr(source, "delta_support", None)

    def g(elt):
        out = Element()
        arities = {w[0].arity for w in elt.terms}
        for word, coef in elt.terms.items():
            eps = source.counit(Element({word: 1}))
            if eps:
                out = out + Element({(unit_letter(),): coef * eps})
        for n in arities:
            part = Element(
                {w: c for w, c in elt.terms.items() if w[0].arity == n}
            )
            if supp_fn is None:
                shapes = trees_with_iv(n, max_iv)
            else:
                seen = set()
                shapes = []
                for w in part.terms:
                    for t in supp_fn(w[0], max_iv):
                        if t not in seen:
                            seen.add(t)
                            shapes.append(t)
            for t in shapes:
                comp = Element()
                for w2, c2 in source.delta(part, t).terms.items():
                    pools = [list(f(a).terms.items()) for a in w2]
                    if any(not p for p in pools):
                        continue
                    s = c2
                    if f_deg % 2:
                        run = 0
                        for a in w2[:-1]:
                            run += zdeg(a)
                            s *= sign_pow(f_deg * run)
                    for combo in itertools.product(*pools):
                        dec = tuple(wf[0] for wf, _cf in combo)
                        c = s
                        for _wf, cf in combo:
                            c *= cf
                        comp = comp + Element({(DecTree(t, dec),): c})
                if not comp.is_zero():
                    if len(t.iv()) == max_iv:
                        raise ValueError(
                            "support of the morphism exceeds the tree bound"
                        )
                    out = out + comp
        return out

    return g


def check_cooperad_identities(coop, bound, max_iv=1, basis_max_iv=None):
    """Dual unit and coassociativity identities on binary comultiplications:

      (1)  Delta_{T(x,1,z)} then (eps⊗1) = id
      (2)  Delta_{T(0,y,0)} then (1⊗eps) = id
      (3)  Delta_{T(v,w,x+y+z)} then (1⊗Delta_{T(v+1+x,y,z)}), with the first
           two output factors transposed (Koszul sign), equals
           Delta_{T(v+w+x,y,z)} then (1⊗Delta_{T(v,w,x+1+z)})
      (4)  Delta_{T(v+w,x,y+z)} then (1⊗Delta_{T(v,w+1+y,z)}) equals
           Delta_{T(v,w+x+y,z)} then (Delta_{T(w,x,y)}⊗1)

    ``coop`` must expose delta(elt, t), counit(elt) and basis(n, max_iv).
    Returns a list of failures (empty on success).
    """
    failures = []
    if basis_max_iv is None:
        basis_max_iv = max_iv

    def basis_elems(n):
        return [Element.from_letter(x) for x in coop.basis(n, basis_max_iv)]

    for n in range(bound + 1):
        for c in basis_elems(n):
            for x in range(n):
                z = n - 1 - x
                got = Element()
                for w2, c2 in coop.delta(c, tee(x, 1, z)).terms.items():
                    a, b = w2
                    got = got + Element({(b,): c2 * coop.counit(Element.from_letter(a))})
                if got != c:
                    failures.append(("counit-left", (x, z), c, got))
            got = Element()
            for w2, c2 in coop.delta(c, tee(0, n, 0)).terms.items():
                a, b = w2
                got = got + Element({(a,): c2 * coop.counit(Element.from_letter(b))})
            if got != c:
                failures.append(("counit-right", n, c, got))

    def second_factor_delta(pairs, t):
        out = Element()
        for w2, c2 in pairs.terms.items():
            a, b = w2
            inner = coop.delta(Element.from_letter(b), t)
            for w3, c3 in inner.terms.items():
                out = out + Element({(a,) + w3: c2 * c3})
        return out

    def first_factor_delta(pairs, t, deg_of_delta=0):
        out = Element()
        for w2, c2 in pairs.terms.items():
            a, b = w2
            inner = coop.delta(Element.from_letter(a), t)
            for w3, c3 in inner.terms.items():
                out = out + Element({w3 + (b,): c2 * c3})
        return out

    from .operads import _tuples5

    for v, w, x, y, z in _tuples5(bound):
        n = v + w + x + y + z
        if n > bound:
            continue
        for c in basis_elems(n):
            # (3)
            lhs = second_factor_delta(
                coop.delta(c, tee(v, w, x + y + z)), tee(v + 1 + x, y, z)
            )
            swapped = Element()
            for w3, c3 in lhs.terms.items():
                a, b, cc = w3
                s = sign_pow(a.zdeg * b.zdeg)
                swapped = swapped + Element({(b, a, cc): s * c3})
            rhs = second_factor_delta(
                coop.delta(c, tee(v + w + x, y, z)), tee(v, w, x + 1 + z)
            )
            if swapped != rhs:
                failures.append(("coassoc-parallel", (v, w, x, y, z), c))
            # (4)
            lhs4 = second_factor_delta(
                coop.delta(c, tee(v + w, x, y + z)), tee(v, w + 1 + y, z)
            )
            rhs4 = first_factor_delta(
                coop.delta(c, tee(v, w + x + y, z)), tee(w, x, y)
            )
            if lhs4 != rhs4:
                failures.append(("coassoc-nested", (v, w, x, y, z), c))
    return failures
