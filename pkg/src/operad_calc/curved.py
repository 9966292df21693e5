"""Curved operads, curved cooperads, their morphisms, and END(V,d).

A curved operad carries a degree-1 derivation d whose square is the inner
derivation of a curvature element m0 in arity 1, degree 2; dually a curved
cooperad carries a degree-1 coderivation whose square is the inner
coderivation of a curvature functional delta0 on the arity-1 component,
degree 2.  Verifiers check every defining equation exactly on basis elements
within explicit bounds and return machine-readable failure reports.
"""

import itertools
from dataclasses import dataclass, field

from .graded import Element, sign_pow, word_zdeg, zdeg
from .operads import check_operad_identities
from .cooperads import check_cooperad_identities
from .trees import linear_tree, tee, trees_with_iv


def linear_functional(letter_fn):
    """Extend a letter-valued integer functional to Elements."""

    def fn(elt):
        return sum(c * letter_fn(w[0]) for w, c in elt.terms.items())

    return fn


class _Capped:
    """Backend proxy returning at most ``cap`` basis elements per arity."""

    def __init__(self, backend, cap):
        self._b = backend
        self._cap = cap

    def unit(self):
        return self._b.unit()

    def compose(self, a, x, z, b):
        return self._b.compose(a, x, z, b)

    def delta(self, elt, t):
        return self._b.delta(elt, t)

    def counit(self, elt):
        return self._b.counit(elt)

    def basis(self, n, max_iv=3):
        out = self._b.basis(n, max_iv)
        return out if self._cap is None else out[: self._cap]


@dataclass
class CurvedOperad:
    """(O, m, d, m0, eta) with an optional splitting v of the unit."""

    backend: object
    d: object  # Element -> Element, degree 1
    m0: Element
    v: object = None  # Element -> int, degree 0, v(unit) = 1
    tag: str = "cOp"
    flags: frozenset = frozenset()

    def unit(self):
        return self.backend.unit()

    def compose(self, a, x, z, b):
        return self.backend.compose(a, x, z, b)

    def basis(self, n, max_iv=3):
        return self.backend.basis(n, max_iv)

    def pr(self, elt):
        """Projection onto the complement of the unit: 1 - v·eta."""
        if self.v is None:
            raise ValueError("operad has no splitting of the unit")
        return elt - self.v(elt) * self.unit()


@dataclass
class CurvedCooperad:
    """(C, Delta, d, delta0, eps) with an optional splitting w of the
    counit (an arity-1 element of degree 0 with eps(w) = 1)."""

    backend: object
    d: object  # Element -> Element, degree 1
    delta0: object  # Element -> int, degree 2 functional on C(1)
    w: Element = None
    tag: str = "cCoop"
    flags: frozenset = frozenset()

    def delta(self, elt, t):
        return self.backend.delta(elt, t)

    def counit(self, elt):
        return self.backend.counit(elt)

    def basis(self, n, max_iv=3):
        return self.backend.basis(n, max_iv)

    def unit(self):
        return self.backend.unit() if hasattr(self.backend, "unit") else None

    def pr(self, elt):
        """Projection onto the complement of the counit: 1 - eps·w."""
        if self.w is None:
            raise ValueError("cooperad has no splitting of the counit")
        return elt - self.counit(elt) * self.w


# ---------------------------------------------------------------------------
# verifiers
# ---------------------------------------------------------------------------


def verify_curved_operad(op, bound, max_iv=2, basis_cap=None, identities=True):
    """Check the curved-operad axioms on all basis elements of arity <= bound
    (optionally capped per arity).  Returns a list of failure records
    (identity id, data, witness); empty means pass within the bound."""
    failures = []
    base = _Capped(op.backend, basis_cap)

    if identities:
        for rec in check_operad_identities(base, bound, max_iv=max_iv):
            failures.append(("operad-identity",) + tuple(rec))

    def elems(n):
        return [Element.from_letter(x) for x in base.basis(n, max_iv)]

    # Leibniz rule for d on binary compositions
    for n in range(bound + 1):
        for m in range(1, bound + 1):
            for a, b in itertools.product(elems(n), elems(m)):
                da, db = op.d(a), op.d(b)
                sa = sign_pow(word_zdeg(next(iter(a.terms))))
                for x in range(m):
                    z = m - 1 - x
                    lhs = op.d(op.compose(a, x, z, b))
                    rhs = op.compose(da, x, z, b) + sa * op.compose(a, x, z, db)
                    if lhs != rhs:
                        failures.append(("d-leibniz", (n, m, x, z), a, b))

    # d^2 is the inner derivation of m0
    for n in range(bound + 1):
        for a in elems(n):
            lhs = op.d(op.d(a))
            rhs = Element()
            for x in range(n):
                rhs = rhs + op.compose(op.m0, x, n - 1 - x, a)
            rhs = rhs - op.compose(a, 0, 0, op.m0)
            if lhs != rhs:
                failures.append(("d-squared", n, a, lhs - rhs))

    if op.d(op.m0) != Element():
        failures.append(("m0-d", 1, op.m0, op.d(op.m0)))

    if op.v is not None and op.v(op.unit()) != 1:
        failures.append(("unit-splitting", 1, op.unit(), op.v(op.unit())))

    return failures


def coderivation_defect(coop, xi, deg, c, t):
    """Delta_t(xi c) - (xi x 1 + 1 x xi)Delta_t(c) for a two-vertex tree."""
    lhs = coop.delta(xi(c), t)
    rhs = Element()
    for w, co in coop.delta(c, t).terms.items():
        a, b = w
        for w2, c2 in xi(Element.from_letter(a)).terms.items():
            rhs = rhs + Element({(w2[0], b): co * c2})
        s = sign_pow(deg * a.zdeg)
        for w2, c2 in xi(Element.from_letter(b)).terms.items():
            rhs = rhs + Element({(a, w2[0]): s * co * c2})
    return lhs - rhs


def verify_curved_cooperad(
    coop, bound, max_iv=2, basis_cap=None, identities=True, check_flags=True
):
    """Check the curved-cooperad axioms (and flag-conditional equations) on
    all basis elements of arity <= bound.  Returns failure records."""
    failures = []
    base = _Capped(coop.backend, basis_cap)

    if identities:
        for rec in check_cooperad_identities(
            base, bound, max_iv=max_iv, basis_max_iv=max_iv
        ):
            failures.append(("cooperad-identity",) + tuple(rec))

    def elems(n):
        return [Element.from_letter(x) for x in base.basis(n, max_iv)]

    # d is a coderivation
    for n in range(bound + 1):
        for c in elems(n):
            for x in range(n + 1):
                for y in range(n - x + 1):
                    t = tee(x, y, n - x - y)
                    defect = coderivation_defect(coop, coop.d, 1, c, t)
                    if not defect.is_zero():
                        failures.append(("d-coderivation", (x, y), c, defect))

    # d^2 is the inner coderivation of delta0
    for n in range(bound + 1):
        for c in elems(n):
            lhs = coop.d(coop.d(c))
            rhs = Element()
            for w, co in coop.delta(c, tee(0, n, 0)).terms.items():
                a, b = w
                rhs = rhs + Element(
                    {(a,): co * coop.delta0(Element.from_letter(b))}
                )
            for x in range(n):
                t = tee(x, 1, n - 1 - x)
                for w, co in coop.delta(c, t).terms.items():
                    a, b = w
                    rhs = rhs - Element(
                        {(b,): co * coop.delta0(Element.from_letter(a))}
                    )
            if lhs != rhs:
                failures.append(("d-squared", n, c, lhs - rhs))

    for c in elems(1):
        if coop.delta0(coop.d(c)) != 0:
            failures.append(("delta0-d", 1, c, coop.delta0(coop.d(c))))

    if coop.w is not None and coop.counit(coop.w) != 1:
        failures.append(("counit-splitting", 1, coop.w, coop.counit(coop.w)))

    if check_flags and coop.w is not None:
        if "curved_augmented" in coop.flags:
            # w: 1 -> C is a morphism of counital cooperads
            for t in trees_with_iv(1, max_iv):
                got = coop.delta(coop.w, t)
                m = len(t.iv())
                if t == linear_tree(m):
                    want = _tensor_power(coop.w, m)
                else:
                    want = Element()
                if got != want:
                    failures.append(("w-comorphism", t, coop.w, got - want))
        if "augmented_curved" in coop.flags:
            if coop.delta0(coop.w) != 0:
                failures.append(("w-delta0", 1, coop.w, coop.delta0(coop.w)))
            if not coop.d(coop.w).is_zero():
                failures.append(("w-d", 1, coop.w, coop.d(coop.w)))

    return failures


def _tensor_power(elt, m):
    out = Element({(): 1})
    for _ in range(m):
        out = out.tensor(elt)
    return out


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------


@dataclass
class CurvedMorphism:
    """(f1, f0): the linear part f1 plus the curvature-correction part f0.

    For operads f0 is a degree-1 element of target(1); for cooperads f0 is a
    degree-1 integer functional on source(1)."""

    kind: str  # "operad" | "cooperad"
    source: object
    target: object
    f1: object
    f0: object
    tag: str = ""

    def __post_init__(self):
        if not self.tag:
            self.tag = "cOp" if self.kind == "operad" else "cCoop"


def identity_morphism(obj, kind):
    if kind == "operad":
        return CurvedMorphism("operad", obj, obj, lambda e: e, Element())
    return CurvedMorphism("cooperad", obj, obj, lambda e: e, lambda e: 0)


def compose_morphisms(f, g):
    """The composite source(f) -> target(f) = source(g) -> target(g)."""
    if f.kind != g.kind:
        raise ValueError("cannot compose morphisms of different kinds")
    if f.target is not g.source and f.target != g.source:
        raise ValueError("morphism domains do not match")
    tag = f.tag if f.tag == g.tag else ("cOp" if f.kind == "operad" else "cCoop")
    if f.kind == "operad":
        h0 = g.f1(f.f0) + g.f0
        return CurvedMorphism(
            "operad", f.source, g.target, lambda e: g.f1(f.f1(e)), h0, tag
        )

    def h0(c):
        return f.f0(c) + g.f0(f.f1(c))

    return CurvedMorphism(
        "cooperad", f.source, g.target, lambda e: g.f1(f.f1(e)), h0, tag
    )


def verify_operad_morphism(f, bound, max_iv=2, basis_cap=None):
    """Check the curved-operad morphism equations for f = (f1, f0) together
    with multiplicativity and unitality of f1, plus tag restrictions."""
    failures = []
    src, tgt = f.source, f.target
    sbase = _Capped(src.backend, basis_cap)

    def elems(n):
        return [Element.from_letter(x) for x in sbase.basis(n, max_iv)]

    if f.f1(src.unit()) != tgt.unit():
        failures.append(("f1-unit", 0, src.unit(), f.f1(src.unit())))

    for n in range(bound + 1):
        for m in range(1, bound + 1):
            for a, b in itertools.product(elems(n), elems(m)):
                for x in range(m):
                    z = m - 1 - x
                    lhs = f.f1(src.compose(a, x, z, b))
                    rhs = tgt.compose(f.f1(a), x, z, f.f1(b))
                    if lhs != rhs:
                        failures.append(("f1-compose", (n, m, x, z), a, b))

    for n in range(bound + 1):
        for a in elems(n):
            fa = f.f1(a)
            # (1 x f0) applied to a: f0 passes a, Koszul sign (-1)^{deg a}
            s = sign_pow(word_zdeg(next(iter(a.terms))))
            lhs = f.f1(src.d(a)) + s * tgt.compose(fa, 0, 0, f.f0)
            for x in range(n):
                lhs = lhs - tgt.compose(f.f0, x, n - 1 - x, fa)
            rhs = tgt.d(fa)
            if lhs != rhs:
                failures.append(("morphism-d", n, a, lhs - rhs))

    lhs0 = tgt.m0 + tgt.d(f.f0) + tgt.compose(f.f0, 0, 0, f.f0)
    rhs0 = f.f1(src.m0)
    if lhs0 != rhs0:
        failures.append(("morphism-m0", 1, lhs0, rhs0))

    if f.tag == "uccOp" and not f.f0.is_zero():
        failures.append(("tag-zero-part", f.tag, f.f0, None))
    if f.tag == "UCCOp":
        if tgt.v is None or not (f.f0 - tgt.v(f.f0) * tgt.unit()).is_zero():
            failures.append(("tag-unit-multiple", f.tag, f.f0, None))

    return failures


def verify_cooperad_morphism(g, bound, max_iv=2, basis_cap=None):
    """Check the curved-cooperad morphism equations for g = (g1, g0) together
    with comultiplicativity and counitality of g1, plus tag restrictions."""
    failures = []
    src, tgt = g.source, g.target
    sbase = _Capped(src.backend, basis_cap)

    def elems(n):
        return [Element.from_letter(x) for x in sbase.basis(n, max_iv)]

    for n in range(bound + 1):
        for c in elems(n):
            if tgt.counit(g.f1(c)) != src.counit(c):
                failures.append(("g1-counit", n, c, None))
            for x in range(n + 1):
                for y in range(n - x + 1):
                    t = tee(x, y, n - x - y)
                    lhs = tgt.delta(g.f1(c), t)
                    rhs = Element()
                    for w, co in src.delta(c, t).terms.items():
                        a, b = w
                        for wa, ca in g.f1(Element.from_letter(a)).terms.items():
                            for wb, cb in g.f1(Element.from_letter(b)).terms.items():
                                rhs = rhs + Element(
                                    {(wa[0], wb[0]): co * ca * cb}
                                )
                    if lhs != rhs:
                        failures.append(("g1-comult", (x, y), c, lhs - rhs))

    for n in range(bound + 1):
        for c in elems(n):
            lhs = g.f1(src.d(c))
            for x in range(n):
                t = tee(x, 1, n - 1 - x)
                for w, co in src.delta(c, t).terms.items():
                    a, b = w
                    lhs = lhs + co * g.f0(Element.from_letter(a)) * g.f1(
                        Element.from_letter(b)
                    )
            for w, co in src.delta(c, tee(0, n, 0)).terms.items():
                a, b = w
                s = sign_pow(a.zdeg)
                lhs = lhs - s * co * g.f0(Element.from_letter(b)) * g.f1(
                    Element.from_letter(a)
                )
            rhs = tgt.d(g.f1(c))
            if lhs != rhs:
                failures.append(("morphism-d", n, c, lhs - rhs))

    for c in elems(1):
        lhs = src.delta0(c) - g.f0(src.d(c))
        for w, co in src.delta(c, tee(0, 1, 0)).terms.items():
            a, b = w
            s = sign_pow(a.zdeg)
            lhs += s * co * g.f0(Element.from_letter(a)) * g.f0(
                Element.from_letter(b)
            )
        rhs = tgt.delta0(g.f1(c))
        if lhs != rhs:
            failures.append(("morphism-delta0", 1, c, lhs - rhs))

    if g.tag == "acCoop":
        for n in range(bound + 1):
            for c in elems(n):
                if n == 1 and g.f0(c) != 0:
                    failures.append(("tag-zero-part", g.tag, c, g.f0(c)))
    if g.tag in ("CACoop", "caCoop") and src.w is not None and tgt.w is not None:
        if g.f1(src.w) != tgt.w:
            failures.append(("tag-augmentation", g.tag, src.w, g.f1(src.w)))

    return failures


# ---------------------------------------------------------------------------
# END(V, d)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EndGen:
    """The elementary map V^{x n} -> V sending the basis word ``ins`` to the
    basis element ``out`` and all other basis words to zero."""

    ins: tuple
    out: int
    vdegs: tuple

    @property
    def zdeg(self):
        return self.vdegs[self.out] - sum(self.vdegs[i] for i in self.ins)

    @property
    def wdeg(self):
        return 0

    @property
    def arity(self):
        return len(self.ins)

    @property
    def label(self):
        return "e[%s->%d]" % ("".join(str(i) for i in self.ins), self.out)

    def __repr__(self):
        return self.label


class EndBackend:
    """The endomorphism operad of a finite-rank graded module, spanned by
    elementary maps within a symmetric degree window."""

    def __init__(self, vdegs, window=6):
        self.vdegs = tuple(vdegs)
        self.window = window

    def gen(self, ins, out):
        return EndGen(tuple(ins), out, self.vdegs)

    def unit(self):
        out = Element()
        for i in range(len(self.vdegs)):
            out = out + Element.from_letter(self.gen((i,), i))
        return out

    def basis(self, n, max_iv=None):
        rng = range(len(self.vdegs))
        out = []
        for ins in itertools.product(rng, repeat=n):
            for o in rng:
                g = self.gen(ins, o)
                if abs(g.zdeg) <= self.window:
                    out.append(g)
        return out

    def compose(self, a, x, z, b):
        """Plug ``a`` into input slot x of ``b`` (with z slots after it)."""
        out = Element()
        for wa, ca in a.terms.items():
            (fa,) = wa
            for wb, cb in b.terms.items():
                (fb,) = wb
                if len(fb.ins) != x + 1 + z:
                    raise ValueError("slot pattern does not match root arity")
                if fb.ins[x] != fa.out:
                    continue
                ins = fb.ins[:x] + fa.ins + fb.ins[x + 1 :]
                # Koszul sign: the root factor passes the inner one (inner
                # factor listed first), then the inner map passes the first
                # x inputs on evaluation
                s = sign_pow(
                    fa.zdeg * fb.zdeg
                    + fa.zdeg * sum(self.vdegs[i] for i in fb.ins[:x])
                )
                out = out + Element(
                    {(self.gen(ins, fb.out),): s * ca * cb}
                )
        return out


def build_end(v, dmat, window=6):
    """The curved operad END(V, d_V) for V free with basis ``v`` (a list of
    (name, degree) pairs) and d_V given by the integer matrix ``dmat``
    (dmat[i][j] = coefficient of v_i in d(v_j); degree 1)."""
    vdegs = tuple(deg for _name, deg in v)
    r = len(vdegs)
    for i in range(r):
        for j in range(r):
            if dmat[i][j] and vdegs[i] != vdegs[j] + 1:
                raise ValueError("d must be homogeneous of degree 1")
    backend = EndBackend(vdegs, window)

    def d_map(elt):
        out = Element()
        for w, co in elt.terms.items():
            (f,) = w
            # post-compose with d_V
            for i in range(r):
                if dmat[i][f.out]:
                    out = out + Element(
                        {(backend.gen(f.ins, i),): co * dmat[i][f.out]}
                    )
            # pre-compose with 1^x x d_V x 1^z in each slot
            s_f = -sign_pow(f.zdeg)
            for x in range(len(f.ins)):
                pass_sign = sign_pow(sum(vdegs[i] for i in f.ins[:x]))
                for k in range(r):
                    if dmat[f.ins[x]][k]:
                        ins = f.ins[:x] + (k,) + f.ins[x + 1 :]
                        out = out + Element(
                            {
                                (backend.gen(ins, f.out),): co
                                * s_f
                                * pass_sign
                                * dmat[f.ins[x]][k]
                            }
                        )
        return out

    m0 = Element()
    for j in range(r):
        for i in range(r):
            c = sum(dmat[i][k] * dmat[k][j] for k in range(r))
            if c:
                m0 = m0 - Element({(backend.gen((j,), i),): c})

    def v_split(elt):
        return elt.terms.get((backend.gen((0,), 0),), 0)

    return CurvedOperad(backend, d_map, m0, v_split, tag="ucOp")
