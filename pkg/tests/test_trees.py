"""Tests for the planar-tree combinatorics layer.

Oracle tags:
  [TRIVIAL] asserted directly from definitions.
  [DERIVED] checked against an independently coded brute-force oracle
            (preorder parent-map enumeration, partition contraction).
  Golden staged forms were worked out by hand from the parent maps.
"""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from operad_calc.trees import (
    Tree,
    bullet,
    canonicalize,
    circ,
    corolla,
    decompose,
    enumerate_trees,
    graft,
    insert_unary,
    linear_tree,
    parse_tree_text,
    strip_unary,
    substitute,
    substitute_with_maps,
    tee,
    tree_from_json,
    tree_to_json,
    tree_to_text,
    unary_spots,
)


# ---------------------------------------------------------------------------
# independent brute-force oracle: preorder parent-map enumeration
# ---------------------------------------------------------------------------


def oracle_parent_maps(n, k):
    """All (parent map, inputs, preorder) triples describing a tree with n
    inputs and cost <= k, generated by a preorder walk.  Vertices are created
    in preorder with explicit child counts; cost is charged when it becomes
    known (a nullary non-input vertex costs 1, a unary vertex costs 1 unless
    its child turns out to be an input).  [DERIVED]"""
    results = []

    def rec(slots, inputs_left, cost_left):
        # slots: open child positions as (parent_id, parent_is_unary) pairs,
        # filled right to left so siblings come out left to right.
        if not slots:
            if inputs_left == 0:
                parent = {}
                for vid, (pid, _) in enumerate(order):
                    parent[vid] = vid if pid is None else pid
                inputs = {v for v in parent if is_input[v]}
                results.append((parent, inputs, list(range(len(order)))))
            return
        if len(slots) > inputs_left + cost_left:
            return  # every open slot needs at least an input or a paid leaf
        pid, punary = slots[-1]
        rest = slots[:-1]
        vid = len(order)
        # option 1: fill the slot with an input (free, even under unary)
        if inputs_left and pid is not None:
            order.append((pid, punary))
            is_input.append(True)
            rec(rest, inputs_left - 1, cost_left)
            order.pop(), is_input.pop()
        # option 2: an internal vertex with c children
        max_c = inputs_left + cost_left
        for c in range(max_c + 1):
            charge = (1 if c == 0 else 0) + (1 if punary else 0)
            if charge > cost_left:
                continue
            order.append((pid, punary))
            is_input.append(False)
            new_slots = rest + tuple((vid, c == 1) for _ in range(c))
            rec(new_slots, inputs_left, cost_left - charge)
            order.pop(), is_input.pop()

    order = []  # (parent_id or None, parent_is_unary) per preorder vertex id
    is_input = []
    rec(((None, False),), n, k)
    return results


def _parent_map_to_rec(parent, inputs, order):
    children = {v: [] for v in order}
    root = None
    for v in order:
        if parent[v] == v:
            root = v
        else:
            children[parent[v]].append(v)

    def walk(v):
        if v in inputs:
            return "inp"
        return tuple(walk(c) for c in children[v])

    return walk(root)


def oracle_trees(n, k, as_trees=False):
    found = set()
    if n == 1:
        found.add(circ() if as_trees else "inp")
    for parent, inputs, order in oracle_parent_maps(n, k):
        if as_trees:
            found.add(canonicalize(parent, inputs, order=order))
        else:
            found.add(_parent_map_to_rec(parent, inputs, order))
    return found


def _tree_rec(t):
    # planar recursive form mirroring _parent_map_to_rec
    def walk(v):
        if v in t.inputs:
            return "inp"
        return tuple(walk(c) for c in t.children(v))

    return walk(t.root)


def oracle_graft(inner, i, outer):
    """Graft via explicit vertex-set union of parent maps.  [DERIVED]"""
    if outer.is_circ:
        return inner
    if inner.is_circ:
        return outer
    slot = outer.inputs_ordered()[i]
    parent = {("o", v): ("o", outer.parent(v)) for v in outer.vertices()}
    inputs = {("o", v) for v in outer.inputs if v != slot}
    for v in inner.vertices():
        key = ("i", v) if v != inner.root else ("o", slot)
        par = inner.parent(v)
        parent[key] = ("o", slot) if par == inner.root else ("i", par)
    parent[("o", slot)] = ("o", outer.parent(slot))
    inputs |= {("i", v) for v in inner.inputs if v != inner.root}
    if inner.root in inner.inputs:
        inputs.add(("o", slot))
    # sibling order: keep each tree's own left-to-right order; the grafted
    # subtree sits exactly where the removed input was
    pos = {("o", v): (0, outer.postorder().index(v)) for v in outer.vertices()}
    for v in inner.vertices():
        if v != inner.root:
            pos[("i", v)] = (0, pos[("o", slot)][1], inner.postorder().index(v))
    order = sorted(parent, key=lambda key: pos[key])
    return canonicalize(parent, inputs, order=order)


# ---------------------------------------------------------------------------
# atoms and canonical form
# ---------------------------------------------------------------------------


def test_atoms_are_distinct():
    # [TRIVIAL] circ carries an input, bullet does not
    assert circ() != bullet()
    assert circ().n_inputs == 1
    assert bullet().n_inputs == 0
    assert circ().kind == "circ"
    assert bullet().kind == "bullet"
    assert corolla(0) == bullet()
    assert linear_tree(0) == circ()
    assert linear_tree(1) == corolla(1)


def test_canonicalize_circ():
    # [TRIVIAL] single vertex marked as input is circ
    assert canonicalize({7: 7}, {7}) == circ()
    assert canonicalize({7: 7}, set()) == bullet()


def test_canonicalize_seven_vertex_tree():
    # Golden staged form worked out by hand: root 7 with children 4, 5, 6;
    # 4 unary over input 1; 5 over leaves 2 (non-input) and 3; 6 an input.
    parent = {1: 4, 2: 5, 3: 5, 4: 7, 5: 7, 6: 7, 7: 7}
    t = canonicalize(parent, {1, 3, 6})
    assert t == Tree(stages=((1, 2, 0), (3,)), inputs=frozenset({(0, 0), (0, 2), (1, 2)}))
    assert len(t.iv()) == 4
    assert t.n_inputs == 3
    assert canonicalize(
        {v: t.parent(v) for v in t.vertices()}, t.inputs, order=t.postorder()
    ) == t


def test_canonicalize_relabeling_invariance():
    # [DERIVED] order-isomorphic relabelings give the same canonical value
    for t in enumerate_trees(2, 2):
        parent = {v: t.parent(v) for v in t.vertices()}
        order = t.postorder()
        relabel = {v: ("x", i * 3 + 1) for i, v in enumerate(order)}
        parent2 = {relabel[v]: relabel[p] for v, p in parent.items()}
        inputs2 = {relabel[v] for v in t.inputs}
        order2 = [relabel[v] for v in order]
        assert canonicalize(parent2, inputs2, order=order2) == t


def test_canonicalize_rejects_garbage():
    with pytest.raises(ValueError):
        canonicalize({1: 1, 2: 2}, set())  # two roots
    with pytest.raises(ValueError):
        canonicalize({1: 2, 2: 1}, set())  # no root
    with pytest.raises(ValueError):
        canonicalize({1: 2, 2: 2}, {2})  # input with a child


# ---------------------------------------------------------------------------
# substitution
# ---------------------------------------------------------------------------


def test_substitute_circ():
    # [TRIVIAL] I_circ() = circ
    assert substitute(circ(), []) == circ()


def test_substitute_corolla_is_unit():
    # [TRIVIAL] tau[n] is the unit of substitution
    for s in enumerate_trees(2, 2)[:20]:
        assert substitute(corolla(s.n_inputs), [s]) == s
        fam = [corolla(s.arity(v)) for v in s.iv()]
        assert substitute(s, fam) == s


def test_substitute_five_tree_example():
    # Golden value worked out by hand: outer tree with root of arity 3 whose
    # children are (unary over binary over two inputs), (unary over input),
    # and a bullet; pieces are tau[2], circ, circ, a binary vertex with two
    # bullets, and a 3-input two-vertex tree.
    order = list(range(8))
    parent = {0: 2, 1: 2, 2: 4, 3: 5, 4: 7, 5: 7, 6: 7, 7: 7}
    t = canonicalize(parent, {0, 1, 3}, order=order)
    assert [t.arity(v) for v in t.iv()] == [2, 1, 1, 0, 3]
    t4 = graft(bullet(), 0, graft(bullet(), 0, corolla(2)))
    t5 = graft(corolla(2), 0, corolla(2))
    tau = substitute(t, [corolla(2), circ(), circ(), t4, t5])
    expected = Tree(
        stages=((2, 0, 0, 0), (2, 2), (2,)),
        inputs=frozenset({(0, 0), (0, 1), (1, 1)}),
    )
    assert tau == expected


def test_substitute_maps_are_order_preserving():
    # inp_map must be the identity permutation; iv_map must enumerate the
    # blocks of IV(tau) in the order (family index, inner postorder)
    t = tee(1, 2, 0)
    fam = [corolla(2), tee(0, 1, 1)]
    tau, iv_map, inp_map = substitute_with_maps(t, fam)
    assert inp_map == list(range(t.n_inputs))
    assert sorted(iv_map.values()) == list(range(len(tau.iv())))
    # positions within one family member appear in increasing postorder
    for p, sub in enumerate(fam):
        positions = [iv_map[(p, q)] for q in range(len(sub.iv()))]
        assert positions == sorted(positions)


def _arity_pool(max_cost):
    pool = {}
    for n in range(4):
        pool[n] = [t for t in enumerate_trees(n, max_cost) if not t.is_circ]
    return pool


def test_substitution_associativity_exhaustive():
    # [DERIVED] two-step substitution equals one-step on the composed family,
    # exhaustively over nestings with <= 6 total internal vertices
    pool = _arity_pool(1)
    outers = [t for n in range(4) for t in pool[n] if len(t.iv()) <= 2]
    for t in outers:
        arities = [t.arity(v) for v in t.iv()]
        if any(a > 3 for a in arities):
            continue
        choices = [pool[a] for a in arities]
        for fam in itertools.product(*choices):
            if len(t.iv()) + sum(len(s.iv()) for s in fam) > 6:
                continue
            tau, iv_map, _ = substitute_with_maps(t, fam)
            inner_arities = [tau.arity(v) for v in tau.iv()]
            small = sum(inner_arities) <= 4
            inner = [
                pool[a][0] if small and a <= 3 else corolla(a)
                for a in inner_arities
            ]
            direct = substitute(tau, inner)
            composed = substitute(
                t,
                [
                    substitute(
                        fam[p],
                        [inner[iv_map[(p, q)]] for q in range(len(fam[p].iv()))],
                    )
                    for p in range(len(fam))
                ],
            )
            assert direct == composed


# ---------------------------------------------------------------------------
# grafting
# ---------------------------------------------------------------------------


def test_graft_circ_identities():
    # [TRIVIAL]
    t = tee(0, 2, 1)
    assert graft(circ(), 1, t) == t
    assert graft(t, 0, circ()) == t


def test_tee_is_graft_of_corollas():
    for x in range(3):
        for y in range(3):
            for z in range(3):
                assert tee(x, y, z) == graft(corolla(y), x, corolla(x + 1 + z))


def test_graft_input_count():
    # [TRIVIAL] |Inp(t' u_i t)| = |Inp t'| + |Inp t| - 1
    pool = [t for t in enumerate_trees(2, 1)] + [t for t in enumerate_trees(1, 1)]
    for inner in pool:
        for outer in pool:
            for i in range(outer.n_inputs):
                g = graft(inner, i, outer)
                assert g.n_inputs == inner.n_inputs + outer.n_inputs - 1


def test_graft_matches_vertex_union_oracle():
    # [DERIVED] grafting equals the direct vertex-set union construction
    pool = [t for t in enumerate_trees(1, 2) if len(t.iv()) <= 4]
    pool += [t for t in enumerate_trees(2, 1) if len(t.iv()) <= 4]
    pool += [t for t in enumerate_trees(3, 0) if len(t.iv()) <= 4]
    for inner in pool:
        for outer in pool:
            for i in range(outer.n_inputs):
                assert graft(inner, i, outer) == oracle_graft(inner, i, outer)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def test_enumerate_small_cells():
    # [TRIVIAL] spec'd atoms
    assert [tree_to_text(t) for t in enumerate_trees(1, 0)] == ["circ", "tau[1]"]
    assert [tree_to_text(t) for t in enumerate_trees(0, 1)] == ["bullet"]
    assert enumerate_trees(0, 0) == []


def test_enumerate_matches_parent_map_oracle():
    # [DERIVED] exhaustive parent-map oracle, all n + k <= 6; compared on
    # planar recursive forms (large cells) and on canonicalized trees (small
    # cells, exercising the parent-map canonicalization path too)
    for n in range(7):
        for k in range(7 - n):
            mine = enumerate_trees(n, k)
            assert len(set(mine)) == len(mine)
            assert {_tree_rec(t) for t in mine} == oracle_trees(n, k), (n, k)
            if n + k <= 4:
                assert set(mine) == oracle_trees(n, k, as_trees=True), (n, k)


def test_enumerate_count_bound():
    for n in range(7):
        for k in range(7 - n):
            z = n + k
            if z == 0:
                continue
            bound = z**z * 2 ** ((z - 1) ** 2 + 2)
            assert len(enumerate_trees(n, k)) <= bound


def test_enumerate_order_is_deterministic():
    a = enumerate_trees(2, 2)
    b = enumerate_trees(2, 2)
    assert a == b
    keys = [(t.height, t.stages, tuple(sorted(t.inputs))) for t in a]
    assert keys == sorted(keys)


def test_cost_convention():
    # unary directly over an input is free; elsewhere it costs 1
    assert corolla(1).cost() == 0
    assert linear_tree(2).cost() == 1
    assert bullet().cost() == 1
    assert tee(1, 0, 0).cost() == 1
    assert tee(1, 1, 0).cost() == 0


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------


def test_decompose_corolla():
    # [TRIVIAL]
    for n in range(4):
        assert decompose(corolla(n)) == [(corolla(n), [corolla(n)])]


def test_decompose_two_vertex_chain():
    # [DERIVED] exhaustive partition oracle on 2-vertex chains
    got = decompose(tee(0, 1, 0))
    assert len(got) == 2
    assert (tee(0, 1, 0), [corolla(1), corolla(1)]) in got
    assert (corolla(1), [tee(0, 1, 0)]) in got


def test_decompose_reproduces_tree():
    for tau in enumerate_trees(2, 2):
        if tau.is_circ:
            continue
        seen = set()
        for t, fam in decompose(tau):
            assert substitute(t, fam) == tau
            assert all(not s.is_circ for s in fam)
            key = (t, tuple(fam))
            assert key not in seen
            seen.add(key)


def test_decompose_exhaustive_against_partitions():
    # [DERIVED] the number of unit-free decompositions equals the number of
    # internal-edge subsets whose contraction is well defined (all of them,
    # since blocks are connected by construction)
    for tau in enumerate_trees(3, 1):
        if tau.is_circ:
            continue
        n_edges = sum(1 for v in tau.iv() if tau.parent(v) != v and v != tau.root)
        assert len(decompose(tau)) == 2**n_edges


def test_decompose_contains_every_substitution():
    pool = _arity_pool(1)
    for t in [tee(0, 2, 0), tee(1, 1, 0), corolla(2)]:
        arities = [t.arity(v) for v in t.iv()]
        for fam in itertools.product(*[pool[a][:3] for a in arities]):
            tau = substitute(t, list(fam))
            assert (t, list(fam)) in decompose(tau)


def test_strip_and_insert_unary():
    # [TRIVIAL] t^{} = t; insertion and removal are inverse
    for t in enumerate_trees(2, 1):
        if t.is_circ:
            continue
        assert strip_unary(t, []) == t
        for spot in range(len(unary_spots(t))):
            bigger = insert_unary(t, spot)
            new_unary = [
                i
                for i, v in enumerate(bigger.iv())
                if bigger.arity(v) == 1
            ]
            assert any(
                strip_unary(bigger, [i]) == t for i in new_unary
            )


def test_decompose_with_units():
    # removing the unary vertex of tau[1] leaves circ: the with-units run on
    # circ must offer the decomposition through t = tau[1]
    got = decompose(circ(), allow_units=True, max_units=1)
    assert (circ(), []) in got
    assert (corolla(1), [circ()]) in got
    # on a tree with a unary vertex, the unit family must appear
    t = linear_tree(2)
    got = decompose(t, allow_units=True, max_units=1)
    for outer, fam in got:
        assert substitute(outer, fam) == t
    assert any(any(s.is_circ for s in fam) for _, fam in got)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_json_roundtrip():
    for t in enumerate_trees(2, 2)[:50] + [circ(), bullet()]:
        assert tree_from_json(tree_to_json(t)) == t


def test_text_names():
    assert tree_to_text(circ()) == "circ"
    assert tree_to_text(bullet()) == "bullet"
    assert tree_to_text(corolla(3)) == "tau[3]"
    assert tree_to_text(linear_tree(2)) == "theta_2"
    assert tree_to_text(tee(1, 2, 0)) == "T(1,2,0)"
    for text in ["circ", "bullet", "tau[3]", "theta_2", "T(1,2,0)"]:
        assert tree_to_text(parse_tree_text(text)) == text


# ---------------------------------------------------------------------------
# property tests
# ---------------------------------------------------------------------------


@st.composite
def small_trees(draw, max_n=3, max_k=2):
    n = draw(st.integers(0, max_n))
    k = draw(st.integers(0, max_k))
    pool = enumerate_trees(n, k)
    if not pool:
        return bullet()
    return pool[draw(st.integers(0, len(pool) - 1))]


@given(small_trees())
@settings(max_examples=60, deadline=None)
def test_parent_map_roundtrip(t):
    parent = {v: t.parent(v) for v in t.vertices()}
    assert canonicalize(parent, t.inputs, order=t.postorder()) == t


@given(small_trees(), small_trees())
@settings(max_examples=60, deadline=None)
def test_graft_associativity(a, b):
    # grafting into distinct inputs of a corolla commutes
    if a.n_inputs == 0 or b.n_inputs == 0:
        return
    outer = corolla(2)
    # after grafting a into slot 0, the old slot 1 sits after a's inputs
    left = graft(b, a.n_inputs, graft(a, 0, outer))
    right = graft(a, 0, graft(b, 1, outer))
    assert left == right


@given(small_trees())
@settings(max_examples=60, deadline=None)
def test_json_roundtrip_property(t):
    assert tree_from_json(tree_to_json(t)) == t
