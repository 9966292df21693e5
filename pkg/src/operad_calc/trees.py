"""Planar rooted trees with inputs, in staged (levelled) canonical form.

A tree is stored as a chain of non-decreasing maps between finite ordinals,
recorded by fiber sizes: ``stages[j][i]`` is the number of preimages of the
``i``-th vertex of level ``j+1`` under the map from level ``j``.  Level
``height`` consists of the root alone.  The canonical form places every
vertex at level ``height - depth``; with the extra requirement that level 0
is non-empty (for positive height) this presentation is unique.

Two one-vertex trees exist: ``circ`` (the single vertex is an input slot --
the identity for substitution) and ``bullet`` (a genuine internal vertex of
arity 0).  They are distinct values.

Vertices are pairs ``(level, index)``.  Whenever an ordered list of internal
vertices or inputs is needed, *postorder* is used: children left to right,
then the vertex itself; the root comes last.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "Tree",
    "circ",
    "bullet",
    "corolla",
    "linear_tree",
    "tee",
    "canonicalize",
    "substitute",
    "substitute_with_maps",
    "graft",
    "strip_unary",
    "unary_spots",
    "insert_unary",
    "decompose",
    "enumerate_trees",
    "tree_to_json",
    "tree_from_json",
    "tree_to_text",
]


# ---------------------------------------------------------------------------
# recursive (planar) form: ("inp",) leaves or ("v", (children...)) nodes
# ---------------------------------------------------------------------------

INP = ("inp",)


def _node(children):
    return ("v", tuple(children))


def _is_inp(rec):
    return rec[0] == "inp"


@dataclass(frozen=True)
class Tree:
    stages: tuple  # tuple[tuple[int, ...], ...]
    inputs: frozenset  # frozenset[tuple[int, int]]

    def __post_init__(self):
        m = len(self.stages)
        sizes = self.level_sizes()
        for j, fibers in enumerate(self.stages):
            if len(fibers) != sizes[j + 1]:
                raise ValueError("inconsistent stage data")
            if sum(fibers) != sizes[j]:
                raise ValueError("inconsistent stage data")
        if m >= 1 and sizes[0] == 0:
            raise ValueError("not canonical: empty bottom level")
        for (j, i) in self.inputs:
            if not (0 <= j <= m) or not (0 <= i < sizes[j]):
                raise ValueError("input out of range")
            if self.arity((j, i)) != 0:
                raise ValueError("input must be a nullary vertex")

    # -- basic structure ---------------------------------------------------

    @property
    def height(self):
        return len(self.stages)

    def level_sizes(self):
        m = len(self.stages)
        sizes = [0] * (m + 1)
        sizes[m] = 1
        for j in range(m - 1, -1, -1):
            sizes[j] = sum(self.stages[j])
        if m == 0:
            sizes[0] = 1
        return sizes

    @property
    def root(self):
        return (self.height, 0)

    def arity(self, v):
        j, i = v
        if j == 0:
            return 0
        return self.stages[j - 1][i]

    def children(self, v):
        j, i = v
        if j == 0:
            return []
        start = sum(self.stages[j - 1][:i])
        return [(j - 1, start + q) for q in range(self.stages[j - 1][i])]

    def parent(self, v):
        j, i = v
        if j == self.height:
            return v
        acc = 0
        for p, size in enumerate(self.stages[j]):
            acc += size
            if i < acc:
                return (j + 1, p)
        raise ValueError("vertex out of range")

    def vertices(self):
        sizes = self.level_sizes()
        return [(j, i) for j in range(len(sizes)) for i in range(sizes[j])]

    def postorder(self):
        """All vertices, children (left to right) before parents, root last."""
        out = []

        def walk(v):
            for c in self.children(v):
                walk(c)
            out.append(v)

        walk(self.root)
        return out

    def iv(self):
        """Internal vertices (all vertices except inputs), postorder."""
        return [v for v in self.postorder() if v not in self.inputs]

    def inputs_ordered(self):
        return [v for v in self.postorder() if v in self.inputs]

    def leaves(self):
        return [v for v in self.postorder() if self.arity(v) == 0]

    def unary_vertices(self):
        return [v for v in self.iv() if self.arity(v) == 1]

    @property
    def n_inputs(self):
        return len(self.inputs)

    def cost(self):
        """Number of non-input leaves plus number of unary vertices whose
        child is itself an internal vertex.  A unary vertex sitting directly
        over an input is free, so tau[1] has cost 0 while theta_2 has cost 1.
        """
        extra = sum(1 for v in self.leaves() if v not in self.inputs)
        tall_unary = sum(
            1
            for v in self.unary_vertices()
            if self.children(v)[0] not in self.inputs
        )
        return extra + tall_unary

    @property
    def kind(self):
        if self.height == 0:
            return "circ" if self.inputs else "bullet"
        return "tree"

    @property
    def is_circ(self):
        return self.height == 0 and bool(self.inputs)

    # -- conversion --------------------------------------------------------

    def to_rec(self):
        def walk(v):
            if v in self.inputs:
                return INP
            return _node(walk(c) for c in self.children(v))

        return walk(self.root)

    def __repr__(self):
        return f"Tree({tree_to_text(self)})"


def _rec_to_tree(rec):
    """Canonical staged form of a recursive planar tree."""
    if _is_inp(rec):
        return circ()
    # depth-first walk recording (depth, is_input, children fiber size)
    depths = {}
    order = []  # preorder ids
    info = {}

    def walk(node, depth, path):
        vid = len(order)
        order.append(vid)
        if _is_inp(node):
            info[vid] = (depth, True, 0)
            return
        info[vid] = (depth, False, len(node[1]))
        for c in node[1]:
            walk(c, depth + 1, path)

    walk(rec, 0, ())
    m = max(d for d, _, _ in info.values())
    # level of vertex = m - depth; per level, vertices in preorder
    per_level = {j: [] for j in range(m + 1)}
    for vid in order:
        d, is_inp, nch = info[vid]
        per_level[m - d].append(vid)
    index_of = {}
    for j in range(m + 1):
        for i, vid in enumerate(per_level[j]):
            index_of[vid] = (j, i)
    stages = []
    for j in range(1, m + 1):
        stages.append(tuple(info[vid][2] for vid in per_level[j]))
    # fibers listed per level j vertex, but stages[j-1] must be ordered so
    # that children of consecutive vertices are consecutive; preorder per
    # level guarantees this.
    inputs = frozenset(index_of[vid] for vid in order if info[vid][1])
    return Tree(tuple(stages), inputs)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def circ():
    """The exceptional tree: one vertex which is its own input."""
    return Tree((), frozenset({(0, 0)}))


def bullet():
    """The 0-corolla: one internal vertex, no inputs."""
    return Tree((), frozenset())


def corolla(n):
    """tau[n]: one internal vertex with n inputs."""
    if n == 0:
        return bullet()
    return Tree(((n,),), frozenset((0, i) for i in range(n)))


def linear_tree(m):
    """theta_m: a chain of m unary vertices over a single input; theta_0 = circ."""
    if m == 0:
        return circ()
    return Tree(((1,),) * m, frozenset({(0, 0)}))


def tee(x, y, z):
    """T(x,y,z): corolla(x+1+z) with corolla(y) grafted into input x+1."""
    return graft(corolla(y), x, corolla(x + 1 + z))


# ---------------------------------------------------------------------------
# canonical form from a parent map
# ---------------------------------------------------------------------------


def canonicalize(parent, inputs, order=None):
    """Build the canonical staged tree from a parent map.

    ``parent`` maps each vertex to its parent; the root maps to itself.
    ``inputs`` is an iterable of vertices (must be childless).  ``order``
    fixes the left-to-right order of siblings (defaults to sorted()).
    """
    verts = list(order) if order is not None else sorted(parent)
    children = {v: [] for v in verts}
    root = None
    for v in verts:
        p = parent[v]
        if p == v:
            if root is not None:
                raise ValueError("multiple roots")
            root = v
        else:
            children[p].append(v)
    if root is None:
        raise ValueError("no root")
    inputs = set(inputs)
    for v in inputs:
        if children[v]:
            raise ValueError("input vertex has children")

    def build(v):
        if v in inputs:
            return INP
        return _node(build(c) for c in children[v])

    # check reachability
    seen = set()

    def mark(v):
        seen.add(v)
        for c in children[v]:
            mark(c)

    mark(root)
    if len(seen) != len(verts):
        raise ValueError("parent map is not a tree")
    return _rec_to_tree(build(root))


# ---------------------------------------------------------------------------
# substitution and grafting
# ---------------------------------------------------------------------------


def _labelled_rec(tree, tag):
    """Recursive form where internal nodes carry (tag, postorder-iv-index)
    and input leaves carry (tag, postorder-input-index)."""
    iv_index = {v: i for i, v in enumerate(tree.iv())}
    inp_index = {v: i for i, v in enumerate(tree.inputs_ordered())}

    def walk(v):
        if v in tree.inputs:
            return ("inp", (tag, inp_index[v]))
        return ("v", (tag, iv_index[v]), tuple(walk(c) for c in tree.children(v)))

    return walk(tree.root)


def _plug(rec, pieces):
    """Replace input leaves of ``rec`` (planar order) by ``pieces``."""
    it = iter(pieces)

    def walk(node):
        if node[0] == "inp":
            return next(it)
        return ("v", node[1], tuple(walk(c) for c in node[2]))

    out = walk(rec)
    leftover = next(it, None)
    if leftover is not None:
        raise ValueError("arity mismatch in substitution")
    return out


def substitute_with_maps(t, family):
    """Substitute ``family[p]`` (one tree per internal vertex of ``t``, in
    postorder) into ``t``.

    Returns ``(tau, iv_map, inp_map)`` where ``iv_map[(p, q)]`` is the
    postorder position in ``tau`` of internal vertex ``q`` of ``family[p]``
    and ``inp_map[i]`` is the input of ``t`` landing at input position ``i``
    of ``tau`` (always the identity permutation).
    """
    ivs = t.iv()
    if len(family) != len(ivs):
        raise ValueError("family size must match number of internal vertices")
    for p, sub in enumerate(family):
        if sub.n_inputs != t.arity(ivs[p]):
            raise ValueError(
                f"tree at slot {p} has {sub.n_inputs} inputs, expected {t.arity(ivs[p])}"
            )

    def build(v):
        # returns labelled recursive piece for the subtree of t rooted at v
        if v in t.inputs:
            return ("inp", ("outer", t.inputs_ordered().index(v)))
        p = t.iv().index(v)
        pieces = [build(c) for c in t.children(v)]
        sub_rec = _labelled_rec(family[p], p)
        return _plug(sub_rec, pieces)

    if t.is_circ:
        if family:
            raise ValueError("circ has no internal vertices")
        return circ(), {}, [0]

    glued = build(t.root)
    tau = _rec_to_tree(_strip_labels(glued))
    # postorder of labels in glued must match postorder of tau
    labels_iv, labels_inp = _postorder_labels(glued)
    iv_map = {}
    for pos, lbl in enumerate(labels_iv):
        iv_map[lbl] = pos
    inp_map = [lbl[1] for lbl in labels_inp]
    return tau, iv_map, inp_map


def _strip_labels(node):
    if node[0] == "inp":
        return INP
    return _node(_strip_labels(c) for c in node[2])


def _postorder_labels(node):
    ivs, inps = [], []

    def walk(nd):
        if nd[0] == "inp":
            inps.append(nd[1])
            return
        for c in nd[2]:
            walk(c)
        ivs.append(nd[1])

    walk(node)
    return ivs, inps


def substitute(t, family):
    """The substituted tree I_t(family)."""
    return substitute_with_maps(t, family)[0]


def graft(inner, i, outer):
    """Glue the root of ``inner`` into input number ``i`` (postorder, 0-based)
    of ``outer``."""
    if not (0 <= i < outer.n_inputs):
        raise ValueError("input index out of range")
    if outer.is_circ:
        return inner
    if inner.is_circ:
        return outer
    rec = outer.to_rec()
    counter = itertools.count()
    inner_rec = inner.to_rec()

    def walk(node):
        if _is_inp(node):
            return inner_rec if next(counter) == i else node
        return _node(walk(c) for c in node[1])

    return _rec_to_tree(walk(rec))


# ---------------------------------------------------------------------------
# unary vertices: removal and insertion
# ---------------------------------------------------------------------------


def strip_unary(t, remove):
    """t^N: remove the unary internal vertices in ``remove`` (postorder
    indices into t.iv()), joining each child to the grandparent."""
    remove = set(remove)
    ivs = t.iv()
    for p in remove:
        if t.arity(ivs[p]) != 1:
            raise ValueError("only unary vertices can be removed")
    if not remove:
        return t
    iv_index = {v: i for i, v in enumerate(ivs)}

    def walk2(v):
        if v in t.inputs:
            return INP
        if iv_index[v] in remove:
            (child,) = t.children(v)
            return walk2(child)
        return _node(walk2(c) for c in t.children(v))

    out = walk2(t.root)
    return _rec_to_tree(out)


def unary_spots(t):
    """Positions where a unary vertex can be inserted: one per vertex of t
    (above that vertex, i.e. between it and its parent; above the root for
    the root).  Returned as the list of vertices in postorder."""
    return t.postorder()


def insert_unary(t, spot):
    """Insert a unary internal vertex above the vertex with postorder index
    ``spot`` (between it and its parent; above the root for the root)."""
    target = t.postorder()[spot]

    def walk(v):
        if v in t.inputs:
            body = INP
        else:
            body = _node(walk(c) for c in t.children(v))
        if v == target:
            return _node([body])
        return body

    new = _rec_to_tree(walk(t.root))
    # locate the inserted vertex: it is the parent of the image of `target`;
    # identify by matching postorder walks.
    return new


# ---------------------------------------------------------------------------
# decompositions tau = I_t(t_p)
# ---------------------------------------------------------------------------


def _subtree_of_block(t, block):
    """The subtree spanned by a set of internal vertices ``block`` (postorder
    indices); its inputs are the child slots leaving the block.  Returns a
    Tree together with the postorder list of block members as they appear in
    the subtree's internal vertices."""
    ivs = t.iv()
    members = {ivs[p] for p in block}

    def walk(v):
        if v in members:
            return _node(walk(c) for c in t.children(v))
        return INP

    # top vertex: the member whose parent is outside the block
    tops = [v for v in members if t.parent(v) not in members or v == t.root]
    if len(tops) != 1:
        raise ValueError("block is not connected")
    top = tops[0]
    sub = _rec_to_tree(walk(top))
    # postorder of members inside the subtree
    order = [v for v in t.postorder() if v in members]
    return sub, [ivs.index(v) for v in order]


def decompose(tau, allow_units=False, max_units=1):
    """All ways to write ``tau`` as a substitution I_t(t_p | p in IV(t)).

    Without units the pieces ``t_p`` are required to differ from circ, and
    decompositions correspond to subsets of internal edges of ``tau``: kept
    edges join vertices into blocks, each block becomes one vertex of the
    contracted outer tree ``t``.

    With ``allow_units`` additionally returns decompositions whose outer
    tree has up to ``max_units`` extra unary vertices carrying circ (the
    substitution unit).  Yields tuples ``(t, family)`` with ``family`` the
    list of pieces in postorder of IV(t).
    """
    out = list(_decompose_plain(tau))
    if allow_units:
        extended = []
        for t, family in out:
            extended.extend(_with_units(t, family, max_units))
        out.extend(extended)
    return out


def _decompose_plain(tau):
    if tau.is_circ:
        yield circ(), []
        return
    ivs = tau.iv()
    iv_index = {v: i for i, v in enumerate(ivs)}
    internal_edges = [
        (iv_index[v], iv_index[tau.parent(v)])
        for v in ivs
        if v != tau.root and tau.parent(v) not in tau.inputs
    ]
    n = len(ivs)
    for keep in itertools.chain.from_iterable(
        itertools.combinations(internal_edges, r) for r in range(len(internal_edges) + 1)
    ):
        # union-find over kept edges
        parent_uf = list(range(n))

        def find(a):
            while parent_uf[a] != a:
                parent_uf[a] = parent_uf[parent_uf[a]]
                a = parent_uf[a]
            return a

        for a, b in keep:
            parent_uf[find(a)] = find(b)
        blocks = {}
        for p in range(n):
            blocks.setdefault(find(p), []).append(p)
        yield _contract(tau, list(blocks.values()))


def _contract(tau, blocks):
    """Contract each block (list of iv postorder indices) of ``tau`` to a
    single vertex; return (t, family) with family in postorder of IV(t)."""
    ivs = tau.iv()
    member_block = {}
    for b, block in enumerate(blocks):
        for p in block:
            member_block[ivs[p]] = b

    def top_of(b):
        cand = [ivs[p] for p in blocks[b]]
        tops = [v for v in cand if v == tau.root or tau.parent(v) not in set(cand)]
        (top,) = tops
        return top

    def walk_block(b):
        """Recursive form of the contracted tree below block b."""
        children = []
        for v in _block_child_slots(tau, blocks[b]):
            if v in tau.inputs:
                children.append(INP)
            elif v in member_block:
                children.append(walk_block(member_block[v]))
            else:
                raise AssertionError
        return _node(children)

    root_block = member_block[tau.root]
    t = _rec_to_tree(walk_block(root_block))
    # postorder of blocks in t: rebuild by walking and recording block ids
    order = []

    def walk_order(b):
        for v in _block_child_slots(tau, blocks[b]):
            if v in member_block:
                walk_order(member_block[v])
        order.append(b)

    walk_order(root_block)
    family = []
    for b in order:
        sub, _ = _subtree_of_block(tau, blocks[b])
        family.append(sub)
    return t, family


def _block_child_slots(tau, block):
    """Child slots of a block in planar order: children of block members that
    are not themselves in the block, visited in the planar order of the
    spanned subtree."""
    ivs = tau.iv()
    members = {ivs[p] for p in block}
    tops = [v for v in members if v == tau.root or tau.parent(v) not in members]
    (top,) = tops
    slots = []

    def walk(v):
        for c in tau.children(v):
            if c in members:
                walk(c)
            else:
                slots.append(c)

    walk(top)
    return slots


def _with_units(t, family, max_units):
    """All extensions of a plain decomposition by inserting up to
    ``max_units`` unary circ-decorated vertices into the outer tree."""
    results = []
    frontier = [(t, family)]
    for _ in range(max_units):
        new_frontier = []
        for t0, fam0 in frontier:
            for spot in range(len(t0.postorder())):
                t1 = insert_unary(t0, spot)
                # rebuild family: new unary vertex gets circ, others keep order
                fam1 = _family_after_insert(t0, fam0, t1)
                if fam1 is not None:
                    new_frontier.append((t1, fam1))
        results.extend(new_frontier)
        frontier = new_frontier
    return results


def _family_after_insert(t0, fam0, t1):
    """Align a family over IV(t0) with IV(t1) where t1 has one extra unary
    vertex; the new vertex receives circ."""
    iv0 = t0.iv()
    iv1 = t1.iv()
    if len(iv1) != len(iv0) + 1:
        return None
    # match by stripping each unary vertex of t1 in turn
    for extra in range(len(iv1)):
        if t1.arity(iv1[extra]) != 1:
            continue
        if strip_unary(t1, [extra]) == t0:
            fam1 = list(fam0)
            fam1.insert(extra, circ())
            return fam1
    return None


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _gen_nodes(n, k):
    """All internal-rooted recursive trees with n input slots and cost <= k.

    Cost = number of non-input leaves + number of unary vertices not sitting
    directly over an input; every recursive call strictly decreases n + k,
    which bounds the recursion.
    """
    out = set()
    # nullary root costs 1
    if n == 0 and k >= 1:
        out.add(_node(()))
    # unary root: free over an input, cost 1 over an internal vertex
    if n == 1:
        out.add(_node((INP,)))
    if k >= 1:
        for sub in _gen_nodes(n, k - 1):
            out.add(_node((sub,)))
    for r in range(2, n + k + 1):
        for combo in _child_seqs(n, k, r):
            out.add(_node(combo))
    return sorted(out)


def _gen_nodes_exact(n, k):
    return [s for s in _gen_nodes(n, k) if _rec_cost(s) == k and _rec_inputs(s) == n]


def _child_seqs(n, k, r):
    """Sequences of r children consuming exactly n inputs and cost <= k."""
    if r == 0:
        if n == 0:
            yield ()
        return
    if n >= 1:
        for rest in _child_seqs(n - 1, k, r - 1):
            yield (INP,) + rest
    for ni in range(n + 1):
        for ki in range(k + 1):
            if ni + ki < 1:
                continue
            if (n - ni) + (k - ki) < (r - 1):
                continue
            subs = _gen_nodes_exact(ni, ki)
            if not subs:
                continue
            for rest in _child_seqs(n - ni, k - ki, r - 1):
                for sub in subs:
                    yield (sub,) + rest


def _rec_cost(rec):
    if _is_inp(rec):
        return 0
    ch = rec[1]
    if len(ch) == 0:
        return 1
    if len(ch) == 1:
        return (0 if _is_inp(ch[0]) else 1) + _rec_cost(ch[0])
    return sum(_rec_cost(c) for c in ch)


def _rec_inputs(rec):
    if _is_inp(rec):
        return 1
    return sum(_rec_inputs(c) for c in rec[1])


def enumerate_trees(n, k):
    """All trees with n inputs and cost at most k, in deterministic order
    (height, stages, inputs).  See Tree.cost for the cost convention."""
    found = []
    if n == 1:
        found.append(circ())
    for rec in _gen_nodes(n, k):
        if _rec_cost(rec) <= k and _rec_inputs(rec) == n:
            found.append(_rec_to_tree(rec))
    uniq = sorted(set(found), key=_tree_sort_key)
    return uniq


def trees_with_iv(n, max_iv, include_circ=False):
    """All trees with n inputs and at most ``max_iv`` internal vertices,
    in deterministic order.  circ (zero internal vertices) is included only
    on request."""
    recs = set()

    def gen(n_left, iv_left):
        # all recs with exactly n_left inputs, <= iv_left internal vertices
        out = set()
        if iv_left <= 0:
            return out
        for r in range(0, n_left + iv_left):
            for combo in _iv_child_seqs(n_left, iv_left - 1, r):
                out.add(_node(combo))
        return out

    def _iv_child_seqs(n_left, iv_left, r):
        if r == 0:
            return [()] if n_left == 0 else []
        seqs = []
        for first_inp in (True, False):
            if first_inp:
                if n_left >= 1:
                    for rest in _iv_child_seqs(n_left - 1, iv_left, r - 1):
                        seqs.append((INP,) + rest)
            else:
                for ni in range(n_left + 1):
                    for ivi in range(1, iv_left + 1):
                        for sub in gen(ni, ivi):
                            if _rec_iv(sub) != ivi:
                                continue
                            for rest in _iv_child_seqs(
                                n_left - ni, iv_left - ivi, r - 1
                            ):
                                seqs.append((sub,) + rest)
        return seqs

    recs = gen(n, max_iv)
    found = [_rec_to_tree(rec) for rec in recs]
    if include_circ and n == 1:
        found.append(circ())
    return sorted(set(found), key=_tree_sort_key)


def _rec_iv(rec):
    if _is_inp(rec):
        return 0
    return 1 + sum(_rec_iv(c) for c in rec[1])


def _tree_sort_key(t):
    return (t.height, t.stages, tuple(sorted(t.inputs)))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def tree_to_json(t):
    return {
        "stages": [list(f) for f in t.stages],
        "inputs": sorted([list(v) for v in t.inputs]),
        "kind": t.kind,
    }


def tree_from_json(obj):
    kind = obj.get("kind", "tree")
    if kind == "circ":
        return circ()
    if kind == "bullet":
        return bullet()
    return Tree(
        tuple(tuple(f) for f in obj["stages"]),
        frozenset(tuple(v) for v in obj["inputs"]),
    )


def tree_to_text(t):
    """Short text form: circ, bullet, tau[n], theta_m, T(x,y,z) when the tree
    is one of those shapes, otherwise the raw staged data."""
    if t.is_circ:
        return "circ"
    if t == bullet():
        return "bullet"
    if t.height == 1 and t == corolla(t.n_inputs):
        return f"tau[{t.n_inputs}]"
    if t.inputs == frozenset({(0, 0)}) and all(f == (1,) for f in t.stages):
        return f"theta_{t.height}"
    n = t.n_inputs
    ivs = t.iv()
    if len(ivs) == 2:
        for x in range(n + 1):
            for z in range(n - x + 1):
                y = n - x - z
                if t == tee(x, y, z):
                    return f"T({x},{y},{z})"
    return f"stages={t.stages} inputs={sorted(t.inputs)}"


def parse_tree_text(s):
    """Inverse of the short text forms used by the CLI."""
    s = s.strip()
    if s == "circ":
        return circ()
    if s == "bullet":
        return bullet()
    if s.startswith("tau[") and s.endswith("]"):
        return corolla(int(s[4:-1]))
    if s.startswith("theta_"):
        return linear_tree(int(s[6:]))
    if s.startswith("T(") and s.endswith(")"):
        x, y, z = (int(p) for p in s[2:-1].split(","))
        return tee(x, y, z)
    raise ValueError(f"cannot parse tree literal: {s!r}")
