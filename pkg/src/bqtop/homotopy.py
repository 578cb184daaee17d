"""Homotopy of bound quivers: minimal relations, path classes, pi_1.

A minimal relation is an ideal member sum(lambda_i w_i) with at least two
terms such that no proper nonempty sub-sum stays in the ideal.  Natural
homotopy is the finest equivalence on paths that merges co-members of
every minimal relation and is closed under two-sided composition (factor
replacement).  Walk homotopy additionally inverts arrows: it is natural
homotopy plus the cancellation rules a a^-1 ~ e and a^-1 a ~ e on walks.

Natural classes are computed exactly on the path table by fixpoint
closure.  Walk classes face a genuine word problem, so they are computed
by bounded breadth-first rewriting: merges are sound (each is witnessed
by an explicit rewrite chain), and a caveat flag records whether the
search bound or node cap truncated any frontier, in which case the
partition may be finer than the true one.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import NotConnectedError, Path, compose, path_sort_key
from .linalg import QQ, nullspace, rank

DEFAULT_SUPPORT_CAP = 6
MINIMALITY_CHECK_CAP = 12
WALK_NODE_CAP = 50000


class SupportTooLarge(Exception):
    """Minimality check would need more than 2^cap sub-sum tests."""


class HypothesisViolated(Exception):
    """A decomposition hypothesis fails; carries a human-readable witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class MinimalRelation:
    source: str
    target: str
    terms: tuple  # (Path, Fraction), every proper sub-sum outside I

    def support(self):
        return [p for p, _ in self.terms]

    def __str__(self):
        return " + ".join("%s*%s" % (c, p) for p, c in self.terms)


def is_minimal_relation(table, terms, cap=MINIMALITY_CHECK_CAP):
    """Exact minimality oracle: 2^m - 2 sub-sum membership tests."""
    clean = [(p, Fraction(c)) for p, c in terms if Fraction(c) != 0]
    m = len(clean)
    if m > cap:
        raise SupportTooLarge(
            "support size %d exceeds the oracle cap %d" % (m, cap))
    if m < 2:
        return False
    if not table.vector_in_ideal(clean):
        return False
    for size in range(1, m):
        for sub in itertools.combinations(clean, size):
            if table.vector_in_ideal(list(sub)):
                return False
    return True


def _pair_vectors_supported_in(table, pair, allowed_local):
    """Basis of {v in I(x,y) : support(v) within allowed local coords}."""
    rows = table.ideal_rows.get(pair, [])
    if not rows:
        return []
    ncols = len(rows[0])
    forbidden = [j for j in range(ncols) if j not in allowed_local]
    if not forbidden:
        return [list(r) for r in rows]
    # solve sum(c_i row_i)[j] = 0 for all forbidden j
    constraint = [[rows[i][j] for i in range(len(rows))] for j in forbidden]
    combos = nullspace(constraint, QQ)
    out = []
    for c in combos:
        vec = [Fraction(0)] * ncols
        for ci, row in zip(c, rows):
            if ci != 0:
                vec = [a + ci * b for a, b in zip(vec, row)]
        if any(x != 0 for x in vec):
            out.append(vec)
    return out


def minimal_relation_supports(table, support_cap=DEFAULT_SUPPORT_CAP):
    """Enumerate minimal relations, one per achievable support set.

    For each vertex pair and each set S of nonzero parallel paths with
    2 <= |S| <= support_cap, decides whether a minimal relation with
    support exactly S exists, and if so emits one (primitive integer
    coefficients, positive on the least path).  Existence is decided by
    the split criterion: writing V_T for the ideal vectors supported
    inside T, a vector of support S avoiding every sub-sum exists iff no
    coordinate of S vanishes on all of V_S and no split S = J | S-J has
    dim V_J + dim V_{S-J} = dim V_S.  A witness vector is then found by
    a deterministic Vandermonde sweep and re-certified with the exact
    minimality oracle.

    Returns (relations, warnings): warnings lists vertex pairs whose
    nonzero path count exceeds the cap, in which case larger supports
    were not searched (the enumeration may be incomplete there).
    """
    q = table.quiver
    relations = []
    warnings = []
    pairs = sorted(table.pair_paths,
                   key=lambda xy: (q.vertex_index[xy[0]], q.vertex_index[xy[1]]))
    for pair in pairs:
        idxs = table.pair_paths[pair]
        if not table.ideal_rows.get(pair):
            continue
        nonzero_local = [k for k, i in enumerate(idxs) if i not in table.in_ideal]
        if len(nonzero_local) > support_cap:
            warnings.append(
                "pair (%s,%s): %d parallel nonzero paths exceed support cap %d; "
                "supports larger than the cap were not searched"
                % (pair[0], pair[1], len(nonzero_local), support_cap))
        local_paths = [table.paths[i] for i in idxs]
        for size in range(2, min(support_cap, len(nonzero_local)) + 1):
            for S in itertools.combinations(nonzero_local, size):
                sset = set(S)
                vs = _pair_vectors_supported_in(table, pair, sset)
                if not vs:
                    continue
                dim_s = rank(vs, QQ)
                # every coordinate of S must be attainable
                if any(all(v[j] == 0 for v in vs) for j in S):
                    continue
                split_blocks = False
                rest = list(S[1:])
                for jsize in range(1, size):
                    for jpart in itertools.combinations(rest, jsize - 1):
                        J = {S[0]} | set(jpart)
                        comp = sset - J
                        if not comp:
                            continue
                        dj = rank(_pair_vectors_supported_in(table, pair, J), QQ)
                        dc = rank(_pair_vectors_supported_in(table, pair, comp), QQ)
                        if dj + dc == dim_s:
                            split_blocks = True
                            break
                    if split_blocks:
                        break
                if split_blocks:
                    continue
                found = None
                for t in range(1, 1000):
                    cand = [Fraction(0)] * len(idxs)
                    scale = Fraction(1)
                    for v in vs:
                        cand = [a + scale * b for a, b in zip(cand, v)]
                        scale *= t
                    if any(cand[j] == 0 for j in S):
                        continue
                    terms = [(local_paths[j], cand[j]) for j in S]
                    if is_minimal_relation(table, terms):
                        found = terms
                        break
                assert found is not None, "split analysis promised a witness"
                # normalize: primitive integers, positive on the least path
                denom = 1
                for _, c in found:
                    denom = denom * c.denominator // _gcd(denom, c.denominator)
                ints = [c * denom for _, c in found]
                g = 0
                for c in ints:
                    g = _gcd(g, abs(int(c)))
                ints = [int(c) // g for c in ints]
                if ints[0] < 0:
                    ints = [-c for c in ints]
                relations.append(MinimalRelation(
                    pair[0], pair[1],
                    tuple((p, Fraction(c)) for (p, _), c in zip(found, ints))))
    return relations, warnings


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a if a else 1


# ---------------------------------------------------------------------------
# path class tables


class PathClassTable:
    """Partition of the table paths into homotopy classes.

    variant is "natural" or "walk".  Classes know their endpoints, their
    members (sorted), whether they contain a nonzero path, whether they
    contain a stationary path (identity class), and a canonical
    representative: the least nonzero member when one exists, else the
    least member.
    """

    def __init__(self, table, variant, parent, caveats=()):
        self.table = table
        self.variant = variant
        self.caveats = tuple(caveats)
        q = table.quiver
        groups = {}
        for i in range(len(table.paths)):
            groups.setdefault(_find(parent, i), []).append(i)
        keyed = []
        for members in groups.values():
            members.sort(key=lambda i: path_sort_key(q, table.paths[i]))
            keyed.append(members)
        keyed.sort(key=lambda ms: path_sort_key(q, table.paths[ms[0]]))
        self.class_members = keyed
        self.class_of_index = {}
        for cid, members in enumerate(keyed):
            for i in members:
                self.class_of_index[i] = cid
        self.class_source = []
        self.class_target = []
        self.class_nonzero = []
        self.class_identity = []
        self.class_rep = []
        for members in keyed:
            paths = [table.paths[i] for i in members]
            srcs = {p.source for p in paths}
            tgts = {p.target for p in paths}
            assert len(srcs) == 1 and len(tgts) == 1, \
                "homotopy class members must be parallel"
            self.class_source.append(srcs.pop())
            self.class_target.append(tgts.pop())
            nz = [table.paths[i] for i in members if i not in table.in_ideal]
            self.class_nonzero.append(bool(nz))
            self.class_identity.append(any(p.is_stationary for p in paths))
            self.class_rep.append(nz[0] if nz else paths[0])

    def __len__(self):
        return len(self.class_members)

    def class_of(self, path):
        return self.class_of_index[self.table.index[path]]

    def members(self, cid):
        return [self.table.paths[i] for i in self.class_members[cid]]

    def one_cell_classes(self):
        """Non-identity classes with a nonzero member, in order."""
        return [cid for cid in range(len(self))
                if self.class_nonzero[cid] and not self.class_identity[cid]]


def _find(parent, i):
    root = i
    while parent[root] != root:
        root = parent[root]
    while parent[i] != root:
        parent[i], i = root, parent[i]
    return root


def _union(parent, a, b):
    ra, rb = _find(parent, a), _find(parent, b)
    if ra == rb:
        return False
    if rb < ra:
        ra, rb = rb, ra
    parent[rb] = ra
    return True


def _factor_replacement_closure(table, parent):
    """Close a path partition under p = uvw -> uv'w for merged v ~ v'."""
    q = table.quiver
    changed = True
    while changed:
        changed = False
        members_of = {}
        for i in range(len(table.paths)):
            members_of.setdefault(_find(parent, i), []).append(i)
        for i, p in enumerate(table.paths):
            n = len(p)
            if n < 2:
                continue
            verts = q.path_vertices(p)
            for a in range(n - 1):
                for b in range(a + 2, n + 1):
                    mid = Path(verts[a], verts[b], p.arrows[a:b])
                    root = _find(parent, table.index[mid])
                    group = members_of.get(root, ())
                    if len(group) < 2:
                        continue
                    for j in group:
                        alt = table.paths[j]
                        if alt == mid:
                            continue
                        if len(p) - (b - a) + len(alt) > table.bound:
                            continue
                        new = Path(p.source, p.target,
                                   p.arrows[:a] + alt.arrows + p.arrows[b:])
                        if _union(parent, i, table.index[new]):
                            changed = True


def natural_homotopy_classes(table, minrels=None, support_cap=DEFAULT_SUPPORT_CAP):
    """Fixpoint closure of minimal-relation merges under factor replacement.

    Classes may contain ideal members: replacing a factor can land on a
    path inside I, and such paths carry cell-identification data.
    """
    caveats = []
    if minrels is None:
        minrels, warnings = minimal_relation_supports(table, support_cap)
        caveats.extend(warnings)
    if any(len({len(p) for p in mr.support()}) > 1 for mr in minrels):
        # with equal-length supports every rewrite chain between two paths
        # stays at their common length, so closure inside the table is
        # exact; mixed lengths can force chains through longer paths
        caveats.append(
            "mixed-length relation supports: factor replacement closed "
            "only within the path table bound, the partition may be finer "
            "than the true one")
    parent = list(range(len(table.paths)))
    for mr in minrels:
        first = table.index[mr.terms[0][0]]
        for p, _ in mr.terms[1:]:
            _union(parent, first, table.index[p])
    _factor_replacement_closure(table, parent)
    return PathClassTable(table, "natural", parent, caveats)


# ---------------------------------------------------------------------------
# walk homotopy via bounded rewriting

# a walk is (source_vertex, ((arrow_name, sign), ...)); signs are +1/-1


def _walk_target(quiver, walk):
    src, letters = walk
    at = src
    for name, sign in letters:
        a = quiver.arrow_by_name[name]
        if sign > 0:
            assert a.source == at
            at = a.target
        else:
            assert a.target == at
            at = a.source
    return at


def _walk_vertices(quiver, walk):
    src, letters = walk
    verts = [src]
    at = src
    for name, sign in letters:
        a = quiver.arrow_by_name[name]
        at = a.target if sign > 0 else a.source
        verts.append(at)
    return verts


def walk_homotopy_classes(table, minrels=None, walk_bound=None,
                          support_cap=DEFAULT_SUPPORT_CAP,
                          node_cap=WALK_NODE_CAP):
    """Bounded BFS rewriting on walks; default bound is 2L + 4.

    Moves: cancel an adjacent inverse pair; insert an inverse pair at any
    position; swap an occurrence of a minimal-relation co-member path
    (either orientation) for its partner.  Every merge is witnessed, so
    the partition can only be finer than true walk homotopy; truncation
    by the length bound or the node cap is recorded as a caveat.
    """
    caveats = []
    if minrels is None:
        minrels, warnings = minimal_relation_supports(table, support_cap)
        caveats.extend(warnings)
    if walk_bound is None:
        walk_bound = 2 * table.bound + 4
    q = table.quiver
    if not minrels:
        # no relations: walks only cancel, so parallel paths never merge
        parent = list(range(len(table.paths)))
        return PathClassTable(table, "walk", parent, caveats)

    swaps = []
    seen_pairs = set()
    for mr in minrels:
        supp = mr.support()
        for w1, w2 in itertools.permutations(supp, 2):
            key = (w1.arrows, w2.arrows)
            if key in seen_pairs:
                continue
            seen_pairs.add(key)
            fwd1 = tuple((a, 1) for a in w1.arrows)
            fwd2 = tuple((a, 1) for a in w2.arrows)
            rev1 = tuple((a, -1) for a in reversed(w1.arrows))
            rev2 = tuple((a, -1) for a in reversed(w2.arrows))
            swaps.append((fwd1, fwd2))
            swaps.append((rev1, rev2))

    node_id = {}
    parent = []
    heap = []
    counter = itertools.count()
    truncated = False

    def intern(walk):
        i = node_id.get(walk)
        if i is None:
            i = len(parent)
            node_id[walk] = i
            parent.append(i)
        return i

    path_node = {}
    for i, p in enumerate(table.paths):
        walk = (p.source, tuple((a, 1) for a in p.arrows))
        n = intern(walk)
        path_node[i] = n
        heapq.heappush(heap, (len(walk[1]), next(counter), walk))

    processed = set()
    while heap:
        length, _, walk = heapq.heappop(heap)
        if walk in processed:
            continue
        processed.add(walk)
        cur = node_id[walk]
        src, letters = walk
        neighbors = []
        # cancellations
        for i in range(len(letters) - 1):
            (n1, s1), (n2, s2) = letters[i], letters[i + 1]
            if n1 == n2 and s1 == -s2:
                neighbors.append((src, letters[:i] + letters[i + 2:]))
        # insertions
        if length + 2 <= walk_bound:
            verts = _walk_vertices(q, walk)
            for pos in range(len(letters) + 1):
                v = verts[pos]
                for a in q.arrows_from[v]:
                    neighbors.append((src, letters[:pos]
                                      + ((a.name, 1), (a.name, -1))
                                      + letters[pos:]))
                for a in q.arrows_to[v]:
                    neighbors.append((src, letters[:pos]
                                      + ((a.name, -1), (a.name, 1))
                                      + letters[pos:]))
        else:
            truncated = True
        # minimal-relation segment swaps
        for lhs, rhs in swaps:
            k = len(lhs)
            if k > len(letters):
                continue
            if len(letters) - k + len(rhs) > walk_bound:
                truncated = True
                continue
            for pos in range(len(letters) - k + 1):
                if letters[pos:pos + k] == lhs:
                    neighbors.append((src, letters[:pos] + rhs
                                      + letters[pos + k:]))
        for nb in neighbors:
            known = nb in node_id
            if not known and len(node_id) >= node_cap:
                truncated = True
                continue
            j = intern(nb)
            _union(parent, cur, j)
            if not known:
                heapq.heappush(heap, (len(nb[1]), next(counter), nb))

    path_parent = list(range(len(table.paths)))
    root_to_first = {}
    for i in range(len(table.paths)):
        r = _find(parent, path_node[i])
        if r in root_to_first:
            _union(path_parent, root_to_first[r], i)
        else:
            root_to_first[r] = i
    # composition closure keeps face maps of the total complex
    # representative-independent even when the search was truncated
    _factor_replacement_closure(table, path_parent)
    if truncated:
        caveats.append(
            "walk rewriting truncated (bound %d, nodes %d): the walk "
            "partition may be finer than true walk homotopy"
            % (walk_bound, len(node_id)))
    return PathClassTable(table, "walk", path_parent, caveats)


# ---------------------------------------------------------------------------
# fundamental group presentations


@dataclass(frozen=True)
class Presentation:
    """Finite presentation: words are tuples of (generator, +1/-1)."""

    generators: tuple
    relators: tuple
    base: str = ""


def _word_inverse(word):
    return tuple((g, -s) for g, s in reversed(word))


def free_reduce(word):
    out = []
    for g, s in word:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def spanning_tree(quiver, base):
    """Deterministic BFS tree on the underlying graph.

    Returns (tree_arrow_names, walk_to) where walk_to[v] is the reduced
    tree walk from base to v as a word over arrow names.
    """
    if base not in quiver.vertex_index:
        raise NotConnectedError("unknown base vertex %r" % base)
    walk_to = {base: ()}
    tree = []
    queue = [base]
    while queue:
        v = queue.pop(0)
        for a in quiver.arrows:
            if a.source == v and a.target not in walk_to:
                tree.append(a.name)
                walk_to[a.target] = walk_to[v] + ((a.name, 1),)
                queue.append(a.target)
            elif a.target == v and a.source not in walk_to:
                tree.append(a.name)
                walk_to[a.source] = walk_to[v] + ((a.name, -1),)
                queue.append(a.source)
    if len(walk_to) != len(quiver.vertices):
        raise NotConnectedError("quiver is not connected")
    return tree, walk_to


def pi1_presentation(table, minrels=None, base=None,
                     support_cap=DEFAULT_SUPPORT_CAP):
    """Presentation of the fundamental group of the bound quiver.

    Generators are all arrows; relators are the spanning tree arrows plus,
    for each minimal relation with support w_1 < ... < w_m, the words
    w_1 w_j^-1 for j = 2..m.
    """
    q = table.quiver
    if minrels is None:
        minrels, _ = minimal_relation_supports(table, support_cap)
    if base is None:
        base = q.vertices[0]
    tree, _ = spanning_tree(q, base)
    relators = [((name, 1),) for name in tree]
    for mr in minrels:
        supp = sorted(mr.support(), key=lambda p: path_sort_key(q, p))
        w1 = tuple((a, 1) for a in supp[0].arrows)
        for wj in supp[1:]:
            relators.append(free_reduce(
                w1 + _word_inverse(tuple((a, 1) for a in wj.arrows))))
    return Presentation(tuple(a.name for a in q.arrows), tuple(relators), base)


def abelianization(pres):
    """(free_rank, torsion divisors) of the abelianized presentation."""
    from .linalg import cokernel_structure
    gi = {g: i for i, g in enumerate(pres.generators)}
    cols = []
    for rel in pres.relators:
        col = [0] * len(pres.generators)
        for g, s in rel:
            col[gi[g]] += s
        cols.append(col)
    if not cols:
        return len(pres.generators), []
    mat = [[cols[j][i] for j in range(len(cols))]
           for i in range(len(pres.generators))]
    return cokernel_structure(mat, len(pres.generators))


def _letter_key(letter):
    name, sign = letter
    return (name, -sign)  # positive exponent preferred


def _cyclic_canonical(word):
    """Least rotation among the word and its inverse (dedup key)."""
    best = None
    for w in (word, _word_inverse(word)):
        for k in range(max(1, len(w))):
            rot = w[k:] + w[:k]
            if best is None or [_letter_key(x) for x in rot] < \
                    [_letter_key(x) for x in best]:
                best = rot
    return best


def _cyclic_reduce(word):
    w = free_reduce(word)
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = free_reduce(w[1:-1])
    return w


def simplify_presentation(pres, dedupe_bound=16):
    """Tietze simplification preserving the group up to isomorphism.

    Moves, iterated to a fixpoint: free+cyclic reduction; dropping empty
    and (cyclically) duplicate relators up to dedupe_bound; eliminating a
    generator named by a length-1 relator; eliminating a generator g via
    a length-2 relator g^e h^d with h distinct (substitute g = h^-de).
    """
    gens = list(pres.generators)
    rels = [_cyclic_reduce(r) for r in pres.relators]

    def substitute(word, g, rep):
        out = []
        for name, s in word:
            if name == g:
                out.extend(rep if s == 1 else _word_inverse(rep))
            else:
                out.append((name, s))
        return _cyclic_reduce(tuple(out))

    changed = True
    while changed:
        changed = False
        rels = [r for r in rels if r]
        seen = set()
        dedup = []
        for r in rels:
            if len(r) <= dedupe_bound:
                key = _cyclic_canonical(r)
                if key in seen:
                    changed = True
                    continue
                seen.add(key)
            dedup.append(r)
        rels = dedup
        for idx, r in enumerate(rels):
            if len(r) == 1:
                g = r[0][0]
                gens.remove(g)
                rels = [substitute(w, g, ()) for k, w in enumerate(rels)
                        if k != idx]
                changed = True
                break
            if len(r) == 2 and r[0][0] != r[1][0]:
                (g, e), (h, d) = r
                # g^e h^d = 1  =>  g = h^(-d*e)
                rep = ((h, -d * e),)
                gens.remove(g)
                rels = [substitute(w, g, rep) for k, w in enumerate(rels)
                        if k != idx]
                changed = True
                break
    rels = [(_cyclic_canonical(r) if len(r) <= dedupe_bound else r)
            for r in rels]
    return Presentation(tuple(gens), tuple(rels), pres.base)


# ---------------------------------------------------------------------------
# Van Kampen decomposition


@dataclass(frozen=True)
class VanKampenResult:
    piece1: Presentation
    piece2: Presentation
    intersection: Presentation
    pushout: Presentation
    base: str


def _full_subquiver(quiver, verts):
    from .core import BoundQuiver
    vset = set(verts)
    vertices = [v for v in quiver.vertices if v in vset]
    arrows = [a for a in quiver.arrows
              if a.source in vset and a.target in vset]
    return BoundQuiver(vertices, arrows)


def _restricted_relations(table, verts):
    """Ideal slice bases for pairs inside `verts`, as relation vectors."""
    from .core import RelVector
    vset = set(verts)
    rels = []
    for pair in sorted(table.ideal_rows,
                       key=lambda xy: (table.quiver.vertex_index[xy[0]],
                                       table.quiver.vertex_index[xy[1]])):
        if pair[0] not in vset or pair[1] not in vset:
            continue
        idxs = table.pair_paths[pair]
        for row in table.ideal_rows[pair]:
            terms = [(table.paths[idxs[k]], c)
                     for k, c in enumerate(row) if c != 0]
            rels.append(RelVector.build(terms))
    return rels


def _check_convex(quiver, verts, label):
    vset = set(verts)
    outside = [v for v in quiver.vertices if v not in vset]
    # escape arrow into the outside that can flow back in: not convex
    reach_into = set()  # outside vertices with a directed path into vset
    changed = True
    while changed:
        changed = False
        for a in quiver.arrows:
            if a.source in vset:
                continue
            if (a.target in vset or a.target in reach_into) \
                    and a.source not in reach_into:
                reach_into.add(a.source)
                changed = True
    for a in quiver.arrows:
        if a.source in vset and a.target not in vset and a.target in reach_into:
            raise HypothesisViolated(
                "%s is not convex: a path leaves through arrow %s and "
                "re-enters" % (label, a.name), witness=a.name)


def van_kampen_pushout(table, v1, v2, minrels=None,
                       support_cap=DEFAULT_SUPPORT_CAP):
    """Presentations of the two pieces, their intersection and the pushout.

    Requires: V1 and V2 cover the vertices, both full subquivers convex,
    every nonzero path contained in one piece, and the intersection
    subquiver connected and nonempty.  The pushout is the amalgamated
    free product over the intersection's fundamental group, presented on
    disjoint copies of the pieces' arrows with one amalgamation relator
    per non-tree arrow of the intersection.
    """
    from .core import enumerate_paths
    q = table.quiver
    v1 = [v for v in q.vertices if v in set(v1)]
    v2 = [v for v in q.vertices if v in set(v2)]
    if set(v1) | set(v2) != set(q.vertices):
        raise HypothesisViolated("V1 and V2 do not cover the vertices")
    shared = [v for v in q.vertices if v in set(v1) and v in set(v2)]
    if not shared:
        raise HypothesisViolated("V1 and V2 have empty intersection")
    _check_convex(q, v1, "Q1")
    _check_convex(q, v2, "Q2")
    for i, p in enumerate(table.paths):
        if i in table.in_ideal:
            continue
        verts = set(q.path_vertices(p))
        if not (verts <= set(v1) or verts <= set(v2)):
            raise HypothesisViolated(
                "nonzero path %s lies in neither piece" % p, witness=str(p))
    q0 = _full_subquiver(q, shared)
    if not q0.is_connected():
        raise HypothesisViolated("intersection subquiver is not connected")
    base = shared[0]

    def piece(verts):
        from .core import BoundQuiver
        sub = _full_subquiver(q, verts)
        sub = BoundQuiver(sub.vertices, sub.arrows,
                          _restricted_relations(table, verts))
        sub_table = enumerate_paths(sub, cap=max(12, table.bound + 1))
        mrs, _ = minimal_relation_supports(sub_table, support_cap)
        return sub, pi1_presentation(sub_table, mrs, base=base)

    sub1, pres1 = piece(v1)
    sub2, pres2 = piece(v2)
    sub0 = _full_subquiver(q, shared)
    from .core import BoundQuiver
    sub0 = BoundQuiver(sub0.vertices, sub0.arrows,
                       _restricted_relations(table, shared))
    table0 = enumerate_paths(sub0, cap=max(12, table.bound + 1))
    mrs0, _ = minimal_relation_supports(table0, support_cap)
    pres0 = pi1_presentation(table0, mrs0, base=base)

    tree0, walk0 = spanning_tree(sub0, base)
    arrows2 = set(a.name for a in sub2.arrows)
    shared_arrows = set(a.name for a in sub1.arrows) & arrows2

    def copy2(name):
        return name + "'" if name in shared_arrows else name

    gens = list(pres1.generators) + [copy2(g) for g in pres2.generators]
    rels = list(pres1.relators)
    for r in pres2.relators:
        rels.append(tuple((copy2(g), s) for g, s in r))
    for a in sub0.arrows:
        if a.name in tree0:
            continue
        loop = free_reduce(walk0[a.source] + ((a.name, 1),)
                           + _word_inverse(walk0[a.target]))
        rels.append(free_reduce(
            loop + _word_inverse(tuple((copy2(g), s) for g, s in loop))))
    pushout = Presentation(tuple(gens), tuple(rels), base)
    return VanKampenResult(pres1, pres2, pres0, pushout, base)
