"""Bound quivers, path enumeration and ideal membership.

A bound quiver is a finite directed multigraph together with an admissible
ideal of its path algebra, given by a finite list of relation vectors.
Paths compose left to right: in the product ``w = a1 a2`` the arrow ``a1``
is traversed first, so ``source(w) = source(a1)`` and
``target(w) = target(a2)``.

The central computed object is a :class:`PathTable`: all paths of length
at most a bound L (the smallest length at which every path is certified to
lie in the ideal, so the quotient algebra sees nothing longer), together
with, for each ordered vertex pair, an exact basis of the ideal's slice on
those paths.  All downstream questions (is this combination of paths in
the ideal, what is dim e_x A e_y, ...) reduce to exact rational linear
algebra against these slices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import QQ, rref

DEFAULT_PATH_CAP = 12


class QuiverError(Exception):
    """Base class for structural errors in bound quiver input."""


class MalformedRelation(QuiverError):
    """A relation vector violates the admissibility format.

    Every term must be a path of length >= 2, all terms must be parallel
    (same source and target), and coefficients must be nonzero.
    """


class AdmissibilityError(QuiverError):
    """No nilpotency bound L <= cap certifies the ideal admissible."""


class NotConnectedError(QuiverError):
    """Operation requires a connected underlying graph."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A directed path: the arrow names in traversal order.

    Stationary paths have an empty arrow tuple; `source == target` then.
    """

    source: str
    target: str
    arrows: tuple

    def __len__(self):
        return len(self.arrows)

    @property
    def is_stationary(self):
        return not self.arrows

    def __str__(self):
        if not self.arrows:
            return "e_%s" % self.source
        return "*".join(self.arrows)


def compose(p, q):
    assert p.target == q.source, "paths not composable"
    return Path(p.source, q.target, p.arrows + q.arrows)


@dataclass(frozen=True)
class RelVector:
    """A linear combination of parallel paths, sum of coeff * path.

    Terms are stored sorted by (length, arrow names) so that equal vectors
    compare equal regardless of input order.
    """

    source: str
    target: str
    terms: tuple  # of (Path, Fraction), coeffs nonzero

    @staticmethod
    def build(terms):
        """terms: iterable of (path, coefficient). Validates parallelism."""
        agg = {}
        for path, coeff in terms:
            agg[path] = agg.get(path, Fraction(0)) + Fraction(coeff)
        clean = [(p, c) for p, c in agg.items() if c != 0]
        if not clean:
            raise MalformedRelation("relation vector is zero")
        src = clean[0][0].source
        tgt = clean[0][0].target
        for p, _ in clean:
            if p.source != src or p.target != tgt:
                raise MalformedRelation(
                    "terms not parallel: %s vs %s" % (clean[0][0], p))
        clean.sort(key=lambda pc: (len(pc[0]), pc[0].arrows))
        return RelVector(src, tgt, tuple(clean))

    def check_admissible_format(self):
        for p, _ in self.terms:
            if len(p) < 2:
                raise MalformedRelation(
                    "relation term %s has length %d < 2" % (p, len(p)))

    def support(self):
        return [p for p, _ in self.terms]

    def __str__(self):
        bits = []
        for p, c in self.terms:
            bits.append("%s*%s" % (c, p) if c != 1 else str(p))
        return " + ".join(bits)


class BoundQuiver:
    """Vertices, arrows and relation generators, with declared order."""

    def __init__(self, vertices, arrows, relations=()):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex id")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a)
                            for a in arrows)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow name")
        self.arrow_by_name = {a.name: a for a in self.arrows}
        for a in self.arrows:
            if a.source not in self.vertex_index or a.target not in self.vertex_index:
                raise QuiverError("arrow %s has undeclared endpoint" % a.name)
        self.arrows_from = {v: [] for v in self.vertices}
        self.arrows_to = {v: [] for v in self.vertices}
        for a in self.arrows:
            self.arrows_from[a.source].append(a)
            self.arrows_to[a.target].append(a)
        coerced = []
        for rel in relations:
            if not isinstance(rel, RelVector):
                rel = RelVector.build([(self.path(names), c)
                                       for names, c in rel])
            coerced.append(rel)
        self.relations = tuple(coerced)
        for rel in self.relations:
            rel.check_admissible_format()
            for p, _ in rel.terms:
                self._check_path(p)

    def _check_path(self, p):
        at = p.source
        for name in p.arrows:
            a = self.arrow_by_name.get(name)
            if a is None:
                raise QuiverError("unknown arrow %r in path" % name)
            if a.source != at:
                raise QuiverError("path %s breaks at %r" % (p, name))
            at = a.target
        if at != p.target:
            raise QuiverError("path %s does not end at %s" % (p, p.target))

    def path(self, arrow_names, at=None):
        """Build a validated Path from arrow names (stationary needs `at`)."""
        names = tuple(arrow_names)
        if not names:
            assert at is not None, "stationary path needs a vertex"
            return Path(at, at, ())
        for name in names:
            if name not in self.arrow_by_name:
                raise QuiverError("unknown arrow %r" % name)
        src = self.arrow_by_name[names[0]].source
        tgt = self.arrow_by_name[names[-1]].target
        p = Path(src, tgt, names)
        self._check_path(p)
        return p

    def path_vertices(self, p):
        out = [p.source]
        for name in p.arrows:
            out.append(self.arrow_by_name[name].target)
        return out

    def is_acyclic(self):
        color = {v: 0 for v in self.vertices}

        def visit(v):
            color[v] = 1
            for a in self.arrows_from[v]:
                if color[a.target] == 1:
                    return False
                if color[a.target] == 0 and not visit(a.target):
                    return False
            color[v] = 2
            return True

        return all(color[v] != 0 or visit(v) for v in self.vertices)

    def is_connected(self):
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for a in self.arrows_from[v]:
                if a.target not in seen:
                    seen.add(a.target)
                    stack.append(a.target)
            for a in self.arrows_to[v]:
                if a.source not in seen:
                    seen.add(a.source)
                    stack.append(a.source)
        return len(seen) == len(self.vertices)


def path_sort_key(quiver, p):
    return (len(p), p.arrows, quiver.vertex_index[p.source])


class PathTable:
    """All paths of length <= L plus exact ideal slices per vertex pair.

    Attributes:
        quiver: the BoundQuiver
        bound: L, smallest certified length with every length-L path in I
        paths: all paths of length <= L, sorted by (length, names, source)
        index: path -> position in `paths`
        pair_paths: (x, y) -> list of indices into `paths`
        ideal_rows: (x, y) -> RREF basis of I(x, y) in pair-local coordinates
        in_ideal: set of indices of member paths
        dims: (x, y) -> dim e_x A e_y
    """

    def __init__(self, quiver, bound, paths, ideal_rows):
        self.quiver = quiver
        self.bound = bound
        self.paths = paths
        self.index = {p: i for i, p in enumerate(paths)}
        self.pair_paths = {}
        for i, p in enumerate(paths):
            self.pair_paths.setdefault((p.source, p.target), []).append(i)
        self.ideal_rows = ideal_rows
        self.in_ideal = set()
        for pair, idxs in self.pair_paths.items():
            rows = ideal_rows.get(pair, [])
            for local, i in enumerate(idxs):
                vec = [Fraction(0)] * len(idxs)
                vec[local] = Fraction(1)
                if rows and self._reduces_to_zero(rows, vec):
                    self.in_ideal.add(i)
        self.dims = {}
        for pair, idxs in self.pair_paths.items():
            self.dims[pair] = len(idxs) - len(self.ideal_rows.get(pair, []))

    @staticmethod
    def _reduces_to_zero(rref_rows, vec):
        v = list(vec)
        for row in rref_rows:
            lead = next(i for i, x in enumerate(row) if x != 0)
            if v[lead] != 0:
                f = v[lead]
                v = [a - f * b for a, b in zip(v, row)]
        return all(x == 0 for x in v)

    def pair_of(self, vec_terms):
        srcs = {p.source for p, _ in vec_terms}
        tgts = {p.target for p, _ in vec_terms}
        if len(srcs) != 1 or len(tgts) != 1:
            raise MalformedRelation("terms not parallel")
        return srcs.pop(), tgts.pop()

    def vector_in_ideal(self, terms):
        """Exact membership of sum(coeff * path) in the ideal.

        Paths longer than the bound are members outright and are dropped
        before solving (valid because F^L lies inside the ideal).
        """
        kept = [(p, Fraction(c)) for p, c in terms
                if len(p) <= self.bound and Fraction(c) != 0]
        if not kept:
            return True
        pair = self.pair_of(kept)
        idxs = self.pair_paths.get(pair, [])
        local = {self.paths[i]: k for k, i in enumerate(idxs)}
        vec = [Fraction(0)] * len(idxs)
        for p, c in kept:
            if p not in local:
                self.quiver._check_path(p)  # diagnose: invalid vs just absent
                raise QuiverError("path %s exceeds table bound" % p)
            vec[local[p]] += c
        if all(x == 0 for x in vec):
            return True
        rows = self.ideal_rows.get(pair, [])
        if not rows:
            return False
        return self._reduces_to_zero(rows, vec)

    def path_in_ideal(self, p):
        if len(p) > self.bound:
            return True
        return self.index[p] in self.in_ideal

    def nonzero_paths(self):
        return [p for i, p in enumerate(self.paths) if i not in self.in_ideal]

    def paths_between(self, x, y):
        return [self.paths[i] for i in self.pair_paths.get((x, y), [])]


def _paths_up_to(quiver, n):
    """All paths of length <= n, grouped by length.

    n=None enumerates until a length has no paths (acyclic quivers only).
    """
    by_len = [[Path(v, v, ()) for v in quiver.vertices]]
    while n is None or len(by_len) <= n:
        nxt = []
        for p in by_len[-1]:
            for a in quiver.arrows_from[p.target]:
                nxt.append(Path(p.source, a.target, p.arrows + (a.name,)))
        by_len.append(nxt)
        if not nxt:
            break
    while n is not None and len(by_len) <= n:
        by_len.append([])
    return by_len


def _pair_spans(quiver, by_len, max_len, truncate):
    """Span vectors of {u * g * v} per vertex pair.

    With truncate=False only whole products fitting within max_len are
    used (sound before a nilpotency bound is known).  With truncate=True
    products are kept whenever their shortest component fits, and longer
    components are dropped; this is exact once F^max_len <= I.
    """
    spans = {}
    all_paths = [p for bucket in by_len[:max_len + 1] for p in bucket]
    paths_from = {}
    paths_to = {}
    for p in all_paths:
        paths_from.setdefault(p.source, []).append(p)
        paths_to.setdefault(p.target, []).append(p)
    for rel in quiver.relations:
        lens = [len(p) for p, _ in rel.terms]
        g_min, g_max = min(lens), max(lens)
        critical = g_min if truncate else g_max
        for u in paths_to.get(rel.source, []):
            if len(u) + critical > max_len:
                continue
            for v in paths_from.get(rel.target, []):
                if len(u) + critical + len(v) > max_len:
                    continue
                terms = []
                for p, c in rel.terms:
                    if len(u) + len(p) + len(v) > max_len:
                        if not truncate:
                            terms = None
                            break
                        continue  # component lies in F^L <= I: drop exactly
                    terms.append((compose(compose(u, p), v), c))
                if terms:
                    spans.setdefault((u.source, v.target), []).append(terms)
    return spans


def _rref_ideal_rows(quiver, by_len, max_len, spans):
    """Per-pair RREF rows in pair-local coordinates (paths sorted)."""
    pair_lists = {}
    for bucket in by_len[:max_len + 1]:
        for p in bucket:
            pair_lists.setdefault((p.source, p.target), []).append(p)
    for pair in pair_lists:
        pair_lists[pair].sort(key=lambda p: path_sort_key(quiver, p))
    rows_by_pair = {}
    for pair, termlists in spans.items():
        plist = pair_lists[pair]
        pos = {p: i for i, p in enumerate(plist)}
        raw = []
        for terms in termlists:
            vec = [Fraction(0)] * len(plist)
            for p, c in terms:
                vec[pos[p]] += c
            if any(x != 0 for x in vec):
                raw.append(vec)
        if raw:
            reduced, pivots = rref(raw, QQ)
            rows_by_pair[pair] = reduced[:len(pivots)]
    return rows_by_pair, pair_lists


def enumerate_paths(quiver, cap=DEFAULT_PATH_CAP):
    """Find the nilpotency bound and build the PathTable.

    Tries L = 2, 3, ... up to `cap`; L is accepted once every path of
    length exactly L lies in the span of whole products u*g*v fitting in
    length L (vacuously when no such path exists, e.g. one past the
    longest path of an acyclic quiver).  Raises AdmissibilityError when
    no L <= cap works.
    """
    for rel in quiver.relations:
        rel.check_admissible_format()
    if quiver.is_acyclic():
        # detection terminates vacuously one past the longest path, so the
        # cap only guards cyclic searches
        by_len = _paths_up_to(quiver, None)
        cap = max(cap, len(by_len) - 1)
        while len(by_len) <= cap:
            by_len.append([])
    else:
        by_len = _paths_up_to(quiver, cap)
    found = None
    for L in range(2, cap + 1):
        spans = _pair_spans(quiver, by_len, L, truncate=False)
        rows_by_pair, pair_lists = _rref_ideal_rows(quiver, by_len, L, spans)
        ok = True
        for p in by_len[L]:
            pair = (p.source, p.target)
            plist = pair_lists[pair]
            vec = [Fraction(0)] * len(plist)
            vec[plist.index(p)] = Fraction(1)
            rows = rows_by_pair.get(pair, [])
            if not rows or not PathTable._reduces_to_zero(rows, vec):
                ok = False
                break
        if ok:
            found = L
            break
    if found is None:
        raise AdmissibilityError(
            "no nilpotency bound L <= %d certifies the ideal admissible; "
            "raise the path cap if the quiver is genuinely bounded" % cap)
    L = found
    spans = _pair_spans(quiver, by_len, L, truncate=True)
    rows_by_pair, pair_lists = _rref_ideal_rows(quiver, by_len, L, spans)
    paths = [p for bucket in by_len[:L + 1] for p in bucket]
    paths.sort(key=lambda p: path_sort_key(quiver, p))
    return PathTable(quiver, L, paths, rows_by_pair)


def ideal_membership(table, terms):
    """terms: iterable of (Path, coefficient).  Exact membership in I."""
    return table.vector_in_ideal(list(terms))


@dataclass(frozen=True)
class AlgebraProperties:
    dims: dict
    nilpotency_bound: int
    admissible: bool
    connected: bool
    triangular: bool
    almost_triangular: bool
    schurian: bool
    semi_commutative: bool
    constricted: bool
    euler_characteristic: int
    total_dimension: int


def _pairs_with_paths_beyond(quiver, bound):
    """Vertex pairs joined by some path strictly longer than the bound.

    Only lengths bound+1 .. bound+|Q_0| need checking: a longer walk
    contains a cycle whose removal shortens it by at most |Q_0|, so its
    length can be pumped down into that window without crossing bound.
    """
    limit = bound + len(quiver.vertices)
    ends = {v: {v} for v in quiver.vertices}
    out = set()
    for length in range(1, limit + 1):
        ends = {v: {a.target for u in ts for a in quiver.arrows_from[u]}
                for v, ts in ends.items()}
        if length > bound:
            for v, ts in ends.items():
                for t in ts:
                    out.add((v, t))
    return out


def algebra_properties(table):
    """Dimension table and standard flags of A = kQ/I.

    Semi-commutativity compares ideal membership across every parallel
    pair of paths (stationary paths included).  Paths longer than the
    table bound lie in the ideal outright, so a pair carrying both a
    nonzero path and any longer parallel path is mixed even though the
    table never stores the long one.
    """
    q = table.quiver
    dims = dict(table.dims)
    for x in q.vertices:
        for y in q.vertices:
            dims.setdefault((x, y), 0)
    triangular = q.is_acyclic()
    connected = q.is_connected()
    schurian = all(d <= 1 for d in dims.values())
    semi_commutative = True
    for pair, idxs in table.pair_paths.items():
        flags = {i in table.in_ideal for i in idxs}
        if len(flags) > 1:
            semi_commutative = False
            break
    if semi_commutative:
        long_pairs = _pairs_with_paths_beyond(q, table.bound)
        if any(dims.get(pair, 0) > 0 for pair in long_pairs):
            semi_commutative = False
    constricted = all(dims[(a.source, a.target)] == 1 for a in q.arrows)
    rad = {}
    for (x, y), d in dims.items():
        rad[(x, y)] = d - 1 if x == y else d
    almost_triangular = True
    for x in q.vertices:
        for y in q.vertices:
            if rad[(x, y)] > 0 and rad[(y, x)] > 0:
                almost_triangular = False
    euler = 1 - len(q.vertices) + len(q.arrows)
    return AlgebraProperties(
        dims=dims,
        nilpotency_bound=table.bound,
        admissible=True,
        connected=connected,
        triangular=triangular,
        almost_triangular=almost_triangular,
        schurian=schurian,
        semi_commutative=semi_commutative,
        constricted=constricted,
        euler_characteristic=euler,
        total_dimension=sum(dims.values()),
    )
