"""Covering morphisms of bound quivers and their induced cell maps.

A morphism of bound quivers sends vertices to vertices and arrows to
arrows, respecting endpoints, and must push every relation of its source
into the ideal of its target.  Such a morphism is a covering when three
conditions hold: every fiber is nonempty; at each cover vertex the arrows
leaving (and the arrows entering) map bijectively onto the arrows leaving
(entering) the image vertex; and every relation downstairs lifts, at every
point of the fiber over its source, to a relation upstairs.  The local
arrow bijections give unique path lifting, so the lift of a relation is
forced term by term and the third condition becomes a concrete membership
test in the cover's ideal.

Relation lifting is checked on generator vectors only.  This suffices:
any element of a slice I(x, y) is a combination of products
path * generator * path, each factor lifts uniquely through the local
bijections, and lifting is linear in the terms.

A finite group of ideal-preserving automorphisms of the cover presents a
Galois covering when the projection is constant on orbits, the group acts
transitively on every vertex and arrow fiber, and no non-identity element
fixes a vertex or an arrow.  Verified coverings induce a cellular map of
classifying complexes, sending a cell's tuple of homotopy classes to the
classes of the image paths; each group element likewise induces a cell
automorphism, and together these deck maps certify regularity by acting
transitively on the zero-cell fiber over the base point.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .core import Path, QuiverError


class MalformedMorphism(QuiverError):
    """Vertex or arrow assignment violates the morphism format."""


class NotACovering(Exception):
    """Operation requires a verified covering morphism."""


class NotGalois(Exception):
    """Operation requires a verified Galois covering with connected cover."""


class QuiverMorphism:
    """Vertex and arrow assignment between bound quivers.

    Every source vertex and arrow must be assigned, images must exist in
    the target, and arrow images must connect the image endpoints.
    """

    def __init__(self, source, target, vertex_map, arrow_map):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        self.arrow_map = dict(arrow_map)
        for v in source.vertices:
            img = self.vertex_map.get(v)
            if img is None:
                raise MalformedMorphism("vertex %r is not mapped" % v)
            if img not in target.vertex_index:
                raise MalformedMorphism(
                    "vertex %r maps to unknown vertex %r" % (v, img))
        for a in source.arrows:
            img = self.arrow_map.get(a.name)
            if img is None:
                raise MalformedMorphism("arrow %r is not mapped" % a.name)
            b = target.arrow_by_name.get(img)
            if b is None:
                raise MalformedMorphism(
                    "arrow %r maps to unknown arrow %r" % (a.name, img))
            if b.source != self.vertex_map[a.source] \
                    or b.target != self.vertex_map[a.target]:
                raise MalformedMorphism(
                    "arrow %s: image %s does not connect the image"
                    " endpoints (%s, %s)" % (a.name, img,
                                             self.vertex_map[a.source],
                                             self.vertex_map[a.target]))

    def vertex(self, v):
        return self.vertex_map[v]

    def arrow(self, name):
        return self.arrow_map[name]

    def path_image(self, path):
        return Path(self.vertex_map[path.source],
                    self.vertex_map[path.target],
                    tuple(self.arrow_map[n] for n in path.arrows))

    def is_identity(self):
        return self.source is self.target \
            and all(self.vertex_map[v] == v for v in self.source.vertices) \
            and all(self.arrow_map[a.name] == a.name
                    for a in self.source.arrows)

    def signature(self):
        return (tuple(self.vertex_map[v] for v in self.source.vertices),
                tuple(self.arrow_map[a.name] for a in self.source.arrows))


def identity_morphism(quiver):
    return QuiverMorphism(quiver, quiver,
                          {v: v for v in quiver.vertices},
                          {a.name: a.name for a in quiver.arrows})


def compose_morphisms(outer, inner):
    """The morphism applying `inner` first, then `outer`."""
    if inner.target is not outer.source:
        raise MalformedMorphism("morphisms are not composable")
    return QuiverMorphism(
        inner.source, outer.target,
        {v: outer.vertex(inner.vertex(v)) for v in inner.source.vertices},
        {a.name: outer.arrow(inner.arrow(a.name))
         for a in inner.source.arrows})


class GroupAction:
    """Finite group of ideal-preserving automorphisms of a bound quiver.

    Elements are given extensionally as self-morphisms of the table's
    quiver.  Construction verifies that each element is bijective on
    vertices and arrows and maps every relation into the ideal, and that
    the set contains the identity and is closed under composition and
    inverse; the composition and inverse tables are kept.
    """

    def __init__(self, table, elements):
        self.table = table
        self.quiver = table.quiver
        elems = list(elements)
        if not elems:
            raise ValueError("group action needs at least the identity")
        for g in elems:
            if g.source is not self.quiver or g.target is not self.quiver:
                raise ValueError("group element is not a self-map"
                                 " of the cover quiver")
            if set(g.vertex_map[v] for v in self.quiver.vertices) \
                    != set(self.quiver.vertices):
                raise ValueError("group element is not bijective on vertices")
            if set(g.arrow_map[a.name] for a in self.quiver.arrows) \
                    != set(a.name for a in self.quiver.arrows):
                raise ValueError("group element is not bijective on arrows")
            for rel in self.quiver.relations:
                image = [(g.path_image(w), c) for w, c in rel.terms]
                if not table.vector_in_ideal(image):
                    raise ValueError(
                        "group element does not preserve the ideal:"
                        " relation %s" % rel)
        sigs = [g.signature() for g in elems]
        if len(set(sigs)) != len(sigs):
            raise ValueError("duplicate group elements")
        index = {s: i for i, s in enumerate(sigs)}
        ident = next((i for i, g in enumerate(elems) if g.is_identity()),
                     None)
        if ident is None:
            raise ValueError("group action lacks the identity")
        compose_table = {}
        for i, g in enumerate(elems):
            for j, h in enumerate(elems):
                k = index.get(compose_morphisms(g, h).signature())
                if k is None:
                    raise ValueError("group action is not closed under"
                                     " composition")
                compose_table[(i, j)] = k
        inverse_of = {}
        for i in range(len(elems)):
            j = next((j for j in range(len(elems))
                      if compose_table[(i, j)] == ident
                      and compose_table[(j, i)] == ident), None)
            if j is None:
                raise ValueError("group element has no inverse in the set")
            inverse_of[i] = j
        self.elements = tuple(elems)
        self.identity_index = ident
        self.compose_table = compose_table
        self.inverse_of = inverse_of

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class CoveringReport:
    """Per-condition verdicts for a covering, optionally Galois, check."""

    ok: bool
    ideal_preserved: bool
    fibers_nonempty: bool
    local_bijections: bool
    relations_lift: bool
    vertex_fibers: dict
    arrow_fibers: dict
    witnesses: tuple
    galois_ok: bool | None = None
    equivariant: bool | None = None
    vertex_transitive: bool | None = None
    arrow_transitive: bool | None = None
    fixed_point_free: bool | None = None
    group_order: int | None = None


def _fmt_terms(terms):
    bits = []
    for p, c in terms:
        bits.append("%s*%s" % (c, p) if c != 1 else str(p))
    return " + ".join(bits)


def _lift_path(p, path, at):
    """The unique lift of a base path starting at `at`, or None."""
    names = []
    cur = at
    for name in path.arrows:
        hits = [a for a in p.source.arrows_from[cur]
                if p.arrow_map[a.name] == name]
        if len(hits) != 1:
            return None
        names.append(hits[0].name)
        cur = hits[0].target
    return Path(at, cur, tuple(names))


def check_covering(base, cover, p):
    """Verify that p: cover -> base is a covering morphism.

    base and cover are path tables; p maps the cover quiver to the base
    quiver.  Failures are reported as verdicts with witnesses, never
    raised.
    """
    if p.source is not cover.quiver or p.target is not base.quiver:
        raise MalformedMorphism(
            "morphism endpoints do not match the given path tables")
    witnesses = []
    ideal_ok = True
    for rel in cover.quiver.relations:
        image = [(p.path_image(w), c) for w, c in rel.terms]
        if not base.vector_in_ideal(image):
            ideal_ok = False
            witnesses.append(
                "cover relation %s maps onto %s, which is outside the"
                " base ideal" % (rel, _fmt_terms(image)))
    vertex_fibers = {x: tuple(v for v in cover.quiver.vertices
                              if p.vertex(v) == x)
                     for x in base.quiver.vertices}
    arrow_fibers = {a.name: tuple(b.name for b in cover.quiver.arrows
                                  if p.arrow(b.name) == a.name)
                    for a in base.quiver.arrows}
    cond1 = True
    for x in base.quiver.vertices:
        if not vertex_fibers[x]:
            cond1 = False
            witnesses.append("empty fiber over vertex %s" % x)
    cond2 = True
    for xh in cover.quiver.vertices:
        x = p.vertex(xh)
        local = (("leaving", cover.quiver.arrows_from[xh],
                  base.quiver.arrows_from[x]),
                 ("entering", cover.quiver.arrows_to[xh],
                  base.quiver.arrows_to[x]))
        for side, mine, theirs in local:
            got = sorted(p.arrow(a.name) for a in mine)
            want = sorted(a.name for a in theirs)
            if got != want:
                cond2 = False
                witnesses.append(
                    "arrows %s %s map to %s, not bijectively onto %s"
                    % (side, xh, got, want))
    cond3 = True
    for rel in base.quiver.relations:
        for xh in vertex_fibers.get(rel.source, ()):
            lifted = []
            for w, c in rel.terms:
                lw = _lift_path(p, w, xh)
                if lw is None:
                    witnesses.append(
                        "term %s of %s has no unique lift at %s"
                        % (w, rel, xh))
                    lifted = None
                    break
                lifted.append((lw, c))
            if lifted is None:
                cond3 = False
                continue
            targets = {lw.target for lw, _ in lifted}
            if len(targets) != 1:
                cond3 = False
                witnesses.append(
                    "terms of %s lift from %s to different endpoints %s"
                    % (rel, xh, sorted(targets)))
            elif not cover.vector_in_ideal(lifted):
                cond3 = False
                witnesses.append(
                    "relation %s lifts at %s to %s, which is outside the"
                    " cover ideal" % (rel, xh, _fmt_terms(lifted)))
    ok = ideal_ok and cond1 and cond2 and cond3
    return CoveringReport(ok=ok, ideal_preserved=ideal_ok,
                          fibers_nonempty=cond1, local_bijections=cond2,
                          relations_lift=cond3, vertex_fibers=vertex_fibers,
                          arrow_fibers=arrow_fibers,
                          witnesses=tuple(witnesses))


def check_galois(base, cover, p, action):
    """Covering check plus the three conditions on the group action."""
    if action.quiver is not cover.quiver:
        raise ValueError("group action does not act on the given cover")
    rep = check_covering(base, cover, p)
    witnesses = list(rep.witnesses)
    cond4 = True
    for g in action.elements:
        bad = next((v for v in cover.quiver.vertices
                    if p.vertex(g.vertex(v)) != p.vertex(v)), None)
        if bad is None:
            bad = next((a.name for a in cover.quiver.arrows
                        if p.arrow(g.arrow(a.name)) != p.arrow(a.name)),
                       None)
        if bad is not None:
            cond4 = False
            witnesses.append(
                "projection changes along a group element at %s" % bad)
    cond5v = True
    for x, fib in rep.vertex_fibers.items():
        if not fib:
            continue
        orbit = {g.vertex(fib[0]) for g in action.elements}
        if orbit != set(fib):
            cond5v = False
            witnesses.append(
                "orbit of %s reaches %d of the %d points in the fiber"
                " over %s" % (fib[0], len(orbit), len(fib), x))
    cond5a = True
    for name, fib in rep.arrow_fibers.items():
        if not fib:
            continue
        orbit = {g.arrow(fib[0]) for g in action.elements}
        if orbit != set(fib):
            cond5a = False
            witnesses.append(
                "orbit of %s reaches %d of the %d arrows in the fiber"
                " over %s" % (fib[0], len(orbit), len(fib), name))
    cond6 = True
    for g in action.elements:
        if g.is_identity():
            continue
        fixed = next((v for v in cover.quiver.vertices
                      if g.vertex(v) == v), None)
        if fixed is None:
            fixed = next((a.name for a in cover.quiver.arrows
                          if g.arrow(a.name) == a.name), None)
        if fixed is not None:
            cond6 = False
            witnesses.append("non-identity group element fixes %s" % fixed)
    galois_ok = rep.ok and cond4 and cond5v and cond5a and cond6
    return replace(rep, witnesses=tuple(witnesses), galois_ok=galois_ok,
                   equivariant=cond4, vertex_transitive=cond5v,
                   arrow_transitive=cond5a, fixed_point_free=cond6,
                   group_order=len(action))


@dataclass(frozen=True)
class CellMapReport:
    """Induced cellular map of a covering, with its verification."""

    ok: bool
    class_correspondence: bool
    cell_map: dict          # dimension -> tuple, cover cell -> base cell
    faces_commute: bool
    incidence_bijections: bool
    cell_fibers: dict       # dimension -> {base cell: tuple of cover cells}
    witnesses: tuple


@dataclass(frozen=True)
class DeckReport:
    """Cell automorphisms induced by a Galois action, with verification."""

    ok: bool
    order: int
    maps: tuple             # per element: {dimension: tuple}
    automorphisms: bool
    compatible: bool        # projection constant on every orbit
    distinct: bool
    transitive: bool        # on the zero-cell fiber over the base point
    base_point: str
    fiber: tuple
    witnesses: tuple


def _induced_cell_map(dom_cx, cod_cx, vertex_fn, cls_map, witnesses):
    cmap = {}
    ok = True
    for n, layer in enumerate(dom_cx.cells):
        row = []
        for cell in layer:
            if n == 0:
                key = vertex_fn(cell.key)
            else:
                key = tuple(cls_map.get(c) for c in cell.key)
            idx = cod_cx.cell_index.get((n, key))
            if idx is None:
                ok = False
                witnesses.append(
                    "image of cell %s in dimension %d is not a cell"
                    % (cell, n))
                idx = -1
            row.append(idx)
        cmap[n] = tuple(row)
    return cmap, ok


def _faces_commute(dom_cx, cod_cx, cmap, witnesses):
    ok = True
    for n in range(1, dom_cx.top_dim() + 1):
        for j, face_row in enumerate(dom_cx.faces[n]):
            tgt = cmap[n][j]
            if tgt < 0:
                ok = False
                continue
            cod_row = cod_cx.faces[n][tgt]
            for i, f in enumerate(face_row):
                if cmap[n - 1][f] != cod_row[i]:
                    ok = False
                    witnesses.append(
                        "face %d of cell %d does not commute in"
                        " dimension %d" % (i, j, n))
    return ok


def _cell_vertex_sets(cx):
    """Per dimension, the boundary vertices of every cell."""
    out = []
    cl = cx.classes
    for n, layer in enumerate(cx.cells):
        if n == 0:
            out.append([{c.key} for c in layer])
            continue
        sets = []
        for c in layer:
            vs = {cl.class_source[c.key[0]]}
            for cid in c.key:
                vs.add(cl.class_target[cid])
            sets.append(vs)
        out.append(sets)
    return out


def _incidence_bijections(dom_cx, cod_cx, p, cmap, witnesses):
    dom_sets = _cell_vertex_sets(dom_cx)
    cod_sets = _cell_vertex_sets(cod_cx)
    top = max(dom_cx.top_dim(), cod_cx.top_dim())
    ok = True
    for xh in dom_cx.table.quiver.vertices:
        x = p.vertex(xh)
        for n in range(top + 1):
            dom_inc = [j for j, vs in enumerate(dom_sets[n])
                       if xh in vs] if n <= dom_cx.top_dim() else []
            cod_inc = {i for i, vs in enumerate(cod_sets[n])
                       if x in vs} if n <= cod_cx.top_dim() else set()
            images = [cmap[n][j] for j in dom_inc] if dom_inc else []
            if len(set(images)) != len(images) or set(images) != cod_inc:
                ok = False
                witnesses.append(
                    "cells at %s do not map bijectively onto cells at %s"
                    " in dimension %d" % (xh, x, n))
    return ok


def lift_complex_map(base_cx, cover_cx, p):
    """Induced cellular map of a verified covering, with verification.

    Checks that the homotopy class partitions correspond through p
    fiberwise in both directions, that the induced map commutes with all
    face maps, and that it restricts to a bijection between the cells
    incident to each cover vertex and the cells incident to its image.
    """
    rep = check_covering(base_cx.table, cover_cx.table, p)
    if not rep.ok:
        raise NotACovering(rep.witnesses[0] if rep.witnesses
                           else "covering conditions fail")
    if base_cx.variant != cover_cx.variant:
        raise ValueError("complexes use different homotopy variants")
    witnesses = []
    bt, ct = base_cx.table, cover_cx.table
    bcl, ccl = base_cx.classes, cover_cx.classes
    img_cls = [None] * len(ct.paths)
    corr = True
    for i, w in enumerate(ct.paths):
        im = p.path_image(w)
        if len(im) > bt.bound:
            corr = False
            witnesses.append("image of %s exceeds the base table bound" % w)
            continue
        img_cls[i] = bcl.class_of(im)
    by_source = {}
    for i, w in enumerate(ct.paths):
        by_source.setdefault(w.source, []).append(i)
    for xh in ct.quiver.vertices:
        idxs = by_source.get(xh, [])
        for a in range(len(idxs)):
            for b in range(a + 1, len(idxs)):
                i, j = idxs[a], idxs[b]
                same_up = ccl.class_of_index[i] == ccl.class_of_index[j]
                same_down = img_cls[i] is not None \
                    and img_cls[i] == img_cls[j]
                if same_up != same_down:
                    corr = False
                    witnesses.append(
                        "paths %s and %s from %s are%s together upstairs"
                        " but%s downstairs"
                        % (ct.paths[i], ct.paths[j], xh,
                           "" if same_up else " not",
                           "" if same_down else " not"))
    cls_map = {cid: img_cls[ct.index[ccl.class_rep[cid]]]
               for cid in range(len(ccl))}
    cell_map, cells_ok = _induced_cell_map(cover_cx, base_cx, p.vertex,
                                           cls_map, witnesses)
    fc = _faces_commute(cover_cx, base_cx, cell_map, witnesses)
    inc = _incidence_bijections(cover_cx, base_cx, p, cell_map, witnesses)
    fibers = {}
    for n, layer in enumerate(base_cx.cells):
        row = cell_map.get(n, ())
        fibers[n] = {i: tuple(j for j, t in enumerate(row) if t == i)
                     for i in range(len(layer))}
    ok = corr and cells_ok and fc and inc
    return CellMapReport(ok=ok, class_correspondence=corr,
                         cell_map=cell_map, faces_commute=fc,
                         incidence_bijections=inc, cell_fibers=fibers,
                         witnesses=tuple(witnesses))


def deck_group(base_cx, cover_cx, p, action, base_point=None):
    """Deck maps of a Galois covering at the cell level.

    Requires a verified Galois action and a connected cover.  Builds the
    cell automorphism induced by every group element, then certifies
    regularity: the maps are pairwise distinct, the projection is
    constant on orbits, and the maps act transitively on the zero-cell
    fiber over the base point (the first base vertex unless given).
    """
    grep = check_galois(base_cx.table, cover_cx.table, p, action)
    if not grep.galois_ok:
        raise NotGalois(grep.witnesses[0] if grep.witnesses
                        else "conditions fail")
    if not cover_cx.table.quiver.is_connected():
        raise NotGalois("cover quiver is not connected")
    proj = lift_complex_map(base_cx, cover_cx, p)
    witnesses = list(proj.witnesses)
    if base_point is None:
        base_point = base_cx.table.quiver.vertices[0]
    ct = cover_cx.table
    ccl = cover_cx.classes
    maps = []
    autos = True
    compat = True
    for g in action.elements:
        # an automorphism preserves path length, so images stay in-table
        cls_map = {cid: ccl.class_of(g.path_image(ccl.class_rep[cid]))
                   for cid in range(len(ccl))}
        cmap, cok = _induced_cell_map(cover_cx, cover_cx, g.vertex,
                                      cls_map, witnesses)
        perm = all(sorted(row) == list(range(len(row)))
                   for row in cmap.values())
        fok = _faces_commute(cover_cx, cover_cx, cmap, witnesses)
        if not (cok and perm and fok):
            autos = False
            witnesses.append("a group element does not induce a cell"
                             " automorphism")
        for n, row in cmap.items():
            prow = proj.cell_map[n]
            if any(prow[row[j]] != prow[j] for j in range(len(row))
                   if row[j] >= 0):
                compat = False
                witnesses.append("projection is not constant on an orbit"
                                 " in dimension %d" % n)
                break
        maps.append(cmap)
    sigs = [tuple(sorted(m.items())) for m in maps]
    distinct = len(set(sigs)) == len(sigs)
    if not distinct:
        witnesses.append("two group elements induce the same cell map")
    fiber_cells = [i for i, c in enumerate(cover_cx.cells[0])
                   if p.vertex(c.key) == base_point]
    fiber = tuple(cover_cx.cells[0][i].key for i in fiber_cells)
    if fiber_cells:
        orbit = {m[0][fiber_cells[0]] for m in maps}
        transitive = orbit == set(fiber_cells)
    else:
        transitive = False
    if not transitive:
        witnesses.append("deck maps are not transitive on the fiber"
                         " over %s" % base_point)
    ok = proj.ok and autos and compat and distinct and transitive
    return DeckReport(ok=ok, order=len(action), maps=tuple(maps),
                      automorphisms=autos, compatible=compat,
                      distinct=distinct, transitive=transitive,
                      base_point=base_point, fiber=fiber,
                      witnesses=tuple(witnesses))
