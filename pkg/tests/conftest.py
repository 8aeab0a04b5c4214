"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import random
from itertools import product

from quiver_schubert.linalg import column_echelon_max_pivot, mat_vec_mod
from quiver_schubert.quiver import QuiverMorphism, disjoint_union, quiver, subquiver
from quiver_schubert.representation import (
    OrderedBasis,
    Representation,
    order_above_extension,
    representation,
)


def fold_winding(rep: Representation, s_vertices):
    """T + T folded back onto T, with basis ordered above S + S.

    Returns (module upstairs, subquiver S', fold morphism).
    """
    t = rep.quiver
    u, _, _ = disjoint_union(t, t)
    order, vertex_of, mats = [], {}, {}
    for suf in ("", "'"):
        for b in rep.basis.order:
            order.append(b + suf)
            vertex_of[b + suf] = rep.basis.vertex_of[b] + suf
        for a in t.arrows:
            mats[a.name + suf] = rep.matrices[a.name]
    upstairs = Representation(u, OrderedBasis(tuple(order), vertex_of), mats)
    s = subquiver(u, [v + suf for v in s_vertices for suf in ("", "'")])
    upstairs = order_above_extension(upstairs, s)
    fold = QuiverMorphism(
        u,
        t,
        {v: v.rstrip("'") for v in u.vertices},
        {a.name: a.name.rstrip("'") for a in u.arrows},
    )
    return upstairs, s, fold


def random_tree_extension(seed: int, max_total_dim: int = 10):
    """Seeded tree extension (M over T, S) with identity matrices on T-S.

    S is one vertex or a two-vertex arrow with a random 0/1 matrix; the
    extension ranks follow the attachment vertex since T-S arrows carry
    identity matrices.
    """
    rng = random.Random(seed)
    if rng.random() < 0.5:
        s_verts = ["s1"]
        s_arrows = []
    else:
        s_verts = ["s1", "s2"]
        s_arrows = [("sa", "s1", "s2")]
    base_rank = {v: rng.randint(1, 2) for v in s_verts}
    extra = rng.randint(1, 4)
    verts = list(s_verts)
    arrows = list(s_arrows)
    rank = dict(base_rank)
    for i in range(extra):
        v = f"x{i}"
        anchor = rng.choice(verts)
        pair = (anchor, v) if rng.random() < 0.5 else (v, anchor)
        arrows.append((f"e{i}", pair[0], pair[1]))
        rank[v] = rank[anchor]
        verts.append(v)
        if sum(rank.values()) + 2 > max_total_dim:
            break
    q = quiver(verts, arrows)
    order, vertex_of = [], {}
    idx = 0
    for v in verts:
        for _ in range(rank[v]):
            idx += 1
            order.append(f"b{idx}")
            vertex_of[f"b{idx}"] = v
    basis = OrderedBasis(tuple(order), vertex_of)
    mats = {}
    for name, src, tgt in arrows:
        if name == "sa":
            mats[name] = [
                [rng.randint(0, 1) for _ in range(rank[src])] for _ in range(rank[tgt])
            ]
        else:
            mats[name] = [
                [1 if i == j else 0 for j in range(rank[src])] for i in range(rank[tgt])
            ]
    rep = representation(q, basis, mats)
    s = subquiver(rep.quiver, s_verts, [a for a, _, _ in s_arrows])
    rep = order_above_extension(rep, s)
    e = {v: rng.randint(0, rank[v]) for v in verts}
    return rep, s, e


def independent_total(rep: Representation, e, q: int) -> int:
    """Subrepresentation count by raw matrix enumeration (no charts).

    Enumerates every generator matrix over F_q per vertex, canonicalises
    spans, dedupes, and filters by arrow containment checked through a
    direct membership test.  Only viable for tiny instances.
    """
    spaces = {}
    for v in rep.quiver.vertices:
        m = rep.rank(v)
        ev = e.get(v, 0)
        seen = {}
        for entries in product(range(q), repeat=m * ev):
            cols = [[entries[r * ev + j] for r in range(m)] for j in range(ev)]
            canon, pivots = column_echelon_max_pivot(cols, q)
            if len(pivots) != ev:
                continue
            key = tuple(canon)
            seen[key] = canon
        spaces[v] = list(seen.values())

    def member(cols, vec):
        if not cols:
            return all(x % q == 0 for x in vec)
        coeff_sets = product(range(q), repeat=len(cols))
        for coeffs in coeff_sets:
            if all(
                sum(c * col[r] for c, col in zip(coeffs, cols)) % q == vec[r] % q
                for r in range(len(vec))
            ):
                return True
        return False

    total = 0
    for combo in product(*[spaces[v] for v in rep.quiver.vertices]):
        assignment = dict(zip(rep.quiver.vertices, combo))
        ok = True
        for a in rep.quiver.arrows:
            for col in assignment[a.src]:
                img = mat_vec_mod(rep.matrices[a.name], col, q)
                if not member(assignment[a.tgt], img):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            total += 1
    return total


def chart_coordinates(rep: Representation, beta, matrices, ambient_vertex_of=None):
    """Free-coordinate dict of a cell point from its per-vertex echelon matrices."""
    beta_set = beta.as_set()
    coords = {}
    for v in rep.quiver.vertices:
        block = rep.basis.block(v)
        pivots = [b for b in block if b in beta_set]
        mat = matrices[v]
        for j, bcol in enumerate(pivots):
            for i, brow in enumerate(block):
                if brow in beta_set:
                    continue
                if rep.basis.position(brow) < rep.basis.position(bcol):
                    coords[(brow, bcol)] = mat[i][j]
    return coords


def random_winding(seed: int, domain=None):
    """Seeded quiver morphism that is a winding, built by greedy arrow packing.

    Colours vertices at random and packs same-coloured arrows into fibres
    as long as no source or target repeats; `domain` defaults to a random
    quiver, so windings can be stacked for composition tests.
    """
    rng = random.Random(seed)
    if domain is None:
        n = rng.randint(3, 6)
        verts = [f"v{i}" for i in range(n)]
        arrows = []
        for i in range(rng.randint(2, 6)):
            arrows.append((f"a{i}", rng.choice(verts), rng.choice(verts)))
        t = quiver(verts, arrows)
    else:
        t = domain
    n = len(t.vertices)
    ncolors = rng.randint(1, n)
    color = {v: f"c{rng.randrange(ncolors)}" for v in t.vertices}
    classes: list[tuple[str, list]] = []
    arrow_map = {}
    for a in t.arrows:
        placed = False
        for name, members in classes:
            first = members[0]
            if (color[first.src], color[first.tgt]) != (color[a.src], color[a.tgt]):
                continue
            if any(m.src == a.src or m.tgt == a.tgt for m in members):
                continue
            members.append(a)
            arrow_map[a.name] = name
            placed = True
            break
        if not placed:
            name = f"A{len(classes)}"
            classes.append((name, [a]))
            arrow_map[a.name] = name
    codomain = quiver(
        sorted(set(color.values())),
        [(name, color[members[0].src], color[members[0].tgt]) for name, members in classes],
    )
    return QuiverMorphism(t, codomain, color, arrow_map)
