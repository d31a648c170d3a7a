"""Labeled Brauer and walled Brauer diagram combinatorics.

Vertex and orientation conventions
----------------------------------
A diagram on n columns has top vertices 0..n-1 and bottom vertices n..2n-1
(bottom column j is vertex n+j).  Every edge is a triple (u, v, label) with
u < v, where label indexes the input-algebra basis and the edge is read as
oriented from u to v.  Traversing an edge against its orientation replaces
the label a by a*.  This normal form makes element equality syntactic; every
structural check downstream compares structure constants, not pictures, so
nothing depends on the choice.

Multiplication concatenates the bottom row of X with the top row of Y,
composes labels along every through-path in traversal order, and turns each
closed middle loop into the scalar trace of its accumulated label.  A
product of basis diagrams is in general a linear combination, because label
products expand through the structure constants of the input algebra.

Walled diagrams (``family="walled"``, n = r + t columns, wall after column
r): horizontal edges must cross the wall, vertical edges must not, and the
input algebra is the base field.

Elements of the diagram algebra are dicts {Diagram: scalar}.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple

from .algebra_kernel import algebra_from_mult_context
from .input_algebra import InputAlgebra, identity_perm


class DiagramError(ValueError):
    pass


def diagram_fin_algebra(dalg, cap=2000):
    """FinAlgebra over the diagram basis; products cached on demand."""
    kind = dalg.kind
    if kind.family == "abrauer":
        name = f"D_{kind.n}(dimA={dalg.A.dim})"
    else:
        name = f"B_{kind.wall},{kind.n - kind.wall}"
    alg = algebra_from_mult_context(dalg, cap=cap, name=name)
    alg.diagram_context = dalg
    return alg


class DiagramKind(NamedTuple):
    family: str            # "abrauer" | "walled"
    n: int                 # columns per row (r + t for walled)
    wall: int | None = None  # r, for walled

    @staticmethod
    def abrauer(n):
        return DiagramKind("abrauer", n)

    @staticmethod
    def walled(r, t):
        return DiagramKind("walled", r + t, r)


class Diagram(NamedTuple):
    edges: tuple  # sorted triples (u, v, label), u < v

    def horizontal_top(self, n):
        return tuple(e for e in self.edges if e[1] < n)

    def horizontal_bottom(self, n):
        return tuple(e for e in self.edges if e[0] >= n)

    def horizontal_count(self, n):
        """Horizontal edges per row (equal for top and bottom)."""
        return sum(1 for e in self.edges if e[1] < n)


class PartialDiagram(NamedTuple):
    n: int
    edges: tuple  # sorted triples (u, v, label) within one row, u < v

    def free(self):
        used = {w for (u, v, _) in self.edges for w in (u, v)}
        return tuple(i for i in range(self.n) if i not in used)


def _inv_power(F, delta, l):
    scale = F.one
    inv = F.inv(delta)
    for _ in range(l):
        scale = F.mul(scale, inv)
    return scale


def _elt_add_inplace(F, acc, d, c):
    s = F.add(acc.get(d, F.zero), c)
    if F.is_zero(s):
        acc.pop(d, None)
    else:
        acc[d] = s


def elt_add(F, x, y):
    out = dict(x)
    for d, c in y.items():
        _elt_add_inplace(F, out, d, c)
    return out


def elt_scale(F, c, x):
    if F.is_zero(c):
        return {}
    return {d: F.mul(c, v) for d, v in x.items()}


class DiagramAlgebra:
    """Multiplication context for one diagram family over one input algebra."""

    def __init__(self, kind: DiagramKind, A: InputAlgebra):
        self.kind = kind
        self.A = A
        self.field = A.field
        if kind.family == "walled":
            if A.dim != 1:
                raise DiagramError("walled diagrams carry no labels: input algebra must be the base field")
            if kind.wall is None or not (0 <= kind.wall <= kind.n):
                raise DiagramError("walled kind needs a wall position")
        elif kind.family != "abrauer":
            raise DiagramError(f"unknown diagram family {kind.family!r}")
        self._basis = None

    # -- structural helpers ------------------------------------------------

    def _column(self, w):
        n = self.kind.n
        return w if w < n else w - n

    def _left_of_wall(self, w):
        return self._column(w) < self.kind.wall

    def check_edge_legal(self, u, v):
        """Wall discipline: horizontal edges cross, vertical edges do not."""
        if self.kind.family != "walled":
            return True
        n = self.kind.n
        horizontal = (v < n) or (u >= n)
        crosses = self._left_of_wall(u) != self._left_of_wall(v)
        return crosses if horizontal else not crosses

    def check_diagram(self, d: Diagram):
        n = self.kind.n
        seen = set()
        for (u, v, lab) in d.edges:
            if not (0 <= u < v < 2 * n):
                raise DiagramError(f"bad edge ({u},{v})")
            if not (0 <= lab < self.A.dim):
                raise DiagramError(f"bad label {lab}")
            if u in seen or v in seen:
                raise DiagramError("not a matching")
            if not self.check_edge_legal(u, v):
                raise DiagramError(f"edge ({u},{v}) violates the wall")
            seen.update((u, v))
        if len(seen) != 2 * n:
            raise DiagramError("matching is not perfect")

    # -- basis -------------------------------------------------------------

    def basis(self):
        if self._basis is None:
            self._basis = self._enumerate_basis()
        return self._basis

    def _enumerate_basis(self):
        n = self.kind.n
        verts = tuple(range(2 * n))
        diagrams = []
        for matching in _perfect_matchings(verts):
            if self.kind.family == "walled":
                if any(not self.check_edge_legal(u, v) for (u, v) in matching):
                    continue
            for labels in itertools.product(range(self.A.dim), repeat=len(matching)):
                edges = tuple(sorted((u, v, k) for (u, v), k in zip(matching, labels)))
                diagrams.append(Diagram(edges))
        return sorted(diagrams)

    def enumerate_partials(self, l):
        """Basis of the one-row configurations with l horizontal edges."""
        n = self.kind.n
        out = []
        for matching in _partial_matchings(tuple(range(n)), l):
            if self.kind.family == "walled":
                w = self.kind.wall
                if any((u < w) == (v < w) for (u, v) in matching):
                    continue
            for labels in itertools.product(range(self.A.dim), repeat=l):
                edges = tuple(sorted((u, v, k) for (u, v), k in zip(matching, labels)))
                out.append(PartialDiagram(n, edges))
        return sorted(out)

    # -- distinguished elements ---------------------------------------------

    def identity(self):
        return self.decorated_perm_diagram(identity_perm(self.kind.n),
                                           [self.A.unit] * self.kind.n)

    def unit_vec(self):
        return self.identity()

    def decorated_perm_diagram(self, perm, label_vecs):
        """Element with strand i -> perm(i), slot i labeled by label_vecs[i]."""
        n = self.kind.n
        F = self.field
        terms = [((), F.one)]
        for vec in label_vecs:
            terms = [(ks + (k,), F.mul(c, ck)) for ks, c in terms for k, ck in vec.items()]
        out = {}
        for ks, c in terms:
            if F.is_zero(c):
                continue
            edges = tuple(sorted((i, n + perm[i], ks[i]) for i in range(n)))
            _elt_add_inplace(F, out, Diagram(edges), c)
        return out

    def swap(self, i):
        """Generator crossing columns i, i+1 (1-based i, 1 <= i <= n-1)."""
        n = self.kind.n
        if not 1 <= i <= n - 1:
            raise DiagramError(f"swap index {i} out of range")
        if self.kind.family == "walled" and i == self.kind.wall:
            raise DiagramError("swap generators may not cross the wall")
        p = list(range(n))
        p[i - 1], p[i] = p[i], p[i - 1]
        return self.decorated_perm_diagram(tuple(p), [self.A.unit] * n)

    def label_generator(self, j, k):
        """Identity matching with basis label k on strand j (1-based j)."""
        n = self.kind.n
        if not 1 <= j <= n:
            raise DiagramError(f"strand index {j} out of range")
        if self.kind.family == "walled":
            raise DiagramError("walled diagrams carry no labels")
        vecs = [self.A.unit] * n
        vecs[j - 1] = {k: self.field.one}
        return self.decorated_perm_diagram(identity_perm(n), vecs)

    def cup_generator(self, i, j=None):
        """Horizontal-edge generator.

        For the abrauer family: cups on columns i, i+1 (1-based).  For the
        walled family pass both columns (1-based, one on each side of the
        wall).
        """
        n = self.kind.n
        if self.kind.family == "abrauer":
            if not 1 <= i <= n - 1:
                raise DiagramError(f"cup index {i} out of range")
            a, b = i - 1, i
        else:
            if j is None:
                raise DiagramError("walled cup generator needs two columns")
            a, b = i - 1, j - 1
            w = self.kind.wall
            if not (0 <= a < w <= b < n):
                raise DiagramError("walled cup must have one endpoint on each side of the wall")
        return self._cup_diagram_element(((a, b),), ((a, b),))

    def _cup_diagram_element(self, top_pairs, bottom_pairs):
        """Element with given unit-labeled cups and order-preserving strands."""
        n = self.kind.n
        F = self.field
        top_used = {w for p in top_pairs for w in p}
        bot_used = {w for p in bottom_pairs for w in p}
        top_free = [i for i in range(n) if i not in top_used]
        bot_free = [i for i in range(n) if i not in bot_used]
        assert len(top_free) == len(bot_free)
        parts = []
        for (u, v) in top_pairs:
            parts.append((u, v))
        for (u, v) in bottom_pairs:
            parts.append((n + u, n + v))
        for u, v in zip(top_free, bot_free):
            parts.append((u, n + v))
        terms = [((), F.one)]
        for _ in parts:
            terms = [(ks + (k,), F.mul(c, ck)) for ks, c in terms for k, ck in self.A.unit.items()]
        out = {}
        for ks, c in terms:
            if F.is_zero(c):
                continue
            edges = tuple(sorted((u, v, k) for (u, v), k in zip(parts, ks)))
            d = Diagram(edges)
            self.check_diagram(d)
            _elt_add_inplace(F, out, d, c)
        return out

    def layer_idempotent(self, l):
        """The idempotent with l cups.

        For invertible delta: identical nested (walled) or adjacent (abrauer)
        cups top and bottom, prefactor delta^{-l}.  For delta = 0 the bottom
        cups are shifted by one column against the top cups and a single
        slanted strand closes the pattern, so squaring produces a single
        zig-zag chain instead of closed loops; no prefactor is needed.
        """
        n = self.kind.n
        F = self.field
        if l == 0:
            return self.identity()
        delta = self.A.delta()
        if self.kind.family == "abrauer":
            if not 0 <= l <= n // 2:
                raise DiagramError(f"layer {l} out of range")
            if not F.is_zero(delta):
                cups = tuple((n - 2 * l + 2 * i, n - 2 * l + 2 * i + 1) for i in range(l))
                return elt_scale(F, _inv_power(F, delta, l),
                                 self._cup_diagram_element(cups, cups))
            if n % 2 == 0:
                raise DiagramError("delta = 0 with an even number of strands is excluded")
            top = tuple((n - 2 * l + 2 * i, n - 2 * l + 2 * i + 1) for i in range(l))
            bottom = tuple((n - 2 * l - 1 + 2 * i, n - 2 * l + 2 * i) for i in range(l))
            return self._shifted_cup_element(top, bottom,
                                             strand=(n - 2 * l - 1, n - 1))
        # walled
        r = self.kind.wall
        t = n - r
        if not 0 <= l <= min(r, t):
            raise DiagramError(f"layer {l} out of range")
        top = tuple((r - l + i, r + l - 1 - i) for i in range(l))
        if not F.is_zero(delta):
            return elt_scale(F, _inv_power(F, delta, l),
                             self._cup_diagram_element(top, top))
        if l < t:
            bottom = tuple((r - l + i, r + l - i) for i in range(l))
            strand = (r + l, r)
        elif l < r:
            bottom = tuple((r - l - 1 + i, r + l - 1 - i) for i in range(l))
            strand = (r - l - 1, r - 1)
        else:
            raise DiagramError("delta = 0 idempotent needs a free column "
                               "(one of r, t must exceed the layer)")
        return self._shifted_cup_element(top, bottom, strand=strand)

    def _shifted_cup_element(self, top_pairs, bottom_pairs, strand):
        """Delta = 0 idempotent: cups plus one slanted strand, rest vertical."""
        n = self.kind.n
        top_used = {w for p in top_pairs for w in p} | {strand[0]}
        bot_used = {w for p in bottom_pairs for w in p} | {strand[1]}
        top_free = [i for i in range(n) if i not in top_used]
        bot_free = [i for i in range(n) if i not in bot_used]
        assert top_free == bot_free, "delta=0 idempotent: verticals must align"
        u0 = self.A.unit_basis_index()
        if u0 is None:
            raise DiagramError("delta = 0 idempotent needs the unit as a basis label")
        edges = [(u, v, u0) for (u, v) in top_pairs]
        edges += [(n + u, n + v, u0) for (u, v) in bottom_pairs]
        edges.append((strand[0], n + strand[1], u0))
        edges += [(i, n + i, u0) for i in top_free]
        d = Diagram(tuple(sorted(edges)))
        self.check_diagram(d)
        return {d: self.field.one}

    # -- multiplication ------------------------------------------------------

    def mul_diagrams(self, d1: Diagram, d2: Diagram):
        """Product of two basis diagrams as an element dict."""
        n = self.kind.n
        F = self.field
        A = self.A
        # concatenated vertex ids: top 0..n-1, middle n..2n-1, bottom 2n..3n-1
        edges = list(d1.edges) + [(u + n, v + n, k) for (u, v, k) in d2.edges]
        adj = {}
        for idx, (u, v, _) in enumerate(edges):
            adj.setdefault(u, []).append(idx)
            adj.setdefault(v, []).append(idx)

        visited = [False] * len(edges)

        def label_of(edge_idx, forward):
            k = edges[edge_idx][2]
            return {k: F.one} if forward else A.involve_basis(k)

        def walk(start, edge_idx):
            cur = start
            acc = None
            while True:
                u, v, _ = edges[edge_idx]
                visited[edge_idx] = True
                forward = cur == u
                nxt = v if forward else u
                lab = label_of(edge_idx, forward)
                acc = lab if acc is None else A.mul_vec(acc, lab)
                if nxt < n or nxt >= 2 * n:
                    return nxt, acc
                options = [e for e in adj[nxt] if e != edge_idx]
                if not options:
                    return nxt, acc
                edge_idx = options[0]
                cur = nxt

        paths = []
        scalar = F.one
        for i in range(n):
            if not visited[adj[i][0]]:
                end, acc = walk(i, adj[i][0])
                paths.append((i, end, acc))
        for i in range(2 * n, 3 * n):
            if not visited[adj[i][0]]:
                end, acc = walk(i, adj[i][0])
                paths.append((i, end, acc))
        for m in range(n, 2 * n):
            pending = [e for e in adj[m] if not visited[e]]
            if not pending:
                continue
            first = min(pending)
            cur = m
            acc = None
            edge_idx = first
            while True:
                u, v, _ = edges[edge_idx]
                visited[edge_idx] = True
                forward = cur == u
                nxt = v if forward else u
                lab = label_of(edge_idx, forward)
                acc = lab if acc is None else A.mul_vec(acc, lab)
                if nxt == m:
                    break
                edge_idx = [e for e in adj[nxt] if e != edge_idx][0]
                cur = nxt
            scalar = F.mul(scalar, A.trace_vec(acc))
            if F.is_zero(scalar):
                return {}

        def to_result(w):
            return w if w < n else w - n

        terms = [((), scalar)]
        result_edges = []
        for (a, b, acc) in paths:
            u, v = to_result(a), to_result(b)
            assert u < v, "walks must start at the canonical endpoint"
            result_edges.append((u, v))
            terms = [(ks + (k,), F.mul(c, ck)) for ks, c in terms for k, ck in acc.items()]
        out = {}
        for ks, c in terms:
            if F.is_zero(c):
                continue
            es = tuple(sorted((u, v, k) for (u, v), k in zip(result_edges, ks)))
            _elt_add_inplace(F, out, Diagram(es), c)
        return out

    def mul_basis_keys(self, d1, d2):
        return self.mul_diagrams(d1, d2)

    def mul(self, x, y):
        F = self.field
        out = {}
        for d1, c1 in x.items():
            for d2, c2 in y.items():
                c = F.mul(c1, c2)
                if F.is_zero(c):
                    continue
                for d, v in self.mul_diagrams(d1, d2).items():
                    _elt_add_inplace(F, out, d, F.mul(c, v))
        return out

    # -- involution ----------------------------------------------------------

    def involution_key(self, d: Diagram):
        """Flip across the horizontal axis and star the labels."""
        n = self.kind.n
        F = self.field

        def flip(w):
            return w + n if w < n else w - n

        parts = []
        for (u, v, k) in d.edges:
            a, b = flip(u), flip(v)
            if a < b:
                parts.append(((a, b), {k: F.one}))
            else:
                parts.append(((b, a), self.A.involve_basis(k)))
        terms = [((), F.one)]
        for _, vec in parts:
            terms = [(ks + (k,), F.mul(c, ck)) for ks, c in terms for k, ck in vec.items()]
        out = {}
        for ks, c in terms:
            if F.is_zero(c):
                continue
            es = tuple(sorted((u, v, k) for ((u, v), _), k in zip(parts, ks)))
            _elt_add_inplace(F, out, Diagram(es), c)
        return out

    def involution(self, x):
        F = self.field
        out = {}
        for d, c in x.items():
            for d2, v in self.involution_key(d).items():
                _elt_add_inplace(F, out, d2, F.mul(c, v))
        return out

    # -- layer structure -------------------------------------------------------

    def layer_bound(self):
        if self.kind.family == "abrauer":
            return self.kind.n // 2
        return min(self.kind.wall, self.kind.n - self.kind.wall)

    def truncate_above_layer(self, x, l):
        """Kill every diagram with more than l horizontal edges (mod J_{l+1})."""
        n = self.kind.n
        return {d: c for d, c in x.items() if d.horizontal_count(n) <= l}

    def layer_basis(self, l):
        n = self.kind.n
        return [d for d in self.basis() if d.horizontal_count(n) == l]

    def layer_factorize(self, d: Diagram):
        """Split an exactly-l-edge diagram into (top, bottom, wreath key).

        Free vertices are renumbered left to right on each row; the wreath
        key is (label tuple, perm tuple) with the label attached at the top
        slot of its strand.
        """
        n = self.kind.n
        tops, bottoms, strands = [], [], []
        for (u, v, k) in d.edges:
            if v < n:
                tops.append((u, v, k))
            elif u >= n:
                bottoms.append((u - n, v - n, k))
            else:
                strands.append((u, v - n, k))
        top = PartialDiagram(n, tuple(sorted(tops)))
        bottom = PartialDiagram(n, tuple(sorted(bottoms)))
        top_pos = {w: i for i, w in enumerate(top.free())}
        bot_pos = {w: i for i, w in enumerate(bottom.free())}
        m = len(top_pos)
        perm = [0] * m
        labels = [0] * m
        for (u, w, k) in strands:
            perm[top_pos[u]] = bot_pos[w]
            labels[top_pos[u]] = k
        return top, bottom, (tuple(labels), tuple(perm))

    def layer_assemble_key(self, top: PartialDiagram, bottom: PartialDiagram, key):
        labels, perm = key
        n = self.kind.n
        tf, bf = top.free(), bottom.free()
        edges = list(top.edges)
        edges += [(n + u, n + v, k) for (u, v, k) in bottom.edges]
        edges += [(tf[i], n + bf[perm[i]], labels[i]) for i in range(len(perm))]
        return Diagram(tuple(sorted(edges)))

    def layer_assemble(self, top, bottom, wreath_vec):
        """Linear extension of assembly over a wreath-algebra element."""
        F = self.field
        out = {}
        for key, c in wreath_vec.items():
            _elt_add_inplace(F, out, self.layer_assemble_key(top, bottom, key), c)
        return out

    # -- FinAlgebra glue --------------------------------------------------------

    def label(self, d: Diagram):
        return format_diagram(self, d)

    def generator_elements(self):
        gens = []
        n = self.kind.n
        if self.kind.family == "abrauer":
            for i in range(1, n):
                gens.append(self.swap(i))
                gens.append(self.cup_generator(i))
            if self.A.dim > 1 and n >= 1:
                for k in range(self.A.dim):
                    gens.append(self.label_generator(1, k))
        else:
            r = self.kind.wall
            for i in range(1, n):
                if i != r:
                    gens.append(self.swap(i))
            if min(r, n - r) >= 1:
                gens.append(self.cup_generator(r, r + 1))
        return gens


def _kind_suffix(kind: DiagramKind) -> str:
    if kind.family == "abrauer":
        return f"abrauer({kind.n})"
    return f"walled({kind.wall},{kind.n - kind.wall})"


def format_diagram(dalg: DiagramAlgebra, d: Diagram) -> str:
    """Text form ``[(t1,b1,label,+),...] @ kind(params)``; edges are listed in
    canonical orientation, so the direction flag is always ``+`` on output."""
    n = dalg.kind.n

    def vname(w):
        return f"t{w + 1}" if w < n else f"b{w - n + 1}"

    body = ",".join(f"({vname(u)},{vname(v)},{dalg.A.basis_labels[k]},+)"
                    for (u, v, k) in d.edges)
    return f"[{body}] @ {_kind_suffix(dalg.kind)}"


def parse_diagram(dalg: DiagramAlgebra, text: str) -> Diagram:
    """Inverse of format_diagram; a ``-`` direction flag stars the label while
    normalizing (only basis-permuting involutions can be parsed)."""
    body, _, kind_part = text.partition("@")
    if kind_part.strip() != _kind_suffix(dalg.kind):
        raise DiagramError(f"diagram is for {kind_part.strip()!r}, "
                           f"context is {_kind_suffix(dalg.kind)!r}")
    n = dalg.kind.n
    label_index = {name: i for i, name in enumerate(dalg.A.basis_labels)}

    def vidx(name):
        name = name.strip()
        row, col = name[0], int(name[1:]) - 1
        if row not in "tb" or not 0 <= col < n:
            raise DiagramError(f"bad vertex {name!r}")
        return col if row == "t" else n + col

    edges = []
    body = body.strip().strip("[]").strip()
    if body:
        for chunk in body.split("),"):
            parts = chunk.strip().strip("()").split(",")
            if len(parts) != 4:
                raise DiagramError(f"bad edge {chunk!r}")
            u, v = vidx(parts[0]), vidx(parts[1])
            lab = label_index.get(parts[2].strip())
            if lab is None:
                raise DiagramError(f"unknown label {parts[2].strip()!r}")
            direction = parts[3].strip()
            if direction not in "+-":
                raise DiagramError(f"bad direction flag {direction!r}")
            flip = (direction == "-") != (u > v)
            if flip:
                starred = dalg.A.involve_basis(lab)
                if len(starred) != 1:
                    raise DiagramError("cannot normalize a non-monomial starred label")
                (lab, coeff), = starred.items()
                if coeff != dalg.field.one:
                    raise DiagramError("cannot normalize a scaled starred label")
            edges.append((min(u, v), max(u, v), lab))
    d = Diagram(tuple(sorted(edges)))
    dalg.check_diagram(d)
    return d


def _perfect_matchings(verts):
    if not verts:
        yield ()
        return
    a = verts[0]
    for i in range(1, len(verts)):
        b = verts[i]
        rest = verts[1:i] + verts[i + 1:]
        for m in _perfect_matchings(rest):
            yield ((a, b),) + m


def _partial_matchings(verts, l):
    """Matchings with exactly l edges on the given vertex tuple."""
    if l == 0:
        yield ()
        return
    if len(verts) < 2 * l:
        return
    a = verts[0]
    rest0 = verts[1:]
    # a stays free
    yield from _partial_matchings(rest0, l)
    # a pairs with some later vertex
    for i in range(len(rest0)):
        b = rest0[i]
        rest = rest0[:i] + rest0[i + 1:]
        for m in _partial_matchings(rest, l - 1):
            yield ((a, b),) + m
