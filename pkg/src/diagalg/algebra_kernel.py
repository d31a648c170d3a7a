"""Generic finite-dimensional algebra and module engine.

Conventions, fixed globally:

* Modules are RIGHT modules.  Module elements are row vectors (sparse dicts)
  and a matrix acts from the right, so ``rho(x*y) = rho(x) * rho(y)``.
* A map of modules f: M -> N is a matrix F with v |-> v*F; composition of
  M -> N -> P is the matrix product F*G.
* In a bimodule the left action is stored as row matrices as well, which
  makes it anti-homomorphic: ``L(x*y) = L(y) * L(x)``; left and right action
  matrices commute elementwise.

Algebras are given by structure constants over an exact field.  Products of
basis pairs are computed on demand and cached, so large diagram algebras can
be used without materializing the full multiplication table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import (
    Echelon,
    identity_rows,
    invert_rows,
    kernel_basis,
    vec_scale,
    vec_scaled_add,
    vec_times_rows,
)


class AlgebraError(ValueError):
    pass


class FinAlgebra:
    """Associative unital algebra with a distinguished basis.

    ``pair_mul(i, j)`` returns the structure-constant vector of b_i * b_j;
    results are cached.  ``involution_rows``, if present, is the matrix of an
    anti-automorphism squaring to the identity.  ``generators`` is an optional
    list of element vectors that together with the unit generate the algebra;
    intertwining solvers use it to shrink equation systems.
    """

    def __init__(self, field, labels, unit, pair_mul, involution_rows=None,
                 generators=None, name=""):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.unit = dict(unit)
        self._pair_mul = pair_mul
        self._cache = {}
        self.involution_rows = involution_rows
        self.generators = generators
        self.name = name

    def __repr__(self):
        return f"FinAlgebra({self.name or 'dim %d' % self.dim})"

    def mul_basis(self, i, j):
        key = (i, j)
        got = self._cache.get(key)
        if got is None:
            got = self._pair_mul(i, j)
            self._cache[key] = got
        return got

    def mul(self, u, v):
        F = self.field
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                c = F.mul(a, b)
                if F.is_zero(c):
                    continue
                out = vec_scaled_add(F, out, c, self.mul_basis(i, j))
        return out

    def involve(self, v):
        if self.involution_rows is None:
            raise AlgebraError("algebra carries no involution")
        return vec_times_rows(self.field, v, self.involution_rows)

    def basis_vec(self, i):
        return {i: self.field.one}

    def element_from_int_coeffs(self, coeffs):
        F = self.field
        return {i: F.from_int(c) for i, c in coeffs.items() if not F.is_zero(F.from_int(c))}

    def check_unital(self):
        for i in range(self.dim):
            b = self.basis_vec(i)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                return i
        return None

    def check_associative(self, exhaustive_limit=120, samples=1000, seed=0):
        """Witness triple (i, j, k) violating associativity, or None.

        Exhaustive below the dimension limit, seeded random sampling above.
        """
        n = self.dim
        if n <= exhaustive_limit:
            triples = ((i, j, k) for i in range(n) for j in range(n) for k in range(n))
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(samples))
        for i, j, k in triples:
            lhs = self.mul(self.mul_basis(i, j), self.basis_vec(k))
            rhs = self.mul(self.basis_vec(i), self.mul_basis(j, k))
            if lhs != rhs:
                return (i, j, k)
        return None

    def check_involution(self):
        """Witness that * is not an involutory anti-automorphism, or None."""
        rows = self.involution_rows
        F = self.field
        for i in range(self.dim):
            twice = vec_times_rows(F, rows[i], rows)
            if twice != self.basis_vec(i):
                return ("square", i)
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = self.involve(self.mul_basis(i, j))
                rhs = self.mul(self.involve(self.basis_vec(j)), self.involve(self.basis_vec(i)))
                if lhs != rhs:
                    return ("antihom", i, j)
        return None


def algebra_from_table(field, labels, unit, table, involution_rows=None,
                       generators=None, name=""):
    """FinAlgebra from an explicit {(i, j): vec} structure-constant table."""
    def pair_mul(i, j):
        return table.get((i, j), {})
    return FinAlgebra(field, labels, unit, pair_mul, involution_rows, generators, name)


def algebra_from_mult_context(ctx, cap=2000, name=""):
    """FinAlgebra over the basis of a multiplication context.

    ``ctx`` provides ``field``, ``basis()`` (canonical list of hashable keys),
    ``mul_basis_keys(x, y) -> {key: scalar}``, ``unit_vec() -> {key: scalar}``
    and optionally ``involution_key(x)``, ``generator_elements()``.
    """
    basis = ctx.basis()
    if len(basis) > cap:
        raise AlgebraError(f"dimension {len(basis)} exceeds cap {cap}")
    index = {k: i for i, k in enumerate(basis)}

    def to_vec(d):
        return {index[k]: c for k, c in d.items()}

    def pair_mul(i, j):
        return to_vec(ctx.mul_basis_keys(basis[i], basis[j]))

    invo = None
    if hasattr(ctx, "involution_key"):
        invo = [to_vec(ctx.involution_key(k)) for k in basis]
    gens = None
    if hasattr(ctx, "generator_elements"):
        gens = [to_vec(g) for g in ctx.generator_elements()]
    labels = [ctx.label(k) for k in basis] if hasattr(ctx, "label") else [str(k) for k in basis]
    alg = FinAlgebra(ctx.field, labels, to_vec(ctx.unit_vec()), pair_mul, invo, gens, name)
    alg.basis_keys = basis
    alg.key_index = index
    return alg


class RightModule:
    """Right module given by one action matrix per algebra basis element."""

    def __init__(self, algebra, dim, action, name=""):
        self.algebra = algebra
        self.dim = dim
        self.action = action  # action[b] = list of dim row dicts
        self.name = name

    def __repr__(self):
        return f"RightModule({self.name or ''} dim {self.dim} over {self.algebra.name or self.algebra.dim})"

    def act_basis(self, v, b):
        return vec_times_rows(self.algebra.field, v, self.action[b])

    def act(self, v, a_vec):
        F = self.algebra.field
        out = {}
        for b, c in a_vec.items():
            out = vec_scaled_add(F, out, c, self.act_basis(v, b))
        return out

    def action_rows(self, a_vec):
        F = self.algebra.field
        rows = [{} for _ in range(self.dim)]
        for b, c in a_vec.items():
            for i, row in enumerate(self.action[b]):
                rows[i] = vec_scaled_add(F, rows[i], c, row)
        return rows

    def check(self, pairs=None):
        """Witness that the action is not a unital right action, or None."""
        alg = self.algebra
        F = alg.field
        id_rows = identity_rows(F, self.dim)
        if self.action_rows(alg.unit) != id_rows:
            return ("unit",)
        if pairs is None:
            pairs = [(i, j) for i in range(alg.dim) for j in range(alg.dim)]
        for i, j in pairs:
            prod = alg.mul_basis(i, j)
            lhs = self.action_rows(prod)
            rhs = [self.act(self.action[i][k], {j: F.one}) for k in range(self.dim)]
            if lhs != rhs:
                return ("compose", i, j)
        return None


def regular_module(alg):
    action = []
    for b in range(alg.dim):
        action.append([alg.mul_basis(i, b) for i in range(alg.dim)])
    return RightModule(alg, alg.dim, action, name="regular")


def free_module(alg, rank):
    """Free right module of the given rank, coordinates (g, i) -> g*dim + i."""
    d = alg.dim
    action = []
    for b in range(d):
        rows = []
        for g in range(rank):
            for i in range(d):
                rows.append({g * d + j: c for j, c in alg.mul_basis(i, b).items()})
        action.append(rows)
    return RightModule(alg, rank * d, action, name=f"free^{rank}")


def zero_module(alg):
    return RightModule(alg, 0, [[] for _ in range(alg.dim)], name="0")


class ModuleMap:
    def __init__(self, source, target, rows):
        self.source = source
        self.target = target
        self.rows = rows  # source.dim row dicts over target coordinates

    def apply(self, v):
        return vec_times_rows(self.source.algebra.field, v, self.rows)

    def compose(self, other):
        """self then other (source -> self.target == other.source -> other.target)."""
        F = self.source.algebra.field
        return ModuleMap(self.source, other.target,
                         [vec_times_rows(F, r, other.rows) for r in self.rows])

    def is_module_map(self):
        F = self.source.algebra.field
        alg = self.source.algebra
        gens = _generating_vectors(alg)
        for g in gens:
            for i in range(self.source.dim):
                lhs = self.apply(self.source.act({i: F.one}, g))
                rhs = self.target.act(self.rows[i], g)
                if lhs != rhs:
                    return False
        return True

    def image_rank(self):
        ech = Echelon(self.source.algebra.field)
        for r in self.rows:
            ech.insert(r)
        return ech.dim

    def is_iso(self):
        return (self.source.dim == self.target.dim
                and invert_rows(self.source.algebra.field, self.rows) is not None)

    def inverse(self):
        inv = invert_rows(self.source.algebra.field, self.rows)
        if inv is None:
            raise AlgebraError("map is not invertible")
        return ModuleMap(self.target, self.source, inv)


def _generating_vectors(alg):
    """Vectors whose unital span is the whole algebra (falls back to the basis)."""
    if alg.generators is not None:
        return alg.generators
    return [alg.basis_vec(i) for i in range(alg.dim)]


def generated_subalgebra_dim(alg, gens=None):
    """Dimension of the unital subalgebra generated by the given elements."""
    F = alg.field
    gens = list(gens) if gens is not None else _generating_vectors(alg)
    ech = Echelon(F)
    ech.insert(dict(alg.unit))
    frontier = [dict(alg.unit)]
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                for prod in (alg.mul(v, g), alg.mul(g, v)):
                    red = ech.reduce(prod)
                    if red:
                        ech.insert(prod)
                        new.append(prod)
        frontier = new
    return ech.dim


def hom_space(M, N):
    """Basis of Hom over the common algebra, found by linear solving."""
    if M.algebra is not N.algebra and M.algebra.dim != N.algebra.dim:
        raise AlgebraError("modules live over different algebras")
    alg = M.algebra
    F = alg.field
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return []
    eqs = []
    for g in _generating_vectors(alg):
        rm = M.action_rows(g)
        rn = N.action_rows(g)
        rn_cols = [{} for _ in range(n)]
        for k, row in enumerate(rn):
            for j, c in row.items():
                rn_cols[j][k] = c
        for i in range(m):
            for j in range(n):
                eq = {}
                for k, c in rm[i].items():
                    eq[k * n + j] = c
                for k, c in rn_cols[j].items():
                    prev = eq.get(i * n + k, F.zero)
                    s = F.sub(prev, c)
                    if F.is_zero(s):
                        eq.pop(i * n + k, None)
                    else:
                        eq[i * n + k] = s
                if eq:
                    eqs.append(eq)
    sols = kernel_basis(F, eqs, m * n)
    maps = []
    for x in sols:
        rows = [{} for _ in range(m)]
        for flat, c in x.items():
            rows[flat // n][flat % n] = c
        maps.append(ModuleMap(M, N, rows))
    return maps


def find_isomorphism(M, N, seed=0, tries=80):
    """Invertible module map M -> N, or None; searched inside hom_space."""
    if M.dim != N.dim:
        return None
    basis = hom_space(M, N)
    for h in basis:
        if h.is_iso():
            return h
    F = M.algebra.field
    rng = random.Random(seed)
    span = list(range(len(basis)))
    for _ in range(tries):
        rows = [{} for _ in range(M.dim)]
        for t in span:
            c = F.from_int(rng.randint(-2, 2))
            if F.is_zero(c):
                continue
            for i in range(M.dim):
                rows[i] = vec_scaled_add(F, rows[i], c, basis[t].rows[i])
        cand = ModuleMap(M, N, rows)
        if cand.is_iso():
            return cand
    return None


def direct_sum(M, N):
    alg = M.algebra
    F = alg.field
    action = []
    for b in range(alg.dim):
        rows = [dict(r) for r in M.action[b]]
        rows += [{j + M.dim: c for j, c in r.items()} for r in N.action[b]]
        action.append(rows)
    return RightModule(alg, M.dim + N.dim, action, name=f"{M.name}+{N.name}")


def submodule(M, vectors, name="sub"):
    """Submodule spanned by the given vectors (must be action-stable).

    Returns (module, inclusion map).
    """
    alg = M.algebra
    F = alg.field
    ech = Echelon(F)
    for v in vectors:
        ech.insert(v)
    rows = ech.basis_rows()
    pivot_pos = {p: t for t, p in enumerate(ech.pivots())}
    action = []
    for b in range(alg.dim):
        mats = []
        for r in rows:
            img = M.act_basis(r, b)
            coords = ech.coordinates(img)
            if coords is None:
                raise AlgebraError("span is not action-stable")
            mats.append({pivot_pos[p]: c for p, c in coords.items()})
        action.append(mats)
    sub = RightModule(alg, len(rows), action, name=name)
    incl = ModuleMap(sub, M, rows)
    return sub, incl


def quotient_module(M, vectors, name="quot"):
    """Quotient of M by the action-stable span of the vectors.

    Returns (module, projection map).
    """
    alg = M.algebra
    F = alg.field
    ech = Echelon(F)
    for v in vectors:
        ech.insert(v)
    keep = [j for j in range(M.dim) if j not in ech.rows]
    pos = {j: t for t, j in enumerate(keep)}

    def project(v):
        red = ech.reduce(v)
        out = {}
        for j, c in red.items():
            if j not in pos:
                raise AlgebraError("span is not action-stable")
            out[pos[j]] = c
        return out

    action = []
    for b in range(alg.dim):
        action.append([project(M.act_basis({j: F.one}, b)) for j in keep])
    quot = RightModule(alg, len(keep), action, name=name)
    proj = ModuleMap(M, quot, [project({i: F.one}) for i in range(M.dim)])
    return quot, proj


def ideal_span(alg, gen_vectors):
    """Echelon basis of the two-sided ideal generated by the given elements."""
    F = alg.field
    ech = Echelon(F)
    frontier = []
    for g in gen_vectors:
        if ech.insert(dict(g)) is not None:
            frontier.append(dict(g))
    while frontier:
        new = []
        for v in frontier:
            for i in range(alg.dim):
                b = alg.basis_vec(i)
                for prod in (alg.mul(b, v), alg.mul(v, b)):
                    if ech.reduce(prod):
                        ech.insert(prod)
                        new.append(prod)
        frontier = new
    return ech


def is_two_sided_ideal(alg, ech, samples=None, seed=0):
    """Check closure of the echelon span under basis multiplication.

    Exhaustive when samples is None, else that many seeded random pairs.
    Returns a witness (side, i, pivot) or None.
    """
    rows = ech.basis_rows()
    pivs = ech.pivots()
    if samples is None:
        pairs = [(i, t) for i in range(alg.dim) for t in range(len(rows))]
    else:
        rng = random.Random(seed)
        pairs = [(rng.randrange(alg.dim), rng.randrange(len(rows)))
                 for _ in range(samples)] if rows else []
    for i, t in pairs:
        b = alg.basis_vec(i)
        if not ech.contains(alg.mul(b, rows[t])):
            return ("left", i, pivs[t])
        if not ech.contains(alg.mul(rows[t], b)):
            return ("right", i, pivs[t])
    return None


def quotient_algebra(alg, ideal_ech, name=""):
    """Quotient by a two-sided ideal; returns (algebra, projection rows).

    The quotient basis is indexed by the non-pivot coordinates of the ideal.
    """
    F = alg.field
    keep = [j for j in range(alg.dim) if j not in ideal_ech.rows]
    pos = {j: t for t, j in enumerate(keep)}

    def project(v):
        red = ideal_ech.reduce(v)
        return {pos[j]: c for j, c in red.items()}

    witness = is_two_sided_ideal(alg, ideal_ech,
                                 samples=None if alg.dim <= 200 else 1000)
    if witness is not None:
        raise AlgebraError(f"not a two-sided ideal: witness {witness}")

    def pair_mul(i, j):
        return project(alg.mul_basis(keep[i], keep[j]))

    labels = [alg.labels[j] for j in keep]
    quot = FinAlgebra(F, labels, project(alg.unit), pair_mul, name=name or f"{alg.name}/I")
    if alg.generators is not None:
        quot.generators = [project(g) for g in alg.generators]
    proj_rows = [project({i: F.one}) for i in range(alg.dim)]
    return quot, proj_rows


@dataclass
class Corner:
    """Corner algebra e*A*e of an idempotent, with its basis inside A."""
    parent: FinAlgebra
    idempotent: dict
    algebra: FinAlgebra
    rows: list          # corner basis as vectors in the parent
    ech: Echelon

    def to_parent(self, v):
        return vec_times_rows(self.parent.field, v, self.rows)

    def from_parent(self, w):
        coords = self.ech.coordinates(w)
        if coords is None:
            return None
        pos = {p: t for t, p in enumerate(self.ech.pivots())}
        return {pos[p]: c for p, c in coords.items()}


def corner_algebra(alg, e_vec, name=""):
    F = alg.field
    if alg.mul(e_vec, e_vec) != e_vec:
        raise AlgebraError("element is not idempotent")
    ech = Echelon(F)
    for i in range(alg.dim):
        ech.insert(alg.mul(alg.mul(e_vec, alg.basis_vec(i)), e_vec))
    rows = ech.basis_rows()
    pivot_pos = {p: t for t, p in enumerate(ech.pivots())}

    def from_parent(w):
        coords = ech.coordinates(w)
        assert coords is not None, "product escaped the corner"
        return {pivot_pos[p]: c for p, c in coords.items()}

    def pair_mul(i, j):
        return from_parent(alg.mul(rows[i], rows[j]))

    unit = from_parent(e_vec)
    labels = [f"c{p}" for p in sorted(pivot_pos)]
    corner_alg = FinAlgebra(F, labels, unit, pair_mul, name=name or f"e({alg.name})e")
    return Corner(alg, dict(e_vec), corner_alg, rows, ech)


class Bimodule:
    """(B, A)-bimodule with commuting left/right actions (see module docstring)."""

    def __init__(self, left_algebra, right_algebra, dim, left_action, right_action, name=""):
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.dim = dim
        self.left_action = left_action
        self.right_action = right_action
        self.name = name

    def act_right(self, v, a_vec):
        F = self.right_algebra.field
        out = {}
        for b, c in a_vec.items():
            out = vec_scaled_add(F, out, c, vec_times_rows(F, v, self.right_action[b]))
        return out

    def act_left(self, b_vec, v):
        F = self.left_algebra.field
        out = {}
        for b, c in b_vec.items():
            out = vec_scaled_add(F, out, c, vec_times_rows(F, v, self.left_action[b]))
        return out

    def right_module(self):
        return RightModule(self.right_algebra, self.dim, self.right_action, name=self.name)

    def left_module_check(self):
        """Witness that the left action is not unital/anti-compositional, or None."""
        F = self.left_algebra.field
        if [self.act_left(self.left_algebra.unit, {i: F.one}) for i in range(self.dim)] \
                != identity_rows(F, self.dim):
            return ("unit",)
        alg = self.left_algebra
        for i in range(alg.dim):
            for j in range(alg.dim):
                prod = alg.mul_basis(i, j)
                for k in range(self.dim):
                    lhs = self.act_left(prod, {k: F.one})
                    rhs = self.act_left({i: F.one}, self.act_left({j: F.one}, {k: F.one}))
                    if lhs != rhs:
                        return ("compose", i, j, k)
        return None

    def check_commuting(self):
        F = self.right_algebra.field
        for bl in range(self.left_algebra.dim):
            for br in range(self.right_algebra.dim):
                for i in range(self.dim):
                    v = {i: F.one}
                    lr = self.act_right(self.act_left({bl: F.one}, v), {br: F.one})
                    rl = self.act_left({bl: F.one}, self.act_right(v, {br: F.one}))
                    if lr != rl:
                        return (bl, br, i)
        return None


def regular_bimodule(alg, right_twist=None):
    """The algebra as a bimodule over itself; ``right_twist`` optionally
    scales the right action of basis element b by right_twist(b)."""
    F = alg.field
    left = []
    right = []
    for b in range(alg.dim):
        left.append([alg.mul(alg.basis_vec(b), alg.basis_vec(i)) for i in range(alg.dim)])
        rows = [alg.mul_basis(i, b) for i in range(alg.dim)]
        if right_twist is not None:
            rows = [vec_scale(F, right_twist(b), r) for r in rows]
        right.append(rows)
    return Bimodule(alg, alg, alg.dim, left, right, name=f"{alg.name}-bimod")


def tensor_over(M, S):
    """M (x)_B S for a right B-module M and a (B, A)-bimodule S.

    Returns (module over A, projection rows from the plain tensor square,
    relation echelon).  Coordinates of the plain tensor space are
    (i, s) -> i*dim S + s.
    """
    B = M.algebra
    A = S.right_algebra
    F = A.field
    dS = S.dim
    total = M.dim * dS

    def pure(mvec, svec):
        out = {}
        for i, a in mvec.items():
            for s, b in svec.items():
                c = F.mul(a, b)
                if not F.is_zero(c):
                    out[i * dS + s] = F.add(out.get(i * dS + s, F.zero), c)
        return {k: v for k, v in out.items() if not F.is_zero(v)}

    rel = Echelon(F)
    for b in range(B.dim):
        bvec = {b: F.one}
        for i in range(M.dim):
            mb = M.act_basis({i: F.one}, b)
            for s in range(dS):
                bs = S.act_left(bvec, {s: F.one})
                row = vec_scaled_add(F, pure(mb, {s: F.one}), F.neg(F.one), pure({i: F.one}, bs))
                if row:
                    rel.insert(row)

    keep = [j for j in range(total) if j not in rel.rows]
    pos = {j: t for t, j in enumerate(keep)}

    def project(v):
        red = rel.reduce(v)
        return {pos[j]: c for j, c in red.items()}

    action = []
    for a in range(A.dim):
        rows = []
        for j in keep:
            i, s = divmod(j, dS)
            sa = S.act_right({s: F.one}, {a: F.one})
            rows.append(project(pure({i: F.one}, sa)))
        action.append(rows)
    mod = RightModule(A, len(keep), action, name=f"{M.name}(x){S.name}")
    proj_rows = [project({t: F.one}) for t in range(total)]
    return mod, proj_rows, rel


@dataclass
class Presentation:
    """Start of a free resolution: 0 -> kernel -> cover -> M -> 0."""
    module: RightModule
    cover: RightModule
    proj: ModuleMap
    kernel: RightModule
    incl: ModuleMap
    cover_rank: int

    @property
    def kernel_rank(self):
        return self.kernel.dim


def module_generators(M):
    """Indices of basis vectors that generate M, greedily pruned.

    Scans the basis in order and keeps a vector only when it lies outside the
    submodule generated so far, so a cyclic module gets a single generator.
    """
    alg = M.algebra
    F = alg.field
    ech = Echelon(F)
    gens = []
    for i in range(M.dim):
        v = {i: F.one}
        if ech.contains(v):
            continue
        gens.append(i)
        for b in range(alg.dim):
            ech.insert(M.act_basis(v, b))
    assert ech.dim == M.dim or all(ech.contains({i: F.one}) for i in range(M.dim))
    return gens


def free_presentation(M):
    """Free cover on a pruned generating set, with its kernel as a submodule."""
    alg = M.algebra
    F = alg.field
    gens = module_generators(M)
    b = len(gens)
    cover = free_module(alg, b)
    proj_rows = []
    for g in gens:
        for i in range(alg.dim):
            proj_rows.append(M.act_basis({g: F.one}, i))
    proj = ModuleMap(cover, M, proj_rows)
    transposed = [{} for _ in range(M.dim)]
    for i, row in enumerate(proj_rows):
        for j, c in row.items():
            transposed[j][i] = c
    ker_vectors = kernel_basis(F, transposed, cover.dim)
    kernel, incl = submodule(cover, ker_vectors, name=f"Omega({M.name})")
    assert proj.image_rank() == M.dim, "free cover must surject"
    assert kernel.dim == cover.dim - M.dim
    return Presentation(M, cover, proj, kernel, incl, b)


def ext1(M, N, presentation=None):
    """dim Ext^1 computed from a free presentation.

    The image of Hom(P0, N) inside Hom(Omega M, N) has dimension
    b*dim N - dim Hom(M, N), since maps vanishing on Omega M are exactly
    the maps factoring through M.
    """
    pres = presentation or free_presentation(M)
    dim_hom_omega = len(hom_space(pres.kernel, N))
    dim_hom_m = len(hom_space(M, N))
    return dim_hom_omega - pres.cover_rank * N.dim + dim_hom_m


def check_algebra_map(source, target, rows, exhaustive_limit=200, samples=1000, seed=0):
    """Witness that rows: source -> target is not a unital algebra map, or None.

    Exhaustive over basis pairs up to the dimension limit, seeded random
    pairs above it.
    """
    F = source.field
    if vec_times_rows(F, source.unit, rows) != target.unit:
        return ("unit",)
    if source.dim <= exhaustive_limit:
        pairs = ((i, j) for i in range(source.dim) for j in range(source.dim))
    else:
        rng = random.Random(seed)
        pairs = ((rng.randrange(source.dim), rng.randrange(source.dim))
                 for _ in range(samples))
    for i, j in pairs:
        lhs = vec_times_rows(F, source.mul_basis(i, j), rows)
        rhs = target.mul(rows[i], rows[j])
        if lhs != rhs:
            return ("mult", i, j)
    return None


def module_to_json(M) -> dict:
    """Serialize a right module: dense action matrices keyed by basis label."""
    alg = M.algebra
    F = alg.field
    action = {}
    for b in range(alg.dim):
        rows = [[F.format(r.get(j, F.zero)) for j in range(M.dim)]
                for r in M.action[b]]
        action[alg.labels[b]] = rows
    return {"algebra": alg.name, "dim": M.dim, "action": action}


def module_from_json(obj, alg) -> RightModule:
    F = alg.field
    dim = obj["dim"]
    by_label = {lab: i for i, lab in enumerate(alg.labels)}
    action = [None] * alg.dim
    for lab, rows in obj["action"].items():
        mat = [{j: F.parse(str(c)) for j, c in enumerate(row)
                if not F.is_zero(F.parse(str(c)))} for row in rows]
        action[by_label[lab]] = mat
    if any(a is None for a in action):
        raise AlgebraError("action matrices missing for some basis elements")
    return RightModule(alg, dim, action, name=obj.get("name", ""))


def pullback_module(M, q_rows, C, check=True):
    """View a right module over B as a module over C along a surjection q: C -> B."""
    if check:
        witness = check_algebra_map(C, M.algebra, q_rows)
        if witness is not None:
            raise AlgebraError(f"q is not an algebra map: witness {witness}")
    action = [M.action_rows(q_rows[i]) for i in range(C.dim)]
    return RightModule(C, M.dim, action, name=f"{M.name}|q")
