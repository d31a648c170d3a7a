"""Input algebras for the labeled-diagram construction, and wreath products.

An InputAlgebra is a finite-dimensional unital algebra over an exact field,
given by structure constants, together with an involutory anti-automorphism
``*`` and a ``*``-invariant trace.  The trace of the unit is the loop
parameter delta.  The cyclic-group instance has basis h^0..h^{r-1},
involution h^m -> h^{r-m} and trace values delta_0..delta_{r-1}.

``wreath_product(A, m)`` builds the algebra with basis (label tuple, perm),
product ``(a, s)(b, t) = (a * s(b), s t)`` where s permutes tuple slots and
perms compose left to right.  With ``wall=w`` the basis is restricted to
permutations preserving {0..w-1}: the group algebra of a product of two
symmetric groups, as needed for the walled family.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra_kernel import FinAlgebra, algebra_from_mult_context
from .linalg import vec_scaled_add, vec_times_rows


class InputAlgebraError(ValueError):
    pass


class InputAlgebra:
    def __init__(self, field, basis_labels, unit, structconsts, involution_rows, trace):
        self.field = field
        self.basis_labels = list(basis_labels)
        self.dim = len(self.basis_labels)
        self.unit = dict(unit)
        self.structconsts = structconsts  # (i, j) -> sparse coefficient dict
        self.involution_rows = [dict(r) for r in involution_rows]
        self.trace = list(trace)

    def mul_basis(self, i, j):
        return self.structconsts.get((i, j), {})

    def mul_vec(self, u, v):
        F = self.field
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                c = F.mul(a, b)
                if not F.is_zero(c):
                    out = vec_scaled_add(F, out, c, self.mul_basis(i, j))
        return out

    def involve_basis(self, i):
        return self.involution_rows[i]

    def involve_vec(self, v):
        return vec_times_rows(self.field, v, self.involution_rows)

    def trace_vec(self, v):
        F = self.field
        return F.sum(F.mul(c, self.trace[i]) for i, c in v.items())

    def delta(self):
        return self.trace_vec(self.unit)

    def unit_basis_index(self):
        """Index i with 1 = b_i, or None if the unit is a proper combination."""
        if len(self.unit) == 1:
            (i, c), = self.unit.items()
            if c == self.field.one:
                return i
        return None


def cyclic_group_algebra(field, r, deltas):
    """Group algebra of Z/r with trace h^m -> deltas[m]."""
    if r < 1:
        raise InputAlgebraError(f"cyclic order must be >= 1, got {r}")
    if len(deltas) != r:
        raise InputAlgebraError(f"need {r} trace values, got {len(deltas)}")
    for m in range(r):
        if deltas[m] != deltas[(r - m) % r]:
            raise InputAlgebraError(
                f"trace not *-invariant: delta_{m} != delta_{r - m}")
    F = field
    struct = {(i, j): {(i + j) % r: F.one} for i in range(r) for j in range(r)}
    invo = [{(r - m) % r: F.one} for m in range(r)]
    labels = [f"h^{m}" for m in range(r)]
    return InputAlgebra(F, labels, {0: F.one}, struct, invo, list(deltas))


def trivial_input_algebra(field, delta):
    """The base field as input algebra with tr(1) = delta."""
    return cyclic_group_algebra(field, 1, [delta])


def input_algebra_from_json(obj, field):
    """Parse the input-algebra JSON schema (see README) over the given field."""
    F = field
    dim = obj["dim"]
    labels = obj.get("basis", [f"b{i}" for i in range(dim)])

    def scalar(x):
        return F.parse(str(x))

    unit = {i: scalar(c) for i, c in enumerate(obj["unit"]) if not F.is_zero(scalar(c))}
    struct = {}
    for i, j, k, c in obj["structconsts"]:
        v = scalar(c)
        if not F.is_zero(v):
            struct.setdefault((i, j), {})[k] = v
    invo = [{j: scalar(c) for j, c in enumerate(row) if not F.is_zero(scalar(c))}
            for row in obj["involution"]]
    trace = [scalar(c) for c in obj["trace"]]
    return InputAlgebra(F, labels, unit, struct, invo, trace)


@dataclass
class CheckResult:
    name: str
    ok: bool
    witness: tuple | None = None

    def as_dict(self):
        return {"name": self.name, "ok": self.ok,
                "witness": list(self.witness) if self.witness else None}


def validate_input_algebra(A) -> list:
    """Exhaustive basis-triple validation; failures carry a witness tuple."""
    F = A.field
    results = []

    def record(name, witness):
        results.append(CheckResult(name, witness is None, witness))

    w = None
    for i in range(A.dim):
        b = {i: F.one}
        if A.mul_vec(A.unit, b) != b or A.mul_vec(b, A.unit) != b:
            w = (i,)
            break
    record("unital", w)

    w = None
    for i, j, k in itertools.product(range(A.dim), repeat=3):
        lhs = A.mul_vec(A.mul_basis(i, j), {k: F.one})
        rhs = A.mul_vec({i: F.one}, A.mul_basis(j, k))
        if lhs != rhs:
            w = (i, j, k)
            break
    record("associative", w)

    w = None
    for i in range(A.dim):
        if A.involve_vec(A.involve_basis(i)) != {i: F.one}:
            w = (i,)
            break
    record("involution squares to identity", w)

    w = None
    for i, j in itertools.product(range(A.dim), repeat=2):
        lhs = A.involve_vec(A.mul_basis(i, j))
        rhs = A.mul_vec(A.involve_basis(j), A.involve_basis(i))
        if lhs != rhs:
            w = (i, j)
            break
    record("involution is an anti-automorphism", w)

    w = None
    for i in range(A.dim):
        if A.trace_vec(A.involve_basis(i)) != A.trace[i]:
            w = (i,)
            break
    record("trace is *-invariant", w)

    w = None
    for i, j in itertools.product(range(A.dim), repeat=2):
        if A.trace_vec(A.mul_basis(i, j)) != A.trace_vec(A.mul_basis(j, i)):
            w = (i, j)
            break
    record("trace is tracial", w)

    return results


# -- permutations, composed left to right: (s t)(i) = t(s(i)) --

def compose_perms(s, t):
    return tuple(t[s[i]] for i in range(len(s)))


def invert_perm(s):
    out = [0] * len(s)
    for i, v in enumerate(s):
        out[v] = i
    return tuple(out)


def identity_perm(m):
    return tuple(range(m))


def perm_sign(s):
    seen = [False] * len(s)
    sign = 1
    for i in range(len(s)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = s[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _side_preserving_perms(m, wall):
    if wall is None:
        return [tuple(p) for p in itertools.permutations(range(m))]
    left = list(itertools.permutations(range(wall)))
    right = list(itertools.permutations(range(wall, m)))
    return [tuple(l) + tuple(r) for l in left for r in right]


class _WreathContext:
    def __init__(self, A, m, wall):
        self.A = A
        self.field = A.field
        self.m = m
        self.wall = wall

    def basis(self):
        perms = _side_preserving_perms(self.m, self.wall)
        labels = itertools.product(range(self.A.dim), repeat=self.m)
        return sorted((lab, p) for lab in labels for p in perms)

    def label(self, key):
        lab, p = key
        names = ",".join(self.A.basis_labels[i] for i in lab)
        return f"({names}|{p})"

    def _expand(self, slot_vectors, perm):
        """Sum over basis choices of per-slot coefficient vectors."""
        F = self.field
        terms = [((), F.one)]
        for vec in slot_vectors:
            terms = [(chosen + (k,), F.mul(c, ck))
                     for chosen, c in terms for k, ck in vec.items()]
        return {(lab, perm): c for lab, c in terms if not F.is_zero(c)}

    def mul_basis_keys(self, x, y):
        (a, s), (b, t) = x, y
        slot_vectors = [self.A.mul_basis(a[i], b[s[i]]) for i in range(self.m)]
        return self._expand(slot_vectors, compose_perms(s, t))

    def unit_vec(self):
        return self._expand([self.A.unit] * self.m, identity_perm(self.m))

    def involution_key(self, key):
        a, s = key
        sinv = invert_perm(s)
        slot_vectors = [self.A.involve_basis(a[sinv[j]]) for j in range(self.m)]
        return self._expand(slot_vectors, sinv)

    def decorated_perm_element(self, perm, label_vecs=None):
        vecs = label_vecs if label_vecs is not None else [self.A.unit] * self.m
        return self._expand(vecs, perm)

    def generator_elements(self):
        gens = []
        for i in range(self.m - 1):
            if self.wall is not None and i == self.wall - 1:
                continue
            p = list(range(self.m))
            p[i], p[i + 1] = p[i + 1], p[i]
            gens.append(self.decorated_perm_element(tuple(p)))
        if self.m > 0 and self.A.dim > 1:
            for k in range(self.A.dim):
                vecs = [{k: self.field.one}] + [self.A.unit] * (self.m - 1)
                gens.append(self.decorated_perm_element(identity_perm(self.m), vecs))
        return gens


def wreath_product(A, m, wall=None, cap=5000) -> FinAlgebra:
    """Wreath product algebra of A with the symmetric group on m points.

    With ``wall=w`` only wall-preserving permutations occur (requires A of
    dimension 1); at m = 0 the result is the base field.
    """
    if m < 0:
        raise InputAlgebraError("strand count must be non-negative")
    if wall is not None and A.dim != 1:
        raise InputAlgebraError("walled variant requires the trivial input algebra")
    ctx = _WreathContext(A, m, wall)
    name = f"wreath({A.dim},{m})" if wall is None else f"perm2({wall},{m - wall})"
    alg = algebra_from_mult_context(ctx, cap=cap, name=name)
    alg.wreath_context = ctx
    return alg
