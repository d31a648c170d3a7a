"""Layer structure of diagram algebras.

The span of all diagrams with at least l horizontal edges per row is a
two-sided ideal; consecutive quotients are spanned by the exactly-l-edge
diagrams.  Such a diagram factors as (top configuration, bottom
configuration, decorated permutation of the free vertices), and under this
factorization the product of two layer elements is governed by a bilinear
contraction form with values in the wreath algebra of the layer: stacking
the bottom configuration of the first factor against the top configuration
of the second either produces closed loops and through-strands (a wreath
element scaled by the loop traces) or strands that re-enter the same row,
which pushes the product into the next layer and contributes zero.

``verify_layer`` checks, for one layer: (a) the factorization is a bijection
onto pairs-of-configurations times wreath basis, (b) multiplication modulo
the next layer agrees with the contraction-form product, (c) the diagram
involution swaps the two configurations and stars the wreath part.
``verify_decomposition`` runs every layer and the global dimension identity.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .algebra_kernel import FinAlgebra
from .diagrams import DiagramAlgebra
from .input_algebra import wreath_product
from .linalg import Echelon


def small_algebra(dalg: DiagramAlgebra, l: int) -> FinAlgebra:
    """Wreath algebra of the free strands at layer l."""
    kind = dalg.kind
    if kind.family == "abrauer":
        return wreath_product(dalg.A, kind.n - 2 * l)
    r = kind.wall
    t = kind.n - r
    return wreath_product(dalg.A, (r - l) + (t - l), wall=r - l)


def rank_v(dalg: DiagramAlgebra, l: int) -> int:
    return len(dalg.enumerate_partials(l))


def _to_key_vec(W, idx_vec):
    return {W.basis_keys[i]: c for i, c in idx_vec.items()}


def _to_idx_vec(W, key_vec):
    return {W.key_index[k]: c for k, c in key_vec.items()}


def contraction_form(dalg: DiagramAlgebra, W, f_pd, e_pd):
    """Value of the layer bilinear form on (bottom config, top config).

    Computed, as in the defining construction, by multiplying the diagrams
    assembled from (f, f, id) and (e, e, id) and reading the wreath part of
    the result modulo the next layer; loops contribute their label traces,
    and any strand returning to its own row kills the product.
    """
    l = len(f_pd.edges)
    unit_keys = _to_key_vec(W, W.unit)
    df = dalg.layer_assemble(f_pd, f_pd, unit_keys)
    de = dalg.layer_assemble(e_pd, e_pd, unit_keys)
    prod = dalg.truncate_above_layer(dalg.mul(df, de), l)
    out = {}
    F = dalg.field
    for d, c in prod.items():
        top, bottom, key = dalg.layer_factorize(d)
        assert top == f_pd and bottom == e_pd, "contraction changed the configurations"
        idx = W.key_index[key]
        s = F.add(out.get(idx, F.zero), c)
        if F.is_zero(s):
            out.pop(idx, None)
        else:
            out[idx] = s
    return out


def layer_ideal_indices(dalg: DiagramAlgebra, big: FinAlgebra, l: int):
    """Coordinates of the basis diagrams with at least l horizontal edges."""
    n = dalg.kind.n
    return [i for i, d in enumerate(big.basis_keys) if d.horizontal_count(n) >= l]


def layer_ideal(dalg: DiagramAlgebra, big: FinAlgebra, l: int) -> Echelon:
    if not 0 <= l <= dalg.layer_bound():
        raise ValueError(f"layer {l} out of range")
    ech = Echelon(big.field)
    for i in layer_ideal_indices(dalg, big, l):
        ech.insert(big.basis_vec(i))
    return ech


def check_layer_ideal_closed(dalg: DiagramAlgebra, l: int, samples=None, seed=0):
    """Closure of the layer span under diagram multiplication.

    Uses the support of products directly: every product diagram must again
    have at least l horizontal edges.  Exhaustive when samples is None.
    Returns a witness pair or None.
    """
    n = dalg.kind.n
    basis = dalg.basis()
    members = [d for d in basis if d.horizontal_count(n) >= l]
    if samples is None:
        pairs = [(b, d) for b in basis for d in members]
    else:
        rng = random.Random(seed)
        pairs = [(rng.choice(basis), rng.choice(members)) for _ in range(samples)] \
            if members else []
    for b, d in pairs:
        for side in (dalg.mul_diagrams(b, d), dalg.mul_diagrams(d, b)):
            for prod in side:
                if prod.horizontal_count(n) < l:
                    return (b, d)
    return None


@dataclass
class LayerReport:
    layer: int
    rank_v: int
    dim_small: int
    layer_dim: int
    psi_bijective: bool
    psi_multiplicative: bool
    involution_ok: bool
    pairs_checked: int
    sampled: bool
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return self.psi_bijective and self.psi_multiplicative and self.involution_ok

    def as_dict(self):
        return {
            "l": self.layer,
            "rankV": self.rank_v,
            "dimSmall": self.dim_small,
            "layerDim": self.layer_dim,
            "psiBijective": self.psi_bijective,
            "psiMultiplicative": self.psi_multiplicative,
            "involutionOK": self.involution_ok,
            "pairsChecked": self.pairs_checked,
            "sampled": self.sampled,
            "failures": self.failures,
        }


def verify_layer(dalg: DiagramAlgebra, l: int, W=None, max_exhaustive_pairs=40000,
                 sample_pairs=600, seed=0) -> LayerReport:
    if W is None:
        W = small_algebra(dalg, l)
    layer = dalg.layer_basis(l)
    partials = dalg.enumerate_partials(l)
    failures = []

    factored = [dalg.layer_factorize(d) for d in layer]
    expected = len(partials) ** 2 * W.dim
    bijective = (len(layer) == expected and len(set(factored)) == len(layer))
    for d, (top, bottom, key) in zip(layer, factored):
        if dalg.layer_assemble_key(top, bottom, key) != d:
            bijective = False
            failures.append({"check": "roundtrip", "diagram": dalg.label(d)})
            break

    involution_ok = True
    for d, (top, bottom, key) in zip(layer, factored):
        lhs = dalg.involution({d: dalg.field.one})
        starred = _to_key_vec(W, W.involve(W.basis_vec(W.key_index[key])))
        rhs = dalg.layer_assemble(bottom, top, starred)
        if lhs != rhs:
            involution_ok = False
            failures.append({"check": "involution", "diagram": dalg.label(d)})
            break

    total_pairs = len(layer) ** 2
    sampled = total_pairs > max_exhaustive_pairs
    if sampled:
        rng = random.Random(seed)
        pairs = [(rng.randrange(len(layer)), rng.randrange(len(layer)))
                 for _ in range(sample_pairs)]
    else:
        pairs = list(itertools.product(range(len(layer)), repeat=2))

    phi_cache = {}
    multiplicative = True
    for i, j in pairs:
        d1, d2 = layer[i], layer[j]
        top1, bot1, key1 = factored[i]
        top2, bot2, key2 = factored[j]
        cache_key = (bot1, top2)
        phi = phi_cache.get(cache_key)
        if phi is None:
            phi = contraction_form(dalg, W, bot1, top2)
            phi_cache[cache_key] = phi
        lhs = dalg.truncate_above_layer(dalg.mul_diagrams(d1, d2), l)
        wprod = W.mul(W.mul(W.basis_vec(W.key_index[key1]), phi),
                      W.basis_vec(W.key_index[key2]))
        rhs = dalg.layer_assemble(top1, bot2, _to_key_vec(W, wprod))
        if lhs != rhs:
            multiplicative = False
            failures.append({"check": "multiplicative",
                             "pair": [dalg.label(d1), dalg.label(d2)]})
            if len(failures) > 5:
                break

    return LayerReport(l, len(partials), W.dim, expected, bijective,
                       multiplicative, involution_ok, len(pairs), sampled, failures)


def verify_decomposition(dalg: DiagramAlgebra, max_exhaustive_pairs=40000,
                         sample_pairs=600, seed=0, ideal_sample_threshold=150) -> dict:
    basis = dalg.basis()
    bound = dalg.layer_bound()
    layers = []
    for l in range(bound + 1):
        layers.append(verify_layer(dalg, l, max_exhaustive_pairs=max_exhaustive_pairs,
                                   sample_pairs=sample_pairs, seed=seed))

    chain_ok = True
    ideal_witnesses = []
    n = dalg.kind.n
    counts = [sum(1 for d in basis if d.horizontal_count(n) >= l) for l in range(bound + 2)]
    for l in range(bound + 1):
        if counts[l + 1] >= counts[l]:   # every layer is nonempty, so strictly nested
            chain_ok = False
        samples = None if len(basis) <= ideal_sample_threshold else 1000
        w = check_layer_ideal_closed(dalg, l, samples=samples, seed=seed)
        if w is not None:
            chain_ok = False
            ideal_witnesses.append({"l": l, "pair": [dalg.label(w[0]), dalg.label(w[1])]})

    layer_sum = sum(rep.layer_dim for rep in layers)
    dim_ok = layer_sum == len(basis)
    return {
        "kind": dalg.kind.family,
        "params": _params_dict(dalg),
        "dim": len(basis),
        "layerSum": layer_sum,
        "dimensionIdentity": dim_ok,
        "idealChainOK": chain_ok,
        "idealWitnesses": ideal_witnesses,
        "layers": [rep.as_dict() for rep in layers],
        "rankVConvention": "(dim A)^l * n!/(l!(n-2l)!2^l): one label per "
                           "horizontal edge; exponent n in place of l would "
                           "contradict the dimension identity verified above",
        "ok": dim_ok and chain_ok and all(rep.ok for rep in layers),
    }


def _params_dict(dalg):
    kind = dalg.kind
    if kind.family == "abrauer":
        return {"n": kind.n, "dimA": dalg.A.dim}
    return {"r": kind.wall, "t": kind.n - kind.wall}
