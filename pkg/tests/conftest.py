import pytest

from diagalg.diagrams import DiagramAlgebra, DiagramKind, diagram_fin_algebra
from diagalg.fields import make_field
from diagalg.input_algebra import cyclic_group_algebra, trivial_input_algebra
from diagalg.split_pair import corner_split_datum


def build_context(family, params, delta, field_spec, deltas=None):
    """Diagram algebra context for a config tuple (uncached)."""
    field = make_field(field_spec)
    if family == "walled":
        r, t = params
        A = trivial_input_algebra(field, field.parse(delta))
        return DiagramAlgebra(DiagramKind.walled(r, t), A)
    n = params
    if deltas is not None:
        A = cyclic_group_algebra(field, len(deltas),
                                 [field.parse(d) for d in deltas])
    else:
        A = trivial_input_algebra(field, field.parse(delta))
    return DiagramAlgebra(DiagramKind.abrauer(n), A)


class ConfigCache:
    """Session-wide cache of diagram algebras and corner split data, so the
    acceptance criteria can share the expensive constructions."""

    def __init__(self):
        self._dalg = {}
        self._big = {}
        self._datum = {}

    def dalg(self, family, params, delta="1", field="q", deltas=None):
        key = (family, params, delta, field, deltas)
        if key not in self._dalg:
            self._dalg[key] = build_context(family, params, delta, field, deltas)
        return self._dalg[key]

    def big(self, family, params, delta="1", field="q", deltas=None):
        key = (family, params, delta, field, deltas)
        if key not in self._big:
            self._big[key] = diagram_fin_algebra(self.dalg(*key[:4], deltas=key[4]))
        return self._big[key]

    def datum(self, family, params, l, delta="1", field="q", deltas=None):
        key = (family, params, l, delta, field, deltas)
        if key not in self._datum:
            dalg = self.dalg(family, params, delta, field, deltas)
            big = self.big(family, params, delta, field, deltas)
            self._datum[key] = corner_split_datum(dalg, big, l)
        return self._datum[key]


@pytest.fixture(scope="session")
def cache():
    return ConfigCache()
