"""Finite-dimensional associative algebras given by structure constants."""

import json
from pathlib import Path

from .errors import UnsupportedOperation, UsageError, ValidationError
from .fields import Field, add_into
from .linalg import LinearMap


class Algebra:
    """A unital associative algebra with a chosen basis.

    ``mult[i][j]`` is a tuple of ``(l, c)`` pairs giving e_i * e_j.  Elements
    are sparse dicts ``basis index -> scalar``.  ``theta`` is an optional
    linear functional (dict basis index -> scalar) making A symmetric.
    """

    def __init__(self, field, labels, mult, unit, theta=None, name=None, check=True):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != self.dim:
            raise UsageError("duplicate basis labels")
        self.mult = [
            [tuple((l, c) for l, c in sorted(field.clean(dict(row[j])).items())) for j in range(self.dim)]
            for row in mult
        ]
        self.unit = field.clean(dict(unit))
        self.theta_form = field.clean(dict(theta)) if theta is not None else None
        self.name = name or "algebra"
        # basis index of the unit, when the unit is a basis vector
        self.unit_index = None
        if len(self.unit) == 1:
            (i, c), = self.unit.items()
            if c == 1:
                self.unit_index = i
        self._dual = None
        if check:
            self.check()

    def __repr__(self):
        return f"<Algebra {self.name} dim={self.dim} over {self.field!r}>"

    # -- arithmetic ---------------------------------------------------------

    def basis(self, i):
        return {i: 1}

    def element(self, mapping):
        """Element from a ``{label: scalar}`` mapping."""
        out = {}
        for lab, c in mapping.items():
            if lab not in self.index:
                raise UsageError(f"unknown basis label {lab!r}")
            out[self.index[lab]] = out.get(self.index[lab], 0) + c
        return self.field.clean(out)

    def multiply(self, a, b):
        acc = {}
        mult = self.mult
        for i, x in a.items():
            row = mult[i]
            for j, y in b.items():
                xy = x * y
                for l, c in row[j]:
                    acc[l] = acc.get(l, 0) + xy * c
        return self.field.clean(acc)

    def mul3(self, a, b, c):
        return self.multiply(self.multiply(a, b), c)

    def add(self, a, b):
        return self.field.clean(add_into(dict(a), b))

    def scale(self, s, a):
        return self.field.clean({k: s * v for k, v in a.items()})

    def sub(self, a, b):
        return self.field.clean(add_into(dict(a), b, -1))

    # -- trace form ---------------------------------------------------------

    @property
    def is_symmetric(self):
        return self.theta_form is not None

    def _need_theta(self):
        if self.theta_form is None:
            raise UnsupportedOperation(f"{self.name} has no symmetric form theta")

    def theta(self, a):
        self._need_theta()
        F = self.field
        return F.reduce(sum(c * self.theta_form.get(i, 0) for i, c in a.items()))

    def gram(self):
        self._need_theta()
        return [[self.theta(self.multiply({i: 1}, {j: 1})) for j in range(self.dim)] for i in range(self.dim)]

    def _dual_basis(self):
        # dual[i] is the element with theta(e_j * dual[i]) = delta_ij
        if self._dual is None:
            self._need_theta()
            F = self.field
            gram = self.gram()
            # column l of the map x -> (theta(e_j x))_j is (gram[j][l])_j
            cols = [(l, {j: gram[j][l] for j in range(self.dim) if gram[j][l]}) for l in range(self.dim)]
            lm = LinearMap(F, cols)
            if lm.rank != self.dim:
                raise ValidationError("theta pairing is degenerate", identity="theta-nondegenerate")
            self._dual = [F.clean(lm.solve({i: 1})) for i in range(self.dim)]
        return self._dual

    def dual(self, a):
        """Linear extension of v -> v*, where theta(v v*) = 1 and theta(w v*) = 0 for w != v."""
        duals = self._dual_basis()
        acc = {}
        for i, c in a.items():
            add_into(acc, duals[i], c)
        return self.field.clean(acc)

    def divide(self, a, b):
        """Bilinear extension of v/w = (v* w)*."""
        return self.dual(self.multiply(self.dual(a), b))

    # -- validation ---------------------------------------------------------

    def check(self):
        d = self.dim
        for i in range(d):
            e = {i: 1}
            if self.multiply(self.unit, e) != e or self.multiply(e, self.unit) != e:
                raise ValidationError(f"unit law fails on {self.labels[i]}", identity="unit")
        for i in range(d):
            for j in range(d):
                eij = self.multiply({i: 1}, {j: 1})
                for l in range(d):
                    left = self.multiply(eij, {l: 1})
                    right = self.multiply({i: 1}, self.multiply({j: 1}, {l: 1}))
                    if left != right:
                        raise ValidationError(
                            f"associativity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[l]})",
                            identity="associativity",
                        )
        if self.theta_form is not None:
            gram = self.gram()
            for i in range(d):
                for j in range(i):
                    if gram[i][j] != gram[j][i]:
                        raise ValidationError("theta pairing is not symmetric", identity="theta-symmetric")
            self._dual_basis()

    # -- serialization ------------------------------------------------------

    def format_element(self, a):
        F = self.field
        return {self.labels[i]: F.format(c) for i, c in sorted(a.items())}

    def to_json(self):
        F = self.field
        out = {
            "field": F.to_json(),
            "basis": self.labels,
            "unit": self.format_element(self.unit),
            "mult": [],
        }
        for i in range(self.dim):
            for j in range(self.dim):
                if self.mult[i][j]:
                    out["mult"].append({
                        "left": self.labels[i],
                        "right": self.labels[j],
                        "value": {self.labels[l]: F.format(c) for l, c in self.mult[i][j]},
                    })
        if self.theta_form is not None:
            out["theta"] = self.format_element(self.theta_form)
        return out

    @classmethod
    def from_json(cls, obj, field=None, name=None):
        F = field or Field.from_json(obj["field"])
        labels = list(obj["basis"])
        index = {lab: i for i, lab in enumerate(labels)}
        d = len(labels)

        def parse_elem(m):
            out = {}
            for lab, s in m.items():
                if lab not in index:
                    raise UsageError(f"unknown basis label {lab!r}")
                out[index[lab]] = F.parse(s)
            return out

        mult = [[{} for _ in range(d)] for _ in range(d)]
        for entry in obj.get("mult", []):
            i, j = index[entry["left"]], index[entry["right"]]
            mult[i][j] = parse_elem(entry["value"])
        theta = parse_elem(obj["theta"]) if obj.get("theta") is not None else None
        return cls(F, labels, [[tuple(m.items()) for m in row] for row in mult], parse_elem(obj["unit"]),
                   theta=theta, name=name)


def load_algebra(path, field=None):
    with open(path) as fh:
        obj = json.load(fh)
    return Algebra.from_json(obj, field=field, name=Path(path).stem)


# -- built-in algebras -------------------------------------------------------


def _word_label(w):
    return "1" if not w else "".join(f"x{c}" for c in w)


def dihedral_words(k):
    """The basis G in its fixed order, as tuples of letters 0/1."""
    def alt(start, length):
        return tuple((start + t) % 2 for t in range(length))

    words = []
    words += [alt(0, 2 * (i + 1)) for i in range(k)]  # (x0x1)^{i+1}
    words += [alt(1, 2 * i + 1) for i in range(k)]  # x1(x0x1)^i
    words += [alt(1, 2 * i) for i in range(k)]  # (x1x0)^i
    words += [alt(0, 2 * i + 1) for i in range(k)]  # x0(x1x0)^i
    return words


def dihedral_algebra(k, field):
    """k<x0,x1>/(x0^2, x1^2, (x0x1)^k - (x1x0)^k) with theta((x0x1)^k) = 1."""
    if k < 2:
        raise UsageError("dihedral algebra needs k >= 2")
    words = dihedral_words(k)
    index = {w: i for i, w in enumerate(words)}
    top = words[k - 1]  # (x0x1)^k

    def reduce_word(w):
        for a, b in zip(w, w[1:]):
            if a == b:
                return None
        if len(w) > 2 * k:
            return None
        if len(w) == 2 * k:
            return top
        return w

    d = len(words)
    mult = [[() for _ in range(d)] for _ in range(d)]
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            w = reduce_word(u + v)
            if w is not None:
                mult[i][j] = ((index[w], 1),)
    alg = Algebra(field, [_word_label(w) for w in words], mult, {index[()]: 1},
                  theta={index[top]: 1}, name=f"dihedral:{k}")
    alg.words = words
    alg.word_index = index
    alg.k = k
    return alg


def dual_numbers(field):
    """k[x]/(x^2), symmetric with theta(x) = 1."""
    mult = [[((0, 1),), ((1, 1),)], [((1, 1),), ()]]
    return Algebra(field, ["1", "x"], mult, {0: 1}, theta={1: 1}, name="dual-numbers")


def ground_field(field):
    return Algebra(field, ["1"], [[((0, 1),)]], {0: 1}, theta={0: 1}, name="field")


def builtin_algebra(name, field):
    """Parse ``dihedral:k``, ``dual-numbers`` or ``field``."""
    if name.startswith("dihedral:"):
        return dihedral_algebra(int(name.split(":", 1)[1]), field)
    if name in ("dual-numbers", "dual_numbers"):
        return dual_numbers(field)
    if name == "field":
        return ground_field(field)
    raise UsageError(f"unknown built-in algebra {name!r}")
