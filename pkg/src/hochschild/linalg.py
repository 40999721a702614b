"""Sparse exact Gaussian elimination.

Vectors are dicts ``column -> scalar`` with orderable columns.  An
:class:`Echelon` is built incrementally; every stored row keeps its leading
(smallest) column distinct, so every query reduces to leading-term
elimination.  Pivot order is insertion order, which makes every
result deterministic.
"""


class Echelon:
    def __init__(self, field, track=False):
        self.field = field
        self.track = track
        self.rows = {}  # leading column -> (row, combo)

    @property
    def rank(self):
        return len(self.rows)

    def _reduce(self, vec, combo):
        F = self.field
        p = F.modulus
        rows = self.rows
        vec = dict(vec)
        while vec:
            c = min(vec)
            entry = rows.get(c)
            if entry is None:
                break
            row, rcombo = entry
            if p:
                q = vec[c] * pow(row[c], -1, p) % p
                for k, v in row.items():
                    x = (vec.get(k, 0) - q * v) % p
                    if x:
                        vec[k] = x
                    else:
                        vec.pop(k, None)
                if combo is not None:
                    for k, v in rcombo.items():
                        x = (combo.get(k, 0) - q * v) % p
                        if x:
                            combo[k] = x
                        else:
                            combo.pop(k, None)
            else:
                q = F.div(vec[c], row[c])
                for k, v in row.items():
                    x = vec.get(k, 0) - q * v
                    if x:
                        vec[k] = F.reduce(x)
                    else:
                        vec.pop(k, None)
                if combo is not None:
                    for k, v in rcombo.items():
                        x = combo.get(k, 0) - q * v
                        if x:
                            combo[k] = F.reduce(x)
                        else:
                            combo.pop(k, None)
        return vec, combo

    def reduce(self, vec):
        """Residual of ``vec`` after elimination (empty iff vec is in the span)."""
        return self._reduce(vec, None)[0]

    def contains(self, vec):
        return not self.reduce(vec)

    def add(self, vec, label=None):
        """Insert a vector; returns the zero-residual combo if dependent, else None.

        With tracking on, a dependent vector yields ``{label: 1, ...}`` expressing
        a linear relation among the inserted labels (a kernel element).
        """
        combo = {label: 1} if self.track else None
        res, combo = self._reduce(self.field.clean(vec), combo)
        if res:
            self.rows[min(res)] = (res, combo)
            return None
        return combo if self.track else {}

    def express(self, vec):
        """Coefficients ``{label: c}`` with sum c * inserted[label] == vec, or None."""
        if not self.track:
            raise ValueError("express needs a tracking echelon")
        res, combo = self._reduce(self.field.clean(vec), {})
        if res:
            return None
        return {k: self.field.reduce(-v) for k, v in combo.items() if v}


def rank(field, vectors):
    e = Echelon(field)
    for v in vectors:
        e.add(v)
    return e.rank


def kernel(field, columns):
    """Basis of the kernel of the map sending label j to columns[j].

    ``columns`` is a sequence of (label, image) pairs.  Returns a list of
    sparse vectors over the labels.
    """
    e = Echelon(field, track=True)
    out = []
    for label, image in columns:
        rel = e.add(image, label)
        if rel is not None:
            out.append(field.clean(rel))
    return out


class LinearMap:
    """A linear map given by the images of source labels, ready for solving."""

    def __init__(self, field, columns):
        self.field = field
        self.echelon = Echelon(field, track=True)
        self.kernel = []
        for label, image in columns:
            rel = self.echelon.add(image, label)
            if rel is not None:
                self.kernel.append(field.clean(rel))

    @property
    def rank(self):
        return self.echelon.rank

    def solve(self, rhs):
        """A preimage of ``rhs`` (free variables zero), or None."""
        if not rhs:
            return {}
        return self.echelon.express(rhs)

    def in_image(self, rhs):
        return self.echelon.contains(self.field.clean(rhs))
