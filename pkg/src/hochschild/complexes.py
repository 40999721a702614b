"""Free bimodule complexes, their tensor powers over A, and the trace functor.

An element of P = A (x) V (x) A is a dict ``(a, g, b) -> c`` with a, b basis
indices of A and g a generator id.  An element of the r-fold tensor power
P (x)_A ... (x)_A P is a dict over alternating keys
``(b0, g1, b1, g2, ..., gr, br)``; since P (x)_A P = A (x) V (x) A (x) W (x) A,
the middle coordinates are genuine and keys are unique.  Algebra elements fit
the same scheme as keys ``(b0,)`` of arity 0.

Trace elements Tr(P^{(x) r}) are dicts over ``(v, g1, b1, ..., gr)``: the
class of ``1 g1 b1 ... gr v``.  So Tr(a g b) = (ba, g).

Signs follow one rule: a map of shift t applied in slot s of a pure tensor
picks up (-1)^(t * sum of the degrees of the factors left of s).
"""

from .errors import TruncationError, UsageError, ValidationError


class _LengthDegree(dict):
    # bar generators are tuples; their degree is their length
    def __missing__(self, key):
        return len(key)


class FreeBimoduleComplex:
    """Graded free A-bimodule with a degree -1 differential, truncated at ``depth``.

    Generators are ids (ints for explicit complexes); ``deg[g]`` is the degree
    and ``d(g)`` the differential of the generator ``1 (x) g (x) 1``.
    """

    def __init__(self, algebra, depth, name="P"):
        self.algebra = algebra
        self.field = algebra.field
        self.depth = depth
        self.name = name
        self.deg = {}
        self._labels = {}
        self._gens = []
        self._diff = {}

    # -- construction ---------------------------------------------------------

    @classmethod
    def explicit(cls, algebra, generators, differential, name="P"):
        """Build from labels per degree and a dict ``label -> {(a, label, b): c}``."""
        P = cls(algebra, len(generators) - 1, name=name)
        ids = {}
        P.deg = []
        for n, labs in enumerate(generators):
            row = []
            for lab in labs:
                if lab in ids:
                    raise UsageError(f"duplicate generator label {lab!r}")
                g = len(P.deg)
                ids[lab] = g
                P.deg.append(n)
                P._labels[g] = lab
                row.append(g)
            P._gens.append(row)
        P.ids = ids
        F = algebra.field
        for lab, image in differential.items():
            g = ids[lab]
            elem = {}
            for (a, h, b), c in image.items():
                key = (a, ids[h], b)
                elem[key] = elem.get(key, 0) + c
            P._diff[g] = F.clean(elem)
        for g in range(len(P.deg)):
            P._diff.setdefault(g, {})
            for (a, h, b) in P._diff[g]:
                if P.deg[h] != P.deg[g] - 1:
                    raise ValidationError(f"differential of {P._labels[g]} has wrong degree", identity="d-degree")
        return P

    # -- access ---------------------------------------------------------------

    def gens(self, n):
        if n < 0:
            return []
        if n > self.depth:
            raise TruncationError(f"degree {n} beyond truncation depth {self.depth} of {self.name}")
        return self._gens[n]

    def label(self, g):
        return self._labels[g]

    def gen_by_label(self, lab):
        return self.ids[lab]

    def d(self, g):
        if self.deg[g] > self.depth:
            raise TruncationError(f"generator degree {self.deg[g]} beyond depth {self.depth}")
        return self._diff[g]

    def generator(self, g):
        u = self.algebra.unit_index
        if u is None:
            return {(a, g, b): ca * cb for a, ca in self.algebra.unit.items() for b, cb in self.algebra.unit.items()}
        return {(u, g, u): 1}

    # -- elementwise operations -------------------------------------------------

    def clean(self, x):
        return self.field.clean(x)

    def lmul(self, a, x):
        """a * x for an algebra element a and an element x of some tensor power."""
        mt = self.algebra.mult
        acc = {}
        for key, c in x.items():
            b0 = key[0]
            rest = key[1:]
            for i, ci in a.items():
                for l, cl in mt[i][b0]:
                    k2 = (l,) + rest
                    acc[k2] = acc.get(k2, 0) + c * ci * cl
        return self.field.clean(acc)

    def rmul(self, x, a):
        mt = self.algebra.mult
        acc = {}
        for key, c in x.items():
            br = key[-1]
            head = key[:-1]
            for i, ci in a.items():
                for l, cl in mt[br][i]:
                    k2 = head + (l,)
                    acc[k2] = acc.get(k2, 0) + c * ci * cl
        return self.field.clean(acc)

    def apply_slot(self, x, slot, image, shift=0):
        """Apply a bimodule map, given by ``image(g)`` on generators, in tensor slot ``slot``.

        ``image(g)`` returns an element of any arity (arity 0 = algebra element
        keyed ``(l,)``); the result is spliced into the key.  Koszul sign as in
        the module docstring.
        """
        mt = self.algebra.mult
        deg = self.deg
        acc = {}
        pos = 2 * slot + 1
        odd_shift = shift % 2
        cache = {}
        for key, c in x.items():
            if pos >= len(key):
                raise UsageError(f"slot {slot} out of range for arity {(len(key) - 1) // 2}")
            g = key[pos]
            img = cache.get(g)
            if img is None:
                img = cache[g] = image(g)
            if not img:
                continue
            if odd_shift:
                s = 0
                for q in range(1, pos, 2):
                    s += deg[key[q]]
                if s % 2:
                    c = -c
            left = key[pos - 1]
            right = key[pos + 1]
            prefix = key[:pos - 1]
            suffix = key[pos + 2:]
            for ikey, ic in img.items():
                cc = c * ic
                if len(ikey) == 1:
                    for l1, c1 in mt[left][ikey[0]]:
                        for l2, c2 in mt[l1][right]:
                            k2 = prefix + (l2,) + suffix
                            acc[k2] = acc.get(k2, 0) + cc * c1 * c2
                else:
                    mid = ikey[1:-1]
                    for l1, c1 in mt[left][ikey[0]]:
                        for l2, c2 in mt[ikey[-1]][right]:
                            k2 = prefix + (l1,) + mid + (l2,) + suffix
                            acc[k2] = acc.get(k2, 0) + cc * c1 * c2
        return self.field.clean(acc)

    def apply_block(self, x, start, width, image, shift=0):
        """Apply a bimodule map on ``width`` consecutive slots beginning at ``start``.

        ``image`` takes the inner key (g_s, b_s, ..., g_{s+w-1}) of the block and
        returns an element of any arity.  Same Koszul rule as apply_slot.
        """
        if width == 1:
            return self.apply_slot(x, start, lambda g: image((g,)), shift)
        mt = self.algebra.mult
        deg = self.deg
        acc = {}
        pos = 2 * start + 1
        end = pos + 2 * width - 1
        cache = {}
        for key, c in x.items():
            if end >= len(key):
                raise UsageError(f"block {start}+{width} out of range for arity {(len(key) - 1) // 2}")
            inner = key[pos:end]
            img = cache.get(inner)
            if img is None:
                img = cache[inner] = image(inner)
            if not img:
                continue
            if shift % 2:
                s = 0
                for q in range(1, pos, 2):
                    s += deg[key[q]]
                if s % 2:
                    c = -c
            left = key[pos - 1]
            right = key[end]
            prefix = key[:pos - 1]
            suffix = key[end + 1:]
            for ikey, ic in img.items():
                cc = c * ic
                if len(ikey) == 1:
                    for l1, c1 in mt[left][ikey[0]]:
                        for l2, c2 in mt[l1][right]:
                            k2 = prefix + (l2,) + suffix
                            acc[k2] = acc.get(k2, 0) + cc * c1 * c2
                else:
                    mid = ikey[1:-1]
                    for l1, c1 in mt[left][ikey[0]]:
                        for l2, c2 in mt[ikey[-1]][right]:
                            k2 = prefix + (l1,) + mid + (l2,) + suffix
                            acc[k2] = acc.get(k2, 0) + cc * c1 * c2
        return self.field.clean(acc)

    def apply_left_linear(self, x, image):
        """Apply a left-linear map in the first slot; ``image(g, b)`` is the image of g*b.

        For tensors of arity >= 2 this is (1 (x) pi)(t (x) 1)(1 (x) iota) with
        iota(a v b) = a (x) (1 v b): the middle coordinate rides with the first factor.
        """
        mt = self.algebra.mult
        acc = {}
        cache = {}
        for key, c in x.items():
            gb = (key[1], key[2])
            img = cache.get(gb)
            if img is None:
                img = cache[gb] = image(*gb)
            if not img:
                continue
            a = key[0]
            suffix = key[3:]
            for ikey, ic in img.items():
                cc = c * ic
                tail = ikey[1:] + suffix
                for l, cl in mt[a][ikey[0]]:
                    k2 = (l,) + tail
                    acc[k2] = acc.get(k2, 0) + cc * cl
        return self.field.clean(acc)

    def differential(self, x):
        """The tensor differential sum_s (1 (x) .. d .. (x) 1) with Leibniz signs."""
        if not x:
            return {}
        r = (len(next(iter(x))) - 1) // 2
        acc = {}
        for s in range(r):
            for k, c in self.apply_slot(x, s, self.d, shift=-1).items():
                acc[k] = acc.get(k, 0) + c
        return self.field.clean(acc)

    def degree_of(self, x):
        """Total degree of a homogeneous element (None for zero)."""
        for key in x:
            return sum(self.deg[key[q]] for q in range(1, len(key), 2))
        return None

    # -- trace functor --------------------------------------------------------

    def trace(self, x):
        """(b0, g1, ..., gr, br) -> (br*b0, g1, b1, ..., gr)."""
        mt = self.algebra.mult
        acc = {}
        for key, c in x.items():
            rest = key[1:-1]
            for l, cl in mt[key[-1]][key[0]]:
                k2 = (l,) + rest
                acc[k2] = acc.get(k2, 0) + c * cl
        return self.field.clean(acc)

    def untrace(self, te):
        """A tensor representative of a trace element: (v, rest) -> (1, rest, v)."""
        acc = {}
        for key, c in te.items():
            rest = key[1:]
            for u, cu in self.algebra.unit.items():
                k2 = (u,) + rest + (key[0],)
                acc[k2] = acc.get(k2, 0) + c * cu
        return self.field.clean(acc)

    def trace_map(self, fn, te):
        """Tr(F)(te) for a bimodule map F given as a function on tensor elements."""
        return self.trace(fn(self.untrace(te)))

    def trace_differential(self, te):
        return self.trace_map(self.differential, te)

    def sigma(self, te):
        """sigma_{P,P}: Tr(P (x) P) -> Tr(P (x) P), 1 x (x) y -> (-1)^{ij} 1 y (x) x."""
        deg = self.deg
        acc = {}
        for key, c in te.items():
            if len(key) != 4:
                raise UsageError("sigma needs a trace element of arity 2")
            v, g, m, h = key
            if deg[g] % 2 and deg[h] % 2:
                c = -c
            k2 = (m, h, v, g)
            acc[k2] = acc.get(k2, 0) + c
        return self.field.clean(acc)

    # -- checks ----------------------------------------------------------------

    def check_d_squared(self, max_degree=None):
        top = self.depth if max_degree is None else min(max_degree, self.depth)
        for n in range(2, top + 1):
            for g in self.gens(n):
                dd = self.apply_slot(self.d(g), 0, self.d, shift=-1)
                if dd:
                    raise ValidationError(f"d^2 != 0 on {self.label(g)}", identity="d^2=0")
        return True

    def tensor_generators(self, r, n):
        """Generators (1, g1, b1, ..., gr, 1) of the r-fold tensor power in total degree n."""
        out = []
        dim = self.algebra.dim

        def rec(prefix, remaining, k):
            if k == r:
                if remaining == 0:
                    out.append(prefix)
                return
            for m in range(remaining + 1):
                for g in self.gens(m):
                    if k == r - 1:
                        if m == remaining:
                            out.append(prefix + (g,))
                    else:
                        for b in range(dim):
                            rec(prefix + (g, b), remaining - m, k + 1)

        rec((), n, 0)
        return out

    def tensor_generator_element(self, gens_key):
        u = self.algebra.unit
        acc = {}
        for a, ca in u.items():
            for b, cb in u.items():
                acc[(a,) + gens_key + (b,)] = ca * cb
        return acc


class BarComplex(FreeBimoduleComplex):
    """Bar(A)_n = A (x) A^{(x) n} (x) A, generated by n-tuples of basis indices.

    Generators and differentials are produced on demand.
    """

    def __init__(self, algebra, depth, budget=200000):
        super().__init__(algebra, depth, name="Bar")
        self.deg = _LengthDegree()
        self.budget = budget
        self._gen_cache = {}
        if algebra.unit_index is None:
            raise UsageError("bar complex needs the unit to be a basis element")

    def gens(self, n):
        if n < 0:
            return []
        if n > self.depth:
            raise TruncationError(f"degree {n} beyond truncation depth {self.depth} of Bar")
        if n not in self._gen_cache:
            from .errors import ResourceError
            d = self.algebra.dim
            if d ** n > self.budget:
                raise ResourceError(f"Bar_{n} has {d ** n} generators, over budget {self.budget}")
            out = [()]
            for _ in range(n):
                out = [t + (i,) for t in out for i in range(d)]
            self._gen_cache[n] = out
        return self._gen_cache[n]

    def label(self, g):
        labs = self.algebra.labels
        return "[" + "|".join(labs[i] for i in g) + "]"

    def d(self, g):
        n = len(g)
        if n > self.depth:
            raise TruncationError(f"generator degree {n} beyond depth {self.depth}")
        cached = self._diff.get(g)
        if cached is not None:
            return cached
        if n == 0:
            self._diff[g] = {}
            return {}
        u = self.algebra.unit_index
        mt = self.algebra.mult
        acc = {}
        acc[(g[0], g[1:], u)] = 1
        for i in range(n - 1):
            sign = -1 if (i + 1) % 2 else 1
            for l, c in mt[g[i]][g[i + 1]]:
                key = (u, g[:i] + (l,) + g[i + 2:], u)
                acc[key] = acc.get(key, 0) + sign * c
        last = (u, g[:-1], g[-1])
        acc[last] = acc.get(last, 0) + (-1 if n % 2 else 1)
        out = self.field.clean(acc)
        self._diff[g] = out
        return out


class GradedMap:
    """A map between (tensor powers of) complexes, given on generators.

    ``images`` is a dict or a function; for bimodule-linear maps it takes a
    generator id, for left-linear maps a pair (generator, right basis index).
    Results are memoized.  ``shift`` is t for a map P_n -> target_{n+t}.
    """

    def __init__(self, complex, shift, images, left_linear=False, name=None):
        self.complex = complex
        self.shift = shift
        self.left_linear = left_linear
        self.name = name or "map"
        if callable(images):
            self._fn = images
            self._memo = {}
        else:
            self._fn = None
            self._memo = dict(images)

    def image(self, *key):
        k = key if self.left_linear else key[0]
        if k in self._memo:
            return self._memo[k]
        if self._fn is None:
            raise TruncationError(f"{self.name} not recorded on {k!r}")
        val = self._memo[k] = self._fn(*key)
        return val

    def __call__(self, x, slot=0):
        if self.left_linear:
            if slot != 0:
                raise UsageError("left-linear maps act in the first slot only")
            return self.complex.apply_left_linear(x, self.image)
        return self.complex.apply_slot(x, slot, self.image, self.shift)


def identity_map(P):
    return GradedMap(P, 0, lambda g: P.generator(g), name="id")


def differential_map(P):
    return GradedMap(P, -1, P.d, name="d")
