"""The dihedral family: the explicit resolution A (x) B (x) A with its left
contracting homotopy, and the closed-form tables to check against.

Generators of P_n are the monomials x_alpha^p z^j of B with p + 2j = n,
listed in the order of their cochain coordinates: z^{n/2} first (n even),
then x_alpha^p z^j at coordinate p + alpha.
"""

from .algebra import dihedral_algebra
from .complexes import FreeBimoduleComplex
from .errors import UsageError
from .fields import add_into
from .resolutions import Cochain, ContractingHomotopy, Resolution


def monomials(n):
    """(alpha, p, j) for the generators of P_n in coordinate order."""
    out = []
    if n % 2 == 0:
        out.append((0, 0, n // 2))
    for p in range(n, 0, -1):
        if (n - p) % 2:
            continue
        j = (n - p) // 2
        out.append((0, p, j))
        out.append((1, p, j))
    out.sort(key=lambda m: 1 if m[1] == 0 else m[1] + m[0])
    return out


def monomial_label(alpha, p, j):
    parts = []
    if p:
        parts.append(f"x{alpha}" + (f"^{p}" if p > 1 else ""))
    if j:
        parts.append("z" + (f"^{j}" if j > 1 else ""))
    return "".join(parts) or "1"


class DihedralData:
    """Bookkeeping shared by the resolution, its homotopy and the tables."""

    def __init__(self, k, field, depth):
        self.k = k
        self.field = field
        self.depth = depth
        A = self.A = dihedral_algebra(k, field)
        self.dim = A.dim
        idx = A.word_index
        self.one = idx[()]
        self.x = [idx[(0,)], idx[(1,)]]
        self.top = idx[tuple((t % 2) for t in range(2 * k))]  # 1* = (x0x1)^k
        self.length = [len(w) if i != self.top else 2 * k for i, w in enumerate(A.words)]
        self.dualidx = {}
        for i in range(self.dim):
            (j, c), = A.dual({i: 1}).items()
            self.dualidx[i] = j
        self.xstar = [self.dualidx[self.x[0]], self.dualidx[self.x[1]]]
        # basis-level division tables: v/w is a basis element or 0
        self._div = {}
        for v in range(self.dim):
            for w in range(self.dim):
                q = A.divide({v: 1}, {w: 1})
                if q:
                    (l, c), = q.items()
                    self._div[(v, w)] = (l, c)
        self.ids = {}

    def div(self, v, w):
        """v/w for basis indices, as a basis index or None."""
        r = self._div.get((v, w))
        return None if r is None else r[0]

    def gen(self, alpha, p, j):
        if p < 0 or j < 0:
            return None
        alpha = 0 if p == 0 else alpha % 2
        return self.ids.get((alpha, p, j))


def _term(acc, a, g, b, c):
    if g is None or a is None or b is None:
        return
    key = (a, g, b)
    acc[key] = acc.get(key, 0) + c


def dihedral_resolution(k, field, depth=6):
    """(Resolution, ContractingHomotopy) for the dihedral algebra with parameter k."""
    if k < 2:
        raise UsageError("dihedral algebra needs k >= 2")
    D = DihedralData(k, field, depth)
    A = D.A
    gens = []
    labels = {}
    for n in range(depth + 1):
        row = []
        for m in monomials(n):
            lab = monomial_label(*m)
            labels[m] = lab
            row.append(lab)
        gens.append(row)
    P = FreeBimoduleComplex.explicit(A, gens, {}, name=f"P[dihedral:{k}]")
    for m, lab in labels.items():
        D.ids[m] = P.ids[lab]
    P.monomial = {g: m for m, g in D.ids.items()}
    one, x, L = D.one, D.x, D.length

    def sgn(e):
        return -1 if e % 2 else 1

    def d_gen(alpha, i, j):
        acc = {}
        if i == 0 and j == 0:
            return acc
        if j == 0:
            _term(acc, x[alpha], D.gen(alpha, i - 1, 0), one, 1)
            _term(acc, one, D.gen(alpha, i - 1, 0), x[alpha], sgn(i))
            return acc
        if i == 0:
            for v in range(D.dim):
                for beta in (0, 1):
                    _term(acc, D.dualidx[v], D.gen(beta, 1, j - 1), D.div(v, x[beta]), sgn(j * L[v] + beta))
            return acc
        g1 = D.gen(alpha, i - 1, j)
        _term(acc, x[alpha], g1, one, 1)
        _term(acc, one, g1, x[alpha], sgn(i + j))
        g2 = D.gen(alpha, i + 1, j - 1)
        s = sgn(i + alpha)
        _term(acc, D.xstar[alpha], g2, one, s * sgn(j))
        _term(acc, one, g2, D.xstar[alpha], s)
        return acc

    for g, (alpha, i, j) in P.monomial.items():
        P._diff[g] = field.clean(d_gen(alpha, i, j))
    res = Resolution(P, {D.gen(0, 0, 0): {one: 1}}, name=f"dihedral:{k}")

    def t_fn(g, v):
        alpha, i, j = P.monomial[g]
        acc = {}
        if i == 0:
            if v != D.top:
                vs = D.dualidx[v]
                for w in range(D.dim):
                    for beta in (0, 1):
                        _term(acc, D.div(D.dualidx[w], vs), D.gen(beta, 1, j), D.div(w, x[beta]),
                              sgn(j * (L[w] + L[v] + 1) + 1))
            else:
                for w in range(D.dim):
                    b = L[w] % 2
                    _term(acc, D.dualidx[w], D.gen(b, 1, j), D.div(w, x[b]), sgn(j * (L[w] + 1) + 1))
            return field.clean(acc)
        _term(acc, one, D.gen(alpha, i + 1, j), D.div(v, x[alpha]), sgn(i + j + 1))
        if i == 1 and alpha == 1:
            _term(acc, D.div(v, D.xstar[1]), D.gen(0, 0, j + 1), one, sgn(j * L[v] + j + L[v]))
        return field.clean(acc)

    c = ContractingHomotopy(res, t_fn, {(one, D.gen(0, 0, 0), one): 1}, name="t_P")
    res.dihedral = D
    return res, c


# -- words and the closed-form Connes table ------------------------------------------------------


def _alt(D, start, length):
    """The basis index of the alternating word of given length starting with x_start (None if zero)."""
    k = D.k
    if length < 0 or length > 2 * k:
        return None
    if length == 2 * k:
        return D.top
    return D.A.word_index[tuple((start + t) % 2 for t in range(length))]


def classify_word(D, v):
    """(start letter, length) of a basis word; the unit has start None and 1* has length 2k."""
    if v == D.one:
        return None, 0
    if v == D.top:
        return 0, 2 * D.k
    w = D.A.words[v]
    return w[0], len(w)


def connes_table(D, v, g, P):
    """The closed-form value of B_P on the trace element v (x) g, as {(w, gen): c}."""
    k = D.k
    alpha, p, j = P.monomial[g]
    acc = {}

    def put(word, gen, c):
        if word is None or gen is None or not c:
            return
        acc[(word, gen)] = acc.get((word, gen), 0) + c

    def sg(e):
        return -1 if e % 2 else 1

    if v == D.one:
        return {}
    s, length = classify_word(D, v)
    if p == 0:
        if v == D.top:
            c = (j + 1) * k
            put(D.xstar[0], D.gen(0, 1, j), c * sg(j))
            put(D.xstar[1], D.gen(1, 1, j), c)
        elif length % 2:
            a, i = s, (length - 1) // 2
            if j % 2 == 0:
                if i == 0:
                    put(D.one, D.gen(a, 1, j), 1)
                else:
                    put(_alt(D, a, 2 * i), D.gen(a, 1, j), 1)
                    put(_alt(D, a + 1, 2 * i), D.gen(a, 1, j), 1)
        else:
            a, i = s, length // 2
            c = j * k + i
            put(_alt(D, a + 1, 2 * i - 1), D.gen(a, 1, j), c * sg(j))
            put(_alt(D, a, 2 * i - 1), D.gen(a + 1, 1, j), c)
        return D.field.clean(acc)

    a = alpha
    up = D.gen(a, p + 1, j)
    down = D.gen(a, p - 1, j + 1)
    pe, je = p % 2 == 0, j % 2 == 0
    if v == D.top:
        if pe and je:
            put(D.x[a], down, sg(a) * (j + 1))
            put(D.xstar[a], up, j + p + 1)
        elif pe:
            put(D.x[a], down, j + 1)
            put(D.xstar[a], up, sg(a) * (j + 1))
        elif je:
            put(D.x[a], down, -1)
            put(D.xstar[a], up, p)
        return D.field.clean(acc)
    if length % 2 and s == (a + 1) % 2:
        i = (length - 1) // 2
        if i <= k - 2:
            return {}
        # v = x_a^*
        if pe and je:
            put(D.one, down, sg(a + 1))
        elif not pe:
            put(D.one, down, sg((j + 1) * (a + 1)) * (j + 1))
        return D.field.clean(acc)
    if length % 2:
        i = (length - 1) // 2
        if i == 0:
            if pe and je:
                put(D.one, up, p + 1)
            elif not pe and je:
                put(D.one, up, sg(a + 1) * j)
            elif not pe:
                put(D.one, up, j + p + 1)
            return D.field.clean(acc)
        if pe and je:
            put(_alt(D, a + 1, 2 * i), up, 1)
            put(_alt(D, a, 2 * i), up, 1)
        elif not pe:
            put(_alt(D, a + 1, 2 * i), up, (j + 1) * sg(j + 1))
            put(_alt(D, a, 2 * i), up, j + 1)
        return D.field.clean(acc)
    i = length // 2
    w = _alt(D, a + 1, 2 * i - 1)
    if s == (a + 1) % 2:
        if pe:
            put(w, up, j + 1)
        elif je:
            put(w, up, 1)
    else:
        if pe:
            put(w, up, sg(j) * (j + 1))
        elif je:
            put(w, up, -1)
    return D.field.clean(acc)


# -- named cochains, the generator set X and the BV value list --------------------------------------


def named_cochains(D, P):
    """The cochains p1 ... t in coordinates e_1, e_2, ... of Hom(P_n, A) = A^{n+1}."""
    A = D.A
    x0, x1 = D.x
    one, top = D.one, D.top
    x0x1 = _alt(D, 0, 2)
    x1x0 = _alt(D, 1, 2)

    def elem(*terms):
        acc = {}
        for c, b in terms:
            acc[b] = acc.get(b, 0) + c
        return A.field.clean(acc)

    table = {
        "p1": (0, [elem((1, x0x1), (1, x1x0))]),
        "p2": (0, [elem((1, D.xstar[1]))]),
        "p2'": (0, [elem((1, D.xstar[0]))]),
        "p3": (0, [elem((1, top))]),
        "u1": (1, [elem((1, x0)), {}]),
        "u1'": (1, [{}, elem((1, x1))]),
        "u2": (1, [elem((1, one)), {}]),
        "u2'": (1, [{}, elem((1, one))]),
        "v": (2, [elem((1, one)), {}, {}]),
        "v1": (2, [elem((1, x0x1), (-1, x1x0)), {}, {}]),
        "v2": (2, [{}, elem((1, one)), {}]),
        "v2'": (2, [{}, {}, elem((1, one))]),
        "v3": (2, [elem((1, top)), {}, {}]),
        "w1": (3, [elem((1, x0)), {}, {}, {}]),
        "w2": (3, [elem((1, D.xstar[0])), {}, {}, {}]),
        "w2'": (3, [{}, elem((1, D.xstar[1])), {}, {}]),
        "t": (4, [elem((1, one)), {}, {}, {}, {}]),
    }
    out = {}
    for name, (n, coords) in table.items():
        if n > P.depth:
            continue
        gens = P.gens(n)
        out[name] = Cochain(n, {gens[i]: a for i, a in enumerate(coords) if a})
    return out


def generator_set(k, char):
    """The generating set X of HH*(A) for the characteristic at hand."""
    if char == 2:
        return ["p1", "p2", "p2'", "p3", "u1", "u1'", "u2", "u2'", "v"]
    if char != 0 and k % char == 0:
        return ["p1", "p2", "p2'", "u1", "u1'", "v1", "v2", "v2'", "v3", "w1", "w2", "w2'", "t"]
    return ["p1", "p2", "p2'", "u1", "u1'", "v1", "v2", "v2'", "t"]


def _prod(text):
    return tuple(text.split("*")) if text else ()


# D(product) = sum of c(k) * product; "" is the class of 1.
_BV_ZERO = [
    "u2", "p2'*u2", "u2*u2", "u2'", "p2*u2'", "u2'*u2'", "v", "p1*v", "u1*v", "u1'*v", "u2*v", "u2'*v", "v*v",
    "v1", "p1*v1", "v2", "p2'*v2", "v2*v2", "v2'", "p2*v2'", "v2'*v2'", "w1", "t", "p1*t", "v1*t", "v2*t",
    "v2'*t", "w1*t", "t*t",
]
_BV_VALUES = [
    ("u1", [(lambda k: k, "")]),
    ("u1'", [(lambda k: k, "")]),
    ("p1*u1", [(lambda k: k - 1, "p1")]),
    ("p2*u1'", [(lambda k: 1, "p2")]),
    ("p2'*u1", [(lambda k: 1, "p2'")]),
    ("v3", [(lambda k: 1, "u1'"), (lambda k: -1, "u1")]),
    ("p2*v", [(lambda k: 1, "u2'")]),
    ("p2'*v", [(lambda k: 1, "u2")]),
    ("p3*v", [(lambda k: 1, "u1"), (lambda k: 1, "u1'")]),
    ("u1*u1'", [(lambda k: k, "u1'"), (lambda k: -k, "u1")]),
    ("u1*u2", [(lambda k: k, "u2")]),
    ("u1'*u2'", [(lambda k: k, "u2'")]),
    ("w2", [(lambda k: 1, "v2")]),
    ("w2'", [(lambda k: -1, "v2'")]),
    ("u1*v1", [(lambda k: 2 * k - 1, "v1")]),
    ("u1*v2", [(lambda k: k + 2, "v2")]),
    ("u1*v2'", [(lambda k: k, "v2'")]),
    ("u1'*v2", [(lambda k: k, "v2")]),
    ("u1'*v2'", [(lambda k: k + 2, "v2'")]),
    ("v2*v3", [(lambda k: 3, "w2")]),
    ("v2'*v3", [(lambda k: 3, "w2'")]),
    ("u1*t", [(lambda k: 3 * k, "t")]),
    ("u1'*t", [(lambda k: 3 * k, "t")]),
    ("v2*w2", [(lambda k: 1, "v2*v2")]),
    ("v2'*w2'", [(lambda k: -1, "v2'*v2'")]),
    ("v3*t", [(lambda k: 3, "u1'*t"), (lambda k: -3, "u1*t")]),
    ("w2*t", [(lambda k: 3, "v2*t")]),
    ("w2'*t", [(lambda k: 3, "v2'*t")]),
]

_DEGREE = {"p1": 0, "p2": 0, "p2'": 0, "p3": 0, "u1": 1, "u1'": 1, "u2": 1, "u2'": 1, "v": 2, "v1": 2, "v2": 2,
           "v2'": 2, "v3": 2, "w1": 3, "w2": 3, "w2'": 3, "t": 4}


def bv_equations(k):
    """(claim id, lhs product, [(coefficient, rhs product)]) for the listed values of D."""
    out = [(f"D({lhs})=0", _prod(lhs), []) for lhs in _BV_ZERO]
    for lhs, rhs in _BV_VALUES:
        out.append((f"D({lhs})", _prod(lhs), [(c(k), _prod(r)) for c, r in rhs]))
    return out


def product_degree(names):
    return sum(_DEGREE[n] for n in names)
