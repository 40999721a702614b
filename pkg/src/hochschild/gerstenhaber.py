"""Cup products and the Gerstenhaber bracket.

Bar-level formulas act on cochains of the bar resolution (tables on basis
tuples).  On an arbitrary resolution P the bracket comes from one of
  * homotopy liftings of a diagonal (degreewise linear solving),
  * a left contracting homotopy (closed formula through S = (1 + t_L d_R)^{-1}),
  * the homotopy phi_P of mu_L - mu_R together with a 3-diagonal.
"""

import itertools

from .errors import UsageError, ValidationError
from .fields import add_into
from .resolutions import Cochain, evaluate


# -- bar cochains ------------------------------------------------------------------------------


class BarCochain(Cochain):
    """A cochain on the bar resolution: n-tuples of basis indices -> algebra element.

    Values come from a table or a function (memoized); ``flat`` materializes the
    total table.
    """

    def __init__(self, algebra, degree, values=None, fn=None):
        self.algebra = algebra
        self.degree = degree
        self._fn = fn
        self.values = {}
        if values is not None:
            self.values = {g: algebra.field.clean(a) for g, a in values.items()}
            self.values = {g: a for g, a in self.values.items() if a}

    def value(self, g):
        if self._fn is None:
            return self.values.get(g, {})
        if g not in self.values:
            self.values[g] = self.algebra.field.clean(self._fn(g))
        return self.values[g]

    def tuples(self):
        return itertools.product(range(self.algebra.dim), repeat=self.degree)

    def materialize(self):
        for g in self.tuples():
            self.value(g)
        self._fn = None
        self.values = {g: a for g, a in self.values.items() if a}
        return self

    def flat(self):
        if self._fn is not None:
            self.materialize()
        return {(g, l): c for g, a in self.values.items() for l, c in a.items()}

    def __call__(self, *args):
        return self.value(tuple(args))


def _insert(f, prefix, elem, suffix):
    """f(prefix, elem, suffix) for an algebra element elem in one slot."""
    acc = {}
    for l, c in elem.items():
        add_into(acc, f.value(prefix + (l,) + suffix), c)
    return acc


def bar_delta(f):
    """The Hochschild coboundary delta^n as an alternating sum of faces."""
    A = f.algebra
    n = f.degree

    def fn(a):
        acc = {}
        add_into(acc, A.multiply({a[0]: 1}, f.value(a[1:])))
        for i in range(1, n + 1):
            prod = A.multiply({a[i - 1]: 1}, {a[i]: 1})
            add_into(acc, _insert(f, a[:i - 1], prod, a[i + 1:]), -1 if i % 2 else 1)
        add_into(acc, A.multiply(f.value(a[:n]), {a[n]: 1}), -1 if (n + 1) % 2 else 1)
        return acc

    return BarCochain(A, n + 1, fn=fn)


def bar_cup(f, g):
    A = f.algebra
    n = f.degree

    def fn(a):
        return A.multiply(f.value(a[:n]), g.value(a[n:]))

    return BarCochain(A, n + g.degree, fn=fn)


def bar_circle_i(f, g, i):
    """f o_i g (1-based slot i); zero unless n >= 1."""
    A = f.algebra
    n, m = f.degree, g.degree
    if n < 1:
        return BarCochain(A, max(n + m - 1, 0), values={})

    def fn(a):
        inner = g.value(a[i - 1:i - 1 + m])
        return _insert(f, a[:i - 1], inner, a[i - 1 + m:])

    return BarCochain(A, n + m - 1, fn=fn)


def bar_circle(f, g):
    A = f.algebra
    n, m = f.degree, g.degree
    if n < 1:
        return BarCochain(A, max(n + m - 1, 0), values={})
    parts = [((-1) ** ((m - 1) * (i - 1)), bar_circle_i(f, g, i)) for i in range(1, n + 1)]

    def fn(a):
        acc = {}
        for s, h in parts:
            add_into(acc, h.value(a), s)
        return acc

    return BarCochain(A, n + m - 1, fn=fn)


def bar_bracket(f, g):
    A = f.algebra
    n, m = f.degree, g.degree
    if n + m == 0:
        return BarCochain(A, 0, values={})
    fg, gf = bar_circle(f, g), bar_circle(g, f)
    s = -((-1) ** ((n - 1) * (m - 1)))

    def fn(a):
        acc = add_into({}, fg.value(a))
        return add_into(acc, gf.value(a), s)

    return BarCochain(A, n + m - 1, fn=fn)


def bar_cochain_from(res_cochain_fn, algebra, degree):
    return BarCochain(algebra, degree, fn=res_cochain_fn)


# -- the left contraction calculus on P (x) P ------------------------------------------------------


class LeftCalculus:
    """t_L, eta_L, d_L, d_R, mu_L, mu_R and S built from a left contracting homotopy.

    The bimodule section iota(a v b) = a (x) (1 v b) is used throughout, so t_L
    acts on the first factor with the middle coordinate as its right coefficient.
    """

    def __init__(self, res, contraction, horizon=None):
        self.res = res
        self.c = contraction
        self.P = res.P
        self.A = res.algebra
        self.horizon = (res.depth + 1) if horizon is None else horizon
        self._delta = {}
        self._zz = {}
        self._dprime = {}

    def t_L(self, x):
        return self.c.t(x)

    def eta_L(self, x):
        mt = self.A.mult
        acc = {}
        eta1 = self.c.eta1
        for key, c in x.items():
            a = key[0]
            rest = key[1:]
            for (e0, g0, m0), ce in eta1.items():
                for l, cl in mt[a][e0]:
                    k2 = (l, g0, m0) + rest
                    acc[k2] = acc.get(k2, 0) + c * ce * cl
        return self.P.clean(acc)

    def d_L(self, x):
        return self.P.apply_slot(x, 0, self.P.d, shift=-1)

    def d_R(self, x):
        return self.P.apply_slot(x, 1, self.P.d, shift=-1)

    def mu_L(self, x):
        return self.res.mu_left(x)

    def mu_R(self, x):
        return self.res.mu_right(x)

    def S(self, x):
        """(1 + t_L d_R)^{-1} x as the finite sum of (-t_L d_R)^l x."""
        total = dict(x)
        term = x
        for _ in range(self.horizon):
            term = self.t_L(self.d_R(term))
            if not term:
                return self.P.clean(total)
            term = {k: -c for k, c in term.items()}
            add_into(total, term)
        raise ValidationError("t_L d_R is not nilpotent within the horizon", identity="S-horizon")

    # -- maps given on generators -------------------------------------------------------

    def gen(self, g):
        return self.P.generator(g)

    def delta_image(self, g):
        """S eta_L on the generator g."""
        val = self._delta.get(g)
        if val is None:
            val = self._delta[g] = self.S(self.eta_L(self.gen(g)))
        return val

    def zz_image(self, g):
        """mu_R S eta_L on the generator g."""
        val = self._zz.get(g)
        if val is None:
            val = self._zz[g] = self.mu_R(self.delta_image(g))
        return val

    def delta(self, x, slot=0):
        return self.P.apply_slot(x, slot, self.delta_image)

    def delta2(self, x):
        """(Delta (x) 1) Delta."""
        return self.P.apply_slot(self.delta(x), 0, self.delta_image)

    def delta_prime_image(self, g):
        """(1 (x) mu_R S eta_L) S eta_L on g, the diagonal of the explicit lifting."""
        val = self._dprime.get(g)
        if val is None:
            val = self._dprime[g] = self.P.apply_slot(self.delta_image(g), 1, self.zz_image)
        return val

    def zz_holds(self, max_degree=None):
        top = self.res.depth if max_degree is None else max_degree
        for n in range(top + 1):
            for g in self.P.gens(n):
                if self.zz_image(g) != self.gen(g):
                    return False
        return True

    # -- identity checks ------------------------------------------------------------------

    def check_comm(self, max_degree):
        """(d_L + d_R) S = S (d_L + eta_L mu_L d_R) on generators of P (x) P."""
        P = self.P
        for n in range(max_degree + 1):
            for key in self.tensor_generators(n):
                x = {key: 1}
                Sx = self.S(x)
                lhs = add_into(self.d_L(Sx), self.d_R(Sx))
                inner = add_into(self.d_L(x), self.eta_L(self.mu_L(self.d_R(x))))
                rhs = self.S(P.clean(inner))
                if P.clean(add_into(lhs, rhs, -1)):
                    raise ValidationError(f"the comm identity fails on {key}", identity="comm")
        return True

    def tensor_generators(self, n):
        u = self.A.unit_index
        if u is None:
            raise UsageError("needs the unit as a basis element")
        return [(u,) + k + (u,) for k in self.P.tensor_generators(2, n)]

    def check_diagonal(self, max_degree):
        """d Delta = Delta d and mu (x) mu Delta = mu."""
        P = self.P
        for n in range(max_degree + 1):
            for g in P.gens(n):
                lhs = P.differential(self.delta_image(g))
                rhs = self.delta(P.d(g))
                if P.clean(add_into(dict(lhs), rhs, -1)):
                    raise ValidationError(f"Delta is not a chain map on {P.label(g)}", identity="Delta chain map")
        for g in P.gens(0):
            mm = self.res.mu_left(self.res.mu_right(self.delta_image(g)))
            if {k[0]: c for k, c in mm.items()} != self.res.aug.get(g, {}):
                raise ValidationError(f"counit fails on {P.label(g)}", identity="Delta counit")
        return True

    def check_zz(self, max_degree):
        if not self.zz_holds(max_degree):
            raise ValidationError("mu_R S eta_L != 1", identity="zz")
        return True


# -- cup products ---------------------------------------------------------------------------------


def apply_cochain(P, f, x, slot):
    """(1 (x) .. f .. (x) 1) on x, with the Koszul sign of a map of shift -deg f."""
    return P.apply_slot(x, slot, f.image, shift=-f.degree)


def tensor_cochains(P, f, g, x):
    """(f (x) g) on an arity-2 element; g acts first."""
    y = apply_cochain(P, g, x, 1)
    out = apply_cochain(P, f, y, 0)
    return {k[0]: c for k, c in out.items()}


def cup_via_diagonal(res, f, g, delta_image):
    """(-1)^{mn} (f (x) g) Delta on generators of degree n + m."""
    P = res.P
    n, m = f.degree, g.degree
    s = -1 if (n * m) % 2 else 1
    vals = {}
    for h in P.gens(n + m):
        val = tensor_cochains(P, f, g, delta_image(h))
        vals[h] = {l: s * c for l, c in val.items()}
    return Cochain(n + m, {h: res.field.clean(v) for h, v in vals.items()})


# -- the contracting-homotopy bracket ------------------------------------------------------------


def _contract_core(L, g, h):
    """mu_R S t_L (1 (x) g (x) 1)(1 (x) S eta_L) S eta_L on the generator h."""
    P = L.P
    x = L.delta_image(h)
    y = P.apply_slot(x, 1, L.delta_image)
    z = apply_cochain(P, g, y, 1)
    return L.mu_R(L.S(L.t_L(z)))


def circle_contracting(L, f, g):
    n, m = f.degree, g.degree
    deg = n + m - 1
    if deg < 0:
        return Cochain(0, {})
    vals = {}
    for h in L.P.gens(deg):
        val = evaluate(L.P, f, _contract_core(L, g, h))
        vals[h] = {l: -c for l, c in val.items()}
    return Cochain(deg, vals)


def bracket_contracting(L, f, g):
    """[f, g] = f o g - (-1)^{(n-1)(m-1)} g o f with the contracting-homotopy circle."""
    n, m = f.degree, g.degree
    fg = circle_contracting(L, f, g)
    gf = circle_contracting(L, g, f)
    s = -1 if ((n - 1) * (m - 1)) % 2 else 1
    return _combine(L.res.field, fg.degree, (1, fg), (-s, gf))


def _combine(field, degree, *terms):
    acc = {}
    for s, f in terms:
        add_into(acc, f.flat(), s)
    return Cochain.from_flat(degree, field.clean(acc))


# -- homotopy liftings ------------------------------------------------------------------------------


class HomotopySolver:
    """Degreewise solution phi of  phi d - (-1)^t d phi = R  for a bimodule map phi of shift t.

    The source is P (width 1) or P (x) P (width 2), with generators given by inner
    keys; R(y) is an element of P.  ``bottom(y)`` supplies phi where its target is
    P_0 and the lower equation does not determine it.
    """

    def __init__(self, res, width, shift, rhs, bottom=None, name="phi"):
        self.res = res
        self.P = res.P
        self.width = width
        self.shift = shift
        self.rhs = rhs
        self.bottom = bottom
        self.name = name
        self._memo = {}

    def source_degree(self, inner):
        return sum(self.P.deg[inner[q]] for q in range(0, len(inner), 2))

    def image(self, inner):
        val = self._memo.get(inner)
        if val is not None:
            return val
        P = self.P
        s = self.source_degree(inner)
        target = s + self.shift
        if target < 0:
            val = {}
        else:
            u = self.res.algebra.unit_index
            y = {(u,) + inner + (u,): 1}
            dy = P.differential(y)
            lower = P.apply_block(dy, 0, self.width, self.image, self.shift) if dy else {}
            if target == 0 and self.bottom is not None:
                val = self.bottom(inner)
            else:
                rhs = add_into(dict(lower), self.rhs(y), -1)
                if self.shift % 2:
                    rhs = {k: -c for k, c in rhs.items()}
                rhs = P.clean(rhs)
                if target == 0:
                    if rhs:
                        raise ValidationError(f"{self.name}: equation fails in degree {s}", identity=self.name)
                    val = {}
                else:
                    sol = self.res.dmap(target).solve(rhs)
                    if sol is None:
                        raise ValidationError(f"{self.name}: no solution in degree {s}", identity=self.name)
                    val = sol
        self._memo[inner] = val
        return val

    def __call__(self, x):
        return self.P.apply_block(x, 0, self.width, self.image, self.shift)

    def check(self, max_source_degree):
        """Verify phi d - (-1)^t d phi = R on source generators."""
        P = self.P
        u = self.res.algebra.unit_index
        for n in range(max_source_degree + 1):
            if self.width == 1:
                inners = [(g,) for g in P.gens(n)]
            else:
                inners = [k for k in P.tensor_generators(2, n)]
            for inner in inners:
                y = {(u,) + inner + (u,): 1}
                lhs = self(P.differential(y)) if n > 0 else {}
                dphi = P.apply_slot(self(y), 0, P.d, shift=-1) if n + self.shift > 0 else {}
                s = -1 if self.shift % 2 else 1
                diff = add_into(add_into(dict(lhs), dphi, -s), self.rhs(y), -1)
                if P.clean(diff):
                    raise ValidationError(f"{self.name}: boundary equation fails on {inner}", identity=self.name)
        return True


def mu_homotopy(res):
    """phi_P: P (x) P -> P[1] with boundary mu_L - mu_R, by the degreewise solver."""
    def rhs(y):
        return res.P.clean(add_into(res.mu_left(y), res.mu_right(y), -1))
    return HomotopySolver(res, 2, 1, rhs, name="phi_P")


def side_homotopy(res, delta_image):
    """phi: P -> P[1] with boundary (mu (x) 1 - 1 (x) mu) Delta."""
    P = res.P

    def rhs(y):
        x = P.apply_slot(y, 0, delta_image)
        return P.clean(add_into(res.mu_left(x), res.mu_right(x), -1))

    return HomotopySolver(res, 1, 1, rhs, name="epsilon")


def homotopy_lifting(res, f, delta_image, side=None):
    """A homotopy lifting phi_f of (f, Delta) by the degreewise solver.

    At the bottom degree phi_f = eta(-f phi) with phi the side homotopy, which
    makes mu phi_f + f phi vanish and the next degree solvable.
    """
    P = res.P
    n = f.degree
    if side is None:
        side = side_homotopy(res, delta_image)
    contraction_eta = getattr(res, "eta1", None)

    def rhs(y):
        x = P.apply_slot(y, 0, delta_image)
        a = apply_cochain(P, f, x, 0)
        b = apply_cochain(P, f, x, 1)
        return P.clean(add_into(a, b, -1))

    def bottom(inner):
        if contraction_eta is None:
            eta1 = res.preimage(res.algebra.unit, -1)
        else:
            eta1 = contraction_eta
        val = evaluate(P, f, side.image(inner))
        return P.lmul({l: -c for l, c in val.items()}, eta1)

    return HomotopySolver(res, 1, 1 - n, rhs, bottom=bottom, name=f"phi_f[{n}]")


def explicit_lifting(L, g):
    """(-1)^{m-1} mu_R S t_L (1 (x) g (x) 1)(1 (x) S eta_L) S eta_L, a lifting for the diagonal
    (1 (x) mu_R S eta_L) S eta_L."""
    m = g.degree
    s = -1 if (m - 1) % 2 else 1

    class _Explicit:
        shift = 1 - m

        def image(self, inner):
            val = _contract_core(L, g, inner[0])
            return {k: s * c for k, c in val.items()}

        def __call__(self, x):
            return L.P.apply_block(x, 0, 1, self.image, 1 - m)

    return _Explicit()


def bracket_lifting(res, f, g, phi_f, phi_g):
    """(-1)^m f phi_g + (-1)^{m(n-1)} g phi_f."""
    P = res.P
    n, m = f.degree, g.degree
    deg = n + m - 1
    if deg < 0:
        return Cochain(0, {})
    s1 = -1 if m % 2 else 1
    s2 = -1 if (m * (n - 1)) % 2 else 1
    vals = {}
    for h in P.gens(deg):
        y = P.generator(h)
        acc = {}
        add_into(acc, evaluate(P, f, phi_g(y)), s1)
        add_into(acc, evaluate(P, g, phi_f(y)), s2)
        vals[h] = res.field.clean(acc)
    return Cochain(deg, vals)


# -- the formula with phi_P and a 3-diagonal --------------------------------------------------------


def goodcond(L, max_degree):
    """(mu (x) 1) Delta = 1 = (1 (x) mu) Delta on generators."""
    for n in range(max_degree + 1):
        for g in L.P.gens(n):
            x = L.delta_image(g)
            if L.mu_L(x) != L.gen(g) or L.mu_R(x) != L.gen(g):
                return False
    return True


def bracket_nw(L, f, g, phi_P, epsilon="zero"):
    """f phi_P (1 (x) g (x) 1) Delta2 - (-1)^m (f (x) g) eps, antisymmetrized.

    ``epsilon`` is "zero" (valid under goodcond) or "substituted", meaning
    eps = (phi_P (x) 1 + 1 (x) phi_P) Delta2.
    """
    P = L.P
    field = L.res.field

    def circle(f, g):
        n, m = f.degree, g.degree
        deg = n + m - 1
        vals = {}
        for h in P.gens(deg):
            x3 = L.delta2(P.generator(h))
            y = apply_cochain(P, g, x3, 1)
            acc = add_into({}, evaluate(P, f, phi_P(y)))
            if epsilon == "substituted":
                eps = add_into(P.apply_block(x3, 0, 2, phi_P.image, 1), P.apply_block(x3, 1, 2, phi_P.image, 1))
                add_into(acc, tensor_cochains(P, f, g, P.clean(eps)), -1 if m % 2 == 0 else 1)
            elif epsilon != "zero":
                raise UsageError(f"unknown epsilon mode {epsilon!r}")
            vals[h] = field.clean(acc)
        return Cochain(deg, vals)

    n, m = f.degree, g.degree
    if n + m - 1 < 0:
        return Cochain(0, {})
    s = -1 if ((n - 1) * (m - 1)) % 2 else 1
    return _combine(field, n + m - 1, (1, circle(f, g)), (-s, circle(g, f)))


def bracket_nw2(L, f, g, phi_P):
    """The expanded form with eps = (phi_P (x) 1 + 1 (x) phi_P) Delta2."""
    P = L.P
    field = L.res.field
    n, m = f.degree, g.degree
    deg = n + m - 1

    def part(f, g):
        vals = {}
        for h in P.gens(deg):
            x3 = L.delta2(P.generator(h))
            y = {}
            add_into(y, apply_cochain(P, g, x3, 0))
            add_into(y, apply_cochain(P, g, x3, 1), -1)
            add_into(y, apply_cochain(P, g, x3, 2))
            vals[h] = evaluate(P, f, phi_P(P.clean(y)))
        return Cochain(deg, vals)

    s = -1 if ((n - 1) * (m - 1)) % 2 else 1
    return _combine(field, deg, (-1, part(f, g)), (s, part(g, f)))
