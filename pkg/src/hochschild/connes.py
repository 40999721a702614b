"""Connes' differential on Tr(P) and the BV operator on cochains of a symmetric algebra.

Chain-level routes to B: Tr(P_n) -> Tr(P_{n+1})
  * bar: transfer to Tr(Bar), apply the cyclic formula, transfer back;
  * kaledin: Tr(phi_P)(1 + sigma) Tr(Delta), or Tr(phi_P) sigma Tr(Delta) + Tr(eps);
  * contraction: -Tr(mu_R S t_L) sigma Tr((1 (x) (mu_R S eta_L)^2) S eta_L).
"""

from .errors import UnsupportedOperation, UsageError
from .fields import add_into
from .resolutions import Cochain, bar_contraction, bar_resolution, lift_chain_map, trace_push


def bar_connes(algebra, te):
    """The cyclic formula on Tr(Bar_n) = A^{(x)(n+1)}, trace keys (a0, (a1, .., an))."""
    u = algebra.unit_index
    if u is None:
        raise UsageError("needs the unit as a basis element")
    acc = {}
    for (a0, tail), c in te.items():
        word = (a0,) + tuple(tail)
        n = len(tail)
        for i in range(n + 1):
            s = -c if (i * n) % 2 else c
            rot = word[i:] + word[:i]
            k1 = (u, rot)
            acc[k1] = acc.get(k1, 0) + s
            k2 = (word[i], (u,) + word[i + 1:] + word[:i])
            acc[k2] = acc.get(k2, 0) + s
    return algebra.field.clean(acc)


class ConnesBar:
    """B on Tr(P) through comparison morphisms with the bar resolution."""

    def __init__(self, res, contraction, bar_depth=None):
        A = res.algebra
        depth = bar_depth if bar_depth is not None else min(res.depth, 4)
        self.res = res
        self.bar = bar_resolution(A, depth)
        cb = bar_contraction(self.bar)
        self.to_bar = lift_chain_map(res, self.bar, cb)
        self.from_bar = lift_chain_map(self.bar, res, contraction)

    def __call__(self, te):
        x = trace_push(self.to_bar, te)
        y = bar_connes(self.res.algebra, x)
        return trace_push(self.from_bar, y)


def _trace_delta(P, delta_image, te):
    return P.trace(P.apply_slot(P.untrace(te), 0, delta_image))


class ConnesKaledin:
    """Tr(phi_P)(1 + sigma) Tr(Delta), or with ``corrected`` Tr(phi_P) sigma Tr(Delta) + Tr(eps)."""

    def __init__(self, res, delta_image, phi_P, epsilon=None, corrected=False):
        self.P = res.P
        self.delta_image = delta_image
        self.phi_P = phi_P
        self.eps = epsilon
        self.corrected = corrected
        if corrected and epsilon is None:
            raise UsageError("the corrected form needs eps")

    def __call__(self, te):
        P = self.P
        td = _trace_delta(P, self.delta_image, te)
        arg = P.sigma(td)
        if not self.corrected:
            arg = add_into(dict(arg), td)
        out = P.trace_map(self.phi_P, P.clean(arg))
        if self.corrected:
            add_into(out, P.trace_map(self.eps, te))
        return P.clean(out)


class ConnesContraction:
    """-Tr(mu_R S t_L) sigma Tr((1 (x) (mu_R S eta_L)^2) S eta_L).

    When mu_R S eta_L = 1 has been verified the square is dropped.
    """

    def __init__(self, calc, zz_identity=None):
        self.L = calc
        self.P = calc.P
        self.collapse = calc.zz_holds() if zz_identity is None else zz_identity
        self._diag = {}

    def diag_image(self, g):
        val = self._diag.get(g)
        if val is None:
            L = self.L
            val = L.delta_image(g)
            if not self.collapse:
                for _ in range(2):
                    val = self.P.apply_slot(val, 1, L.zz_image)
            self._diag[g] = val
        return val

    def __call__(self, te):
        P, L = self.P, self.L
        x = P.trace(P.apply_slot(P.untrace(te), 0, self.diag_image))
        y = P.untrace(P.sigma(x))
        z = P.trace(L.mu_R(L.S(L.t_L(y))))
        return P.clean({k: -c for k, c in z.items()})


# -- the BV operator --------------------------------------------------------------------------------


def theta_trace(algebra, f, te):
    """theta Tr(f) on a trace element: (w, g) -> theta(w f(g))."""
    acc = 0
    for (w, g), c in te.items():
        acc += c * algebra.theta(algebra.multiply({w: 1}, f.value(g)))
    return algebra.field.reduce(acc)


def bv_operator(res, connes, f):
    """D(f): P_{n-1} -> A with theta Tr(D(f)) = theta Tr(f) B_P."""
    A = res.algebra
    if not A.is_symmetric:
        raise UnsupportedOperation("the BV operator needs a symmetric algebra")
    n = f.degree
    if n == 0:
        return Cochain(0, {})
    F = A.field
    vals = {}
    for g in res.P.gens(n - 1):
        acc = {}
        for v in range(A.dim):
            s = theta_trace(A, f, connes({(v, g): 1}))
            if s:
                add_into(acc, A.dual({v: 1}), s)
        vals[g] = F.clean(acc)
    return Cochain(n - 1, vals)


def bracket_via_bv(res, connes, cup, f, g):
    """-(-1)^{(|f|+1)|g|}(D(f g) - D(f) g - (-1)^{|f|} f D(g)) with a chain-level cup."""
    F = res.field
    n, m = f.degree, g.degree
    deg = n + m - 1
    if deg < 0:
        return Cochain(0, {})
    acc = {}
    add_into(acc, bv_operator(res, connes, cup(f, g)).flat())
    if n > 0:
        add_into(acc, cup(bv_operator(res, connes, f), g).flat(), -1)
    if m > 0:
        add_into(acc, cup(f, bv_operator(res, connes, g)).flat(), 1 if n % 2 else -1)
    s = 1 if ((n + 1) * m) % 2 else -1
    return Cochain.from_flat(deg, F.clean({k: s * c for k, c in acc.items()}))
