"""Projective bimodule resolutions and the (co)homology computed from them."""

import json

from .algebra import Algebra, load_algebra
from .complexes import BarComplex, FreeBimoduleComplex, GradedMap
from .errors import TruncationError, UsageError, ValidationError
from .fields import add_into
from .linalg import Echelon, LinearMap


class Resolution:
    """A free bimodule complex P with augmentation mu: P_0 -> A."""

    def __init__(self, complex, augmentation, name=None):
        self.P = complex
        self.algebra = complex.algebra
        self.field = complex.field
        self.depth = complex.depth
        self.aug = {g: self.field.clean(a) for g, a in augmentation.items()}
        self.name = name or complex.name
        self._dmaps = {}

    def __repr__(self):
        return f"<Resolution {self.name} depth={self.depth}>"

    # -- augmentation -----------------------------------------------------------

    def mu_image(self, g):
        """mu on a generator as an arity-0 element (zero off degree 0)."""
        if self.P.deg[g] != 0:
            return {}
        return {(l,): c for l, c in self.aug.get(g, {}).items()}

    def mu(self, x):
        """mu on an element of P_0, as an algebra element."""
        out = self.P.apply_slot(x, 0, self.mu_image)
        return {k[0]: c for k, c in out.items()}

    def mu_left(self, x):
        """mu_L = mu (x) 1 on P (x) P."""
        return self.P.apply_slot(x, 0, self.mu_image)

    def mu_right(self, x):
        """mu_R = 1 (x) mu on P (x) P."""
        return self.P.apply_slot(x, 1, self.mu_image)

    # -- k-linear structure ---------------------------------------------------------

    def kbasis(self, n):
        dim = self.algebra.dim
        return [(a, g, b) for g in self.P.gens(n) for a in range(dim) for b in range(dim)]

    def d_kbasis(self, key):
        return self.P.apply_slot({key: 1}, 0, self.P.d, shift=-1)

    def dmap(self, n):
        """d_n: P_n -> P_{n-1} as a LinearMap on the k-basis (d_0 is mu)."""
        if n not in self._dmaps:
            if n == 0:
                cols = [(key, self.mu({key: 1})) for key in self.kbasis(0)]
            else:
                cols = [(key, self.d_kbasis(key)) for key in self.kbasis(n)]
            self._dmaps[n] = LinearMap(self.field, cols)
        return self._dmaps[n]

    def preimage(self, rhs, n):
        """Some X in P_{n+1} with d X = rhs (for n = -1: rhs in A and mu X = rhs)."""
        if not rhs:
            return {}
        sol = self.dmap(n + 1).solve(rhs)
        if sol is None:
            raise ValidationError(f"no preimage in degree {n + 1}: resolution not exact", identity="exactness")
        return sol

    # -- validation -------------------------------------------------------------------

    def check(self, max_degree=None, exactness=True):
        """d^2 = 0, mu d = 0 and exactness ranks up to the truncation depth."""
        top = self.depth if max_degree is None else min(max_degree, self.depth)
        self.P.check_d_squared(top)
        for g in self.P.gens(1) if top >= 1 else []:
            if self.mu(self.P.d(g)):
                raise ValidationError(f"mu d != 0 on {self.P.label(g)}", identity="mu d=0")
        if exactness:
            for n in range(0, top):
                ker = len(self.kbasis(n)) - self.dmap(n).rank
                if ker != self.dmap(n + 1).rank:
                    raise ValidationError(f"not exact in degree {n}", identity="exactness")
            if self.dmap(0).rank != self.algebra.dim:
                raise ValidationError("augmentation is not onto", identity="exactness")
        return True


class ContractingHomotopy:
    """A left contracting homotopy (t, eta) given by t on pairs (generator, right basis index).

    ``t_fn(g, b)`` returns t(1 g b) as an element of P; results are memoized.
    ``eta1`` is eta(1), an element of P_0.
    """

    def __init__(self, resolution, t_fn, eta1, name="t"):
        self.res = resolution
        self.P = resolution.P
        self._fn = t_fn
        self._memo = {}
        self.eta1 = self.P.clean(eta1)
        self.name = name

    def t_image(self, g, b):
        key = (g, b)
        val = self._memo.get(key)
        if val is None:
            if self.P.deg[g] >= self.P.depth:
                raise TruncationError(f"t on degree {self.P.deg[g]} needs degree {self.P.deg[g] + 1}")
            val = self._memo[key] = self._fn(g, b)
        return val

    def t(self, x):
        """Left-linear t on elements of P or, acting in the first slot, of P (x) P (x) ..."""
        return self.P.apply_left_linear(x, self.t_image)

    def eta(self, a):
        return self.P.lmul(a, self.eta1)

    def eta_mu(self, x):
        """eta mu on elements of P (zero off degree 0)."""
        acc = {}
        for key, c in x.items():
            if self.P.deg[key[1]] == 0:
                add_into(acc, self.eta(self.res.mu({key: 1})), c)
        return self.P.clean(acc)

    def check(self, max_degree=None):
        """d t + t d + eta mu = 1 and t(t + eta) = 0 on every (generator, right basis) pair.

        The first identity is checked in degrees < depth, the second in degrees < depth - 1,
        so that every term stays inside the truncation.
        """
        P, A = self.P, self.res.algebra
        top = P.depth if max_degree is None else min(max_degree, P.depth)
        u = A.unit
        for n in range(0, top):
            for g in P.gens(n):
                for b in range(A.dim):
                    x = {(ua, g, b): cu for ua, cu in u.items()}
                    tx = self.t(x)
                    lhs = {}
                    add_into(lhs, P.apply_slot(tx, 0, P.d, shift=-1))
                    add_into(lhs, self.t(P.apply_slot(x, 0, P.d, shift=-1)))
                    add_into(lhs, self.eta_mu(x))
                    add_into(lhs, x, -1)
                    if P.clean(lhs):
                        raise ValidationError(f"dt + td + eta mu != 1 on {P.label(g)}*{A.labels[b]}",
                                              identity="dt+td+eta mu=1")
                    if n + 1 < top and self.t(tx):
                        raise ValidationError(f"t t != 0 on {P.label(g)}*{A.labels[b]}", identity="t(t+eta)=0")
        if top >= 1 and self.t(self.eta1):
            raise ValidationError("t eta != 0", identity="t(t+eta)=0")
        return True


def normalize(c):
    """Replace t by t' d t' where t' = t - t eta mu; keeps dt+td+eta mu = 1 and forces t(t+eta) = 0."""
    P = c.P

    def t1(x):
        return c.t(add_into(dict(x), c.eta_mu(x), -1))

    def t_new(g, b):
        x = {(ua, g, b): cu for ua, cu in c.res.algebra.unit.items()}
        y = t1(x)
        return t1(P.apply_slot(y, 0, P.d, shift=-1))

    return ContractingHomotopy(c.res, t_new, c.eta1, name=c.name + "'")


def compute_contraction(res, check=True):
    """A left contracting homotopy found degree by degree by exact linear algebra, then normalized."""
    P, A = res.P, res.algebra
    eta1 = res.preimage(A.unit, -1)
    raw = None

    def t_fn(g, b):
        x = {(ua, g, b): cu for ua, cu in A.unit.items()}
        n = P.deg[g]
        rhs = dict(x)
        if n == 0:
            add_into(rhs, raw.eta_mu(x), -1)
        else:
            add_into(rhs, raw.t(P.apply_slot(x, 0, P.d, shift=-1)), -1)
        return res.preimage(P.clean(rhs), n)

    raw = ContractingHomotopy(res, t_fn, eta1, name="computed")
    c = normalize(raw)
    if check:
        c.check()
    return c


# -- the bar resolution --------------------------------------------------------------


def bar_resolution(A, depth, budget=200000):
    B = BarComplex(A, depth, budget=budget)
    return Resolution(B, {(): dict(A.unit)}, name="Bar")


def bar_contraction(res, check=False):
    """The left extra degeneracy x -> (-1)^{n+1} x (x) 1, eta(a) = a (x) 1, then normalized."""
    u = res.algebra.unit_index

    def s(g, b):
        sign = 1 if (len(g) + 1) % 2 == 0 else -1
        return {(u, g + (b,), u): sign}

    raw = ContractingHomotopy(res, s, {(u, (), u): 1}, name="bar")
    c = normalize(raw)
    if check:
        c.check()
    return c


# -- comparison morphisms ------------------------------------------------------------------


def lift_chain_map(P_res, Q_res, cQ):
    """Phi: P -> Q with Phi_0(g) = eta_Q(mu_P(g)) and Phi_n(g) = t_Q(Phi_{n-1}(d g))."""
    P, Q = P_res.P, Q_res.P
    if P.algebra is not Q.algebra:
        raise UsageError("resolutions over different algebras")
    phi = None

    def image(g):
        if P.deg[g] == 0:
            return cQ.eta(P_res.aug.get(g, {}))
        return cQ.t(phi(P.d(g)))

    phi = GradedMap(P, 0, image, name=f"Phi[{P_res.name}->{Q_res.name}]")
    return phi


# -- cohomology and homology ------------------------------------------------------------------


class Cochain:
    """A bimodule map P_n -> A, stored as generator -> algebra element."""

    def __init__(self, degree, values):
        self.degree = degree
        self.values = {g: a for g, a in values.items() if a}

    def value(self, g):
        return self.values.get(g, {})

    def image(self, g):
        return {(l,): c for l, c in self.value(g).items()}

    def flat(self):
        return {(g, l): c for g, a in self.values.items() for l, c in a.items()}

    @classmethod
    def from_flat(cls, degree, vec):
        vals = {}
        for (g, l), c in vec.items():
            vals.setdefault(g, {})[l] = c
        return cls(degree, vals)

    def __repr__(self):
        return f"Cochain(deg={self.degree}, {self.values})"


def evaluate(P, f, x):
    """f applied to an element x of P_n (arity 1), as an algebra element."""
    out = P.apply_slot(x, 0, f.image)
    return {k[0]: c for k, c in out.items()}


def cochain_combine(field, degree, *terms):
    acc = {}
    for s, f in terms:
        add_into(acc, f.flat(), s)
    return Cochain.from_flat(degree, field.clean(acc))


def coboundary(res, f):
    """delta f = f d."""
    P = res.P
    n = f.degree
    return Cochain(n + 1, {g: evaluate(P, f, P.d(g)) for g in P.gens(n + 1)})


class Cohomology:
    """HH^n from the Hom-complex of a resolution, with coboundary membership."""

    def __init__(self, res, n):
        if n + 1 > res.depth:
            raise TruncationError(f"HH^{n} needs depth >= {n + 1}")
        self.res = res
        self.n = n
        F = res.field
        dim = res.algebra.dim
        P = res.P
        self.coords = [(g, l) for g in P.gens(n) for l in range(dim)]
        cols = []
        for (g, l) in self.coords:
            cols.append(((g, l), coboundary(res, Cochain(n, {g: {l: 1}})).flat()))
        self.cocycles = LinearMap(F, cols).kernel
        self.boundaries = Echelon(F)
        if n > 0:
            for g in P.gens(n - 1):
                for l in range(dim):
                    self.boundaries.add(coboundary(res, Cochain(n - 1, {g: {l: 1}})).flat())
        ext = Echelon(F, track=True)
        for lead, (row, _) in sorted(self.boundaries.rows.items()):
            ext.add(row, ("B", lead))
        self.basis = []
        for z in self.cocycles:
            if ext.add(z, ("H", len(self.basis))) is None:
                self.basis.append(Cochain.from_flat(n, z))
        self._ext = ext
        self.dim = len(self.basis)

    def is_cocycle(self, f):
        return not coboundary(self.res, f).flat()

    def is_coboundary(self, f):
        return self.boundaries.contains(f.flat())

    def coordinates(self, f):
        """Coordinates of the class of a cocycle f in the chosen basis."""
        if not self.is_cocycle(f):
            raise ValidationError("not a cocycle", identity="cocycle")
        expr = self._ext.express(f.flat())
        return {i: c for (tag, i), c in expr.items() if tag == "H"}


class TraceHomology:
    """H_n(Tr P), i.e. HH_n(A), with boundary membership."""

    def __init__(self, res, n):
        if n + 1 > res.depth:
            raise TruncationError(f"HH_{n} needs depth >= {n + 1}")
        self.res = res
        self.n = n
        F = res.field
        P = res.P
        dim = res.algebra.dim
        cols = []
        for g in P.gens(n):
            for v in range(dim):
                cols.append(((v, g), P.trace_differential({(v, g): 1}) if n > 0 else {}))
        self.cycles = LinearMap(F, cols).kernel
        self.boundaries = Echelon(F)
        for g in P.gens(n + 1):
            for v in range(dim):
                self.boundaries.add(P.trace_differential({(v, g): 1}))
        ext = Echelon(F, track=True)
        for lead, (row, _) in sorted(self.boundaries.rows.items()):
            ext.add(row, ("B", lead))
        self.basis = []
        for z in self.cycles:
            if ext.add(z, ("H", len(self.basis))) is None:
                self.basis.append(z)
        self._ext = ext
        self.dim = len(self.basis)

    def is_cycle(self, x):
        return self.n == 0 or not self.res.P.trace_differential(x)

    def is_boundary(self, x):
        return self.boundaries.contains(x)

    def coordinates(self, x):
        if not self.is_cycle(x):
            raise ValidationError("not a cycle", identity="cycle")
        expr = self._ext.express(x)
        return {i: c for (tag, i), c in expr.items() if tag == "H"}


def cohomology(res, n):
    return Cohomology(res, n)


def homology_of_trace(res, n):
    return TraceHomology(res, n)


def pullback(f, phi):
    """The cochain f Phi on the source of Phi."""
    P = phi.complex
    Q_deg = f.degree
    vals = {}
    for g in P.gens(Q_deg):
        img = phi.image(g)
        acc = {}
        for (a, h, b), c in img.items():
            for l, cl in f.value(h).items():
                for l1, c1 in phi.complex.algebra.mult[a][l]:
                    for l2, c2 in phi.complex.algebra.mult[l1][b]:
                        acc[l2] = acc.get(l2, 0) + c * cl * c1 * c2
        vals[g] = phi.complex.field.clean(acc)
    return Cochain(Q_deg, vals)


def trace_push(phi, te):
    """Tr(Phi) on a trace element of the source."""
    P = phi.complex
    return P.trace(P.apply_slot(P.untrace(te), 0, phi.image))


# -- resolution files ------------------------------------------------------------------------


def resolution_to_json(res, contraction=None, max_degree=None, inline_algebra=True):
    P, A, F = res.P, res.algebra, res.field
    top = res.depth if max_degree is None else max_degree
    lab = A.labels

    def elem_entries(x):
        return [{"left": lab[a], "gen": P.label(g), "right": lab[b], "coeff": F.format(c)}
                for (a, g, b), c in sorted(x.items(), key=lambda kv: (P.deg[kv[0][1]], str(kv[0])))]

    out = {
        "algebra": A.to_json() if inline_algebra else A.name,
        "generators": [[P.label(g) for g in P.gens(n)] for n in range(top + 1)],
        "differential": [],
        "augmentation": {P.label(g): A.format_element(res.aug.get(g, {})) for g in P.gens(0)},
    }
    for n in range(1, top + 1):
        for g in P.gens(n):
            out["differential"].append({"degree": n, "generator": P.label(g), "image": elem_entries(P.d(g))})
    if contraction is not None:
        out["contraction"] = {
            "eta": elem_entries(contraction.eta1),
            "t": [
                {"degree": n, "generator": P.label(g), "right": lab[b],
                 "image": elem_entries(contraction.t_image(g, b))}
                for n in range(top) for g in P.gens(n) for b in range(A.dim)
            ],
        }
    return out


def resolution_from_json(obj, base_dir=None, check=True):
    """Parse a resolution file; returns (Resolution, ContractingHomotopy or None)."""
    alg = obj["algebra"]
    if isinstance(alg, str):
        from pathlib import Path
        path = Path(base_dir or ".") / alg
        A = load_algebra(path)
    else:
        A = Algebra.from_json(alg)
    F = A.field
    gens = obj["generators"]
    labels = [lab for row in gens for lab in row]

    def parse_elem(entries):
        out = {}
        for e in entries:
            key = (A.index[e["left"]], e["gen"], A.index[e["right"]])
            out[key] = out.get(key, 0) + F.parse(e["coeff"])
        return out

    diff = {lab: {} for lab in labels}
    for entry in obj.get("differential", []):
        if entry["generator"] not in diff:
            raise UsageError(f"unknown generator {entry['generator']!r}")
        diff[entry["generator"]] = parse_elem(entry["image"])
    P = FreeBimoduleComplex.explicit(A, gens, diff)
    aug = {P.ids[lab]: {A.index[l]: F.parse(c) for l, c in val.items()}
           for lab, val in obj.get("augmentation", {}).items()}
    res = Resolution(P, aug, name=obj.get("name", "P"))
    contraction = None
    if "contraction" in obj:
        cobj = obj["contraction"]

        def remap(x):
            return {(a, P.ids[g], b): c for (a, g, b), c in x.items()}

        table = {}
        for e in cobj["t"]:
            table[(P.ids[e["generator"]], A.index[e["right"]])] = remap(parse_elem(e["image"]))

        def t_fn(g, b):
            if (g, b) not in table:
                raise TruncationError(f"contraction not recorded on ({P.label(g)}, {A.labels[b]})")
            return table[(g, b)]

        contraction = ContractingHomotopy(res, t_fn, remap(parse_elem(cobj["eta"])), name="file")
    if check:
        res.check()
        if contraction is not None:
            contraction.check()
    return res, contraction


def load_resolution(path, check=True):
    from pathlib import Path
    with open(path) as fh:
        obj = json.load(fh)
    return resolution_from_json(obj, base_dir=Path(path).parent, check=check)


def dual_numbers_resolution(A, depth=6):
    """The periodic resolution of k[x]/(x^2): one generator e_n per degree,
    d(e_n) = x e_{n-1} + (-1)^n e_{n-1} x."""
    if A.labels != ["1", "x"]:
        raise UsageError("expects the dual numbers with basis [1, x]")
    gens = [[f"e{n}"] for n in range(depth + 1)]
    diff = {}
    for n in range(1, depth + 1):
        diff[f"e{n}"] = {(1, f"e{n - 1}", 0): 1, (0, f"e{n - 1}", 1): 1 if n % 2 == 0 else -1}
    P = FreeBimoduleComplex.explicit(A, gens, diff, name="P[dual-numbers]")
    return Resolution(P, {P.ids["e0"]: {0: 1}}, name="dual-numbers")
