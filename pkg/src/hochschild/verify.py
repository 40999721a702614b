"""Verification of the dihedral family against its closed-form tables.

Rows are dicts {claim-id, status, lhs, rhs} with status match, mismatch or
not-applicable; values are serialized exactly and in a fixed order.
"""

from .connes import ConnesContraction, bv_operator
from .dihedral import (DihedralData, bv_equations, connes_table, dihedral_resolution, generator_set, monomial_label,
                       monomials, named_cochains, product_degree)
from .errors import HochschildError, UsageError, ValidationError
from .fields import add_into
from .gerstenhaber import LeftCalculus, cup_via_diagonal
from .resolutions import Cochain, Cohomology, cochain_combine


def format_trace(P, te):
    A, F = P.algebra, P.algebra.field
    items = sorted(te.items(), key=lambda kv: (P.deg[kv[0][1]], kv[0][1], kv[0][0]))
    return [[A.labels[v], P.label(g), F.format(c)] for (v, g), c in items]


def format_cochain(P, f):
    A, F = P.algebra, P.algebra.field
    out = []
    for g in P.gens(f.degree):
        val = f.value(g)
        out.append([P.label(g), [[A.labels[b], F.format(val[b])] for b in sorted(val)]])
    return out


def row(claim, ok, lhs=None, rhs=None):
    return {"claim-id": claim, "status": "match" if ok else "mismatch", "lhs": lhs, "rhs": rhs}


def attach_dihedral(res, k):
    """Recover the monomial bookkeeping of a dihedral resolution read from a file."""
    A = res.algebra
    D = DihedralData(k, A.field, res.depth)
    if A.labels != D.A.labels or A.to_json()["mult"] != D.A.to_json()["mult"]:
        raise UsageError(f"the resolution is not over the dihedral algebra with k = {k}")
    P = res.P
    for n in range(res.depth + 1):
        for m in monomials(n):
            lab = monomial_label(*m)
            if lab not in P.ids:
                raise UsageError(f"generator {lab} missing from the resolution")
            D.ids[m] = P.ids[lab]
    P.monomial = {g: m for m, g in D.ids.items()}
    res.dihedral = D
    return D


def structural_rows(res, contraction, calc):
    """The identity suite; each check reports the first identity that fails."""
    top = res.depth
    checks = [
        ("resolution", lambda: res.check()),
        ("contraction", lambda: contraction.check()),
        ("zz", lambda: calc.check_zz(top)),
        ("comm", lambda: calc.check_comm(max(top - 3, 0))),
        ("diagonal", lambda: calc.check_diagonal(top - 1)),
    ]
    out = []
    for name, fn in checks:
        try:
            fn()
            out.append(row(f"structure:{name}", True, "holds", "holds"))
        except ValidationError as e:
            out.append(row(f"structure:{name}", False, f"{e.identity}: {e}", "holds"))
    return out


def connes_rows(res, connes, max_degree):
    """B on every basis trace element v (x) g with deg g <= max_degree, against the closed form."""
    P, D = res.P, res.dihedral
    out = []
    for n in range(max_degree + 1):
        for g in P.gens(n):
            for v in range(D.dim):
                got = connes({(v, g): 1})
                want = connes_table(D, v, g, P)
                claim = f"B({D.A.labels[v]}|{P.label(g)})"
                out.append(row(claim, got == want, format_trace(P, got), format_trace(P, want)))
    return out


class _Products:
    def __init__(self, res, calc, named):
        self.res, self.calc, self.named = res, calc, named
        self._memo = {}

    def __call__(self, names):
        if not names:
            res = self.res
            return Cochain(0, {res.P.gens(0)[0]: dict(res.algebra.unit)})
        val = self._memo.get(names)
        if val is None:
            head = self(names[:-1]) if len(names) > 1 else None
            last = self.named[names[-1]]
            val = last if head is None else cup_via_diagonal(self.res, head, last, self.calc.delta_image)
            self._memo[names] = val
        return val


def bv_rows(res, calc, connes, max_degree):
    """Class-level check of every listed value of D with input degree <= max_degree."""
    P, D = res.P, res.dihedral
    F = res.field
    X = set(generator_set(D.k, F.char))
    named = named_cochains(D, P)
    prod = _Products(res, calc, named)
    coh = {}

    def H(n):
        if n not in coh:
            coh[n] = Cohomology(res, n)
        return coh[n]

    zero = [n for n in sorted(X) if n in named and named[n].degree == 0]
    vals = [bv_operator(res, connes, named[n]) for n in zero]
    out = [row("D(HH^0)=0", not any(f.values for f in vals), [[n, format_cochain(P, f)] for n, f in zip(zero, vals)
                                                            if f.values], [])]
    for claim, lhs, rhs in bv_equations(D.k):
        used = set(lhs) | {n for _, r in rhs for n in r}
        deg = product_degree(lhs)
        if not used <= X or deg > max_degree:
            out.append({"claim-id": claim, "status": "not-applicable", "lhs": None, "rhs": None})
            continue
        Df = bv_operator(res, connes, prod(lhs))
        acc = {}
        for c, r in rhs:
            add_into(acc, prod(r).flat(), c)
        want = Cochain.from_flat(deg - 1, F.clean(acc))
        diff = cochain_combine(F, deg - 1, (1, Df), (-1, want))
        ok = H(deg - 1).is_coboundary(diff)
        out.append(row(claim, ok, format_cochain(P, Df), format_cochain(P, want)))
    return out


def verify_dihedral_tables(k, field, depth=5, resolution=None):
    """The identity suite, the Connes table rows and the BV value list as report rows.

    ``resolution`` is an optional (Resolution, ContractingHomotopy) pair, e.g. read from a file.
    """
    if k < 2:
        raise UsageError("dihedral algebra needs k >= 2")
    if depth < 2:
        raise UsageError("depth must be at least 2")
    if resolution is None:
        res, contraction = dihedral_resolution(k, field, depth)
    else:
        res, contraction = resolution
        if contraction is None:
            raise UsageError("the resolution file has no contracting homotopy")
        attach_dihedral(res, k)
    calc = LeftCalculus(res, contraction)
    out = structural_rows(res, contraction, calc)
    if any(r["status"] == "mismatch" for r in out):
        return out
    try:
        connes = ConnesContraction(calc)
        out += connes_rows(res, connes, res.depth - 1)
        out += bv_rows(res, calc, connes, res.depth - 1)
    except HochschildError as e:
        out.append(row("evaluation", False, f"{type(e).__name__}: {e}", None))
    return out


def summarize(rows):
    counts = {"match": 0, "mismatch": 0, "not-applicable": 0}
    for r in rows:
        counts[r["status"]] += 1
    return counts
