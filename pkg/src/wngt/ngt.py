"""Almost dominant weights and the elements varpi_b^ae built from them.

For b with (b, alpha_j) >= 0 off one index k and (b, alpha_k) <= 0, and a
finite element ae, we form

    upsilon = w0 * ae * dw0(b),    varpi = b * upsilon^{-1},

where dw0(b) is the longest element of the parabolic subgroup on the simple
roots orthogonal to b, with alpha_k dropped.  The validity report records the
length and theta conditions under which varpi has forced endpoints.

Weights are doubled integer tuples internally; the public entry points take
rational coordinates.
"""
from dataclasses import dataclass, field
from itertools import product

from .errors import (BarNotAlmostDominant, BetaNegative, ConditionsFailed, NotAlmostDominant,
                     RankTooSmall, WngtError)
from .rootsys import is_positive_vector, to_doubled
from .weyl import (AffineElement, AffineRoot, SignedPerm, finite_element, finite_lambda,
                   finite_length, longest, longest_parabolic, pi_decompose, simple_affine_roots,
                   weyl_group)
from .words import is_minimal_ngt, nonmovable_endpoints


# ---------------------------------------------------------------------
# small helpers on the finite Weyl group

def _w0(sys):
    return longest(sys)


def sigma(sys, x):
    """The involution x -> -w0(x) on roots."""
    return tuple(-c for c in _w0(sys)(x))


def sigma_w(sys, b2):
    """The same involution on doubled weights."""
    return sys.canon(sigma(sys, b2))


def sigma_elt(sys, w):
    """Conjugation by w0, the diagram involution on W."""
    w0 = _w0(sys)
    return w0 * w * w0


def sigma_index(sys, j):
    """The index of sigma(alpha_j)."""
    return sys.simple_roots.index(sigma(sys, sys.simple_roots[j - 1])) + 1


def _pairings(sys, b2):
    return [sys.pair_b2(a, b2) for a in sys.simple_roots]


def almost_dominant_indices(sys, b2):
    """All k with b in P_+^(k)."""
    p = _pairings(sys, b2)
    neg = [j for j, c in enumerate(p, 1) if c < 0]
    if len(neg) > 1:
        return []
    if neg:
        return neg
    return [j for j, c in enumerate(p, 1) if c == 0]


def is_almost_dominant(sys, b2, k):
    p = _pairings(sys, b2)
    return p[k - 1] <= 0 and all(c >= 0 for j, c in enumerate(p, 1) if j != k)


def _adjacent(sys, i, j):
    return sys.inner(sys.simple_roots[i - 1], sys.simple_roots[j - 1]) != 0


def _components(sys, nodes):
    nodes = sorted(nodes)
    seen, out = set(), []
    for v in nodes:
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in nodes:
                if y not in seen and _adjacent(sys, x, y):
                    seen.add(y)
                    stack.append(y)
        out.append(tuple(sorted(comp)))
    return out


def _roots_of(sys, J):
    """Positive roots of the parabolic subsystem on J."""
    return finite_lambda(sys, longest_parabolic(sys, J))


# ---------------------------------------------------------------------
# the diagram of b

@dataclass(frozen=True)
class GammaB:
    components: tuple
    removed: tuple
    dot_removed: int | None

    @property
    def nodes(self):
        """Simple indices of the dotted diagram."""
        return tuple(sorted(j for c in self.components for j in c if j != self.dot_removed))


@dataclass(frozen=True)
class AlmostDominant:
    b2: tuple
    k: int

    def p(self, sys):
        return -sys.pair_b2(sys.simple_roots[self.k - 1], self.b2)


def _gamma_b2(sys, b2, k):
    if not is_almost_dominant(sys, b2, k):
        raise NotAlmostDominant(f"b={b2} is not almost dominant at k={k}")
    p = _pairings(sys, b2)
    removed = tuple(j for j, c in enumerate(p, 1) if c != 0)
    keep = [j for j in range(1, sys.rank + 1) if j not in removed]
    dot = k if p[k - 1] == 0 else None
    return GammaB(tuple(_components(sys, keep)), removed, dot)


def gamma_b(sys, b, k):
    """The diagram of simple roots orthogonal to b (b in rational coordinates)."""
    return _gamma_b2(sys, to_doubled(b), k)


def _dot_w0(sys, b2, k):
    return longest_parabolic(sys, _gamma_b2(sys, b2, k).nodes)


def dot_w0(sys, b, k):
    """Longest element of the dotted parabolic of b."""
    return _dot_w0(sys, to_doubled(b), k)


# ---------------------------------------------------------------------
# varpi and its report

@dataclass
class VarpiData:
    system: object
    b2: tuple
    k: int
    ae: SignedPerm
    upsilon: SignedPerm
    varpi: AffineElement
    bar_b2: tuple
    bar_k: int
    bar_ae: SignedPerm
    report: dict = field(default_factory=dict)

    @property
    def p(self):
        return -self.system.pair_b2(self.system.simple_roots[self.k - 1], self.b2)

    @property
    def beta(self):
        """-upsilon(alpha_k) as a finite root."""
        return tuple(-c for c in self.upsilon(self.system.simple_roots[self.k - 1]))

    @property
    def valid(self):
        r = self.report
        return r["a"] and r["b"] and r["vth_b"] and r["vth_bar"]

    def expected_endpoints(self):
        """(alpha_kbar, [beta, p]) as affine roots."""
        sys = self.system
        first = AffineRoot(sys.simple_roots[self.bar_k - 1], 0)
        return first, AffineRoot(self.beta, self.p)

    def bar(self):
        """The data for the inverse element."""
        return build_varpi_doubled(self.system, self.bar_b2, self.bar_k, self.bar_ae, kbar=self.k)


def _len_additive(sys, x, y):
    return finite_length(sys, x * y) == finite_length(sys, x) + finite_length(sys, y)


def _tilde_union(a, b):
    a, b = set(a), set(b)
    out = a | b
    for r in list(out):
        neg = tuple(-c for c in r)
        if r in out and neg in out:
            out.discard(r)
            out.discard(neg)
    return out


def _apply(w, roots):
    return {tuple(w(r)) for r in roots}


def _vth_ok(sys, b2, dw, ae):
    c = sys.pair_b2(sys.theta, b2)
    if c <= 0:
        return True
    if c == 1:
        return tuple(dw(sys.theta)) not in finite_lambda(sys, ae)
    return False


def _choose_kbar(sys, bar_b2, k, kbar):
    options = almost_dominant_indices(sys, bar_b2)
    if not options:
        raise BarNotAlmostDominant(f"bar b={bar_b2} is not almost dominant")
    if kbar is not None:
        if kbar not in options:
            raise BarNotAlmostDominant(f"bar b={bar_b2} is not almost dominant at {kbar}")
        return kbar
    sk = sigma_index(sys, k)
    return sk if sk in options else options[0]


def build_varpi_doubled(sys, b2, k, ae=None, kbar=None, strict=False):
    """build_varpi with b given in doubled coordinates."""
    b2 = sys.canon(tuple(b2))
    ae = SignedPerm.identity(sys.dim) if ae is None else SignedPerm(ae)
    dw = _dot_w0(sys, b2, k)
    w0 = _w0(sys)
    ups = w0 * ae * dw
    varpi = AffineElement(sys, b2, ups.inverse())
    bar_b2 = sigma_w(sys, ae(b2))
    kb = _choose_kbar(sys, bar_b2, k, kbar)
    dw_bar = _dot_w0(sys, bar_b2, kb)
    dw_sb = _dot_w0(sys, sigma_w(sys, b2), sigma_index(sys, k))
    bar_ae = dw_sb * sigma_elt(sys, ae.inverse()) * dw_bar
    v = VarpiData(sys, b2, k, ae, ups, varpi, bar_b2, kb, bar_ae)
    v.report = _report(v, dw, dw_bar)
    if strict:
        failed = [c for c in ("a", "b", "vth_b", "vth_bar") if not v.report[c]]
        if failed:
            raise ConditionsFailed(failed, v)
    return v


def build_varpi(sys, b, k, ae=None, kbar=None, strict=False):
    """varpi_b^ae for b in P_+^(k), with a per-condition validity report.

    ``ae`` is a signed permutation (identity by default).  With
    ``strict=True`` a failing length or theta condition raises
    ConditionsFailed; otherwise the report carries the booleans.
    """
    return build_varpi_doubled(sys, to_doubled(b), k, ae, kbar, strict)


def _report(v, dw, dw_bar):
    sys = v.system
    ae, bae = v.ae, v.bar_ae
    simple = simple_affine_roots(sys)
    R_b = _roots_of(sys, _gamma_b2(sys, v.b2, v.k).nodes)
    R_bar = _roots_of(sys, _gamma_b2(sys, v.bar_b2, v.bar_k).nodes)
    s = lambda roots: {sigma(sys, r) for r in roots}
    inv = v.varpi.inverse()
    lam_w = {j for j, a in enumerate(simple) if not v.varpi(a).is_positive()}
    lam_i = {j for j, a in enumerate(simple) if not inv(a).is_positive()}
    ae_s = sigma_elt(sys, ae)
    bae_s = sigma_elt(sys, bae)
    r = {
        "a": _len_additive(sys, bae, dw_bar),
        "b": _len_additive(sys, ae, dw),
        "a~": lam_w <= {0, v.bar_k},
        "b~": lam_i <= {0, v.k},
        "a'": finite_lambda(sys, bae * dw_bar) == (R_bar | _apply(dw_bar, finite_lambda(sys, bae))),
        "b'": finite_lambda(sys, ae * dw) == (R_b | _apply(dw, finite_lambda(sys, ae))),
        "a''": _tilde_union(_apply(ae, R_b), finite_lambda(sys, ae.inverse())) >= s(R_bar),
        "b''": _tilde_union(_apply(bae, R_bar), finite_lambda(sys, bae.inverse())) >= s(R_b),
        "alpha": _len_additive(sys, dw_bar, ae_s),
        "beta": _len_additive(sys, dw, bae_s),
        "a'''": _apply(ae, R_b) >= s(R_bar),
        "b'''": _apply(bae, R_bar) >= s(R_b),
        "vth_b": _vth_ok(sys, v.b2, dw, ae),
        "vth_bar": _vth_ok(sys, v.bar_b2, dw_bar, bae),
        "p_zero": v.p == 0,
        "beta_positive": is_positive_vector(v.beta),
    }
    return r


# ---------------------------------------------------------------------
# diagram conditions

def check_siupsb(sys, b, k, ae=None, kbar=None):
    """The diagram conditions ae(Gamma^b) = sigma(Gamma^bar b), ae(alpha_k) = sigma(alpha_kbar).

    When they hold, the consequences (bar ae is the inverse of the
    w0-conjugate of ae, beta is positive) are checked and a violation raises.
    """
    v = build_varpi(sys, b, k, ae, kbar)
    S = sys.simple_roots
    nodes = _gamma_b2(sys, v.b2, v.k).nodes
    bar_nodes = _gamma_b2(sys, v.bar_b2, v.bar_k).nodes
    lhs = {tuple(v.ae(S[j - 1])) for j in nodes}
    rhs = {sigma(sys, S[j - 1]) for j in bar_nodes}
    ok = lhs == rhs and tuple(v.ae(S[v.k - 1])) == sigma(sys, S[v.bar_k - 1])
    if ok:
        if v.bar_ae != sigma_elt(sys, v.ae).inverse():
            raise WngtError("bar ae differs from the inverse conjugate")
        if not is_positive_vector(v.beta):
            raise WngtError("beta is negative under the diagram conditions")
    return ok


# ---------------------------------------------------------------------
# pi_b family

def weight_from_coefficients(sys, coeffs):
    """Doubled weight sum c_r omega_r; coeffs is a sequence indexed 1..n or a dict."""
    if isinstance(coeffs, dict):
        items = coeffs.items()
    else:
        items = enumerate(coeffs, 1)
    b2 = [0] * sys.dim
    for r, c in items:
        om = sys.fundamental_weights[r - 1]
        b2 = [x + c * y for x, y in zip(b2, om)]
    return sys.canon(tuple(b2))


def vthpib_family(sys, i, m, c=None):
    """pi_b for b = -m omega_i + sum over r != i of c_r omega_r (c_r >= 0)."""
    coeffs = dict(c) if isinstance(c, dict) else dict(enumerate(c or [], 1))
    coeffs.pop(i, None)
    if any(x < 0 for x in coeffs.values()):
        raise ValueError("the coefficients c_r must be nonnegative")
    coeffs[i] = -m
    b2 = weight_from_coefficients(sys, coeffs)
    pi, _ = pi_decompose(sys, AffineElement(sys, b2, SignedPerm.identity(sys.dim)))
    return pi


# ---------------------------------------------------------------------
# extension from a subdiagram

def _contains_rank3_end(sys, sub):
    n, s = sys.rank, set(sub)
    if sys.family in "BC":
        return {n - 2, n - 1, n} <= s
    if sys.family == "D":
        return {n - 3, n - 2, n - 1, n} <= s
    return False


def _alpha0_linked(sys, sub):
    t = sys.theta
    return any(sys.inner(t, sys.simple_roots[j - 1]) != 0 for j in sub)


def subsys_extend(sys, subdiagram, b_prime, b, k_prime=None):
    """Extend the identity-ae element of a connected subdiagram to the whole system.

    ``subdiagram`` lists simple indices (1-based).  b' lives on the
    subdiagram; b - b' must pair to zero with the subdiagram roots.
    The result is checked to be a minimal NGT.
    """
    sub = tuple(sorted(subdiagram))
    if len(_components(sys, sub)) != 1:
        raise ConditionsFailed(["connected"])
    if not _contains_rank3_end(sys, sub):
        raise RankTooSmall("the subdiagram must contain B3, C3 or D4")
    bp2, b2 = sys.canon(to_doubled(b_prime)), sys.canon(to_doubled(b))
    S = sys.simple_roots
    diff = tuple(x - y for x, y in zip(b2, bp2))
    if any(sys.pair_b2(S[j - 1], diff) for j in sub):
        raise ConditionsFailed(["support"])
    pr = {j: sys.pair_b2(S[j - 1], bp2) for j in sub}
    neg = [j for j in sub if pr[j] < 0]
    if k_prime is None:
        if len(neg) > 1:
            raise ConditionsFailed(["b' almost dominant"])
        k_prime = neg[0] if neg else min(j for j in sub if pr[j] == 0)
    dotted = [j for j in sub if pr[j] == 0 and j != k_prime]
    ups = longest_parabolic(sys, sub) * longest_parabolic(sys, dotted)
    bar_b2 = sys.canon(tuple(-c for c in ups(b2)))
    failed = []
    if not is_almost_dominant(sys, b2, k_prime):
        failed.append("b almost dominant")
    if not almost_dominant_indices(sys, bar_b2):
        failed.append("bar b almost dominant")
    theta_needed = b2 != bp2 or _alpha0_linked(sys, sub)
    if theta_needed:
        if sys.pair_b2(sys.theta, b2) > 0:
            failed.append("theta b")
        if sys.pair_b2(sys.theta, bar_b2) > 0:
            failed.append("theta bar b")
    if failed:
        raise ConditionsFailed(failed)
    w = AffineElement(sys, b2, ups.inverse())
    if is_minimal_ngt(w) is None:
        raise ConditionsFailed(["minimal NGT"], w)
    return w


# ---------------------------------------------------------------------
# nonaffine minimal NGT from varpi

@dataclass
class NonaffineReport:
    element: SignedPerm | None
    ends: tuple
    end_ok: tuple
    minimal: bool


def nonaffine_report(v):
    sys = v.system
    if not is_positive_vector(v.beta):
        raise BetaNegative(f"beta={v.beta}")
    _, u = pi_decompose(sys, v.varpi)
    fu = finite_element(sys, u)
    inv = fu.inverse()
    simple = sys.simple_roots
    ends = tuple(tuple(-c for c in inv.w(a)) for a in simple
                 if not is_positive_vector(inv.w(a)))
    back = sigma_elt(sys, v.ae).inverse()
    end_ok = tuple(is_positive_vector(back(e)) for e in ends)
    minimal = is_minimal_ngt(fu) is not None
    elt = u if all(end_ok) and minimal else None
    return NonaffineReport(elt, ends, end_ok, minimal)


def nonaffine_from_affine(v):
    """The finite part u of varpi = pi * u when it gives a nonaffine minimal NGT."""
    return nonaffine_report(v).element


# ---------------------------------------------------------------------
# sweeps

def weight_box(sys, radius=2):
    """Doubled weights with a representative of sup-norm <= radius."""
    rng = range(-2 * radius, 2 * radius + 1)
    seen = set()
    for b2 in product(rng, repeat=sys.dim):
        if sys.in_weight_lattice(b2):
            c = sys.canon(b2)
            if c not in seen:
                seen.add(c)
                yield c


def sweep(sys, radius=1, ae_set=None, valid_only=True):
    """All varpi data over a box of weights, every admissible k and ae."""
    elements = weyl_group(sys) if ae_set is None else list(ae_set)
    for b2 in weight_box(sys, radius):
        for k in almost_dominant_indices(sys, b2):
            for ae in elements:
                bar_b2 = sigma_w(sys, SignedPerm(ae)(b2))
                # when bar b is dominant every admissible kbar is a separate choice
                for kb in almost_dominant_indices(sys, bar_b2):
                    v = build_varpi_doubled(sys, b2, k, ae, kbar=kb)
                    if valid_only and not v.valid:
                        continue
                    yield v


def endpoints_match(v):
    """Whether the forced endpoints of varpi are the predicted ones."""
    first, last = nonmovable_endpoints(v.varpi)
    return (first, last) == v.expected_endpoints()
