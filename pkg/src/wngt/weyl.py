"""Affine Weyl group elements, their action on affine roots and lambda-sets.

An element is a pair (b, w) standing for the product b*w: first the signed
permutation w, then the translation b.  The group law is

    (b1, w1)(b2, w2) = (b1 + w1(b2), w1 w2),

and the action on an affine root [a, k] is [w(a), k - (w(a), b)].

Words are written as products: the word [i1, ..., il] is s_i1 ... s_il.  Its
lambda-sequence starts from the rightmost letter, so "event" p of a word is
its letter at written index l - p.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .errors import InvalidSequence, NonReduced, NotARoot, NotInLattice
from .rootsys import SystemType, from_doubled, is_positive_vector, to_doubled


class SignedPerm(tuple):
    """Signed permutation: entry i is the signed line occupying slot i.

    As a linear map it sends e_{|s_i|} to sign(s_i) e_i, so
    ``w(x)[i] = sign(s_i) * x[|s_i| - 1]``.
    """

    __slots__ = ()

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    def __call__(self, x):
        return tuple(x[s - 1] if s > 0 else -x[-s - 1] for s in self)

    def __mul__(self, other):
        return SignedPerm(other[s - 1] if s > 0 else -other[-s - 1] for s in self)

    def inverse(self):
        out = [0] * len(self)
        for i, s in enumerate(self, 1):
            if s > 0:
                out[s - 1] = i
            else:
                out[-s - 1] = -i
        return SignedPerm(out)

    def negatives(self):
        return sum(1 for s in self if s < 0)

    @classmethod
    def from_map(cls, images):
        """Build from images[j] = w(e_{j+1}), each a signed unit vector."""
        out = [0] * len(images)
        for j, img in enumerate(images):
            (i,) = [t for t, c in enumerate(img) if c]
            out[i] = (j + 1) if img[i] > 0 else -(j + 1)
        return cls(out)

    def __repr__(self):
        return f"SignedPerm{tuple(self)}"


class AffineRoot(NamedTuple):
    """[root, level]; the level is a multiple of nu(root)."""

    root: tuple
    level: int

    def __neg__(self):
        return AffineRoot(tuple(-c for c in self.root), -self.level)

    def __add__(self, other):
        return AffineRoot(tuple(a + b for a, b in zip(self.root, other.root)),
                          self.level + other.level)

    def __sub__(self, other):
        return AffineRoot(tuple(a - b for a, b in zip(self.root, other.root)),
                          self.level - other.level)

    def is_positive(self):
        return self.level > 0 or (self.level == 0 and is_positive_vector(self.root))

    def __str__(self):
        return "[" + ",".join(map(str, self.root)) + f"@{self.level}]"


def is_affine_root(sys, r):
    return sys.is_root(r.root) and r.level % sys.nu(r.root) == 0


def simple_affine_roots(sys):
    """alpha_0 = [-theta, 1] followed by alpha_1..alpha_n at level 0."""
    return _simple_affine(sys)


@lru_cache(maxsize=None)
def _simple_affine(sys):
    a0 = AffineRoot(tuple(-c for c in sys.theta), 1)
    return (a0,) + tuple(AffineRoot(r, 0) for r in sys.simple_roots)


def reflect_affine(sys, mirror, x):
    """s_mirror(x) = x - (x, mirror^vee) mirror, pairing on the finite parts."""
    c = sys.pair(x.root, mirror.root)
    return AffineRoot(tuple(a - c * m for a, m in zip(x.root, mirror.root)),
                      x.level - c * mirror.level)


@dataclass(frozen=True, slots=True)
class AffineElement:
    system: SystemType
    b2: tuple
    w: SignedPerm

    @classmethod
    def make(cls, sys, b=None, w=None):
        """Build from rational translation coordinates and a slot tuple."""
        b2 = to_doubled(b) if b is not None else (0,) * sys.dim
        w = SignedPerm(w) if w is not None else SignedPerm.identity(sys.dim)
        return cls.from_doubled(sys, b2, w)

    @classmethod
    def from_doubled(cls, sys, b2, w):
        if not sys.in_weight_lattice(b2):
            raise NotInLattice(b2)
        return cls(sys, sys.canon(b2), SignedPerm(w))

    @classmethod
    def identity(cls, sys):
        return cls(sys, (0,) * sys.dim, SignedPerm.identity(sys.dim))

    @property
    def b(self):
        return from_doubled(self.b2)

    def __mul__(self, other):
        wb = self.w(other.b2)
        b2 = tuple(x + y for x, y in zip(self.b2, wb))
        return AffineElement(self.system, self.system.canon(b2), self.w * other.w)

    def inverse(self):
        wi = self.w.inverse()
        return AffineElement(self.system, self.system.canon(tuple(-c for c in wi(self.b2))), wi)

    def __call__(self, r):
        wa = self.w(r.root)
        return AffineRoot(wa, r.level - self.system.pair_b2(wa, self.b2))

    def with_system(self, sys):
        """The same (b, w) pair read in another family of the same rank."""
        return AffineElement.from_doubled(sys, self.b2, self.w)

    def is_finite(self):
        return not any(self.b2) if self.system.family != "A" else not any(self.system.canon(self.b2))

    def __repr__(self):
        b = ",".join(str(c) for c in self.b)
        return f"<{self.system} b=({b}) w={tuple(self.w)}>"


# ---------------------------------------------------------------------
# Group operations

def act(e, r):
    return e(r)


def multiply(e1, e2):
    return e1 * e2


def inverse(e):
    return e.inverse()


@lru_cache(maxsize=None)
def reflection_element(sys, r):
    """The element s_r for an affine root r = [a, nu*j]: (-j*a, s_a)."""
    if not is_affine_root(sys, r):
        raise NotARoot(r)
    j = r.level // sys.nu(r.root)
    images = [sys.reflect(r.root, tuple(1 if t == i else 0 for t in range(sys.dim)))
              for i in range(sys.dim)]
    w = SignedPerm.from_map(images)
    b2 = tuple(-2 * j * c for c in r.root)
    return AffineElement(sys, sys.canon(b2), w)


@lru_cache(maxsize=None)
def generators(sys):
    return tuple(reflection_element(sys, a) for a in _simple_affine(sys))


def from_word(sys, word, pi=None):
    e = pi if pi is not None else AffineElement.identity(sys)
    gens = generators(sys)
    for i in word:
        if not 0 <= i <= sys.rank:
            raise IndexError(f"generator index {i} out of range 0..{sys.rank}")
        e = e * gens[i]
    return e


# ---------------------------------------------------------------------
# lambda-sets

def _level_range(sys, e, a):
    """Levels k (step nu) with [a, k] in lambda(e), as (start, stop, step)."""
    nu = sys.nu(a)
    wa = e.w(a)
    c = sys.pair_b2(wa, e.b2)
    lo = 0 if is_positive_vector(a) else nu
    hi = c if not is_positive_vector(wa) else c - nu
    return lo, hi, nu


def lambda_set(e):
    sys = e.system
    out = set()
    for a in sys.roots:
        lo, hi, nu = _level_range(sys, e, a)
        for k in range(lo, hi + 1, nu):
            out.add(AffineRoot(a, k))
    return frozenset(out)


def length(e):
    sys = e.system
    total = 0
    for a in sys.roots:
        lo, hi, nu = _level_range(sys, e, a)
        if hi >= lo:
            total += (hi - lo) // nu + 1
    return total


def in_lambda(e, r):
    """r in lambda(e) for a positive affine root r."""
    return (-e(r)).is_positive()


def descents(e):
    """Indices i with alpha_i in lambda(e) (right descents)."""
    return [i for i, a in enumerate(_simple_affine(e.system)) if not e(a).is_positive()]


def left_descents(e):
    return descents(e.inverse())


def reduced_word(e):
    """A reduced word for e and its length-zero remainder.

    Greedy: the smallest descent is peeled first, so the event sequence is the
    lexicographically least one.  Returns (pi, word) with e = pi * s_word.
    """
    gens = generators(e.system)
    events = []
    cur = e
    while True:
        ds = descents(cur)
        if not ds:
            break
        events.append(ds[0])
        cur = cur * gens[ds[0]]
    return cur, list(reversed(events))


# ---------------------------------------------------------------------
# lambda-sequences

class LambdaSequence(tuple):
    """Ordered lambda-roots, first event first."""

    __slots__ = ()

    def __repr__(self):
        return "LambdaSequence(" + ", ".join(map(str, self)) + ")"


def lambda_sequence(sys, word):
    """alpha~^p = s_{i_1} ... s_{i_{p-1}}(alpha_{i_p}) in event order."""
    simple = _simple_affine(sys)
    gens = generators(sys)
    prefix = AffineElement.identity(sys)
    out = []
    for p, i in enumerate(reversed(list(word)), 1):
        if not 0 <= i <= sys.rank:
            raise IndexError(f"generator index {i} out of range 0..{sys.rank}")
        r = prefix(simple[i])
        if not r.is_positive():
            raise NonReduced(p)
        out.append(r)
        prefix = prefix * gens[i]
    return LambdaSequence(out)


def word_from_lambda(sys, seq):
    """Recover the reduced word from its lambda-sequence."""
    seq = list(seq)
    simple = _simple_affine(sys)
    index = {a: i for i, a in enumerate(simple)}
    events = []
    for p, r in enumerate(seq, 1):
        if not is_affine_root(sys, r) or not r.is_positive():
            raise InvalidSequence(p, "not a positive affine root")
        x = r
        for q in range(p - 2, -1, -1):
            x = reflect_affine(sys, seq[q], x)
        if x not in index:
            raise InvalidSequence(p, f"recovered root {x} is not simple")
        events.append(index[x])
    word = list(reversed(events))
    try:
        back = lambda_sequence(sys, word)
    except NonReduced as exc:
        raise InvalidSequence(exc.position, "recovered word is not reduced") from None
    if list(back) != seq:
        bad = next(p for p, (x, y) in enumerate(zip(back, seq), 1) if x != y)
        raise InvalidSequence(bad, "sequence does not reproduce itself")
    return word


# ---------------------------------------------------------------------
# intrinsic validation

@dataclass(frozen=True)
class LambdaCheck:
    ok: bool
    clause: str = None
    witnesses: tuple = ()

    def __bool__(self):
        return self.ok


def _positive_splits(sys, g):
    """Pairs (x, y) of positive affine roots with x + y = g (x before y in R order)."""
    out = []
    for a in sys.roots:
        nu = sys.nu(a)
        lo = 0 if is_positive_vector(a) else nu
        for k in range(lo, g.level + 1, nu):
            x = AffineRoot(a, k)
            y = g - x
            if y.is_positive() and is_affine_root(sys, y):
                out.append((x, y))
    return out


def validate_lambda(sys, seq):
    """Check the intrinsic conditions on an ordered set of positive affine roots.

    (i)   if x, y in lambda and x + y is a root, it lies in lambda between them;
          a root of lambda split as x + y has a summand in lambda, and if only
          one summand is in lambda it comes first;
    (ii)  the levels on each root line form an initial segment, listed upwards;
    (iii) if y in lambda and g = y - [a, k] with a > 0, k >= 0, [a, k] not in
          lambda, and g has a negative finite part and positive level, then g
          is in lambda and precedes y.
    """
    seq = list(seq)
    pos = {}
    for p, r in enumerate(seq):
        if r in pos:
            return LambdaCheck(False, "distinct", (r,))
        if not is_affine_root(sys, r) or not r.is_positive():
            return LambdaCheck(False, "positive", (r,))
        pos[r] = p
    for g in seq:
        for x, y in _positive_splits(sys, g):
            ix, iy = pos.get(x), pos.get(y)
            if ix is not None and iy is not None:
                if not (min(ix, iy) < pos[g] < max(ix, iy)):
                    return LambdaCheck(False, "(i)", (x, y, g))
            elif ix is None and iy is None:
                return LambdaCheck(False, "(i)", (x, y, g))
            else:
                inside = x if ix is not None else y
                if pos[inside] > pos[g]:
                    return LambdaCheck(False, "(i)", (inside, g))
    for x in seq:
        for y in seq:
            s = x + y
            if s in pos or not is_affine_root(sys, s):
                continue
            return LambdaCheck(False, "(i)", (x, y, s))
    for r in seq:
        nu = sys.nu(r.root)
        lo = 0 if is_positive_vector(r.root) else nu
        for k in range(lo, r.level, nu):
            lower = AffineRoot(r.root, k)
            if lower not in pos or pos[lower] > pos[r]:
                return LambdaCheck(False, "(ii)", (lower, r))
    for y in seq:
        for a in sys.positive_roots:
            nu = sys.nu(a)
            for k in range(0, y.level, nu):
                if AffineRoot(a, k) in pos:
                    continue
                g = y - AffineRoot(a, k)
                if g.level > 0 and not is_positive_vector(g.root) and is_affine_root(sys, g):
                    if g not in pos or pos[g] > pos[y]:
                        return LambdaCheck(False, "(iii)", (g, y))
    return LambdaCheck(True)


# ---------------------------------------------------------------------
# finite Weyl group helpers

def finite_element(sys, w):
    return AffineElement(sys, (0,) * sys.dim, SignedPerm(w))


def finite_descents(sys, w):
    return [i for i, a in enumerate(sys.simple_roots, 1) if not is_positive_vector(w(a))]


def finite_lambda(sys, w):
    return frozenset(a for a in sys.positive_roots if not is_positive_vector(w(a)))


def finite_length(sys, w):
    return sum(1 for a in sys.positive_roots if not is_positive_vector(w(a)))


def simple_perm(sys, i):
    """s_i for 1 <= i <= n as a signed permutation."""
    return generators(sys)[i].w


def longest_parabolic(sys, J):
    """Longest element of the parabolic subgroup on simple indices J (1-based)."""
    w = SignedPerm.identity(sys.dim)
    J = sorted(J)
    while True:
        for j in J:
            if is_positive_vector(w(sys.simple_roots[j - 1])):
                w = w * simple_perm(sys, j)
                break
        else:
            return w


def longest(sys):
    return longest_parabolic(sys, range(1, sys.rank + 1))


def weyl_group(sys):
    """All elements of the finite Weyl group (BFS)."""
    start = SignedPerm.identity(sys.dim)
    seen = {start}
    frontier = [start]
    gens = [simple_perm(sys, i) for i in range(1, sys.rank + 1)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                x = w * g
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return sorted(seen)


# ---------------------------------------------------------------------
# translations, pi_b and u_b

def translation(sys, b):
    """The translation element for rational coordinates b."""
    return AffineElement.make(sys, b)


def antidominant_sort(sys, b2):
    """Minimal u in W with u(b) antidominant; returns (u, u(b))."""
    u = SignedPerm.identity(sys.dim)
    x = tuple(b2)
    while True:
        for i, a in enumerate(sys.simple_roots, 1):
            if sys.pair_b2(a, x) > 0:
                s = simple_perm(sys, i)
                x = sys.canon(s(x))
                u = s * u
                break
        else:
            return u, x


def pi_decompose(sys, b):
    """b = pi_b * u_b with lambda(pi_b) free of level-zero roots.

    ``b`` may be rational coordinates or an AffineElement (general elements
    decompose the same way: peel finite descents on the right).
    Returns (pi_b, u_b) with u_b a SignedPerm.
    """
    if isinstance(b, AffineElement):
        e = b
    else:
        e = translation(sys, b)
    gens = generators(sys)
    events = []
    cur = e
    while True:
        ds = [i for i in descents(cur) if i != 0]
        if not ds:
            break
        events.append(ds[0])
        cur = cur * gens[ds[0]]
    u = SignedPerm.identity(sys.dim)
    for i in reversed(events):
        u = u * simple_perm(sys, i)
    return cur, u


def sigma_weight(sys, b2):
    """The involution b -> -w0(b)."""
    w0 = longest(sys)
    return sys.canon(tuple(-c for c in w0(b2)))


def minuscule_indices(sys):
    return [r for r, om in enumerate(sys.fundamental_weights, 1) if sys.is_minuscule(om)]


def pi_element(sys, r):
    """pi_r = omega_r * (w0 w0^{omega_r})^{-1} for a minuscule index r."""
    om = sys.fundamental_weights[r - 1]
    J = [j for j, a in enumerate(sys.simple_roots, 1) if sys.pair_b2(a, om) == 0]
    u = longest(sys) * longest_parabolic(sys, J)
    return AffineElement(sys, om, u.inverse())


@lru_cache(maxsize=None)
def pi_group(sys):
    """The length-zero elements [id, pi_r for minuscule r]."""
    return (AffineElement.identity(sys),) + tuple(pi_element(sys, r) for r in minuscule_indices(sys))


def diagram_action(e):
    """For a length-zero element: index map i -> j with e(alpha_i) = alpha_j."""
    simple = _simple_affine(e.system)
    index = {a: i for i, a in enumerate(simple)}
    return tuple(index[e(a)] for a in simple)


# ---------------------------------------------------------------------
# JSON

def _num(c):
    if isinstance(c, Fraction):
        return float(c)
    return c


def element_to_json(e):
    return {"format": 1, "family": e.system.family, "rank": e.system.rank,
            "b": [_num(c) for c in e.b], "slots": list(e.w)}


def element_from_json(d):
    sys = SystemType(d["family"], d["rank"])
    return AffineElement.make(sys, [Fraction(str(c)) for c in d["b"]], d["slots"])


def root_to_json(r):
    return {"coords": list(r.root), "level": r.level}


def root_from_json(d):
    return AffineRoot(tuple(d["coords"]), d["level"])


def sequence_to_json(seq):
    return [root_to_json(r) for r in seq]
