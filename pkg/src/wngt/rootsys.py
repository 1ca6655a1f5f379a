"""Classical root systems in epsilon coordinates.

Short roots are normalized to squared length 2.  Type B therefore uses twice
the standard form on the epsilon basis, while C and D use the standard one.
Type A_n lives in an (n+1)-dimensional space.

Roots are integer tuples.  Weights may have half-integer coordinates, so they
are carried as *doubled* integer tuples everywhere (the ``b2`` convention).
For type A a weight is only defined modulo (1, ..., 1); the canonical doubled
representative has last coordinate zero.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import InvalidSystem, NotARoot

MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


def _unit(dim, i, c=1):
    v = [0] * dim
    v[i] = c
    return v


def is_positive_vector(v):
    """Positivity for roots: the first nonzero coordinate is positive."""
    for c in v:
        if c:
            return c > 0
    return False


@dataclass(frozen=True)
class SystemType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in MIN_RANK:
            raise InvalidSystem(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < MIN_RANK[self.family]:
            raise InvalidSystem(f"rank {self.rank} too small for type {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def n(self):
        return self.rank

    @property
    def dim(self):
        """Length of coordinate vectors."""
        return self.rank + 1 if self.family == "A" else self.rank

    @property
    def scale(self):
        return 2 if self.family == "B" else 1

    # -- forms ---------------------------------------------------------
    def inner(self, x, y):
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("dimension mismatch")
        return self.scale * sum(a * b for a, b in zip(x, y))

    def nu(self, r):
        return self.inner(r, r) // 2

    def coroot(self, r):
        m = self.nu(r)
        return tuple(Fraction(c, m) if c % m else c // m for c in r)

    def pair(self, x, r):
        """(x, r^vee) for a vector x and root r."""
        v = Fraction(2 * self.inner(x, r), self.inner(r, r))
        return v.numerator if v.denominator == 1 else v

    def pair_b2(self, r, b2):
        """(r, b) for a root r and a doubled weight b2; exact, int when integral."""
        num = self.scale * sum(a * c for a, c in zip(r, b2))
        q, rem = divmod(num, 2)
        return q if rem == 0 else Fraction(num, 2)

    # -- roots ---------------------------------------------------------
    @cached_property
    def roots(self):
        d, fam = self.dim, self.family
        out = []
        if fam == "A":
            for i in range(d):
                for j in range(d):
                    if i != j:
                        v = [0] * d
                        v[i], v[j] = 1, -1
                        out.append(tuple(v))
        else:
            for i in range(d):
                for j in range(i + 1, d):
                    for si in (1, -1):
                        for sj in (1, -1):
                            v = [0] * d
                            v[i], v[j] = si, sj
                            out.append(tuple(v))
            if fam in "BC":
                c = 1 if fam == "B" else 2
                for i in range(d):
                    out.append(tuple(_unit(d, i, c)))
                    out.append(tuple(_unit(d, i, -c)))
        return tuple(sorted(out, reverse=True))

    @cached_property
    def root_set(self):
        return frozenset(self.roots)

    @cached_property
    def positive_roots(self):
        return tuple(r for r in self.roots if is_positive_vector(r))

    def is_root(self, v):
        return tuple(v) in self.root_set

    @cached_property
    def simple_roots(self):
        d, n = self.dim, self.rank
        out = []
        for i in range(n - 1 if self.family != "A" else n):
            v = [0] * d
            v[i], v[i + 1] = 1, -1
            out.append(tuple(v))
        if self.family == "B":
            out.append(tuple(_unit(d, n - 1)))
        elif self.family == "C":
            out.append(tuple(_unit(d, n - 1, 2)))
        elif self.family == "D":
            v = [0] * d
            v[n - 2] = v[n - 1] = 1
            out.append(tuple(v))
        return tuple(out)

    @cached_property
    def theta(self):
        """The maximal short root."""
        d = self.dim
        v = [0] * d
        if self.family == "A":
            v[0], v[-1] = 1, -1
        elif self.family == "B":
            v[0] = 1
        else:
            v[0] = v[1] = 1
        return tuple(v)

    def reflect(self, mirror, x):
        mirror = tuple(mirror)
        if mirror not in self.root_set:
            raise NotARoot(mirror)
        c = self.pair(x, mirror)
        return tuple(a - c * m for a, m in zip(x, mirror))

    # -- weights ---------------------------------------------------------
    def canon(self, b2):
        """Canonical doubled representative (type A: last coordinate zero)."""
        if self.family == "A":
            last = b2[-1]
            return tuple(c - last for c in b2)
        return tuple(b2)

    @cached_property
    def fundamental_weights(self):
        """Doubled coordinates of omega_1..omega_n."""
        d, n, fam = self.dim, self.rank, self.family
        out = []
        for i in range(1, n + 1):
            v = [2 if j < i else 0 for j in range(d)]
            if fam == "B" and i == n:
                v = [1] * d
            if fam == "D" and i == n - 1:
                v = [1] * (d - 1) + [-1]
            if fam == "D" and i == n:
                v = [1] * d
            out.append(self.canon(tuple(v)))
        return tuple(out)

    def in_weight_lattice(self, b2):
        b2 = tuple(b2)
        if len(b2) != self.dim:
            return False
        if self.family == "A":
            return all(c % 2 == 0 for c in self.canon(b2))
        if all(c % 2 == 0 for c in b2):
            return True
        return self.family in "BD" and all(c % 2 for c in b2)

    def in_root_lattice(self, b2):
        if not self.in_weight_lattice(b2):
            return False
        b2 = self.canon(b2)
        if any(c % 2 for c in b2):
            return False
        s = sum(b2) // 2
        if self.family == "B":
            return True
        if self.family == "A":
            return s % (self.rank + 1) == 0
        return s % 2 == 0

    def is_minuscule(self, b2):
        return all(0 <= self.pair(_half(b2), r) <= 1 for r in self.positive_roots)


def _half(b2):
    return tuple(Fraction(c, 2) for c in b2)


def to_doubled(coords):
    """Convert rational coordinates to doubled integers."""
    out = []
    for c in coords:
        f = Fraction(c) * 2
        if f.denominator != 1:
            raise ValueError(f"coordinate {c} is not a half-integer")
        out.append(int(f))
    return tuple(out)


def from_doubled(b2):
    """Doubled integers back to ints or Fractions."""
    return tuple(c // 2 if c % 2 == 0 else Fraction(c, 2) for c in b2)


# Functional aliases mirroring the methods.

def simple_roots(sys):
    return list(sys.simple_roots)


def theta_short(sys):
    return sys.theta


def inner(sys, x, y):
    return sys.inner(x, y)


def nu(sys, r):
    return sys.nu(r)


def coroot(sys, r):
    return sys.coroot(r)


def reflect(sys, mirror, x):
    return sys.reflect(mirror, x)


def is_root(sys, v):
    return sys.is_root(v)


def positive_roots(sys):
    return list(sys.positive_roots)
