"""Regenerate tests/fixtures.json from independent computations.

Nothing here uses the package's lambda machinery.  Elements are affine maps
of the coordinate space built from reflections in the walls of the
fundamental alcove; lengths count separating hyperplanes; ball sizes are
checked against Bott's formula; reduced-word counts of w0 come from a
recursion over the weak order.  Catalog sizes come from the exhaustive
search in the package, which shares no code with the planar constructions.

    python3 tests/oracle_build.py
"""
import json
import math
import sys
from functools import lru_cache
from fractions import Fraction
from pathlib import Path

# -- root data written out from scratch -------------------------------


def roots_of(fam, n):
    d = n + 1 if fam == "A" else n
    out = []
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            if fam == "A":
                v = [0] * d
                v[i], v[j] = 1, -1
                out.append(tuple(v))
            elif i < j:
                for a in (1, -1):
                    for b in (1, -1):
                        v = [0] * d
                        v[i], v[j] = a, b
                        out.append(tuple(v))
    if fam in "BC":
        c = 1 if fam == "B" else 2
        for i in range(d):
            for s in (c, -c):
                v = [0] * d
                v[i] = s
                out.append(tuple(v))
    return out


def form(fam):
    return 2 if fam == "B" else 1


def dot(fam, x, y):
    return form(fam) * sum(a * b for a, b in zip(x, y))


def positive(v):
    for c in v:
        if c:
            return c > 0
    return False


def walls(fam, n):
    """Simple affine roots as (alpha, level) with alpha_0 = [-theta, 1]."""
    d = n + 1 if fam == "A" else n
    theta = [0] * d
    if fam == "A":
        theta[0], theta[-1] = 1, -1
    elif fam == "B":
        theta[0] = 1
    else:
        theta[0] = theta[1] = 1
    simple = []
    for i in range(n - 1 if fam != "A" else n):
        v = [0] * d
        v[i], v[i + 1] = 1, -1
        simple.append(tuple(v))
    if fam == "B":
        v = [0] * d
        v[-1] = 1
        simple.append(tuple(v))
    elif fam == "C":
        v = [0] * d
        v[-1] = 2
        simple.append(tuple(v))
    elif fam == "D":
        v = [0] * d
        v[-1] = v[-2] = 1
        simple.append(tuple(v))
    return [(tuple(-c for c in theta), 1)] + [(a, 0) for a in simple]


# -- affine maps x -> A x + t -------------------------------------------


def reflection(fam, d, alpha, level):
    """Reflection in the hyperplane (alpha, x) + level = 0."""
    aa = dot(fam, alpha, alpha)
    A = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    # x - 2((alpha,x)+level)/(alpha,alpha) * alpha
    for i in range(d):
        for j in range(d):
            A[i][j] -= Fraction(2 * form(fam) * alpha[j] * alpha[i], aa)
    t = [Fraction(-2 * level * alpha[i], aa) for i in range(d)]
    return tuple(map(tuple, A)), tuple(t)


def compose(f, g):
    (A, s), (B, t) = f, g
    d = len(s)
    C = tuple(tuple(sum(A[i][k] * B[k][j] for k in range(d)) for j in range(d)) for i in range(d))
    u = tuple(sum(A[i][k] * t[k] for k in range(d)) + s[i] for i in range(d))
    return C, u


def apply(f, x):
    A, t = f
    return tuple(sum(A[i][k] * x[k] for k in range(len(x))) + t[i] for i in range(len(x)))


def nu(fam, a):
    return dot(fam, a, a) // 2


def alcove_point(fam, n):
    """A point strictly inside the fundamental alcove."""
    rs = roots_of(fam, n)
    pos = [r for r in rs if positive(r)]
    rho = [sum(Fraction(r[i], 2) for r in pos) for i in range(len(pos[0]))]
    top = max(dot(fam, rho, r) for r in pos)
    return tuple(c / (2 * top + 1) for c in rho)


def separating(fam, n, x, y):
    """Hyperplanes (a, z) + k = 0, k in nu(a) Z, strictly between generic x and y."""
    total = 0
    for a in roots_of(fam, n):
        if not positive(a):
            continue
        m = nu(fam, a)
        u, v = -dot(fam, a, x) / m, -dot(fam, a, y) / m
        lo, hi = min(u, v), max(u, v)
        total += math.ceil(hi) - 1 - math.floor(lo)
    return total


def alcove_length(fam, n, f):
    c = alcove_point(fam, n)
    return separating(fam, n, c, apply(f, c))


def ball_layers(fam, n, L):
    d = n + 1 if fam == "A" else n
    gens = [reflection(fam, d, a, k) for a, k in walls(fam, n)]
    ident = (tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)),
             tuple(Fraction(0) for _ in range(d)))
    c = alcove_point(fam, n)
    seen = {apply(ident, c)}
    layer = [ident]
    sizes = [1]
    for _ in range(L):
        nxt = []
        for f in layer:
            for g in gens:
                h = compose(f, g)
                key = apply(h, c)
                if key not in seen:
                    seen.add(key)
                    nxt.append(h)
        sizes.append(len(nxt))
        layer = nxt
    return sizes


# -- Bott's formula ------------------------------------------------------


def degrees(fam, n):
    if fam == "A":
        return list(range(2, n + 2))
    if fam in "BC":
        return [2 * i for i in range(1, n + 1)]
    return [2 * i for i in range(1, n)] + [n]


def series_mul(a, b, L):
    out = [0] * (L + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b[:L + 1 - i]):
                out[i + j] += x * y
    return out


def bott(fam, n, L):
    s = [1] + [0] * L
    for dgr in degrees(fam, n):
        num = [1] + [1] * (dgr - 1)  # (1 - q^d) / (1 - q)
        s = series_mul(s, num, L)
        geo = [1 if i % (dgr - 1) == 0 else 0 for i in range(L + 1)]
        s = series_mul(s, geo, L)
    return s


# -- reduced words of w0 by recursion over the weak order ----------------


def count_w0_words(fam, n):
    """Number of reduced words of w0, by counting maximal chains in the weak order."""
    d = n + 1 if fam == "A" else n
    simple = [a for a, k in walls(fam, n)[1:]]

    def refl(a, x):
        c = Fraction(2 * dot(fam, x, a), dot(fam, a, a))
        return tuple(xi - c * ai for xi, ai in zip(x, a))

    # an element is recorded by the image v = w(reg) of a regular dominant vector
    reg = tuple(Fraction(d - i) for i in range(d))

    @lru_cache(maxsize=None)
    def count(v):
        below = [a for a in simple if dot(fam, v, a) < 0]
        if not below:
            return 1
        return sum(count(refl(a, v)) for a in below)

    v = reg
    while True:
        up = [a for a in simple if dot(fam, v, a) > 0]
        if not up:
            break
        v = refl(up[0], v)
    return count(v)


# -- elements given as (b, w) --------------------------------------------


def element_map(fam, n, b, w):
    """x -> w(x) + b for a signed permutation w (slot i holds signed line w[i])."""
    d = len(w)
    A = [[Fraction(0)] * d for _ in range(d)]
    for i, s in enumerate(w):
        A[i][abs(s) - 1] = Fraction(1 if s > 0 else -1)
    return tuple(map(tuple, A)), tuple(Fraction(c) for c in b)


def main():
    here = Path(__file__).parent
    sys.path.insert(0, str(here.parent / "src"))
    out = {"_note": "frozen values produced by tests/oracle_build.py"}

    layers = {}
    for fam, n, L in [("A", 2, 8), ("A", 3, 8), ("B", 2, 8), ("B", 3, 10), ("C", 3, 10),
                      ("D", 4, 8), ("B", 4, 6)]:
        sizes = ball_layers(fam, n, L)
        assert sizes == bott(fam, n, L), (fam, n, sizes, bott(fam, n, L))
        layers[f"{fam}{n}"] = sizes
    out["ball_layers"] = layers

    out["w0_reduced_words"] = {f"{f}{n}": count_w0_words(f, n)
                               for f, n in [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("D", 4)]}

    seven = element_map("B", 7, (0, 0, -1, -1, -2, -2, 0), (1, -2, -4, -3, -6, -5, 7))
    six = element_map("B", 6, (0, -1, -1, -1, 0, 0), (1, -4, -3, -2, 5, 6))
    out["lengths"] = {"seven_line": alcove_length("B", 7, seven), "six_line": alcove_length("B", 6, six)}

    from wngt.catalog import brute_enumerate
    from wngt.rootsys import SystemType
    sizes = {}
    for fam, n, L in [("B", 3, 17), ("C", 3, 15), ("D", 4, 12), ("B", 4, 12), ("C", 4, 12),
                      ("A", 3, 10), ("A", 2, 10), ("B", 2, 10)]:
        cat = brute_enumerate(SystemType(fam, n), L)
        assert not cat.report["gatherable_contradictions"]
        by_len = {}
        for r in cat.sorted_records():
            by_len[r.length] = by_len.get(r.length, 0) + 1
        sizes[f"{fam}{n}"] = {"max_length": L, "by_length": {str(k): v for k, v in by_len.items()}}
    out["catalog_sizes"] = sizes

    (here / "fixtures.json").write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")
    print(json.dumps(out, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
