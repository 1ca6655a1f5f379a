"""Coxeter moves on reduced words, gatherability and minimal NGT tests."""
import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import CapExceeded, InvalidTriple, RankTooSmall, TripleAbsent
from .rootsys import is_positive_vector
from .weyl import (AffineRoot, descents, from_word, in_lambda, is_affine_root, lambda_sequence,
                   lambda_set, length, reflect_affine, simple_affine_roots)

DEFAULT_CAP = 10**6
MOVE_NAMES = {2: "commute", 3: "braid3", 4: "braid4", 6: "braid6"}


def default_cap():
    return int(os.environ.get("WNGT_CAP", DEFAULT_CAP))


def _bond_order(p):
    # p = (a_i^vee, a_j)(a_j^vee, a_i); 0 stands for an infinite bond
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(p, 0)


def coxeter_matrix_of(sys, roots):
    """Coxeter matrix of the reflections in the given (simple) roots."""
    k = len(roots)
    m = [[1] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i != j:
                p = sys.pair(roots[i].root, roots[j].root) * sys.pair(roots[j].root, roots[i].root)
                m[i][j] = _bond_order(p)
    return tuple(tuple(r) for r in m)


@lru_cache(maxsize=None)
def coxeter_matrix(sys):
    return coxeter_matrix_of(sys, simple_affine_roots(sys))


@dataclass(frozen=True)
class Triple:
    beta: AffineRoot
    gamma: AffineRoot
    alpha: AffineRoot

    def roots(self):
        return (self.beta, self.gamma, self.alpha)

    def __str__(self):
        return f"{{{self.beta}, {self.gamma}, {self.alpha}}}"


def make_triple(sys, alpha, beta):
    """Triple with gamma = alpha + beta, checking the equal-length rule."""
    gamma = alpha + beta
    for r in (alpha, beta, gamma):
        if not is_affine_root(sys, r):
            raise InvalidTriple(f"{r} is not an affine root")
    if not (sys.nu(alpha.root) == sys.nu(beta.root) == sys.nu(gamma.root)):
        raise InvalidTriple("the three roots must have equal length")
    return Triple(beta, gamma, alpha)


def triples_in(sys, lam):
    """All triples {beta, alpha+beta, alpha} inside a set of roots."""
    lam = list(lam)
    s = set(lam)
    out = []
    for x, y in combinations(lam, 2):
        g = x + y
        if g in s and sys.nu(x.root) == sys.nu(y.root) == sys.nu(g.root):
            out.append(Triple(y, g, x))
    return out


# ---------------------------------------------------------------------
# moves

def _moves(seq, m):
    """Yield (start, length, new_seq) for every Coxeter move on a tuple."""
    L = len(seq)
    for p in range(L - 1):
        i, j = seq[p], seq[p + 1]
        if i == j:
            continue
        k = m[i][j]
        if k == 0 or p + k > L:
            continue
        if all(seq[p + t] == (i if t % 2 == 0 else j) for t in range(k)):
            repl = tuple(j if t % 2 == 0 else i for t in range(k))
            yield p, k, seq[:p] + repl + seq[p + k:]


def coxeter_neighbors(sys, word):
    lambda_sequence(sys, word)
    m = coxeter_matrix(sys)
    out = []
    for _, _, new in _moves(tuple(word), m):
        new = list(new)
        if new not in out:
            out.append(new)
    return out


def all_reduced_words(sys, element_or_word, cap=None):
    """Every reduced word of an element, by BFS over Coxeter moves."""
    from .weyl import reduced_word
    cap = default_cap() if cap is None else cap
    if isinstance(element_or_word, (list, tuple)):
        start = tuple(element_or_word)
        lambda_sequence(sys, start)
    else:
        start = tuple(reduced_word(element_or_word)[1])
    m = coxeter_matrix(sys)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for _, _, new in _moves(cur, m):
            if new not in seen:
                seen.add(new)
                if len(seen) > cap:
                    raise CapExceeded(cap)
                queue.append(new)
    return seen


# ---------------------------------------------------------------------
# gathering

@dataclass(frozen=True)
class GatherResult:
    gatherable: bool
    witness: tuple = ()
    final_word: tuple = None
    explored: int = 0

    def __bool__(self):
        return self.gatherable


def gather_search(events, lam, m, triple, cap, frozen=False, window=None):
    """Restricted BFS on (event word, lambda-sequence) states.

    ``events`` is in event order so positions coincide with lambda indices.
    A move is allowed only when all its positions lie between alpha and beta
    (their current positions, or the initial ones when ``frozen``).  An
    explicit ``window`` (lo, hi) replaces the segment altogether.
    Returns (found, path) where path lists (kind, start, length) moves in
    event coordinates.
    """
    a, g, b = triple.alpha, triple.gamma, triple.beta
    start = (tuple(events), tuple(lam))

    def seg(l):
        pa, pb = l.index(a), l.index(b)
        return min(pa, pb), max(pa, pb)

    def done(l):
        ps = sorted((l.index(a), l.index(g), l.index(b)))
        return ps[2] - ps[0] == 2

    fixed = seg(start[1]) if window is None else window
    if window is not None:
        frozen = True
    parent = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        ev, l = state
        if done(l):
            path = []
            while parent[state] is not None:
                state, move = parent[state]
                path.append(move)
            return True, list(reversed(path)), len(parent)
        lo, hi = fixed if frozen else seg(l)
        for p, k, new in _moves(ev, m):
            if p < lo or p + k - 1 > hi:
                continue
            nl = l[:p] + tuple(reversed(l[p:p + k])) + l[p + k:]
            nxt = (new, nl)
            if nxt not in parent:
                parent[nxt] = (state, (MOVE_NAMES[k], p, k))
                if len(parent) > cap:
                    raise CapExceeded(cap)
                queue.append(nxt)
    return False, [], len(parent)


def is_gatherable(sys, word, triple, cap=None, frozen=False):
    """Can the triple be made consecutive by moves inside its segment?

    Witness moves are reported as (kind, position) with position the 0-based
    index in the written word where the rewritten block starts.
    """
    cap = default_cap() if cap is None else cap
    word = list(word)
    lam = lambda_sequence(sys, word)
    for r in triple.roots():
        if r not in lam:
            raise TripleAbsent(f"{r} is not in the lambda-sequence")
    events = tuple(reversed(word))
    ok, path, explored = gather_search(events, lam, coxeter_matrix(sys), triple, cap, frozen)
    if not ok:
        return GatherResult(False, (), None, explored)
    L = len(word)
    ev = events
    witness = []
    m = coxeter_matrix(sys)
    for kind, p, k in path:
        witness.append((kind, L - p - k))
        for q, kk, new in _moves(ev, m):
            if q == p and kk == k:
                ev = new
                break
    return GatherResult(True, tuple(witness), tuple(reversed(ev)), explored)


# ---------------------------------------------------------------------
# endpoints and minimal NGT

def nonmovable_endpoints(e):
    """(first, last): the forced first and last roots of every lambda-sequence."""
    simple = simple_affine_roots(e.system)
    d = descents(e)
    first = simple[d[0]] if len(d) == 1 else None
    inv = e.inverse()
    dl = descents(inv)
    last = -inv(simple[dl[0]]) if len(dl) == 1 else None
    return first, last


def is_minimal_ngt(e):
    """The triple if e represents a minimal non-gatherable triple, else None.

    Both endpoints must be forced, alpha + beta must be an equal-length root
    of lambda(e), and the word must be longer than the triple itself (a
    length-3 element would already have it consecutive).
    """
    sys = e.system
    first, last = nonmovable_endpoints(e)
    if first is None or last is None:
        return None
    g = first + last
    if not is_affine_root(sys, g) or not g.is_positive() or not in_lambda(e, g):
        return None
    if not (sys.nu(first.root) == sys.nu(last.root) == sys.nu(g.root)):
        return None
    if length(e) <= 3:
        return None
    return Triple(last, g, first)


# ---------------------------------------------------------------------
# admissibility through small subsystems

def _rref(rows):
    rows = [[Fraction(c) for c in r] for r in rows]
    piv = []
    r0 = 0
    ncol = len(rows[0]) if rows else 0
    for c in range(ncol):
        p = next((i for i in range(r0, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r0], rows[p] = rows[p], rows[r0]
        pv = rows[r0][c]
        rows[r0] = [x / pv for x in rows[r0]]
        for i in range(len(rows)):
            if i != r0 and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r0])]
        piv.append(c)
        r0 += 1
    return tuple(tuple(r) for r in rows[:r0]), tuple(piv)


def _vec(r):
    return tuple(r.root) + (r.level,)


def _in_span(basis, piv, v):
    v = [Fraction(c) for c in v]
    for row, c in zip(basis, piv):
        if v[c] != 0:
            f = v[c]
            v = [x - f * y for x, y in zip(v, row)]
    return not any(v)


def _subspace_roots(sys, basis, piv):
    """Affine roots lying in a subspace that avoids the level direction."""
    # level as a linear function of the finite part: solve on the basis
    out = []
    dim = sys.dim
    for a in sys.roots:
        # find level k with (a, k) in span; the span meets the level axis trivially
        v = [Fraction(c) for c in a] + [Fraction(0)]
        for row, c in zip(basis, piv):
            if c < dim and v[c] != 0:
                f = v[c]
                v = [x - f * y for x, y in zip(v, row)]
        if any(v[:dim]):
            continue
        k = -v[dim]
        if k.denominator == 1 and int(k) % sys.nu(a) == 0:
            out.append(AffineRoot(a, int(k)))
    return out


def _simple_system(roots_pos):
    s = set(roots_pos)
    return [r for r in roots_pos
            if not any((r - x) in s for x in roots_pos if x != r)]


def _classify(sys, simple):
    """Return 'B3', 'C3', 'D4' or None for a connected diagram on simple roots."""
    k = len(simple)
    m = coxeter_matrix_of(sys, simple)
    edges = [(i, j) for i in range(k) for j in range(i + 1, k) if m[i][j] != 2]
    if len(edges) != k - 1:
        return None
    nus = [sys.nu(r.root) for r in simple]
    if k == 3:
        quads = [(i, j) for i, j in edges if m[i][j] == 4]
        if len(quads) != 1 or any(m[i][j] not in (3, 4) for i, j in edges):
            return None
        deg = [sum(1 for e in edges if t in e) for t in range(3)]
        end = [t for t in quads[0] if deg[t] == 1]
        if not end:
            return None
        # the end vertex of the double bond is short in B3, long in C3
        other = quads[0][0] if quads[0][1] == end[0] else quads[0][1]
        return "B3" if nus[end[0]] < nus[other] else "C3"
    if k == 4:
        if any(m[i][j] != 3 for i, j in edges):
            return None
        deg = [sum(1 for e in edges if t in e) for t in range(4)]
        return "D4" if sorted(deg) == [1, 1, 1, 3] else None
    return None


def _subsystems_for(sys, lam, triple):
    """Candidate B3/C3/D4 positive systems containing the triple."""
    base = [_vec(triple.alpha), _vec(triple.beta)]
    others = [r for r in lam if r not in triple.roots()]
    spaces = {}
    cands = [(x,) for x in others] + list(combinations(others, 2))
    for extra in cands:
        basis, piv = _rref(base + [_vec(x) for x in extra])
        if len(basis) != 2 + len(extra):
            continue
        if _in_span(basis, piv, (0,) * sys.dim + (1,)):
            continue
        spaces[basis] = piv
    for basis, piv in spaces.items():
        roots = _subspace_roots(sys, basis, piv)
        pos = [r for r in roots if r.is_positive()]
        for part in _parts(sys, pos, len(basis)):
            if all(t in part for t in triple.roots()):
                simple = _simple_system(part)
                kind = _classify(sys, simple)
                if kind is not None:
                    yield kind, part, simple


def _parts(sys, pos, rank):
    """The full positive system and, in rank 4, its long-only / short-only parts."""
    yield pos
    if rank == 4:
        nus = {sys.nu(r.root) for r in pos}
        if len(nus) == 2:
            for v in nus:
                yield [r for r in pos if sys.nu(r.root) == v]


def _subsystem_word(sys, simple, lam_part):
    """Peel a subsystem inversion set into an event word over ``simple``."""
    cur = set(lam_part)
    events = []
    seq = []
    while cur:
        i = next((i for i, a in enumerate(simple) if a in cur), None)
        if i is None:
            return None
        a = simple[i]
        events.append(i)
        seq.append(a)
        nxt = set()
        for x in cur:
            if x == a:
                continue
            y = reflect_affine(sys, a, x)
            if not y.is_positive():
                return None
            nxt.add(y)
        cur = nxt
    # rebuild the lambda-sequence in the subsystem
    lam_seq = []
    for p, i in enumerate(events):
        x = simple[i]
        for q in range(p - 1, -1, -1):
            x = reflect_affine(sys, simple[events[q]], x)
        lam_seq.append(x)
    return events, lam_seq


def segment_element(sys, word, triple):
    """The element spanned by the segment from alpha to beta of a word.

    Returns (u, t) where u is given by the letters between the two roots and
    t is the triple moved into the positive roots of u.  Moves inside the
    segment are exactly the moves on reduced words of u.
    """
    word = list(word)
    lam = lambda_sequence(sys, word)
    for r in triple.roots():
        if r not in lam:
            raise TripleAbsent(f"{r} is not in the lambda-sequence")
    events = list(reversed(word))
    pa, pb = lam.index(triple.alpha), lam.index(triple.beta)
    lo, hi = min(pa, pb), max(pa, pb)
    simple = simple_affine_roots(sys)

    def pull(x):
        # undo the reflections of the events before the segment
        for q in range(lo):
            x = reflect_affine(sys, simple[events[q]], x)
        return x

    u_word = list(reversed(events[lo:hi + 1]))
    t = Triple(*(pull(r) for r in (triple.beta, triple.gamma, triple.alpha)))
    return from_word(sys, u_word), t


def _consecutive_somewhere(events, lam_seq, m, triple, cap):
    ok, _, _ = gather_search(events, lam_seq, m, triple, cap, window=(0, len(events) - 1))
    return ok


def admissible(sys, e, triple, cap=None, word=None):
    """Gatherability through small subsystems.

    The triple is gatherable unless some subsystem of type B3, C3 or D4
    containing it meets lambda(e) in the inversion set of an element with no
    reduced word having the triple consecutive.  With ``word`` given, the
    question concerns that word: e is replaced by its alpha-beta segment.
    """
    if sys.family == "A":
        return True
    if sys.rank < 3:
        raise RankTooSmall(f"rank {sys.rank}")
    cap = default_cap() if cap is None else cap
    if word is not None:
        e, triple = segment_element(sys, word, triple)
    lam = lambda_set(e)
    for r in triple.roots():
        if r not in lam:
            raise TripleAbsent(str(r))
    seen = set()
    for kind, part, simple in _subsystems_for(sys, lam, triple):
        key = frozenset(part)
        if key in seen:
            continue
        seen.add(key)
        inter = [r for r in part if r in lam]
        got = _subsystem_word(sys, simple, inter)
        if got is None:
            continue
        events, lam_seq = got
        m = coxeter_matrix_of(sys, simple)
        if not _consecutive_somewhere(events, lam_seq, m, triple, cap):
            return False
    return True
