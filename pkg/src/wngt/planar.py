"""The planar model: zigzag lines between a bottom and a top mirror.

Lines are numbered 1..n from the top at the right end and read right to
left.  An event is a crossing of the lines in slots i and i+1, a reflection
of slot 1 in the top mirror, a reflection of slot n in the bottom mirror, or
the flip about the middle line (the length-zero element pi_n of type B).
Events are stored in the order they happen, which is the reverse of the
written word.

Angles are tracked as (doubled delta-count, signed line number); the top
mirror sits at delta/2 and the bottom one at 0.
"""
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .errors import InvalidConfiguration, InvalidData, NonReduced, ParityViolation
from .rootsys import SystemType
from .weyl import (AffineElement, AffineRoot, LambdaSequence, SignedPerm, from_word,
                   generators, lambda_sequence, length, pi_group, reduced_word)

KINDS = ("cross", "top", "bottom", "pi")


@dataclass(frozen=True)
class Event:
    kind: str
    slot: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidConfiguration(f"unknown event kind {self.kind!r}")


@dataclass(frozen=True)
class Configuration:
    n: int
    events: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        for ev in self.events:
            if ev.kind == "cross" and not 1 <= ev.slot < self.n:
                raise InvalidConfiguration(f"crossing slot {ev.slot} out of range")

    def to_json(self):
        evs = []
        for ev in self.events:
            slot = {"top": 1, "bottom": self.n}.get(ev.kind, ev.slot)
            evs.append({"kind": ev.kind, "slot": slot})
        return {"n": self.n, "events": evs, "format": 1}

    @classmethod
    def from_json(cls, d):
        return cls(d["n"], tuple(Event(e["kind"], e.get("slot", 0) if e["kind"] == "cross" else 0)
                                 for e in d["events"]))


@dataclass(frozen=True)
class ReducedWord:
    """Written word plus an optional length-zero prefix element."""

    system: SystemType
    letters: tuple
    pi: AffineElement = None

    def element(self):
        return from_word(self.system, self.letters, self.pi)

    def lam(self):
        return lambda_sequence(self.system, self.letters)


@dataclass(frozen=True)
class LineProfile:
    t_count: int
    b_count: int
    first_reflection: str


@dataclass(frozen=True)
class BPositiveData:
    """Top bunch of u lines, bunches p_j with t-numbers t_j, bottom bunch of v."""

    n: int
    u: int
    v: int
    p: tuple
    t: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(self.p))
        object.__setattr__(self, "t", tuple(self.t))
        if self.u < 0 or self.v < 1:
            raise InvalidData("need u >= 0 and v >= 1")
        m = self.n - self.u - self.v
        if m < 2:
            raise InvalidData("need at least two lines between the horizontal bunches")
        if not self.p or any(x < 1 for x in self.p) or sum(self.p) != m:
            raise InvalidData("bunch sizes must be positive and fill the middle")
        if self.p[-1] < 2:
            raise InvalidData("the last bunch needs at least two lines")
        if len(self.t) != len(self.p):
            raise InvalidData("one t-number per bunch")
        if any(x < 0 for x in self.t) or any(a >= b for a, b in zip(self.t, self.t[1:])):
            raise InvalidData("t-numbers must be non-negative and strictly increasing")

    def bunches(self):
        """(first line, size, t) for each middle bunch."""
        out = []
        line = self.u + 1
        for size, t in zip(self.p, self.t):
            out.append((line, size, t))
            line += size
        return out

    def top_reflections(self):
        return sum(s * t for s, t in zip(self.p, self.t))

    def bottom_reflections(self):
        return sum(s * (t + 1) for s, t in zip(self.p, self.t))

    def to_json(self):
        return {"n": self.n, "u": self.u, "v": self.v, "p": list(self.p), "t": list(self.t)}


def bpositive_element(data):
    """The element of a B-positive configuration.

    Horizontal lines keep their slots; a bunch with t-number t comes out
    reversed, with each line at angle -t*delta - e_line.
    """
    n = data.n
    sys = SystemType("B", n)
    slots = list(range(1, n + 1))
    b2 = [0] * n
    for first, size, t in data.bunches():
        for i in range(size):
            slot = first + i
            slots[slot - 1] = -(first + size - 1 - i)
            b2[slot - 1] = -2 * t
    return AffineElement(sys, tuple(b2), SignedPerm(slots))


def iter_bpositive(n, t_max):
    """All B-positive data of rank n with t-numbers at most t_max."""
    from itertools import combinations
    for u in range(0, n - 2):
        for v in range(1, n - u - 1):
            m = n - u - v
            for comp in _compositions(m):
                if comp[-1] < 2:
                    continue
                for ts in combinations(range(t_max + 1), len(comp)):
                    yield BPositiveData(n, u, v, comp, ts)


def _compositions(m):
    if m == 0:
        yield ()
        return
    for first in range(1, m + 1):
        for rest in _compositions(m - first):
            yield (first,) + rest


# ---------------------------------------------------------------------
# words and elements

def events_from_word(word, n):
    """Event list for a B-word (written order)."""
    out = []
    for i in reversed(list(word)):
        if i == 0:
            out.append(Event("top"))
        elif i == n:
            out.append(Event("bottom"))
        else:
            out.append(Event("cross", i))
    return tuple(out)


def config_from_word(word, n):
    return Configuration(n, events_from_word(word, n))


def _b_letters(cfg):
    """Event letters of a B configuration with pi-flips moved to the front."""
    n = cfg.n
    letters = []
    flips = 0
    for ev in cfg.events:
        if ev.kind == "pi":
            flips += 1
            continue
        i = {"top": 0, "bottom": n}.get(ev.kind, ev.slot)
        # moving the flips to the front conjugates every later letter
        letters.append((i, flips))
    out = []
    for i, f in letters:
        out.append(n - i if f % 2 else i)
    return out, flips % 2


def _cd_letters(sys, cfg):
    n = cfg.n
    evs = list(cfg.events)
    out = []
    p = 0
    while p < len(evs):
        ev = evs[p]
        if ev.kind == "pi":
            raise InvalidConfiguration("pi-flips are only supported for type B")
        if ev.kind == "top":
            if evs[p + 1:p + 3] == [Event("cross", 1), Event("top")]:
                out.append(0)
                p += 3
                continue
            raise ParityViolation("top")
        if ev.kind == "bottom" and sys.family == "D":
            if evs[p + 1:p + 3] == [Event("cross", n - 1), Event("bottom")]:
                out.append(n)
                p += 3
                continue
            raise ParityViolation("bottom")
        out.append(n if ev.kind == "bottom" else ev.slot)
        p += 1
    return out


def word_from_config(sys, cfg):
    if sys.rank != cfg.n:
        raise InvalidConfiguration("rank and line count differ")
    if sys.family == "B":
        events, flip = _b_letters(cfg)
        pi = pi_group(sys)[1] if flip else None
    elif sys.family in "CD":
        events, pi = _cd_letters(sys, cfg), None
    else:
        raise InvalidConfiguration("the planar model covers types B, C and D")
    word = tuple(reversed(events))
    try:
        lambda_sequence(sys, word)
    except NonReduced as exc:
        raise InvalidConfiguration(f"configuration is not reduced (event {exc.position})") from None
    return ReducedWord(sys, word, pi)


def _sweep(cfg):
    """Yield (event, state before it) and finally (None, final state)."""
    n = cfg.n
    state = [(0, i) for i in range(1, n + 1)]
    for ev in cfg.events:
        yield ev, list(state)
        if ev.kind == "cross":
            i = ev.slot - 1
            state[i], state[i + 1] = state[i + 1], state[i]
        elif ev.kind == "top":
            k, x = state[0]
            state[0] = (2 - k, -x)
        elif ev.kind == "bottom":
            k, x = state[-1]
            state[-1] = (-k, -x)
        else:
            state = [(1 - k, -x) for k, x in reversed(state)]
    yield None, state


def element_from_angles(sys, cfg):
    """Decode (b, w) from the absolute angles at the left end."""
    for ev, state in _sweep(cfg):
        pass
    b2 = tuple(k for k, _ in state)
    w = SignedPerm(x for _, x in state)
    return AffineElement.from_doubled(sys, b2, w)


def _unit(n, x, c=1):
    v = [0] * n
    v[abs(x) - 1] = c if x > 0 else -c
    return v


def _diff(n, x, y):
    return tuple(a - b for a, b in zip(_unit(n, x), _unit(n, y)))


def angles_as_lambda(sys, cfg):
    """The angles at the events, read as affine roots.

    Type B measures levels in delta/2; C and D in delta, with bottom
    reflection angles doubled and compound events read at their middle step.
    """
    n = cfg.n
    steps = list(_sweep(cfg))[:-1]
    out = []
    if sys.family == "B":
        for ev, st in steps:
            if ev.kind == "cross":
                (k1, x1), (k2, x2) = st[ev.slot - 1], st[ev.slot]
                out.append(AffineRoot(_diff(n, x1, x2), k1 - k2))
            elif ev.kind == "top":
                k, x = st[0]
                out.append(AffineRoot(tuple(_unit(n, -x)), 1 - k))
            elif ev.kind == "bottom":
                k, x = st[-1]
                out.append(AffineRoot(tuple(_unit(n, x)), k))
        return LambdaSequence(out)
    p = 0
    while p < len(steps):
        ev, st = steps[p]
        compound = ev.kind == "top" or (ev.kind == "bottom" and sys.family == "D")
        if compound:
            ev, st = steps[p + 1]
            p += 3
        else:
            p += 1
        if ev.kind == "cross":
            (k1, x1), (k2, x2) = st[ev.slot - 1], st[ev.slot]
            out.append(AffineRoot(_diff(n, x1, x2), (k1 - k2) // 2))
        elif ev.kind == "bottom":
            k, x = st[-1]
            out.append(AffineRoot(tuple(_unit(n, x, 2)), k))
        else:
            raise InvalidConfiguration(f"unexpected {ev.kind} event")
    return LambdaSequence(out)


def line_profiles(cfg):
    """Reflection counts per line (indexed by line number)."""
    counts = {i: [0, 0, "none"] for i in range(1, cfg.n + 1)}
    for ev, st in _sweep(cfg):
        if ev is None:
            break
        if ev.kind in ("top", "bottom"):
            line = abs(st[0][1] if ev.kind == "top" else st[-1][1])
            c = counts[line]
            c[0 if ev.kind == "top" else 1] += 1
            if c[2] == "none":
                c[2] = ev.kind
    return {i: LineProfile(*c) for i, c in counts.items()}


def config_from_bpositive(data):
    """Canonical configuration of B-positive data.

    The schedule is the greedy one: at every step the event with the smallest
    generator index that is still available comes first.
    """
    e = bpositive_element(data)
    _, word = reduced_word(e)
    cfg = config_from_word(word, data.n)
    prof = line_profiles(cfg)
    for first, size, t in data.bunches():
        for line in range(first, first + size):
            if (prof[line].t_count, prof[line].b_count) != (t, t + 1):
                raise InvalidData(f"line {line} does not realize its bunch")
    return cfg


# ---------------------------------------------------------------------
# symmetries and parity corrections

def iota_b(cfg):
    """Swap the mirrors: slot i crossing goes to n - i, top and bottom trade."""
    n = cfg.n
    swap = {"top": "bottom", "bottom": "top"}
    out = []
    for ev in cfg.events:
        if ev.kind == "cross":
            out.append(Event("cross", n - ev.slot))
        elif ev.kind in swap:
            out.append(Event(swap[ev.kind]))
        else:
            out.append(ev)
    return Configuration(n, tuple(out))


def iota_b_element(e):
    """Conjugation by pi_n of type B on a (b, w) pair."""
    sys = e.system
    pb = SystemType("B", sys.rank)
    pi = pi_group(pb)[1]
    x = pi * e.with_system(pb) * pi.inverse()
    return x.with_system(sys)


def _b_s0(rank):
    return generators(SystemType("B", rank))[0]


def _b_sn(rank):
    return generators(SystemType("B", rank))[rank]


def iota_c_element(e):
    """Conjugation by the type-B s_0 (the nontrivial element of Pi')."""
    g = _b_s0(e.system.rank)
    s0 = AffineElement(e.system, g.b2, g.w)
    return s0 * e * s0


def iota_c(word, rank):
    """B-word of s_0 w s_0."""
    sys = SystemType("B", rank)
    e = from_word(sys, word)
    return reduced_word(iota_c_element(e))[1]


def parity_correct_element(e, which):
    """Multiply by the type-B s_0 (top) or s_n (bottom) on the given side."""
    side, hand = which
    rank = e.system.rank
    g = (_b_s0 if side == "top" else _b_sn)(rank)
    g = AffineElement(e.system, g.b2, g.w)
    return e * g if hand == "right" else g * e


def parity_correct(word, which, rank):
    sys = SystemType("B", rank)
    return reduced_word(parity_correct_element(from_word(sys, word), which))[1]


def regroup_to_cd(target, word):
    """Rewrite a B-word as a word over the C- or D-generators of the same element."""
    n = target.rank
    word = list(word)
    if word.count(0) % 2:
        raise ParityViolation("top")
    if target.family == "D" and word.count(n) % 2:
        raise ParityViolation("bottom")
    if target.family not in "CD":
        raise ValueError("target must be of type C or D")
    e = from_word(SystemType("B", n), word)
    pi, out = reduced_word(e.with_system(target))
    if length(pi) != 0 or pi != AffineElement.identity(target):
        raise ParityViolation("top")
    return out


# ---------------------------------------------------------------------
# SVG

def render_svg(cfg, options=None):
    """Deterministic SVG drawing of a configuration.

    Written order runs left to right, so the first event is the rightmost
    column.  Lines are labelled at the right edge by their numbers.
    """
    opt = {"col": 40, "row": 30, "margin": 40, "slope": 8, "stroke": 2}
    opt.update(options or {})
    n = cfg.n
    evs = list(reversed(cfg.events))
    col, row, mg, slope = opt["col"], opt["row"], opt["margin"], opt["slope"]
    ncol = len(evs)
    width = 2 * mg + col * (ncol + 1)
    top_y = mg
    height = 2 * mg + row * (n + 1) + slope

    def x_of(c):
        return mg + col * c + col // 2

    def y_of(slot):
        return top_y + slope + row * slot

    # positions of lines before each column, from the right end
    state = list(range(1, n + 1))
    cols = [None] * ncol
    for c in range(ncol - 1, -1, -1):
        cols[c] = list(state)
        ev = evs[c]
        if ev.kind == "cross":
            i = ev.slot - 1
            state[i], state[i + 1] = state[i + 1], state[i]
        elif ev.kind == "pi":
            state.reverse()
    points = {line: [] for line in range(1, n + 1)}
    right = mg + col * ncol + col
    for line in range(1, n + 1):
        points[line].append((right, y_of(line)))
    for c in range(ncol - 1, -1, -1):
        ev = evs[c]
        before = cols[c]
        x = x_of(c)
        for slot, line in enumerate(before, 1):
            if ev.kind == "cross" and slot in (ev.slot, ev.slot + 1):
                other = ev.slot + 1 if slot == ev.slot else ev.slot
                points[line].append((x, (y_of(slot) + y_of(other)) // 2))
            elif ev.kind == "top" and slot == 1:
                points[line].append((x, top_y + slope * x // max(width, 1)))
            elif ev.kind == "bottom" and slot == n:
                points[line].append((x, y_of(n) + row))
            elif ev.kind == "pi":
                points[line].append((x, y_of(slot)))
    final = cols[0] if ncol else state
    if ncol:
        after = list(final)
        ev = evs[0]
        if ev.kind == "cross":
            i = ev.slot - 1
            after[i], after[i + 1] = after[i + 1], after[i]
        elif ev.kind == "pi":
            after.reverse()
        final = after
    for slot, line in enumerate(final, 1):
        points[line].append((mg // 2, y_of(slot)))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<line class="mirror" x1="0" y1="{top_y}" x2="{width}" y2="{top_y + slope}" '
        'stroke="black" stroke-width="3"/>',
        f'<line class="mirror" x1="0" y1="{y_of(n) + row}" x2="{width}" y2="{y_of(n) + row}" '
        'stroke="black" stroke-width="3"/>',
    ]
    for line in range(1, n + 1):
        pts = " ".join(f"{x},{y}" for x, y in points[line])
        out.append(f'<polyline class="line" points="{pts}" fill="none" stroke="steelblue" '
                   f'stroke-width="{opt["stroke"]}"/>')
        out.append(f'<text class="line-label" x="{right + 6}" y="{y_of(line) + 4}" '
                   f'font-size="12">{line}</text>')
    for c, ev in enumerate(evs):
        label = {"top": "0", "bottom": str(n), "pi": "pi"}.get(ev.kind, str(ev.slot))
        if ev.kind == "pi":
            continue
        out.append(f'<text class="event" x="{x_of(c) - 4}" y="{height - mg // 3}" '
                   f'font-size="12">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
