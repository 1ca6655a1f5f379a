"""Catalogs of minimal NGT: brute force, the planar constructions, comparison."""
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import CapExceeded, WngtError
from .planar import (BPositiveData, bpositive_element, iota_b_element, iota_c_element,
                     iter_bpositive, parity_correct_element)
from .rootsys import SystemType
from .weyl import (AffineElement, element_from_json, element_to_json, generators, lambda_sequence,
                   length, reduced_word, root_from_json, root_to_json, simple_affine_roots)
from .words import Triple, default_cap, is_gatherable, is_minimal_ngt, nonmovable_endpoints


@dataclass(frozen=True)
class NgtRecord:
    element: AffineElement
    triple: Triple
    provenance: dict
    length: int

    def key(self):
        return (self.length, self.element.b2, tuple(self.element.w))

    def to_json(self):
        t = self.triple
        return {"element": element_to_json(self.element), "length": self.length,
                "triple": {"beta": root_to_json(t.beta), "gamma": root_to_json(t.gamma),
                           "alpha": root_to_json(t.alpha)},
                "provenance": self.provenance}


@dataclass
class Catalog:
    family: str
    rank: int
    max_length: int
    records: dict = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)
    report: dict = field(default_factory=dict)

    @property
    def system(self):
        return SystemType(self.family, self.rank)

    def add(self, rec):
        if rec.element not in self.records:
            self.records[rec.element] = rec

    def elements(self):
        return set(self.records)

    def sorted_records(self):
        return sorted(self.records.values(), key=NgtRecord.key)

    def __len__(self):
        return len(self.records)

    def header(self):
        return {"format": 1, "family": self.family, "rank": self.rank,
                "max_length": self.max_length, **self.parameters}

    def dumps(self):
        lines = [json.dumps(self.header(), sort_keys=True)]
        lines += [json.dumps(r.to_json(), sort_keys=True) for r in self.sorted_records()]
        return "\n".join(lines) + "\n"

    def write(self, path):
        with open(path, "w") as fh:
            fh.write(self.dumps())

    @classmethod
    def loads(cls, text):
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
        head = rows[0]
        if head.get("format") != 1:
            raise WngtError("unsupported catalog format")
        extra = {k: v for k, v in head.items() if k not in ("format", "family", "rank", "max_length")}
        cat = cls(head["family"], head["rank"], head["max_length"], parameters=extra)
        for row in rows[1:]:
            e = element_from_json(row["element"])
            t = is_minimal_ngt(e)
            stored = Triple(*(root_from_json(row["triple"][k]) for k in ("beta", "gamma", "alpha")))
            if t != stored:
                raise WngtError(f"record {row['element']} does not re-validate")
            cat.add(NgtRecord(e, t, row["provenance"], length(e)))
        return cat

    @classmethod
    def read(cls, path):
        with open(path) as fh:
            return cls.loads(fh.read())


# ---------------------------------------------------------------------
# brute force

def group_ball(sys, max_len, cap=None):
    """Elements of length <= max_len with one reduced word each (written order)."""
    cap = default_cap() if cap is None else cap
    gens = generators(sys)
    simple = simple_affine_roots(sys)
    layer = {AffineElement.identity(sys): ()}
    out = dict(layer)
    for _ in range(max_len):
        nxt = {}
        for x, word in layer.items():
            for i, a in enumerate(simple):
                if x(a).is_positive():
                    y = x * gens[i]
                    if y not in nxt:
                        nxt[y] = word + (i,)
        out.update(nxt)
        if len(out) > cap:
            raise CapExceeded(cap)
        layer = nxt
    return out


def _gather_check(args):
    sys, word, triple, cap = args
    try:
        return bool(is_gatherable(sys, word, triple, cap=cap))
    except CapExceeded:
        return None


def brute_enumerate(sys, max_len, cap=None, jobs=1, check=True):
    """All minimal NGT up to the given length, double-checked by restricted BFS."""
    cap = default_cap() if cap is None else cap
    ball = group_ball(sys, max_len, cap)
    cat = Catalog(sys.family, sys.rank, max_len, parameters={"mode": "brute"})
    found = []
    for e, word in ball.items():
        t = is_minimal_ngt(e)
        if t is not None:
            found.append((e, word, t))
    verdicts = [False] * len(found)
    if check:
        work = [(sys, list(w), t, cap) for _, w, t in found]
        if jobs > 1 and len(work) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                verdicts = list(pool.map(_gather_check, work))
        else:
            verdicts = [_gather_check(x) for x in work]
    bad = []
    for (e, word, t), v in zip(found, verdicts):
        if v:
            bad.append(e)
            continue
        cat.add(NgtRecord(e, t, {"kind": "BruteForce", "word": list(word),
                                 "gather_checked": check and v is not None}, length(e)))
    cat.report = {"ball_size": len(ball), "gatherable_contradictions": bad}
    return cat


# ---------------------------------------------------------------------
# constructions

def _bpositive_family(n, max_length):
    """B-positive data whose element has length <= max_length."""
    out = []
    t_max = 0
    while True:
        fresh = [d for d in iter_bpositive(n, t_max) if d.t[-1] == t_max]
        if not fresh:
            break
        lens = [(d, length(bpositive_element(d))) for d in fresh]
        keep = [(d, l) for d, l in lens if l <= max_length]
        out += keep
        if min(l for _, l in lens) > max_length:
            break
        t_max += 1
    return out


def catalog_b(n, max_length):
    """B-positive minimal NGT and their mirror images."""
    cat = Catalog("B", n, max_length, parameters={"mode": "construct"})
    for d, l in _bpositive_family(n, max_length):
        e = bpositive_element(d)
        cat.add(NgtRecord(e, is_minimal_ngt(e), {"kind": "BPositive", "data": d.to_json()}, l))
        f = iota_b_element(e)
        cat.add(NgtRecord(f, is_minimal_ngt(f), {"kind": "IotaB", "data": d.to_json()}, l))
    return cat


def _cd_candidates(d, family):
    """(recipe name, element in type B, needs two bottom lines) per the C/D recipes."""
    e = bpositive_element(d)
    star = iota_b_element(e)
    top = d.top_reflections()
    bottom = d.bottom_reflections()
    s0r = lambda x: parity_correct_element(x, ("top", "right"))
    s0l = lambda x: parity_correct_element(x, ("top", "left"))
    out = []
    if top % 2 == 0:
        out.append(("w'", e, bottom))
        out.append(("w''", iota_c_element(e), bottom))
    else:
        out.append(("w'", s0r(e), bottom))
        out.append(("w''", s0l(e), bottom))
    # the star element starts from the mirror image, whose top count is ours at the bottom
    if bottom % 2 == 0:
        out.append(("w*", star, top))
    else:
        out.append(("w*", s0r(star), top))
    if family == "C":
        return [(name, x) for name, x, _ in out]
    res = []
    snr = lambda x: parity_correct_element(x, ("bottom", "right"))
    snl = lambda x: parity_correct_element(x, ("bottom", "left"))
    for name, x, bcount in out:
        if bcount % 2 == 0:
            res.append((name, x))
        else:
            res.append((name + "sn", snr(x)))
            res.append(("sn" + name, snl(x)))
    return res


def _end_flip(y, side):
    """Conjugate by the type-B s_0 or s_n, an automorphism of the D diagram."""
    g = parity_correct_element(AffineElement.identity(y.system), (side, "right"))
    return g * y * g


def catalog_cd(family, n, max_length, slack=None):
    """Minimal NGT of type C or D obtained from the B-positive ones.

    Each recipe output is re-validated in the target family; recipes dropped
    by the two-line rule or failing validation are listed in ``report``.
    """
    target = SystemType(family, n)
    cat = Catalog(family, n, max_length, parameters={"mode": "construct"})
    # C/D lengths can be shorter than B lengths, so scan B data generously
    slack = 4 * max_length if slack is None else slack
    dropped_rule, failed = [], []
    for d, _ in _bpositive_family(n, slack):
        for name, x in _cd_candidates(d, family):
            two_line = d.v >= 2
            rule_ok = two_line if (name.strip("sn").startswith("w*") or family == "D") else True
            y = x.with_system(target)
            pi, _ = reduced_word(y)
            if pi != AffineElement.identity(target):
                failed.append((name, d, "not in the target group"))
                continue
            t = is_minimal_ngt(y)
            if not rule_ok:
                dropped_rule.append((name, d, t is not None))
                continue
            if t is None:
                failed.append((name, d, "not minimal"))
                continue
            l = length(y)
            if l > max_length:
                continue
            cat.add(NgtRecord(y, t, {"kind": "ParityCorrected", "recipe": name,
                                     "data": d.to_json()}, l))
            if family == "D":
                # the end automorphisms of the D diagram swap the paired mirrors
                for side in ("top", "bottom"):
                    z = _end_flip(y, side)
                    tz = is_minimal_ngt(z)
                    if tz is None:
                        failed.append((name, d, f"{side} flip not minimal"))
                        continue
                    cat.add(NgtRecord(z, tz, {"kind": "ParityCorrected", "recipe": name,
                                              "flip": side, "data": d.to_json()}, l))
    cat.report = {"dropped_by_two_line_rule": dropped_rule, "failed_validation": failed}
    return cat


# ---------------------------------------------------------------------
# comparison

def diagnose(e):
    first, last = nonmovable_endpoints(e)
    _, word = reduced_word(e)
    return {"element": element_to_json(e), "length": length(e), "word": word,
            "lambda": [str(r) for r in lambda_sequence(e.system, word)],
            "first": str(first) if first else None, "last": str(last) if last else None}


def cross_validate(c1, c2):
    a, b = c1.elements(), c2.elements()
    missing = sorted(a - b, key=lambda e: (length(e), e.b2, tuple(e.w)))
    extra = sorted(b - a, key=lambda e: (length(e), e.b2, tuple(e.w)))
    return {"equal": not missing and not extra, "size": (len(a), len(b)),
            "only_in_first": [diagnose(e) for e in missing],
            "only_in_second": [diagnose(e) for e in extra]}
