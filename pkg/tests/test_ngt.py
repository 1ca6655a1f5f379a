import itertools

import pytest

from wngt.catalog import group_ball
from wngt.errors import BetaNegative, ConditionsFailed, NotAlmostDominant, RankTooSmall
from wngt.ngt import (almost_dominant_indices, build_varpi, check_siupsb, endpoints_match,
                      gamma_b, is_almost_dominant, nonaffine_from_affine, nonaffine_report,
                      sigma_index, sigma_w, subsys_extend, sweep, vthpib_family,
                      weight_from_coefficients)
from wngt.rootsys import SystemType, is_positive_vector
from wngt.weyl import (AffineRoot, descents, finite_element, from_word, length, pi_element,
                       simple_affine_roots)
from wngt.words import is_minimal_ngt, nonmovable_endpoints

B3, C3, D4, A3 = (SystemType(*x) for x in [("B", 3), ("C", 3), ("D", 4), ("A", 3)])

EQUIVALENT = [("a", "a~"), ("b", "b~"), ("a", "a'"), ("a'", "a''"), ("b'", "b''")]


def _check_sweep(sys, radius):
    bad = []
    for v in sweep(sys, radius, valid_only=False):
        r = v.report
        for x, y in EQUIVALENT:
            if r[x] != r[y]:
                bad.append((y, v.b2, v.k))
        if r["alpha"] and r["a''"] != r["a'''"]:
            bad.append(("a'''", v.b2, v.k))
        bv = v.bar()
        if bv.varpi != v.varpi.inverse():
            bad.append(("inverse", v.b2, v.k))
        if bv.bar_b2 != v.b2 or bv.bar_ae != v.ae:
            bad.append(("involution", v.b2, v.k))
        if v.valid and not r["p_zero"] and not endpoints_match(v):
            bad.append(("endpoints", v.b2, v.k))
    return bad


@pytest.mark.parametrize("sys", [B3, C3, A3], ids=str)
def test_condition_equivalences(sys):
    assert _check_sweep(sys, 1) == []


@pytest.mark.slow
def test_condition_equivalences_d4():
    assert _check_sweep(D4, 1) == []


def test_endpoint_prediction_can_fail_only_at_level_zero():
    mismatches = [v for v in sweep(B3, 1) if not endpoints_match(v)]
    assert mismatches
    assert all(v.report["p_zero"] for v in mismatches)


@pytest.mark.slow
@pytest.mark.parametrize("sys", [B3, C3], ids=str)
def test_every_two_sided_element_is_a_varpi(sys):
    found = {v.varpi for v in sweep(sys, 2)}
    for e in group_ball(sys, 10):
        d, dl = descents(e), descents(e.inverse())
        if len(d) == 1 and len(dl) == 1 and d != [0] and dl != [0]:
            assert e in found, e


def test_d_example():
    v = build_varpi(D4, (-1, -1, 0, 0), 2)
    assert v.valid
    t = is_minimal_ngt(v.varpi)
    assert set(t.roots()) == {AffineRoot((1, 0, 1, 0), 1), AffineRoot((1, 1, 0, 0), 1),
                              AffineRoot((0, 1, -1, 0), 0)}
    assert nonmovable_endpoints(v.varpi) == v.expected_endpoints()
    assert v.bar().varpi == v.varpi.inverse()
    assert check_siupsb(D4, (-1, -1, 0, 0), 2)


def test_d_example_gamma():
    g = gamma_b(D4, (-1, -1, 0, 0), 2)
    assert g.removed == (2,)
    assert set(g.nodes) == {1, 3, 4}


@pytest.mark.parametrize("n", [5, 7])
def test_d_parity_weights(n):
    sys = SystemType("D", n)
    v = build_varpi(sys, tuple([-1] * (n - 2) + [0, 0]), n - 2)
    p1 = pi_element(sys, 1)
    w1, w2 = p1 * v.varpi, v.varpi * p1
    assert w2 == w1.inverse()
    assert is_minimal_ngt(w1) is not None and is_minimal_ngt(w2) is not None
    if n == 5:
        assert w1.b == (2, -1, -1, 0, 0)
        assert w2.b == (-1, -1, -2, 0, 0)


def test_c6_with_nontrivial_ae():
    sys = SystemType("C", 6)
    ae = from_word(sys, [1, 2, 3, 4, 5, 6, 5, 4]).w
    b = (-1, -1, -1, -1, 0, 0)
    v = build_varpi(sys, b, 4, ae)
    assert v.valid and is_minimal_ngt(v.varpi) is not None
    # the same element comes from the subdiagram 2..6
    w = subsys_extend(sys, [2, 3, 4, 5, 6], (0, -1, -1, -1, 0, 0), b)
    assert w == v.varpi


def test_subsys_extend_rejects_small_subdiagrams():
    with pytest.raises(RankTooSmall):
        subsys_extend(SystemType("C", 6), [1, 2], (-1, 0, 0, 0, 0, 0), (-1, 0, 0, 0, 0, 0))
    with pytest.raises(ConditionsFailed):
        subsys_extend(SystemType("C", 6), [2, 3, 5, 6], (0, -1, -1, -1, 0, 0), (-1, -1, -1, -1, 0, 0))


def test_almost_dominant():
    assert is_almost_dominant(D4, (-2, -2, 0, 0), 2)
    assert not is_almost_dominant(D4, (-2, -2, 0, 0), 1)
    assert almost_dominant_indices(B3, (0, 0, 0)) == [1, 2, 3]
    with pytest.raises(NotAlmostDominant):
        build_varpi(B3, (1, -1, 1), 1)


@pytest.mark.parametrize("sys", [B3, C3, D4, A3], ids=str)
def test_sigma_is_an_involution(sys):
    for j in range(1, sys.rank + 1):
        assert sigma_index(sys, sigma_index(sys, j)) == j
    for om in sys.fundamental_weights:
        assert sigma_w(sys, sigma_w(sys, om)) == om


@pytest.mark.parametrize("sys", [B3, C3, D4], ids=str)
def test_nonaffine_elements_are_minimal(sys):
    some = 0
    for v in sweep(sys, 1):
        if not v.report["beta_positive"]:
            with pytest.raises(BetaNegative):
                nonaffine_report(v)
            continue
        u = nonaffine_from_affine(v)
        if u is not None:
            some += 1
            assert is_minimal_ngt(finite_element(sys, u)) is not None
    assert some > 0


def test_no_nonaffine_elements_in_type_a():
    assert all(nonaffine_from_affine(v) is None for v in sweep(A3, 1)
               if v.report["beta_positive"])


# -- the pi_b family ---------------------------------------------------------

FAMILY_SYSTEMS = [A3, B3, C3, D4, SystemType("B", 4), SystemType("C", 4)]


def _family(sys, mrange=range(-2, 3), crange=range(3)):
    n = sys.rank
    for i in range(1, n + 1):
        for m in mrange:
            for c in itertools.product(crange, repeat=n - 1):
                c = list(c)
                c.insert(i - 1, 0)
                yield i, m, c, vthpib_family(sys, i, m, c)


@pytest.mark.parametrize("sys", FAMILY_SYSTEMS, ids=str)
def test_pib_family_never_minimal(sys):
    for *_, e in _family(sys):
        assert is_minimal_ngt(e) is None


@pytest.mark.parametrize("sys", FAMILY_SYSTEMS, ids=str)
def test_pib_family_endpoints(sys):
    """First root alpha_0; the other end is alpha_0 (m <= 0) or a root over alpha_i (m > 0)."""
    a0 = simple_affine_roots(sys)[0]
    for i, m, c, e in _family(sys):
        if length(e) == 0:
            continue
        assert descents(e) == [0]
        left = descents(e.inverse())
        if len(left) != 1:
            continue
        first, last = nonmovable_endpoints(e)
        assert first == a0
        ai = sys.simple_roots[i - 1]
        if m <= 0:
            assert left == [0]
        else:
            assert left == [i]
            assert last.level == sys.nu(ai) * m
            assert not is_positive_vector(last.root) and sys.nu(last.root) == sys.nu(ai)
            if not any(c):
                assert last == AffineRoot(tuple(-x for x in ai), sys.nu(ai) * m)


def test_pib_family_two_left_descents_need_large_theta_pairing():
    # two simple roots on the left happen exactly when m > 0 and (b, theta^vee) >= 2
    for sys in FAMILY_SYSTEMS:
        for i, m, c, e in _family(sys, crange=range(2)):
            if length(e) == 0:
                continue
            two = len(descents(e.inverse())) == 2
            theta_pair = sys.pair_b2(sys.theta, _weight(sys, i, m, c))
            assert two == (m > 0 and theta_pair >= 2)


def _weight(sys, i, m, c):
    coeffs = {r: x for r, x in enumerate(c, 1) if r != i}
    coeffs[i] = -m
    return weight_from_coefficients(sys, coeffs)
