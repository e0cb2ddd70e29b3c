"""
End to end checks on the published masks and on masks synthesized to reproduce shifted
monomials, all in exact arithmetic.

The two published masks satisfy the spectral condition of order 2 only, reproduce
linear polynomials only, and still satisfy the special sum rule of order 7: a sum rule
of order ell > d does not imply the spectral condition of order ell.
"""
import itertools
from fractions import Fraction

import pytest

from hspy import hs_derham, hs_exact, hs_mask, hs_operator, hs_spectral, hs_sumrule
from hspy.hs_exact import RatPoly

catalog_names = ["han05_a1", "han05_a2", "hermite_cubic"]
taus = [Fraction(0), Fraction(-1, 2), Fraction(1, 3)]
fixture_support = (-3, 3)
max_degree = 3
n_perturbed = 20
n_random = 200


def _fixtures():
    out = []
    for d in (1, 2):
        for tau, ell in itertools.product(taus, range(d, max_degree + 1)):
            out.append((hs_spectral.synthesize_mask(d, tau, ell, fixture_support), tau, ell))
    return out


@pytest.fixture(scope="module")
def fixtures():
    return _fixtures()


@pytest.mark.parametrize("name, constant", [("han05_a1", "-1/12"), ("han05_a2", "-1/21")])
def test_spectral_order_of_published_masks(name, constant):
    report = hs_spectral.spectral_order(hs_mask.catalog(name), 8)
    assert report.order == 2
    assert report.polynomials == [RatPoly([1]), RatPoly([0, 1]), RatPoly([constant, 0, "1/2"])]
    assert not report.entries[3].feasible


@pytest.mark.parametrize("name", ["han05_a1", "han05_a2"])
def test_sum_rule_exceeds_spectral_order(name):
    mask = hs_mask.catalog(name)
    sumrule = hs_sumrule.sumrule_order(mask, 9)
    assert sumrule.order >= 7
    assert sumrule.verified
    assert sumrule.order > hs_spectral.spectral_order(mask, 9).order


@pytest.mark.parametrize("name", ["han05_a1", "han05_a2"])
def test_published_masks_reproduce_lines_only(name):
    mask = hs_mask.catalog(name)
    assert hs_spectral.reproduction_order(mask, 0, 8) == 1
    assert not hs_spectral.check_shifted_monomial(mask, 0, 2)


def _perturbed(rng, random_rational, base):
    j = int(rng.integers(base.support_min, base.support_max + 1))
    r, c = (int(x) for x in rng.integers(0, base.d + 1, size=2))
    matrices = [A.copy() for A in base.coefficients]
    bump = random_rational(rng)
    matrices[j - base.support_min][r, c] += bump if bump != 0 else Fraction(1, 7)
    return hs_mask.Mask(base.d, base.support_min, matrices)


def test_symbolic_check_agrees_with_iteration(fixtures, rng, random_rational):
    cases = [(hs_mask.catalog(name), Fraction(0)) for name in catalog_names]
    cases += [(mask, tau) for mask, tau, _ in fixtures]
    for _ in range(n_perturbed):
        base, tau, _ = fixtures[int(rng.integers(0, len(fixtures)))]
        cases.append((_perturbed(rng, random_rational, base), tau))
    for mask, tau in cases:
        for ell in range(max_degree + 1):
            symbolic = hs_spectral.check_shifted_monomial(mask, tau, ell)
            assert symbolic == hs_spectral.reproduces_by_iteration(mask, tau, ell)


def test_fixtures_reproduce_their_degree(fixtures):
    for mask, tau, ell in fixtures:
        assert hs_spectral.reproduction_order(mask, tau, ell) == ell


def test_derham_keeps_reproduction(fixtures):
    cases = [(hs_mask.catalog(name), Fraction(0), 1) for name in ("han05_a1", "han05_a2")]
    cases += fixtures
    for mask, tau, ell in cases:
        assert hs_spectral.check_shifted_monomial(mask, tau, ell)
        assert hs_derham.verify_lemma3(mask, tau, ell)


def test_derham_recursion_closed_form(rng, random_rational):
    for tau in taus + [random_rational(rng) for _ in range(5)]:
        p_list = [hs_exact.shifted_monomial(k, tau) for k in range(6)]
        bar = hs_derham.derham_spectral_recursion(p_list)
        assert bar == [hs_exact.shifted_monomial(k, (3 * tau - 1) / 2) for k in range(6)]


def test_minimal_spectral_iff_minimal_sum_rule(fixtures):
    masks = [hs_mask.catalog(name) for name in catalog_names]
    masks += [mask for mask, _, _ in fixtures]
    masks.append(hs_mask.Mask(1, 0, [hs_mask.dilation_matrix(1)]))
    assert any(mask.d == 2 for mask in masks)
    for mask in masks:
        report = hs_sumrule.lemma4_crosscheck(mask)
        assert report["consistent"], (mask, report)


def _solve2(A, b):
    det = A[0][0] * A[1][1] - A[0][1] * A[1][0]
    return [(b[0] * A[1][1] - A[0][1] * b[1]) / det, (A[0][0] * b[1] - b[0] * A[1][0]) / det]


def _apply2(A, v):
    return [A[0][0] * v[0] + A[0][1] * v[1], A[1][0] * v[0] + A[1][1] * v[1]]


def test_second_moment_by_hand(a1):
    F = Fraction
    M0, M1, M2 = [[2, 0], [0, F(1, 16)]], [[0, F(1, 64)], [F(-15, 8), 0]], [[F(17, 16), 0], [0, F(1, 16)]]
    N0, N1, N2 = [[0, 0], [0, F(15, 16)]], [[0, F(-15, 64)], [F(15, 8), 0]], [[F(-15, 16), 0], [0, F(15, 16)]]
    for r, (M, N) in enumerate(zip((M0, M1, M2), (N0, N1, N2))):
        assert hs_exact.mat_equal(hs_mask.moment(a1, r), hs_exact.rat_matrix(M))
        assert hs_exact.mat_equal(hs_mask.alt_moment(a1, r), hs_exact.rat_matrix(N))

    # level 2: (2 M0 - I) nu2 = -(M2 nu0 / 4 + M1 nu1) and 2 N0 nu2 = -(N2 nu0 / 4 + N1 nu1)
    nu0, nu1 = [F(1), F(0)], [F(0), F(-1)]
    lhs = [[2 * M0[0][0] - 1, 2 * M0[0][1]], [2 * M0[1][0], 2 * M0[1][1] - 1]]
    rhs = [-(x / 4 + y) for x, y in zip(_apply2(M2, nu0), _apply2(M1, nu1))]
    nu2 = _solve2(lhs, rhs)
    assert nu2 == [F(-1, 12), 0]
    pi_rhs = [-(x / 4 + y) for x, y in zip(_apply2(N2, nu0), _apply2(N1, nu1))]
    assert [2 * x for x in _apply2(N0, nu2)] == pi_rhs

    witness = hs_sumrule.sumrule_feasible(a1, 2, -1)
    assert list(witness.nu[2]) == nu2


def _apply_by_definition(mask, c, j):
    total = hs_exact.zeros(mask.d + 1)
    for k in c.indices():
        total = total + hs_exact.mat_mul(mask[j - 2 * k], c[k])
    return total


def test_operator_algebra(rng, random_rational, random_mask, random_sequence):
    for _ in range(n_random):
        mask = random_mask(rng)
        c, e = random_sequence(rng, mask.d), random_sequence(rng, mask.d)
        out = hs_operator.apply(mask, c)

        # entry 2j+eps only sees A_{2i+eps} c_{j-i}
        j, eps = int(rng.integers(-6, 7)), int(rng.integers(0, 2))
        split = hs_exact.zeros(mask.d + 1)
        for i in range(mask.support_min // 2 - 1, mask.support_max // 2 + 2):
            split = split + hs_exact.mat_mul(mask[2 * i + eps], c[j - i])
        assert hs_exact.mat_equal(out[2 * j + eps], split)
        assert hs_exact.mat_equal(out[2 * j + eps], _apply_by_definition(mask, c, 2 * j + eps))

        a, b = random_rational(rng), random_rational(rng)
        assert hs_operator.apply(mask, a * c + b * e) == a * out + b * hs_operator.apply(mask, e)

        s = int(rng.integers(-5, 6))
        assert hs_operator.apply(mask, c.shift(s)) == out.shift(2 * s)


def test_level_step_is_rescaled_operator(rng, random_mask, random_sequence):
    # D^(n+1) c^[n+1] = S_A D^n c^[n] at every level
    for _ in range(n_random):
        mask = random_mask(rng)
        n = int(rng.integers(1, 4))
        frames = list(hs_operator.iterate_frames(mask, random_sequence(rng, mask.d), n))
        assert [frame.level for frame in frames] == list(range(n + 1))
        for before, after in zip(frames, frames[1:]):
            raw = after.sequence.transform(hs_mask.dilation_matrix(mask.d, after.level))
            previous = before.sequence.transform(hs_mask.dilation_matrix(mask.d, before.level))
            assert raw == hs_operator.apply(mask, previous)


def test_conv2_by_double_sum(rng, random_mask, random_sequence):
    for _ in range(n_random):
        B = random_mask(rng)
        C = random_mask(rng, d=B.d)
        product = hs_operator.conv2(B, C)
        j = int(rng.integers(2 * C.support_min + B.support_min - 1, 2 * C.support_max + B.support_max + 2))
        direct = hs_exact.zeros(B.d + 1, B.d + 1)
        for m in range(C.support_min, C.support_max + 1):
            direct = direct + hs_exact.mat_mul(B[j - 2 * m], C[m])
        assert hs_exact.mat_equal(product[j], direct)

    # two steps with C then B are one step of dilation 4 with B *2 C
    for _ in range(10):
        B = random_mask(rng)
        C = random_mask(rng, d=B.d)
        c = random_sequence(rng, B.d)
        twice = hs_operator.apply(B, hs_operator.apply(C, c))
        product = hs_operator.conv2(B, C)
        for j in range(twice.offset - 2, twice.offset + len(twice) + 2):
            expected = hs_exact.zeros(B.d + 1)
            for m in c.indices():
                expected = expected + hs_exact.mat_mul(product[j - 4 * m], c[m])
            assert hs_exact.mat_equal(twice[j], expected)


def test_roundtrips(rng, random_rational, random_mask):
    for _ in range(n_random):
        mask = random_mask(rng)
        assert hs_mask.parse_mask(hs_mask.serialize_mask(mask)) == mask
        q = random_rational(rng, size=10 ** 6, max_den=10 ** 6)
        assert hs_exact.parse_rational(hs_exact.format_rational(q)) == q

