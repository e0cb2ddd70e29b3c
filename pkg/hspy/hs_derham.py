"""
The de Rham transform of a Hermite mask, A_bar_j = D^-1 (A *2 A)_{2j+1}, and the
recursion carrying spectral polynomials of a scheme to those of its transform.
"""
from __future__ import absolute_import, print_function
import logging
import math
from collections import namedtuple
from fractions import Fraction

from hspy import hs_exact, hs_mask, hs_operator, hs_spectral
from hspy.hs_errors import HypothesisError, NormalizationError

_LOG = logging.getLogger(__name__)


def derham(mask):

    """De Rham transform of a mask.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    """

    square = hs_operator.conv2(mask, mask)
    if square.is_zero():
        return hs_mask.Mask(mask.d, 0, [])
    lo = -((1 - square.support_min) // 2)
    hi = (square.support_max - 1) // 2
    Dinv = hs_mask.dilation_matrix(mask.d, -1)
    _LOG.debug("derham: square supported on [%d, %d], odd part on [%d, %d]",
               square.support_min, square.support_max, lo, hi)
    return hs_mask.Mask(mask.d, lo, [hs_exact.mat_mul(Dinv, square[2 * j + 1]) for j in range(lo, hi + 1)])


def derham_tau(tau):
    """The parametrization of the transformed scheme, (3 tau - 1)/2."""
    return (3 * hs_exact.to_rational(tau) - 1) / 2


def lambda_mu(k, m, tau):

    """Closed forms of the recursion coefficients for shifted monomials.

    Parameters
    ----------
    k: integer
      the degree
    m: integer
      the lower index, m < k
    tau: rational
      the parametrization

    Returns (lambda_km, mu_km) with lambda_km = (2^k - 2^m)/(k-m)! (1-tau)^(k-m) and
    mu_km = -2^(m-k) (1-tau)^(k-m)/(k-m)!.
    """

    if not 0 <= m < k:
        raise ValueError("need 0 <= m < k, got k=%d m=%d" % (k, m))
    tau = hs_exact.to_rational(tau)
    base = (1 - tau) ** (k - m) / math.factorial(k - m)
    return (2 ** k - 2 ** m) * base, -hs_exact.power_of_two(m - k) * base


DeRhamCoefficients = namedtuple("DeRhamCoefficients", ["k", "lambdas", "mus"])


def mu_from_lambda(k, m, lam):
    return -lam * hs_exact.power_of_two(m - k) / (2 ** k - 2 ** m)


def derham_coefficients(k, tau):
    """All (lambda_km, mu_km), m = 0..k-1, for shifted monomials."""
    pairs = [lambda_mu(k, m, tau) for m in range(k)]
    coefficients = DeRhamCoefficients(k, [lam for lam, _ in pairs], [mu for _, mu in pairs])
    assert all(mu == mu_from_lambda(k, m, lam)
               for m, (lam, mu) in enumerate(zip(coefficients.lambdas, coefficients.mus)))
    return coefficients


def expand_in_basis(q, basis):

    """Coefficients of q in a triangular basis.

    Parameters
    ----------
    q: RatPoly
      the polynomial to expand, degree < len(basis)
    basis: list of RatPoly
      basis[m] has degree m and leading coefficient 1/m!
    """

    coefficients = [Fraction(0)] * len(basis)
    rest = q
    for m in range(len(basis) - 1, -1, -1):
        coefficients[m] = rest.coefficient(m) * math.factorial(m)
        rest = rest - coefficients[m] * basis[m]
    if not rest.is_zero():
        raise NormalizationError("%s is not in the span of the basis" % q)
    return coefficients


def derham_spectral_recursion(p_list):

    """Spectral polynomials of the de Rham transform from those of the scheme.

    For each k, q = p_k(2x+1) - 2^k p_k(x) is expanded in p_bar_0, ..., p_bar_{k-1} with
    coefficients lambda_km, then p_bar_k = p_k + sum_m mu_km p_bar_m with
    mu_km = -lambda_km 2^(m-k)/(2^k - 2^m).

    Parameters
    ----------
    p_list: list of RatPoly
      spectral polynomials p_0 = 1, p_1, ..., p_k[k] of degree k and leading coefficient 1/k!
    """

    bar = []
    for k, p in enumerate(p_list):
        hs_spectral.check_normalization(p, k)
        if k == 0:
            if p != 1:
                raise NormalizationError("p_0 must be 1, got %s" % p)
            bar.append(p)
            continue
        q = p.compose_affine(2, 1) - 2 ** k * p
        lambdas = expand_in_basis(q, bar)
        p_bar = p
        for m, lam in enumerate(lambdas):
            p_bar = p_bar + mu_from_lambda(k, m, lam) * bar[m]
        bar.append(p_bar)
    return bar


def verify_lemma3(mask, tau, ell):

    """Check that the de Rham transform reproduces polynomials of degree <= ell w.r.t. (3 tau - 1)/2.

    Parameters
    ----------
    mask: Mask
      a mask reproducing polynomials of degree <= ell w.r.t. tau
    tau: rational
      the parametrization of the mask
    ell: integer
      the degree
    """

    if not hs_spectral.check_shifted_monomial(mask, tau, ell):
        raise HypothesisError("the mask does not reproduce polynomials of degree <= %d w.r.t. tau=%s"
                              % (ell, hs_exact.format_rational(tau)))
    return hs_spectral.check_shifted_monomial(derham(mask), derham_tau(tau), ell)
