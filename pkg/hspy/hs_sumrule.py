"""
Special sum rules of Hermite masks.

With the symbols A0(t) = 1/2 sum_s M_s t^s/s! and Api(t) = 1/2 sum_s N_s t^s/s! in a
formal variable t, a mask satisfies the special sum rule of order ell when some
moment sequence Y(t) = sum_s nu_s t^s with prescribed nu_0, ..., nu_d solves

    A0(t) Y(2t) = Y(t)   and   Api(t) Y(2t) = 0   (mod t^(ell+1)).

The prescribed moments are nu_j = sigma^j [q_j^(m)(tau)]_m with q_j = x^j/j!, which
reduces to sigma^j e_j for the primal parametrization tau = 0. All levels are
solved as one exact linear system in nu_{d+1}, ..., nu_ell.
"""
from __future__ import absolute_import, print_function
import logging
import math
from collections import namedtuple
from fractions import Fraction

import numpy as np

from hspy import hs_exact, hs_mask, hs_spectral

_LOG = logging.getLogger(__name__)

SIGNS = (-1, 1)


class MomentWitness(namedtuple("MomentWitness", ["d", "ell", "nu", "sigma", "tau"])):

    """Moments nu_0, ..., nu_ell witnessing the special sum rule of order ell.

    d: integer
      the derivative order
    ell: integer
      the order
    nu: list of 1d object arrays
      the moments, each with d+1 entries
    sigma: integer
      the sign convention, -1 or 1
    tau: Fraction
      the parametrization of the prescribed moments
    """

    def to_dict(self):
        return {"ell": self.ell,
                "sigma": self.sigma,
                "tau": hs_exact.format_rational(self.tau),
                "nu": [[hs_exact.format_rational(x) for x in v] for v in self.nu]}


def prescribed_moment(d, j, sigma, tau=0):
    """nu_j = sigma^j [q_j^(m)(tau)]_m for j <= d."""
    tau = hs_exact.to_rational(tau)
    return hs_exact.rat_vector([sigma ** j * tau ** (j - m) / math.factorial(j - m) if m <= j else 0
                                for m in range(d + 1)])


def _moments(mask, ell):
    return [hs_mask.moment(mask, r) for r in range(ell + 1)], [hs_mask.alt_moment(mask, r) for r in range(ell + 1)]


def _weight(j, s):
    return hs_exact.power_of_two(s - 1) / math.factorial(j - s)


def sumrule_feasible(mask, ell, sigma, tau=0):

    """Decide the special sum rule of order ell for one sign convention.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    ell: integer
      the order, ell >= d
    sigma: integer
      the sign convention, -1 or 1
    tau: rational
      the parametrization of the prescribed moments

    Returns a MomentWitness, or None when the rule does not hold.
    """

    d = mask.d
    if ell < d:
        raise ValueError("sum rule order must be >= d=%d, got %d" % (d, ell))
    if sigma not in SIGNS:
        raise ValueError("sigma must be -1 or 1, got %r" % (sigma,))
    tau = hs_exact.to_rational(tau)
    size = d + 1
    M, N = _moments(mask, ell)
    known = [prescribed_moment(d, j, sigma, tau) for j in range(d + 1)]
    n_unknown = (ell - d) * size
    eye = hs_exact.identity(size)

    blocks, rhs = [], []
    for j in range(ell + 1):
        for series, self_term in ((M, True), (N, False)):
            row = hs_exact.zeros(size, n_unknown)
            b = hs_exact.zeros(size)
            for s in range(j + 1):
                block = _weight(j, s) * series[j - s]
                if self_term and s == j:
                    block = block - eye
                if s <= d:
                    b = b - hs_exact.mat_mul(block, known[s])
                else:
                    col = (s - d - 1) * size
                    row[:, col:col + size] = row[:, col:col + size] + block
            blocks.append(row)
            rhs.append(b)
    A = np.vstack(blocks)
    b = np.concatenate(rhs)
    _LOG.debug("sumrule_feasible: ell=%d sigma=%d, %d equations, %d unknowns", ell, sigma, len(b), n_unknown)
    sol = hs_exact.solve_linear(A, b)
    if not sol.consistent:
        return None
    free = [hs_exact.freeze(sol.particular[i * size:(i + 1) * size].copy()) for i in range(ell - d)]
    return MomentWitness(d, ell, [hs_exact.freeze(v) for v in known] + free, sigma, tau)


def verify_witness(mask, witness):
    """Re-substitute a witness into every coefficient equation of its order."""
    M, N = _moments(mask, witness.ell)
    for j in range(witness.ell + 1):
        zero = hs_exact.zeros(mask.d + 1)
        at_zero, at_pi = zero - witness.nu[j], zero
        for s in range(j + 1):
            at_zero = at_zero + _weight(j, s) * hs_exact.mat_mul(M[j - s], witness.nu[s])
            at_pi = at_pi + _weight(j, s) * hs_exact.mat_mul(N[j - s], witness.nu[s])
        if not (hs_exact.is_zero(at_zero) and hs_exact.is_zero(at_pi)):
            return False
    return True


class SumRuleOrder(namedtuple("SumRuleOrder", ["order", "sigma", "witness", "verified", "tau"])):

    """Maximal special sum rule order found.

    order: integer
      the largest feasible order, d-1 when even order d fails
    sigma: integer or None
      the sign convention achieving it
    witness: MomentWitness or None
      the moments at that order
    verified: boolean
      whether the witness satisfies every coefficient equation on re-substitution
    tau: Fraction
      the parametrization of the prescribed moments
    """

    @property
    def below_minimal(self):
        """True when not even the sum rule of order d holds."""
        return self.sigma is None

    def to_dict(self):
        return {"order": self.order,
                "sigma": self.sigma,
                "tau": hs_exact.format_rational(self.tau),
                "below_minimal": self.below_minimal,
                "witness": self.witness.to_dict() if self.witness is not None else None,
                "witness_verified": self.verified}


def sumrule_order(mask, ell_max, tau=0):

    """Largest ell <= ell_max for which the special sum rule holds, trying both signs.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    ell_max: integer
      the largest order to try, >= d
    tau: rational
      the parametrization of the prescribed moments
    """

    d = mask.d
    if ell_max < d:
        raise ValueError("ell_max must be >= d=%d, got %d" % (d, ell_max))
    tau = hs_exact.to_rational(tau)
    best = SumRuleOrder(d - 1, None, None, False, tau)
    for sigma in SIGNS:
        for ell in range(d, ell_max + 1):
            witness = sumrule_feasible(mask, ell, sigma, tau)
            _LOG.debug("sigma=%d ell=%d: %s", sigma, ell, "feasible" if witness else "infeasible")
            if witness is None:
                break
            if ell > best.order:
                best = SumRuleOrder(ell, sigma, witness, verify_witness(mask, witness), tau)
    return best


def lemma4_crosscheck(mask, tau=None):

    """Compare the minimal spectral condition with the minimal sum rule.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    tau: rational
      the parametrization of the prescribed moments, inferred from p_1 when None
      (0 if it cannot be inferred)
    """

    d = mask.d
    if tau is None:
        tau = hs_spectral.infer_tau(mask)
        tau = Fraction(0) if tau is None else tau
    spectral_minimal = hs_spectral.spectral_order(mask, d).order >= d
    sumrule_minimal = any(sumrule_feasible(mask, d, sigma, tau) is not None for sigma in SIGNS)
    return {"spectral_minimal": spectral_minimal,
            "sumrule_minimal": sumrule_minimal,
            "consistent": spectral_minimal == sumrule_minimal,
            "tau": hs_exact.format_rational(tau)}
