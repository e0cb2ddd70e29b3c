"""
Spectral conditions of Hermite subdivision operators.

A polynomial p of degree k with leading coefficient 1/k! is a spectral polynomial
when S_A v_p = 2^-k v_p, v_p being the sequence j -> [p(j), p'(j), ..., p^(d)(j)].
Conditions are decided as polynomial identities, separately on even and odd
output indices, so the answers never depend on a sampling window.
"""
from __future__ import absolute_import, print_function
import logging
import math
from collections import namedtuple
from fractions import Fraction

from hspy import hs_exact, hs_mask, hs_operator
from hspy.hs_exact import RatPoly
from hspy.hs_errors import InfeasibleError, NormalizationError

_LOG = logging.getLogger(__name__)


class PolyVector(object):

    """Vector of d+1 polynomials, component m evaluated at j gives entry m of the sequence at j.

    Use :meth:`from_polynomial` to build G_p = [p, p', ..., p^(d)].
    """

    def __init__(self, components):
        self._components = tuple(components)

    @classmethod
    def from_polynomial(cls, p, d):
        return cls([p.derive(m) for m in range(d + 1)])

    @property
    def d(self):
        return len(self._components) - 1

    @property
    def components(self):
        return self._components

    def __call__(self, x):
        return hs_exact.rat_vector([q(x) for q in self._components])

    def compose_affine(self, a, b):
        return PolyVector([q.compose_affine(a, b) for q in self._components])

    def __add__(self, other):
        return PolyVector([p + q for p, q in zip(self._components, other.components)])

    def __sub__(self, other):
        return PolyVector([p - q for p, q in zip(self._components, other.components)])

    def __rmul__(self, c):
        return PolyVector([c * q for q in self._components])

    def is_zero(self):
        return all(q.is_zero() for q in self._components)

    def __eq__(self, other):
        if not isinstance(other, PolyVector):
            return NotImplemented
        return self._components == other.components

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __repr__(self):
        return "PolyVector(%s)" % ", ".join(str(q) for q in self._components)


def apply_symbolic(mask, p):

    """The operator applied to v_p, split by output parity.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    p: RatPoly
      the polynomial

    Returns the pair (V_0, V_1) with V_eps(j) = (S_A v_p)_{2j+eps} = sum_i A_{2i+eps} G_p(j-i).
    """

    d = mask.d
    G = [p.derive(n) for n in range(d + 1)]
    out = []
    for eps in (0, 1):
        components = [RatPoly() for _ in range(d + 1)]
        for l, A in mask.items():
            if l % 2 != eps:
                continue
            i = (l - eps) // 2
            shifted = [q.compose_affine(1, -i) for q in G]
            for m in range(d + 1):
                for n in range(d + 1):
                    if A[m, n] != 0:
                        components[m] = components[m] + A[m, n] * shifted[n]
        out.append(PolyVector(components))
    return tuple(out)


def _eigen_defect(mask, p, k):
    """Per parity, apply_symbolic(p) - 2^-k G_p(2x+eps)."""
    G = PolyVector.from_polynomial(p, mask.d)
    scale = hs_exact.power_of_two(-k)
    return tuple(V - scale * G.compose_affine(2, eps) for eps, V in enumerate(apply_symbolic(mask, p)))


def check_normalization(p, k):
    """Raise NormalizationError unless p has degree k and leading coefficient 1/k!."""
    if p.degree != k or p.leading != Fraction(1, math.factorial(k)):
        raise NormalizationError("expected degree %d with leading coefficient 1/%d!, got %s" % (k, k, p))


def check_spectral(mask, p, k):

    """Decide S_A v_p = 2^-k v_p exactly.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    p: RatPoly
      a polynomial of degree k with leading coefficient 1/k!
    k: integer
      the degree
    """

    check_normalization(p, k)
    return all(defect.is_zero() for defect in _eigen_defect(mask, p, k))


class SpectralSolution(namedtuple("SpectralSolution", ["k", "feasible", "particular", "homogeneous"])):

    """Solutions of the spectral condition in degree k.

    k: integer
      the degree
    feasible: boolean
      whether a spectral polynomial of degree k exists
    particular: RatPoly or None
      the solution with every free lower coefficient set to 0
    homogeneous: list of RatPoly
      polynomials of degree < k whose addition keeps the condition satisfied
    """

    @property
    def homogeneous_dim(self):
        return len(self.homogeneous)

    def to_dict(self):
        return {"k": self.k,
                "status": "solved" if self.feasible else "infeasible",
                "particular": self.particular.to_strings() if self.particular is not None else None,
                "homogeneous_dim": self.homogeneous_dim}


def _coefficient_rows(defects, n_powers):
    """Flatten the coefficients of a pair of PolyVectors, parity then component then power."""
    return [V.components[m].coefficient(s)
            for V in defects for m in range(len(V.components)) for s in range(n_powers)]


def solve_spectral(mask, k):

    """Solve for the spectral polynomial of degree k.

    The k lower coefficients of p = x^k/k! + c_{k-1} x^{k-1} + ... + c_0 are the unknowns.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    k: integer
      the degree, k >= 0
    """

    if k < 0:
        raise ValueError("degree must be >= 0, got %d" % k)
    lead = RatPoly.monomial(k, Fraction(1, math.factorial(k)))
    rhs = [-x for x in _coefficient_rows(_eigen_defect(mask, lead, k), k + 1)]
    columns = [_coefficient_rows(_eigen_defect(mask, RatPoly.monomial(i), k), k + 1) for i in range(k)]
    A = hs_exact.rat_matrix([[col[r] for col in columns] for r in range(len(rhs))], n_cols=k)
    _LOG.debug("solve_spectral: degree %d, %d equations", k, len(rhs))
    sol = hs_exact.solve_linear(A, hs_exact.rat_vector(rhs))

    homogeneous = [RatPoly(v) for v in sol.nullspace]
    if not sol.consistent:
        return SpectralSolution(k, False, None, homogeneous)
    return SpectralSolution(k, True, lead + RatPoly(sol.particular), homogeneous)


class SpectralReport(object):

    """Spectral condition solved degree by degree.

    Parameters
    ----------
    entries: list of SpectralSolution
      the scanned degrees 0, 1, ..., the last one possibly infeasible
    """

    def __init__(self, entries):
        self.entries = list(entries)
        self.order = -1
        for entry in self.entries:
            if not entry.feasible:
                break
            self.order = entry.k

    @property
    def polynomials(self):
        """Spectral polynomials p_0, ..., p_order."""
        return [entry.particular for entry in self.entries[:self.order + 1]]

    def to_dict(self):
        return {"order": self.order, "degrees": [entry.to_dict() for entry in self.entries]}

    def __repr__(self):
        return "SpectralReport(order=%d)" % self.order


def spectral_order(mask, k_max):

    """Maximal consecutive spectral order up to k_max.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    k_max: integer
      the largest degree to scan
    """

    entries = []
    for k in range(k_max + 1):
        entry = solve_spectral(mask, k)
        _LOG.debug("degree %d: %s", k, "solved" if entry.feasible else "infeasible")
        entries.append(entry)
        if not entry.feasible:
            break
    return SpectralReport(entries)


def check_shifted_monomial(mask, tau, ell):

    """Check the spectral condition with p_k = (x+tau)^k/k!, k = 0..ell.

    This is equivalent to reproduction of polynomials of degree <= ell w.r.t. tau.
    """

    return all(check_spectral(mask, hs_exact.shifted_monomial(k, tau), k) for k in range(ell + 1))


def reproduction_order(mask, tau, ell_max):

    """Largest ell <= ell_max such that polynomials of degree <= ell are reproduced, None if none.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    tau: rational
      the parametrization
    ell_max: integer
      the largest degree to check
    """

    order = None
    for k in range(ell_max + 1):
        if not check_spectral(mask, hs_exact.shifted_monomial(k, tau), k):
            break
        order = k
    return order


def infer_tau(mask):
    """The parametrization tau read from a unique p_1 = x + tau, None otherwise."""
    sol = solve_spectral(mask, 1)
    if not sol.feasible or sol.homogeneous_dim:
        return None
    return sol.particular.coefficient(0)


def synthesize_mask(d, tau, ell, support):

    """Build a mask satisfying the shifted-monomial spectral condition of order ell.

    The entries of A_L, ..., A_U are the unknowns of one linear system, the canonical
    particular solution (free entries 0) is returned.

    Parameters
    ----------
    d: integer
      the derivative order
    tau: rational
      the parametrization
    ell: integer
      the order
    support: (integer, integer)
      the index range [L, U] of the mask
    """

    tau = hs_exact.to_rational(tau)
    L, U = support
    size = d + 1
    variables = [(l, m, n) for l in range(L, U + 1) for m in range(size) for n in range(size)]
    rows, rhs = [], []
    for k in range(ell + 1):
        p = hs_exact.shifted_monomial(k, tau)
        G = [p.derive(n) for n in range(size)]
        scale = hs_exact.power_of_two(-k)
        for eps in (0, 1):
            target = [scale * q.compose_affine(2, eps) for q in G]
            shifted = {l: [q.compose_affine(1, -((l - eps) // 2)) for q in G]
                       for l in range(L, U + 1) if l % 2 == eps}
            for m in range(size):
                for s in range(k + 1):
                    rows.append([shifted[l][n].coefficient(s) if mm == m and l in shifted else Fraction(0)
                                 for (l, mm, n) in variables])
                    rhs.append(target[m].coefficient(s))
    _LOG.debug("synthesize_mask: %d equations, %d unknowns", len(rows), len(variables))
    sol = hs_exact.solve_linear(hs_exact.rat_matrix(rows, n_cols=len(variables)), hs_exact.rat_vector(rhs))
    if not sol.consistent:
        raise InfeasibleError("no mask with support [%d, %d] satisfies the spectral condition of order %d "
                              "with tau=%s" % (L, U, ell, hs_exact.format_rational(tau)))
    x = iter(sol.particular)
    matrices = [hs_exact.rat_matrix([[next(x) for _ in range(size)] for _ in range(size)]) for _ in range(L, U + 1)]
    return hs_mask.Mask(d, L, matrices)


def reproduces_by_iteration(mask, tau, ell, levels=3, radius=None):

    """Check reproduction of polynomials of degree <= ell by running the Hermite scheme.

    For each k, the data j -> [q_k^(m)(j+tau)]_m with q_k = x^k/k! is iterated exactly and
    compared with [q_k^(m)(2^-n (j+tau))]_m on the exactly computable window of every level.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    tau: rational
      the parametrization
    ell: integer
      the degree
    levels: integer
      the number of levels to run
    radius: integer
      half width of the checked index range at the last level, defaults to 2 (ell + 2)
    """

    r = radius if radius is not None else 2 * (ell + 2)
    window = hs_operator.pullback_window(mask, (-r, r), levels)
    for k in range(ell + 1):
        q = RatPoly.monomial(k, Fraction(1, math.factorial(k)))
        c0 = hs_operator.sample_hermite(q, mask.d, tau, window)
        for frame in hs_operator.iterate_frames(mask, c0, levels, tau):
            if frame.level == 0:
                continue
            lo, hi = hs_operator.forward_window(mask, window, frame.level)
            expected = hs_operator.sample_at_level(q, mask.d, tau, frame.level, (lo, hi))
            if expected != frame.sequence.restrict(lo, hi):
                _LOG.debug("degree %d not reproduced at level %d", k, frame.level)
                return False
    return True


def generation_profile(mask, p, k, tau, levels, radius=1):

    """Deviation between the iterates of v_p and the limit polynomial x^k/k!, level by level.

    Starting from c^[0] = v_p, the level n entry j is compared with
    [q_k^(m)(2^-n (j+tau))]_m for |2^-n (j+tau)| <= radius.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    p: RatPoly
      a polynomial of degree k with leading coefficient 1/k!
    k: integer
      the degree
    tau: rational
      the parametrization
    levels: integer
      the last level
    radius: rational
      the half width of the compared abscissa range

    Returns a list of (level, exact maximal deviation), levels 1..levels.
    """

    check_normalization(p, k)
    tau, radius = hs_exact.to_rational(tau), hs_exact.to_rational(radius)
    q = RatPoly.monomial(k, Fraction(1, math.factorial(k)))

    targets = {}
    for n in range(1, levels + 1):
        h = 2 ** n
        targets[n] = (math.ceil(-radius * h - tau), math.floor(radius * h - tau))
    pulled = [hs_operator.pullback_window(mask, targets[n], n) for n in targets]
    window = (min(w[0] for w in pulled), max(w[1] for w in pulled))
    c0 = hs_operator.sample_hermite(p, mask.d, 0, window)

    profile = []
    for frame in hs_operator.iterate_frames(mask, c0, levels, tau):
        if frame.level == 0:
            continue
        lo, hi = hs_operator.forward_window(mask, window, frame.level)
        lo, hi = max(lo, targets[frame.level][0]), min(hi, targets[frame.level][1])
        expected = hs_operator.sample_at_level(q, mask.d, tau, frame.level, (lo, hi))
        deviation = max(abs(x) for j in range(lo, hi + 1) for x in frame.sequence[j] - expected[j])
        profile.append((frame.level, deviation))
    return profile
