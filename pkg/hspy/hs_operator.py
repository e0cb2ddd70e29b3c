"""
The subdivision operator (S_A c)_j = sum_k A_{j-2k} c_k, the Hermite iteration
c^[n] = D^-n S_A^n c^[0], the *2 convolution of masks and the window bookkeeping
that keeps every emitted value equal to the value of the bi-infinite scheme.
"""
from __future__ import absolute_import, print_function
import logging
from fractions import Fraction

import numpy as np

from hspy import hs_exact, hs_mask
from hspy.hs_errors import DimensionError, WindowError

_LOG = logging.getLogger(__name__)


class HermiteSequence(object):

    """Finitely supported sequence of (d+1)-vectors.

    Parameters
    ----------
    d: integer
      the derivative order, vectors have d+1 entries
    offset: integer
      the index of the first stored vector
    values: 2d array (or nested lists) of shape (n, d+1)
      the stored vectors, values[i] sits at index offset+i

    Indices outside the stored range hold zero vectors. The stored range is kept
    as given (it is the window of known data), use :meth:`trim` for the tight support.
    """

    def __init__(self, d, offset, values):
        if isinstance(values, np.ndarray) and values.ndim == 2:
            values = hs_exact.as_fractions(values)
            if values.shape[1] != d + 1:
                raise DimensionError("vectors have %d entries, expected %d" % (values.shape[1], d + 1))
        else:
            values = hs_exact.rat_matrix(values, n_cols=d + 1)
        self._d = d
        self._offset = int(offset) if len(values) else 0
        self._values = hs_exact.freeze(values)

    @classmethod
    def zero(cls, d):
        return cls(d, 0, hs_exact.zeros(0, d + 1))

    @classmethod
    def delta(cls, d, index=0, component=0, window=None):

        """Unit vector e_component at index, zero elsewhere.

        Parameters
        ----------
        d: integer
          the derivative order
        index: integer
          where the unit vector sits
        component: integer
          which entry is 1
        window: (integer, integer)
          the stored index range, defaults to the single index
        """

        if not 0 <= component <= d:
            raise DimensionError("delta component %d outside 0..%d" % (component, d))
        lo, hi = window if window is not None else (index, index)
        if not lo <= index <= hi:
            raise WindowError("delta index %d outside window [%d, %d]" % (index, lo, hi))
        values = hs_exact.zeros(hi - lo + 1, d + 1)
        values[index - lo, component] = Fraction(1)
        return cls(d, lo, values)

    @property
    def d(self):
        return self._d

    @property
    def offset(self):
        return self._offset

    @property
    def values(self):
        return self._values

    def __len__(self):
        return len(self._values)

    def window(self):
        """The stored index range (first, last), None when nothing is stored."""
        if not len(self._values):
            return None
        return self._offset, self._offset + len(self._values) - 1

    def indices(self):
        w = self.window()
        return range(0) if w is None else range(w[0], w[1] + 1)

    def is_zero(self):
        return hs_exact.is_zero(self._values)

    def __getitem__(self, j):
        i = j - self._offset
        if 0 <= i < len(self._values):
            return self._values[i]
        return hs_exact.zeros(self._d + 1)

    def trim(self):
        """Drop leading and trailing zero vectors."""
        nonzero = [i for i in range(len(self._values)) if not hs_exact.is_zero(self._values[i])]
        if not nonzero:
            return HermiteSequence.zero(self._d)
        return HermiteSequence(self._d, self._offset + nonzero[0], self._values[nonzero[0]:nonzero[-1] + 1])

    def restrict(self, lo, hi):
        """The sequence on the index range [lo, hi], zero filled."""
        if hi < lo:
            return HermiteSequence.zero(self._d)
        return HermiteSequence(self._d, lo, [self[j] for j in range(lo, hi + 1)])

    def shift(self, s):
        """The sequence j -> c_{j-s}."""
        return HermiteSequence(self._d, self._offset + s, self._values)

    def transform(self, M):
        """Left multiply every vector by the matrix M."""
        if not len(self._values):
            return self
        return HermiteSequence(self._d, self._offset, self._values.dot(M.T))

    def _combine(self, other, alpha, beta):
        if other.d != self._d:
            raise DimensionError("cannot combine sequences with d=%d and d=%d" % (self._d, other.d))
        windows = [w for w in (self.window(), other.window()) if w is not None]
        if not windows:
            return HermiteSequence.zero(self._d)
        lo, hi = min(w[0] for w in windows), max(w[1] for w in windows)
        return HermiteSequence(self._d, lo, [alpha * self[j] + beta * other[j] for j in range(lo, hi + 1)])

    def __add__(self, other):
        return self._combine(other, 1, 1)

    def __sub__(self, other):
        return self._combine(other, 1, -1)

    def __rmul__(self, alpha):
        alpha = hs_exact.to_rational(alpha)
        return HermiteSequence(self._d, self._offset, alpha * self._values) if len(self._values) else self

    def __eq__(self, other):
        if not isinstance(other, HermiteSequence):
            return NotImplemented
        return other.d == self._d and (self - other).is_zero()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __repr__(self):
        w = self.window()
        if w is None:
            return "HermiteSequence(d=%d, zero)" % self._d
        return "HermiteSequence(d=%d, window=[%d, %d])" % (self._d, w[0], w[1])


class IterateFrame(object):

    """Level n of a Hermite iteration together with its parametrization.

    The entry j of the sequence sits at the abscissa 2^-n (j + tau).
    """

    def __init__(self, level, sequence, tau=0):
        self.level = level
        self.sequence = sequence
        self.tau = hs_exact.to_rational(tau)

    def abscissa(self, j):
        return hs_exact.power_of_two(-self.level) * (j + self.tau)

    def rows(self, lo=None, hi=None):
        """Pairs (abscissa, vector) on [lo, hi], defaulting to the stored window."""
        w = self.sequence.window()
        if lo is None or hi is None:
            if w is None:
                return []
            lo, hi = w
        return [(self.abscissa(j), self.sequence[j]) for j in range(lo, hi + 1)]

    def __repr__(self):
        return "IterateFrame(level=%d, tau=%s, %r)" % (self.level, hs_exact.format_rational(self.tau), self.sequence)


def _check_d(mask, c):
    if c.d != mask.d:
        raise DimensionError("sequence has d=%d but mask has d=%d" % (c.d, mask.d))


def apply(mask, c):

    """Apply the subdivision operator, (S_A c)_j = sum_k A_{j-2k} c_k.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    c: HermiteSequence
      the input sequence, same d as the mask
    """

    _check_d(mask, c)
    c = c.trim()
    if mask.is_zero() or c.is_zero():
        return HermiteSequence.zero(mask.d)
    a, b = c.window()
    L, U = mask.support_min, mask.support_max
    out = hs_exact.zeros(2 * b + U - (2 * a + L) + 1, mask.d + 1)
    for l, A in mask.items():
        start = l - L
        out[start:start + 2 * (b - a) + 1:2] += c.values.dot(A.T)
    return HermiteSequence(mask.d, 2 * a + L, out).trim()


def conv2(B, C):

    """The *2 convolution of two masks, (B *2 C)_j = sum_m B_{j-2m} C_m.

    Parameters
    ----------
    B: Mask
      the outer mask
    C: Mask
      the inner mask, same d as B
    """

    if B.d != C.d:
        raise DimensionError("cannot convolve masks with d=%d and d=%d" % (B.d, C.d))
    if B.is_zero() or C.is_zero():
        return hs_mask.Mask(B.d, 0, [])
    lo = 2 * C.support_min + B.support_min
    hi = 2 * C.support_max + B.support_max
    out = [hs_exact.zeros(B.d + 1, B.d + 1) for _ in range(hi - lo + 1)]
    for m, Cm in C.items():
        for l, Bl in B.items():
            out[l + 2 * m - lo] = out[l + 2 * m - lo] + hs_exact.mat_mul(Bl, Cm)
    return hs_mask.Mask(B.d, lo, out)


def iterate_frames(mask, c0, n, tau=0):

    """Yield the frames of levels 0..n of the Hermite iteration.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    c0: HermiteSequence
      the level 0 data
    n: integer
      the last level
    tau: rational
      the parametrization
    """

    _check_d(mask, c0)
    if n < 0:
        raise ValueError("number of levels must be >= 0, got %d" % n)
    c = c0
    yield IterateFrame(0, c0, tau)
    for level in range(1, n + 1):
        c = apply(mask, c)
        _LOG.debug("level %d: %d stored vectors", level, len(c))
        yield IterateFrame(level, c.transform(hs_mask.dilation_matrix(mask.d, -level)), tau)


def hermite_iterate(mask, c0, n, tau=0):

    """Run n steps of the Hermite scheme, c^[n] = D^-n S_A^n c^[0].

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    c0: HermiteSequence
      the level 0 data
    n: integer
      the number of steps
    tau: rational
      the parametrization carried by the frame
    """

    frame = None
    for frame in iterate_frames(mask, c0, n, tau):
        pass
    return frame


def _mask_support(mask):
    if mask.is_zero():
        raise WindowError("the zero mask has no support")
    return mask.support_min, mask.support_max


def pullback_window(mask, target, n=1):

    """Smallest input index range from which the target output range is exact after n steps.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    target: (integer, integer)
      the output index range [s, t]
    n: integer
      the number of steps
    """

    L, U = _mask_support(mask)
    s, t = target
    for _ in range(n):
        s, t = -((U - s) // 2), (t - L) // 2
    return s, t


def forward_window(mask, window, n=1):

    """Output index range whose values are exact from data known on window, after n steps.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    window: (integer, integer)
      the input index range [a, b]
    n: integer
      the number of steps
    """

    L, U = _mask_support(mask)
    a, b = window
    for _ in range(n):
        a, b = 2 * a + U - 1, 2 * b + L + 1
    return a, b


def support_window(mask, window, n=1):
    """Index range that can be nonzero after n steps from data supported on window."""
    L, U = _mask_support(mask)
    a, b = window
    for _ in range(n):
        a, b = 2 * a + L, 2 * b + U
    return a, b


def sample_hermite(p, d, tau, window):

    """Sample a polynomial and its derivatives, entry j = [p(j+tau), p'(j+tau), ..., p^(d)(j+tau)].

    Parameters
    ----------
    p: RatPoly
      the polynomial
    d: integer
      the derivative order
    tau: rational
      the parametrization
    window: (integer, integer)
      the index range
    """

    return sample_at_level(p, d, tau, 0, window)


def sample_at_level(p, d, tau, level, window):

    """Level-n samples of a polynomial, entry j = [p^(m)(2^-n (j+tau))]_m.

    This is what a scheme reproducing p returns at level n.
    """

    tau = hs_exact.to_rational(tau)
    lo, hi = window
    derivatives = [p.derive(m) for m in range(d + 1)]
    h = hs_exact.power_of_two(-level)
    return HermiteSequence(d, lo, [[q(h * (j + tau)) for q in derivatives] for j in range(lo, hi + 1)])


def _exact_window(mask, initial, n, compact):
    w = initial.window()
    if w is None:
        raise WindowError("initial data has no stored entries")
    if compact:
        return support_window(mask, w, n)
    lo, hi = forward_window(mask, w, n)
    if lo > hi:
        raise WindowError("no index is exactly computable after %d levels from initial window [%d, %d]; "
                          "enlarge the initial support" % (n, w[0], w[1]))
    return lo, hi


def limit_samples(mask, initial, levels, tau=0, compact=False):

    """Exact level-n samples (abscissa, vector) of the Hermite iteration, n = levels.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    initial: HermiteSequence
      the level 0 data
    levels: integer
      the level to sample, >= 1
    tau: rational
      the parametrization, entry j sits at 2^-levels (j + tau)
    compact: boolean
      if True the initial data is zero outside its window and the whole output support
      is emitted, otherwise only the indices computable from the window are emitted
    """

    if levels < 1:
        raise ValueError("levels must be >= 1, got %d" % levels)
    lo, hi = _exact_window(mask, initial, levels, compact)
    _LOG.debug("limit_samples: level %d, window [%d, %d]", levels, lo, hi)
    frame = hermite_iterate(mask, initial, levels, tau)
    return frame.rows(lo, hi)


def convergence_probe(mask, initial, levels, compact=False):

    """Heuristic convergence indicator, max_j |c^[n+1]_{2j} - c^[n]_j| for n = 1..levels-1.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    initial: HermiteSequence
      the level 0 data
    levels: integer
      the last level, >= 2
    compact: boolean
      as in :func:`limit_samples`

    Returns a list of exact deviations, None for a level without common computable index.
    """

    if levels < 2:
        raise ValueError("levels must be >= 2, got %d" % levels)
    frames = list(iterate_frames(mask, initial, levels))
    deviations = []
    for n in range(1, levels):
        try:
            lo, hi = _exact_window(mask, initial, n, compact)
            lo1, hi1 = _exact_window(mask, initial, n + 1, compact)
        except WindowError:
            deviations.append(None)
            continue
        common = range(max(lo, -((-lo1) // 2)), min(hi, hi1 // 2) + 1)
        if not len(common):
            deviations.append(None)
            continue
        fine, coarse = frames[n + 1].sequence, frames[n].sequence
        deviations.append(max(abs(x) for j in common for x in fine[2 * j] - coarse[j]))
    return deviations
