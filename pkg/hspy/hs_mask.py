"""
The mask of a Hermite subdivision operator: a finitely supported sequence of
(d+1)x(d+1) rational matrices, its moments, its JSON form and a small catalog
of published masks.
"""
from __future__ import absolute_import, print_function
import json
import logging

import numpy as np

from hspy import hs_exact
from hspy.hs_errors import DimensionError, MaskParseError, RationalError, UnknownMaskError

_LOG = logging.getLogger(__name__)


class Mask(object):

    """Class defining a Hermite subdivision mask.

    Parameters
    ----------
    d: integer
      the derivative order, matrices are (d+1)x(d+1)
    support_min: integer
      the index L of the first coefficient
    coefficients: list of 2d arrays (or nested lists)
      the matrices A_L, A_{L+1}, ...

    Leading and trailing zero matrices are trimmed so the support is tight. A mask
    without any nonzero matrix is the zero mask, it has no support.
    """

    def __init__(self, d, support_min, coefficients):
        if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 1:
            raise DimensionError("derivative order must be an integer >= 1, got %r" % (d,))
        d, support_min = int(d), int(support_min)
        matrices = []
        for i, A in enumerate(coefficients):
            A = A if isinstance(A, np.ndarray) else hs_exact.rat_matrix(A)
            if A.shape != (d + 1, d + 1):
                raise DimensionError("coefficient at index %d has shape %s, expected %s"
                                     % (support_min + i, A.shape, (d + 1, d + 1)))
            matrices.append(hs_exact.freeze(hs_exact.as_fractions(A)))

        first = next((i for i, A in enumerate(matrices) if not hs_exact.is_zero(A)), None)
        if first is None:
            matrices, support_min = [], 0
        else:
            last = max(i for i, A in enumerate(matrices) if not hs_exact.is_zero(A))
            matrices = matrices[first:last + 1]
            support_min += first

        self._d = d
        self._support_min = support_min
        self._coefficients = tuple(matrices)

    @property
    def d(self):
        return self._d

    @property
    def support_min(self):
        return self._support_min

    @property
    def support_max(self):
        return self._support_min + len(self._coefficients) - 1

    @property
    def coefficients(self):
        return self._coefficients

    def is_zero(self):
        return not self._coefficients

    def indices(self):
        """The indices of the support, L..U."""
        return range(self.support_min, self.support_max + 1)

    def items(self):
        """Pairs (j, A_j) over the support."""
        return zip(self.indices(), self._coefficients)

    def __getitem__(self, j):
        i = j - self._support_min
        if self.is_zero() or i < 0 or i >= len(self._coefficients):
            return hs_exact.zeros(self._d + 1, self._d + 1)
        return self._coefficients[i]

    def __eq__(self, other):
        if not isinstance(other, Mask):
            return NotImplemented
        if (self.d, self.support_min, len(self.coefficients)) != (other.d, other.support_min, len(other.coefficients)):
            return False
        return all(hs_exact.mat_equal(A, B) for A, B in zip(self.coefficients, other.coefficients))

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.d, self.support_min,
                     tuple(tuple(A.flat) for A in self.coefficients)))

    def __repr__(self):
        if self.is_zero():
            return "Mask(d=%d, zero)" % self.d
        return "Mask(d=%d, support=[%d, %d])" % (self.d, self.support_min, self.support_max)

    def info(self):
        """Summary dictionary of the mask."""
        return {"d": self.d,
                "support": None if self.is_zero() else [self.support_min, self.support_max],
                "interpolatory": is_interpolatory(self),
                "symmetric": is_symmetric(self)}


def support(mask):
    """Return (L, U), or None for the zero mask."""
    if mask.is_zero():
        return None
    return mask.support_min, mask.support_max


def dilation_matrix(d, power=1):

    """The dilation matrix D = diag(1, 1/2, ..., 2^-d) raised to an integer power.

    Parameters
    ----------
    d: integer
      the derivative order
    power: integer
      the exponent, negative values give inverses
    """

    return hs_exact.diagonal([hs_exact.power_of_two(-j * power) for j in range(d + 1)])


def parity_moment(mask, r, eps):

    """Parity moment P_r^eps = sum over n = eps mod 2 of n^r A_n.

    Parameters
    ----------
    mask: Mask
      the mask
    r: integer
      the moment order, r >= 0
    eps: integer
      the parity, 0 or 1
    """

    if r < 0 or eps not in (0, 1):
        raise ValueError("need r >= 0 and eps in {0, 1}, got r=%r eps=%r" % (r, eps))
    acc = hs_exact.zeros(mask.d + 1, mask.d + 1)
    for n, A in mask.items():
        if n % 2 == eps:
            acc = acc + n ** r * A
    return acc


def moment(mask, r):
    """Moment M_r = sum_k k^r A_k."""
    return parity_moment(mask, r, 0) + parity_moment(mask, r, 1)


def alt_moment(mask, r):
    """Alternating moment N_r = sum_k (-1)^k k^r A_k."""
    return parity_moment(mask, r, 0) - parity_moment(mask, r, 1)


def is_interpolatory(mask):
    """True iff A_0 = D and every other even-index matrix vanishes."""
    if not hs_exact.mat_equal(mask[0], dilation_matrix(mask.d)):
        return False
    return all(hs_exact.is_zero(A) for j, A in mask.items() if j % 2 == 0 and j != 0)


def reflect(mask):
    """The mirrored mask j -> A_{-j}."""
    if mask.is_zero():
        return mask
    return Mask(mask.d, -mask.support_max, list(reversed(mask.coefficients)))


def is_symmetric(mask):

    """Check the mirror symmetry A_{-j} = E A_j E with E = diag(1, -1, 1, ...).

    Parameters
    ----------
    mask: Mask
      the mask to check
    """

    if mask.is_zero():
        return True
    if mask.support_min != -mask.support_max:
        return False
    E = hs_exact.diagonal([(-1) ** i for i in range(mask.d + 1)])
    return all(hs_exact.mat_equal(mask[-j], hs_exact.mat_mul(hs_exact.mat_mul(E, A), E))
               for j, A in mask.items())


def _mask_document(mask):
    return {"d": mask.d,
            "support_min": mask.support_min,
            "coefficients": [hs_exact.format_matrix(A) for A in mask.coefficients]}


def serialize_mask(mask):

    """Canonical JSON form of a mask, as UTF-8 bytes.

    Parameters
    ----------
    mask: Mask
      the mask to serialize
    """

    return json.dumps(_mask_document(mask)).encode("utf-8")


def parse_mask(text):

    """Parse and validate a JSON mask document.

    Parameters
    ----------
    text: bytes or string
      the document, ``{"d": 1, "support_min": -2, "coefficients": [[["1/128", "7/256"], ["0", "1/16"]], ...]}``
    """

    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MaskParseError("mask document is not UTF-8", "byte %d" % exc.start)
    try:
        doc = json.loads(text)
    except ValueError as exc:
        location = "line %d column %d" % (exc.lineno, exc.colno) if hasattr(exc, "lineno") else None
        raise MaskParseError("invalid JSON: %s" % getattr(exc, "msg", exc), location)

    if not isinstance(doc, dict):
        raise MaskParseError("mask document must be a JSON object", "$")
    for key in ("d", "support_min", "coefficients"):
        if key not in doc:
            raise MaskParseError("missing key %r" % key, "$")

    d, support_min, coefficients = doc["d"], doc["support_min"], doc["coefficients"]
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise MaskParseError("d must be an integer >= 1", "d")
    if isinstance(support_min, bool) or not isinstance(support_min, int):
        raise MaskParseError("support_min must be an integer", "support_min")
    if not isinstance(coefficients, list) or not coefficients:
        raise MaskParseError("coefficients must be a nonempty list", "coefficients")

    matrices = []
    for i, rows in enumerate(coefficients):
        where = "coefficients[%d]" % i
        if not isinstance(rows, list) or len(rows) != d + 1:
            raise MaskParseError("expected %d rows for d=%d" % (d + 1, d), where)
        matrix = []
        for r, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != d + 1:
                raise MaskParseError("expected %d entries per row for d=%d" % (d + 1, d), "%s[%d]" % (where, r))
            entries = []
            for c, entry in enumerate(row):
                try:
                    entries.append(hs_exact.parse_rational(entry))
                except RationalError as exc:
                    raise MaskParseError(str(exc), "%s[%d][%d]" % (where, r, c))
            matrix.append(entries)
        matrices.append(hs_exact.rat_matrix(matrix))

    mask = Mask(d, support_min, matrices)
    if mask.is_zero():
        raise MaskParseError("mask is entirely zero", "coefficients")
    if len(mask.coefficients) != len(matrices):
        _LOG.debug("trimmed zero matrices, support is now [%d, %d]", mask.support_min, mask.support_max)
    return mask


def read_mask(file_name):
    """Read a mask from a JSON file."""
    with open(file_name, "rb") as f:
        return parse_mask(f.read())


def write_mask(mask, file_name):
    """Write a mask to a JSON file."""
    with open(file_name, "wb") as f:
        f.write(serialize_mask(mask))


_CATALOG = {
    "han05_a1": {
        "description": "Hermite scheme a1, d=1, support [-2, 2], spectral order 2",
        "d": 1,
        "support_min": -2,
        "coefficients": [
            [["1/128", "7/256"], ["0", "1/16"]],
            [["1/2", "-1/16"], ["15/16", "-7/32"]],
            [["63/64", "0"], ["0", "3/8"]],
            [["1/2", "1/16"], ["-15/16", "-7/32"]],
            [["1/128", "-7/256"], ["0", "1/16"]],
        ],
    },
    "han05_a2": {
        "description": "Hermite scheme a2, d=1, support [-2, 2], spectral order 2",
        "d": 1,
        "support_min": -2,
        "coefficients": [
            [["7/96", "-25/1344"], ["77/384", "-19/384"]],
            [["1/2", "-5/56"], ["7/12", "-1/24"]],
            [["41/48", "0"], ["0", "19/96"]],
            [["1/2", "5/56"], ["-7/12", "-1/24"]],
            [["7/96", "25/1344"], ["-77/384", "-19/384"]],
        ],
    },
    "hermite_cubic": {
        "description": "interpolatory two-point cubic Hermite scheme, d=1, support [-1, 1]",
        "d": 1,
        "support_min": -1,
        "coefficients": [
            [["1/2", "-1/8"], ["3/4", "-1/8"]],
            [["1", "0"], ["0", "1/2"]],
            [["1/2", "1/8"], ["-3/4", "-1/8"]],
        ],
    },
}


def catalog_names():
    """Sorted names of the built-in masks."""
    return sorted(_CATALOG)


def catalog_description(name):
    catalog(name)
    return _CATALOG[name]["description"]


def catalog(name):

    """Return a built-in mask by name.

    Parameters
    ----------
    name: string
      one of :func:`catalog_names`
    """

    if name not in _CATALOG:
        raise UnknownMaskError("unknown mask %r, available: %s" % (name, ", ".join(catalog_names())))
    entry = _CATALOG[name]
    return Mask(entry["d"], entry["support_min"],
                [hs_exact.rat_matrix(A) for A in entry["coefficients"]])
