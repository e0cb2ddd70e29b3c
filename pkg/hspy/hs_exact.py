"""
Exact arithmetic for hspy: rationals, rational matrices, univariate rational
polynomials, truncated matrix power series and an exact linear solver.

Matrices and vectors are numpy arrays of dtype object holding
``fractions.Fraction`` entries, so numpy does the bookkeeping while every
operation stays exact.
"""
from __future__ import absolute_import, print_function
import logging
import math
import re
import sys
from collections import namedtuple
from contextlib import contextmanager
from fractions import Fraction
from numbers import Rational

import numpy as np

from hspy.hs_errors import DimensionError, RationalError, RationalDivisionError

_LOG = logging.getLogger(__name__)

_RATIONAL_TEXT = re.compile(r"^-?[0-9]+(/[0-9]+)?$")


@contextmanager
def _unlimited_digits():
    """Lift the interpreter limit on int/str conversion while the block runs."""
    getter = getattr(sys, "get_int_max_str_digits", None)
    if getter is None:
        yield
        return
    previous = getter()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(previous)


def to_rational(x):

    """Convert an integer, a Fraction or a rational string to a Fraction.

    Parameters
    ----------
    x: int, Fraction or string
      the value to convert, strings use the ``"p/q"`` or ``"p"`` form
    """

    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, (bool, float)) or not isinstance(x, Rational):
        raise RationalError("not an exact rational: %r" % (x,))
    return Fraction(x)


def parse_rational(text):

    """Parse the text form of a rational, ``"p/q"`` or ``"p"``.

    Parameters
    ----------
    text: string
      optional leading ``-``, decimal digits, optional ``/`` and a positive denominator,
      no whitespace
    """

    if not isinstance(text, str) or not _RATIONAL_TEXT.match(text):
        raise RationalError("malformed rational %r" % (text[:40] if isinstance(text, str) else text,))
    num, _, den = text.partition("/")
    try:
        with _unlimited_digits():
            num, den = int(num), int(den or "1")
    except ValueError as exc:
        raise RationalError("cannot convert rational: %s" % exc)
    if den == 0:
        raise RationalError("zero denominator in %r" % (text[:40],))
    return Fraction(num, den)


def format_rational(q):
    """Canonical text form: ``"p"`` for integers, ``"p/q"`` otherwise."""
    q = to_rational(q)
    with _unlimited_digits():
        if q.denominator == 1:
            return "%d" % q.numerator
        return "%d/%d" % (q.numerator, q.denominator)


def rat_arith(a, b, op):

    """Exact arithmetic on two rationals.

    Parameters
    ----------
    a: rational
      left operand
    b: rational
      right operand
    op: string
      one of 'add', 'sub', 'mul', 'div'
    """

    a, b = to_rational(a), to_rational(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise RationalDivisionError("division of %s by zero" % format_rational(a))
        return a / b
    raise ValueError("unknown operation %r" % (op,))


_as_fraction = np.frompyfunc(to_rational, 1, 1)


def freeze(array):
    """Mark a numpy array read-only and return it."""
    array.flags.writeable = False
    return array


def rat_matrix(rows, n_cols=None):

    """Build a rational matrix from nested rows.

    Parameters
    ----------
    rows: list of lists (or 2d array)
      the entries, row major; ints, Fractions or rational strings
    n_cols: integer
      the number of columns, only needed when rows is empty
    """

    rows = [list(row) for row in rows]
    if n_cols is None:
        n_cols = len(rows[0]) if rows else 0
    out = np.empty((len(rows), n_cols), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise DimensionError("ragged matrix: row %d has %d entries, expected %d" % (i, len(row), n_cols))
        for j, x in enumerate(row):
            out[i, j] = to_rational(x)
    return out


def rat_vector(values):
    """Build a 1d rational vector."""
    values = list(values)
    out = np.empty(len(values), dtype=object)
    for i, x in enumerate(values):
        out[i] = to_rational(x)
    return out


def zeros(n_rows, n_cols=None):
    """Rational zero matrix (or vector when n_cols is None)."""
    shape = (n_rows,) if n_cols is None else (n_rows, n_cols)
    return np.full(shape, Fraction(0), dtype=object)


def identity(n):
    """Rational identity matrix of size n."""
    return diagonal([1] * n)


def diagonal(entries):
    """Rational diagonal matrix with the given diagonal."""
    entries = [to_rational(x) for x in entries]
    out = zeros(len(entries), len(entries))
    for i, x in enumerate(entries):
        out[i, i] = x
    return out


def as_fractions(array):
    """Return a copy of an array with every entry converted to Fraction."""
    array = np.asarray(array, dtype=object)
    if array.size == 0:
        return np.empty(array.shape, dtype=object)
    return np.asarray(_as_fraction(array), dtype=object)


def mat_mul(A, B):

    """Exact matrix product.

    Parameters
    ----------
    A: 2d object array
      left factor, A.shape[1] must equal B.shape[0]
    B: 1d or 2d object array
      right factor
    """

    if A.ndim != 2 or A.shape[1] != B.shape[0]:
        raise DimensionError("cannot multiply %s by %s" % (A.shape, B.shape))
    if A.shape[1] == 0:
        return zeros(*((A.shape[0],) + B.shape[1:]))
    return as_fractions(np.dot(A, B))


def mat_equal(A, B):
    """Exact equality of two matrices (shapes included)."""
    A, B = np.asarray(A, dtype=object), np.asarray(B, dtype=object)
    if A.shape != B.shape:
        return False
    return all(x == y for x, y in zip(A.flat, B.flat))


def is_zero(A):
    """True if every entry of A is zero."""
    return all(x == 0 for x in np.asarray(A, dtype=object).flat)


def format_matrix(A):
    """Rows of canonical rational strings."""
    return [[format_rational(x) for x in row] for row in A]


def power_of_two(e):
    """2**e as an exact rational, negative exponents allowed."""
    return Fraction(2) ** e


SolutionSet = namedtuple("SolutionSet", ["consistent", "particular", "nullspace", "contradiction"])
SolutionSet.__doc__ = """Result of :func:`solve_linear`.

consistent: boolean
  whether A x = b has a solution
particular: 1d object array or None
  the solution with every free variable set to 0
nullspace: list of 1d object arrays
  a basis of {v: A v = 0}, one vector per free variable
contradiction: Fraction or None
  when inconsistent, the nonzero right-hand side c of an eliminated row 0 = c
"""


def solve_linear(A, b):

    """Solve A x = b exactly by reduction to reduced row echelon form.

    The first nonzero entry of each column is used as pivot, free variables are
    set to zero for the particular solution and each of them spans one nullspace
    vector.

    Parameters
    ----------
    A: 2d object array
      the system matrix
    b: 1d object array (or column matrix)
      the right hand side, same number of rows as A
    """

    A = np.asarray(A, dtype=object)
    b = np.asarray(b, dtype=object).reshape(-1)
    n_rows, n_cols = A.shape
    if b.shape[0] != n_rows:
        raise DimensionError("system has %d rows but right hand side has %d" % (n_rows, b.shape[0]))
    _LOG.debug("solve_linear: %d equations, %d unknowns", n_rows, n_cols)

    m = [[to_rational(x) for x in A[r]] + [to_rational(b[r])] for r in range(n_rows)]
    pivots = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        sel = next((r for r in range(piv_r, n_rows) if m[r][piv_c] != 0), None)
        if sel is None:
            continue
        m[piv_r], m[sel] = m[sel], m[piv_r]
        inv = 1 / m[piv_r][piv_c]
        m[piv_r] = [x * inv for x in m[piv_r]]
        for r in range(n_rows):
            f = m[r][piv_c]
            if r != piv_r and f != 0:
                m[r] = [x - f * y for x, y in zip(m[r], m[piv_r])]
        pivots.append(piv_c)
        piv_r += 1

    contradiction = next((m[r][n_cols] for r in range(piv_r, n_rows) if m[r][n_cols] != 0), None)
    free = [c for c in range(n_cols) if c not in pivots]

    nullspace = []
    for f in free:
        v = zeros(n_cols)
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -m[r][f]
        nullspace.append(v)

    if contradiction is not None:
        return SolutionSet(False, None, nullspace, contradiction)

    x = zeros(n_cols)
    for r, c in enumerate(pivots):
        x[c] = m[r][n_cols]
    return SolutionSet(True, x, nullspace, None)


class RatPoly(object):

    """Univariate polynomial with exact rational coefficients.

    Coefficients are stored lowest degree first with trailing zeros removed,
    the zero polynomial has no coefficients.
    """

    __slots__ = ("_coefficients",)

    def __init__(self, coefficients=()):
        coefficients = [to_rational(c) for c in coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        self._coefficients = tuple(coefficients)

    @classmethod
    def monomial(cls, k, coefficient=1):
        """coefficient * x**k"""
        return cls([0] * k + [coefficient])

    @classmethod
    def constant(cls, c):
        return cls([c])

    @property
    def coefficients(self):
        return self._coefficients

    @property
    def degree(self):
        """Degree, -1 for the zero polynomial."""
        return len(self._coefficients) - 1

    @property
    def leading(self):
        return self._coefficients[-1] if self._coefficients else Fraction(0)

    def is_zero(self):
        return not self._coefficients

    def coefficient(self, i):
        return self._coefficients[i] if 0 <= i < len(self._coefficients) else Fraction(0)

    def __call__(self, x):
        return poly_eval(self, x)

    def derive(self, order=1):
        p = self
        for _ in range(order):
            p = poly_derive(p)
        return p

    def compose_affine(self, a, b):
        return poly_compose_affine(self, a, b)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self._coefficients), len(other._coefficients))
        return RatPoly([self.coefficient(i) + other.coefficient(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return RatPoly([-c for c in self._coefficients])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatPoly):
            c = to_rational(other)
            return RatPoly([c * x for x in self._coefficients])
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self._coefficients) + len(other._coefficients) - 1)
        for i, a in enumerate(self._coefficients):
            for j, b in enumerate(other._coefficients):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RatPoly):
            try:
                other = _as_poly(other)
            except RationalError:
                return NotImplemented
        return self._coefficients == other._coefficients

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self._coefficients)

    def to_strings(self):
        """Coefficients as canonical rational strings, lowest degree first."""
        return [format_rational(c) for c in self._coefficients]

    @classmethod
    def from_strings(cls, strings):
        return cls([parse_rational(s) for s in strings])

    def __repr__(self):
        return "RatPoly(%r)" % (self.to_strings(),)

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self._coefficients[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = format_rational(abs(c))
            if i == 0:
                body = mag
            else:
                power = "x" if i == 1 else "x^%d" % i
                body = power if mag == "1" else "%s*%s" % (mag, power)
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += " %s %s" % (sign, body)
        return text


def _as_poly(x):
    return x if isinstance(x, RatPoly) else RatPoly([x])


def poly_eval(p, x):

    """Evaluate a polynomial at a rational point with Horner's scheme.

    Parameters
    ----------
    p: RatPoly
      the polynomial
    x: rational
      the evaluation point
    """

    x = to_rational(x)
    value = Fraction(0)
    for c in reversed(p.coefficients):
        value = value * x + c
    return value


def poly_derive(p):
    """Formal derivative of a polynomial."""
    return RatPoly([i * c for i, c in enumerate(p.coefficients)][1:])


def poly_compose_affine(p, a, b):

    """Return the polynomial x -> p(a x + b).

    Parameters
    ----------
    p: RatPoly
      the polynomial
    a: rational
      the slope
    b: rational
      the offset
    """

    inner = RatPoly([b, a])
    out = RatPoly()
    for c in reversed(p.coefficients):
        out = out * inner + c
    return out


def shifted_monomial(k, tau=0):
    """The polynomial (x + tau)**k / k!."""
    return poly_compose_affine(RatPoly.monomial(k, Fraction(1, math.factorial(k))), 1, tau)


class MatrixSeries(object):

    """Truncated power series sum_s M_s t**s with rational matrix coefficients.

    Parameters
    ----------
    coefficients: list of 2d object arrays
      M_0, ..., M_order, all of the same shape
    """

    def __init__(self, coefficients):
        coefficients = [freeze(as_fractions(M)) for M in coefficients]
        if not coefficients:
            raise DimensionError("a matrix series needs at least one coefficient")
        shape = coefficients[0].shape
        for s, M in enumerate(coefficients):
            if M.ndim != 2 or M.shape != shape:
                raise DimensionError("coefficient %d has shape %s, expected %s" % (s, M.shape, shape))
        self._coefficients = tuple(coefficients)

    @property
    def order(self):
        return len(self._coefficients) - 1

    @property
    def shape(self):
        return self._coefficients[0].shape

    @property
    def coefficients(self):
        return self._coefficients

    def __getitem__(self, s):
        return self._coefficients[s]

    def truncate(self, order):
        return MatrixSeries(self._coefficients[:order + 1])

    def scale_argument(self, c):
        """The series of t -> M(c t)."""
        c = to_rational(c)
        return MatrixSeries([c ** s * M for s, M in enumerate(self._coefficients)])

    def __eq__(self, other):
        if not isinstance(other, MatrixSeries) or other.order != self.order:
            return False
        return all(mat_equal(A, B) for A, B in zip(self._coefficients, other._coefficients))

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "MatrixSeries(order=%d, shape=%s)" % (self.order, self.shape)


def series_mul(A, B, order):

    """Cauchy product of two matrix series truncated at t**order.

    Parameters
    ----------
    A: MatrixSeries
      left factor, defined at least up to order
    B: MatrixSeries
      right factor, defined at least up to order
    order: integer
      the truncation order
    """

    if A.shape[1] != B.shape[0]:
        raise DimensionError("cannot multiply series of shapes %s and %s" % (A.shape, B.shape))
    if A.order < order or B.order < order:
        raise DimensionError("series of orders %d and %d are not defined up to %d" % (A.order, B.order, order))
    out = []
    for s in range(order + 1):
        acc = zeros(A.shape[0], B.shape[1])
        for i in range(s + 1):
            acc = acc + mat_mul(A[i], B[s - i])
        out.append(acc)
    return MatrixSeries(out)
