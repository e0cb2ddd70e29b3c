"""
Utils for hspy: decimal rendering of exact values and the CSV/JSON writers.
"""
from __future__ import absolute_import, print_function
import json
import os
import sys
from decimal import Decimal, localcontext

import numpy as np

from hspy import hs_exact


def render_decimal(q, digits=17):

    """Render an exact rational as a decimal string.

    Parameters
    ----------
    q: rational
      the value
    digits: integer
      the number of significant digits
    """

    q = hs_exact.to_rational(q)
    with localcontext() as ctx:
        ctx.prec = digits
        value = Decimal(q.numerator) / Decimal(q.denominator)
    return "{:f}".format(value)


def samples_to_array(rows, digits=17):

    """Turn (abscissa, vector) pairs into a 2d array of decimal strings.

    Parameters
    ----------
    rows: list of (rational, 1d array)
      the samples
    digits: integer
      the number of significant digits
    """

    return np.array([[render_decimal(x, digits)] + [render_decimal(v, digits) for v in vector]
                     for x, vector in rows], dtype=str)


def _open_target(file_name):
    if file_name is None or file_name == "-":
        return sys.stdout, False
    directory = os.path.dirname(file_name)
    if directory:
        create_directory(directory)
    return open(file_name, "w"), True


def write_samples(file_name, rows, d, digits=17):

    """Write samples as CSV with header x,c0,...,cd.

    Parameters
    ----------
    file_name: string
      the output file, '-' or None for stdout
    rows: list of (rational, 1d array)
      the samples
    d: integer
      the derivative order
    digits: integer
      the number of significant digits
    """

    header = ",".join(["x"] + ["c%d" % m for m in range(d + 1)])
    data = samples_to_array(rows, digits).reshape(-1, d + 2)
    f, close = _open_target(file_name)
    try:
        np.savetxt(f, data, fmt="%s", delimiter=",", header=header, comments="")
    finally:
        if close:
            f.close()


def write_probe(file_name, deviations, digits=17):
    """Write convergence probe deviations as CSV with header level,deviation."""
    data = np.array([[str(n + 1), "" if dev is None else render_decimal(dev, digits)]
                     for n, dev in enumerate(deviations)], dtype=str).reshape(-1, 2)
    f, close = _open_target(file_name)
    try:
        np.savetxt(f, data, fmt="%s", delimiter=",", header="level,deviation", comments="")
    finally:
        if close:
            f.close()


def dump_json(obj):
    """Deterministic JSON text of a report."""
    return json.dumps(obj, indent=2)


def create_directory(name):

    """Create a directory

    Parameters
    ----------
    name: string
      the name of the directory

    """

    try:
        os.makedirs(name)
    except FileExistsError:
        pass
