from __future__ import absolute_import, print_function
from hspy import hs_errors,\
    hs_config,\
    hs_exact,\
    hs_mask,\
    hs_operator,\
    hs_spectral,\
    hs_derham,\
    hs_sumrule,\
    hspy_utils,\
    hs_cli

from ._version import __version__
