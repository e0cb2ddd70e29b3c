"""
A module to handle base configuration
"""

from __future__ import absolute_import, print_function
import os
import configparser as _configparser

HSPY_ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..')
CONFIG_ENV = "HSPY_CONFIG"
SECTION = "hspy"

DEFAULTS = {"digits": "17",
            "max_order": "8",
            "levels": "3",
            "radius": "8"}

configparser = _configparser.ConfigParser()
configparser.optionxform = str


def reset():
    ''' Restore the package defaults '''
    global configparser
    configparser = _configparser.ConfigParser()
    configparser.optionxform = str
    configparser.read_dict({SECTION: DEFAULTS})


def load_config(config_file):

    """Overlay a user INI file on the current configuration.

    Parameters
    ----------
    config_file: string
      path to an INI file with a [hspy] section
    """

    with open(config_file) as f:
        configparser.read_file(f)


def load_default_config():
    ''' Read the file named by $HSPY_CONFIG, if any '''
    path = os.environ.get(CONFIG_ENV)
    if path:
        load_config(path)


def get_int(key):
    return configparser.getint(SECTION, key)


def get_digits():
    ''' Significant digits of decimal rendering '''
    return get_int("digits")


def get_max_order():
    return get_int("max_order")


def get_levels():
    return get_int("levels")


def get_radius():
    return get_int("radius")


reset()
