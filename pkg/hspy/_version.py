# Kept in sync with setup.cfg by bumpversion.
__version__ = "0.1.0"
