# This file makes the src directory a Python package
# This allows relative imports between modules in the package
__version__ = "0.1.0"
