# This package contains modules for fermionic Gaussian entanglement statistics.
__version__ = "0.1"
