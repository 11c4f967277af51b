"""Error-correcting transmission with noiseless feedback and a single error.

Nonadaptive codes for the binary symmetric channel and the Z-channel, bounds on
their free points, one- and two-feedback strategies built from them, and exact
solvers for the complete-feedback search games.
"""

__version__ = "0.1.0"
