"""tmzv: exact function-field arithmetic for Anderson t-modules, dual
t-motives, and characteristic-p multiple zeta values."""

__version__ = "0.1.0"
