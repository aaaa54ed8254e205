"""qaxiom: symbolic and numerical checks of canonical and magnetic commutator algebras."""

__version__ = "0.1.0"
