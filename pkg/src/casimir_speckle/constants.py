"""Physical constants, frozen at CODATA values (6 significant digits).

The constants are deliberately pinned rather than imported from scipy so
that results are bit-reproducible across environments; every acceptance
tolerance in the test suite is far wider than the precision lost here.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float  # reduced Planck constant [J s]
    c: float  # speed of light in vacuum [m/s]
    eps0: float  # vacuum permittivity [F/m]
    kB: float  # Boltzmann constant [J/K]
    me: float  # electron mass [kg]
    e: float  # elementary charge [C]

    def __post_init__(self):
        for name in ("hbar", "c", "eps0", "kB", "me", "e"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"constant {name} must be positive")


CONSTANTS = PhysicalConstants(
    hbar=1.054572e-34,
    c=2.997925e8,
    eps0=8.854188e-12,
    kB=1.380649e-23,
    me=9.109384e-31,
    e=1.602177e-19,
)
