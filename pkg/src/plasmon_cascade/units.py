"""Hartree atomic units and the I/O conversions used everywhere else.

All internal computation runs in atomic units (hbar = 1, 4*pi*eps0 = 1,
e = 1, c = 137.036).  Configuration files and CLI output speak eV, meV
and nm; the conversions live here and nowhere else.
"""

from __future__ import annotations

from dataclasses import dataclass

HARTREE_EV = 27.211386245988  # eV per Hartree
BOHR_NM = 0.052917721090380   # nm per Bohr radius
C_ATOMIC = 137.036            # speed of light in atomic units


@dataclass(frozen=True)
class UnitSystem:
    """Fixed atomic-unit system with eV/nm conversion factors."""

    hartree_ev: float = HARTREE_EV
    bohr_nm: float = BOHR_NM
    c: float = C_ATOMIC

    def ev_to_internal(self, value_ev: float) -> float:
        return value_ev / self.hartree_ev

    def internal_to_ev(self, value: float) -> float:
        return value * self.hartree_ev

    def mev_to_internal(self, value_mev):
        return value_mev * 1e-3 / self.hartree_ev

    def internal_to_mev(self, value):
        return value * self.hartree_ev * 1e3

    def nm_to_internal(self, value_nm: float) -> float:
        return value_nm / self.bohr_nm

    def internal_to_nm(self, value: float) -> float:
        return value * self.bohr_nm

    def dipole_enm_to_internal(self, value_enm: float) -> float:
        # charge is 1 in atomic units, so e*nm converts like a length
        return value_enm / self.bohr_nm


ATOMIC = UnitSystem()
