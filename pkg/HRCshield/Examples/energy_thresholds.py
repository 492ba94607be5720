"""
This file shows the admissible contact energies, the corresponding clamping forces and the speed a reflected mass
may have when it hits a body part.
"""

import numpy as np

from HRCshield import BodyKind, ContactEnergyTable, ContactType, GeometryClass, force_from_energy


def energy_thresholds(stiffness: float = 75000.):
    table = ContactEnergyTable()
    print(table.to_frame().pivot_table(index='body_kind', columns=['contact', 'geometry'], values='energy_J'))

    # clamping force for a body part with the given stiffness (N/m)
    energy = table.energy_threshold(BodyKind.HAND, GeometryClass.BLUNT, ContactType.CLAMP)
    print(f"A blunt clamp of the hand may store {energy} J, which is a force of "
          f"{force_from_energy(stiffness, energy):.1f} N.")

    # admissible speed of a reflected mass
    for mass in (1., 4., 10.):
        print(f"A reflected mass of {mass} kg may hit the hand at {np.sqrt(2 * energy / mass):.3f} m/s.")


if __name__ == "__main__":  # pragma: no cover
    energy_thresholds()
