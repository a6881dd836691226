"""
Local unital noise cannot raise the singlet fraction
====================================================

The maximal singlet fraction F of a two-qubit state fixes its best
teleportation fidelity f = (2F + 1)/3. Unital channels on one side never
increase F; amplitude damping sometimes does.
"""

import numpy as np

from qcorr import (
    amplitude_damping,
    depolarizing,
    msf_after_channel,
    random_density_matrix,
    random_unital_channel,
)
from qcorr.states import ket_to_dm, maximally_entangled_ket

rng = np.random.default_rng(1)
gains = []
for _ in range(20):
    rho = random_density_matrix(4, rng)
    res = msf_after_channel(rho, random_unital_channel(2, 3, rng), dual_route=False)
    gains.append(res.F_after - res.F_before)
print(f"largest change of F under random unital noise: {max(gains):.2e}")

phi = ket_to_dm(maximally_entangled_ket(2))
res = msf_after_channel(phi, depolarizing(0.5))
print(f"depolarizing(0.5) on a Bell state: F = {res.F_after:.6f}, "
      f"both routes agree: {res.routes_agree}")

# a non-unital channel can help: search a few states
best = 0.0
for _ in range(200):
    rho = random_density_matrix(4, rng)
    res = msf_after_channel(rho, amplitude_damping(0.3), dual_route=False)
    best = max(best, res.F_after - res.F_before)
print(f"largest gain from amplitude damping(0.3) over 200 states: {best:.4f}")
