"""
Which Markovian dynamics keep states classical
==============================================

A qubit Lindblad generator leaves I/2 fixed exactly when the dissipative
block of its coefficient matrix is real. An imaginary off-diagonal entry
makes the dynamics non-unital, and the evolved cq state picks up discord.
"""

import numpy as np

from qcorr import (
    ClassicalQuantumEnsemble,
    LindbladGenerator,
    amplitude_damping_generator,
    discord_trajectory,
    preserves_classicality,
)

plus = np.array([1, 1]) / np.sqrt(2)
minus = np.array([1, -1]) / np.sqrt(2)
ens = ClassicalQuantumEnsemble.from_terms(
    [(0.7, np.diag([1, 0]), plus), (0.3, np.diag([0, 1]), minus)], (2, 2))

gamma = np.diag([0, 0.2, 0.2, 0.2]).astype(complex)
gamma[1, 2], gamma[2, 1] = 0.1j, -0.1j
times = np.linspace(0, 20, 9)

for label, g in [("complex", gamma), ("real part", gamma.real)]:
    gen = LindbladGenerator(np.zeros((2, 2)), g)
    check = preserves_classicality(gen)
    print(f"{label}: preserves={check.preserves}  ||L(I)||={check.identity_defect:.3e}")
    for pt in discord_trajectory(gen, ens, times):
        print(f"  t={pt.t:5.1f}  discord={pt.discord:.2e}")

# amplitude damping: discord appears, then decays as everything flows to |0>
rate = 1.0
for pt in discord_trajectory(amplitude_damping_generator(rate), ens, [0.5, 1, 2, 5, 50]):
    print(f"AD t={pt.t:4.1f}  deficit={pt.deficit:.5f}  discord={pt.discord:.5f}")
