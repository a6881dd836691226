"""
Amplitude damping creates discord
=================================

A classical-quantum state has zero discord. Sending its B half through an
amplitude-damping channel, which is neither unital nor completely
decohering, produces a state with nonzero discord.
"""

import numpy as np

from qcorr import (
    amplitude_damping,
    classify_qubit_channel,
    find_witness,
)

# the channel and its structural class
ch = amplitude_damping(0.5)
rep = classify_qubit_channel(ch)
print("class:", rep.channel_class.value)
print("unitality defect:", rep.classification.unitality_defect)

# the witness is the cq state whose B kets come from the measurement basis
# that maximizes the commutator of the channel images
w = find_witness(ch)
theta, phi = w.basis_params
print(f"witness basis angles: theta={theta:.4f}  phi={phi:.4f}")
print(f"commutator norm: {w.commutator_norm:.6f}")
print(f"discord after channel: {w.discord:.6f} bits")
print(f"one-way deficit after channel: {w.deficit:.6f} bits")

# sweep the damping strength
for p in np.linspace(0.1, 0.9, 5):
    w = find_witness(amplitude_damping(p))
    print(f"p={p:.1f}  discord={w.discord:.5f}  deficit={w.deficit:.5f}")
