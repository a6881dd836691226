"""
A mixing qutrit channel that creates correlations
=================================================

For qubits, unital channels never create discord from classical states.
In dimension three that fails: a mixture of the identity and one fixed
unitary is unital, yet the images of |0><0| and |1><1| do not commute.
"""

import numpy as np

from qcorr import qutrit_counterexample

rep = qutrit_counterexample(np.sqrt(0.5), np.sqrt(0.5))
print("mixing:", rep.mixing)
np.set_printoptions(precision=4, suppress=True)
print("commutator of the images of |0><0| and |1><1|:")
print(rep.commutator)
print("coefficient on the fixed pattern:", rep.coefficient)
print(f"deficit {rep.deficit:.5f} bits, discord {rep.discord:.5f} bits")

# the commutator grows as the product of the two mixture weights
for w1 in (0.1, 0.3, 0.5, 0.7, 0.9):
    r = qutrit_counterexample(np.sqrt(1 - w1), np.sqrt(w1), measure=False)
    print(f"weights ({1 - w1:.1f}, {w1:.1f})  coefficient {r.coefficient:.4f}  "
          f"product {(1 - w1) * w1:.4f}")
