"""
Morphisms between entities
==========================

A morphism sends states of a bigger entity to states of a smaller one and
experiments of the smaller one back to experiments of the bigger one,
preserving probabilities.  Each one induces a morphism of property systems.
"""

import numpy as np

from subprob import data_path, load_sep
from subprob.category import (
    compose,
    derive_sp_morphism,
    dumps_morphism,
    identity,
    validate_sep_morphism,
    validate_sp_morphism,
)
from subprob.generate import random_pullback
from subprob.properties import derive_sp

volvo = load_sep(data_path("volvo.sep"))
rng = np.random.default_rng(7)

# a bigger entity built so that volvo is a sub-entity of it
big, phi = random_pullback(rng, volvo)
print(dumps_morphism(phi))
print("covariance violations:", validate_sep_morphism(big, volvo, phi))

psi = derive_sp_morphism(phi, big, volvo)
print("property map:")
for a, b in psi.n.items():
    print(f"  {a} -> {b}")
print("violations:", validate_sp_morphism(derive_sp(big), derive_sp(volvo), psi))

# composition and identities
bigger, chi = random_pullback(rng, big, prefix="t")
both = compose(phi, chi)
print("\ncomposite valid:", validate_sep_morphism(bigger, volvo, both) == [])
print("identity is neutral:", compose(identity(volvo), phi) == phi)
