"""
The lattice of properties
=========================

Experiments certain in exactly the same states share a property.  The
properties form a complete lattice where meet is the product of
experiments, and each state picks out the properties that are actual in it.
"""

from subprob import data_path, load_sep
from subprob.experiments import Base, product
from subprob.properties import class_table, derive_sp, derive_sp_general, to_dot, validate_sp
from subprob.intervals import interval

wood = load_sep(data_path("wood.sep"))
sp = derive_sp(wood)
print(class_table(sp))
print("\naxiom violations:", validate_sp(sp))

burn, flt = Base("burn"), Base("float")
a, b = sp.class_of(wood, burn), sp.class_of(wood, flt)
print("\nclass(burn) ^ class(float) =", sp.lattice.meet(a, b))
print("class(burn) v class(float) =", sp.lattice.join(a, b))
print("actual in dry_light:", sp.lattice.meet(a, b) in sp.xi["dry_light"])

# Hasse diagram for graphviz
print()
print(to_dot(sp.lattice))

# relaxing certainty to "probability at least 0.95"
volvo = load_sep(data_path("volvo.sep"))
near = derive_sp_general(volvo, interval("0.95", 1))
print(class_table(near))
