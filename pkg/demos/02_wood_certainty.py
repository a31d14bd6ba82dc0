"""
Certainty in the piece of wood
==============================

Four states of a piece of wood, two yes/no tests.  A test is certain in a
state when its probability set lies inside {1}.  The product of tests is
certain exactly when every factor is.
"""

from subprob import data_path, load_sep
from subprob.experiments import Base, Tilde, product
from subprob.sep import is_certain, is_close_to_certain, mu_eval, transfer_check
from subprob.intervals import interval

wood = load_sep(data_path("wood.sep"))
burn, flt = Base("burn"), Base("float")
both = product([burn, flt])

for p in wood.states:
    row = [str(mu_eval(wood, t, p)) for t in (burn, flt, both, Tilde(burn))]
    print(f"{p:10s} burn={row[0]:8s} float={row[1]:8s} both={row[2]:16s} ~burn={row[3]}")

print()
for p in wood.states:
    print(p, "both certain:", is_certain(wood, both, p))

# near-certainty with a tolerance
print("\nwithin 1/20 of certain in wet_heavy:", is_close_to_certain(wood, both, "wet_heavy", "1/20"))

# the same equivalence for any target set A
r = transfer_check(wood, [burn, flt], "dry_heavy", interval("0.8", 1))
print("A = [0.8, 1]:", r)
