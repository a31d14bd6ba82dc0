"""
Limits of relative frequencies
==============================

A product experiment is run by choosing one factor per session and repeating
it.  Each session hides a context inside the factor's probability set; the
relative frequency settles on it.  The set of session limits recovers the
subset probability of the product.
"""

import numpy as np

from subprob import data_path, load_sep
from subprob.choice import (
    ChoiceWeights,
    SimulationPolicy,
    attainable_hull,
    convex_combination,
    prop1_diagnostic,
    recover_subset,
)
from subprob.experiments import Base
from subprob.intervals import point

# With a single number per experiment, a weighted average of 1 forces every
# positive-weight factor to 1, but a zero weight lets a factor be anything.
print(convex_combination(ChoiceWeights([0, 1]), ["1/2", 1]))
print(prop1_diagnostic(ChoiceWeights([0, 1]), "1/10").counterexample)
print(attainable_hull([point("0.3"), point("0.7")]))

twopoint = load_sep(data_path("twopoint.sep"))
report = recover_subset(twopoint, [Base("a"), Base("b")], "p", SimulationPolicy(seed=0),
                        n_sessions=200, n_trials=100_000, delta=0.01)
print(report.summary())

f = report.final_frequencies
print("histogram of session limits:")
counts, edges = np.histogram(f, bins=8, range=(0.2, 0.8))
for c, lo in zip(counts, edges):
    print(f"  {lo:.3f} {'#' * int(c // 4)}")

# an interval component shows up as a spread of limits
volvo = load_sep(data_path("volvo.sep"))
report = recover_subset(volvo, [Base("strong")], "dented", SimulationPolicy(seed=1), 200, 100_000, 0.01)
print(report.summary())
