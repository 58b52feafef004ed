"""No single assignment of +-1 values to the six (party, angle) pairs meets all four constraints.

Multiplying the first three constraints gives a_h b_h c_h = +1, while the fourth
asks for -1.  The exhaustive search confirms it and shows three is the best any
assignment can do.  Flipping the sign of the fourth constraint removes the clash.
"""

from ghzprob.hv_models import exhaustive_no_go, ghz_constraints

ghz = ghz_constraints()
report = exhaustive_no_go(ghz)
print("assignments:", report.total_assignments)
print("satisfying each constraint:", report.satisfier_counts)
print("satisfying all four:", report.all_satisfied_count)
print("best simultaneous:", report.max_simultaneous, "reached by", len(report.witnesses), "assignments")

flipped = ghz[:3] + [ghz[3].flipped()]
print("with the fourth sign flipped, best simultaneous:", exhaustive_no_go(flipped).max_simultaneous)
