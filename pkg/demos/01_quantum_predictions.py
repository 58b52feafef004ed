"""Outcome laws for the three-qubit GHZ state at the four GHZ settings.

Each setting lies on a constraint surface: phases summing to pi/2 force the
product abc to be +1, phases summing to 3pi/2 force it to be -1.  Away from
those surfaces the product is random with mean sin(phi1 + phi2 + phi3).
"""

import math

from ghzprob.quantum import closed_form_distribution, ghz_state, outcome_distribution, sign_string

H = math.pi / 2
psi = ghz_state()

for phases in [(H, 0, 0), (0, H, 0), (0, 0, H), (H, H, H), (0, 0, 0), (math.pi / 6, 0, 0)]:
    d = outcome_distribution(psi, phases)
    support = [sign_string(o) for o, p in d.probabilities.items() if p > 1e-12]
    print(f"phases={tuple(round(x, 4) for x in phases)}  E[abc]={d.product_expectation():+.3f}  support={support}")

cf, sv = closed_form_distribution((H, 0, 0)), outcome_distribution(psi, (H, 0, 0))
print("\nlargest gap between closed form and statevector:", max(abs(cf[o] - sv[o]) for o in sv.probabilities))
