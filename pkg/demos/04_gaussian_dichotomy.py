"""Infinite products of Gaussians are either equivalent or mutually singular.

With variances b_j = j^-2 even an absurdly small mean shift of 1e-100 j^-3/2
makes the product measures singular, because sum da_j^2 / b_j diverges like a
harmonic series.  Faster-decaying shifts keep them equivalent.
"""

from ghzprob.dichotomy import GaussianPerturbation, PowerLawSeq, classify, kakutani_classify

b = PowerLawSeq(1.0, 2.0)
cases = {
    "da = 1e-100 j^-3/2": GaussianPerturbation(b, da=PowerLawSeq(1e-100, 1.5)),
    "da = j^-2": GaussianPerturbation(b, da=PowerLawSeq(1.0, 2.0)),
    "db = 1e-3 b_j / sqrt(j)": GaussianPerturbation(b, db=PowerLawSeq(1e-3, 2.5)),
    "db = b_j / j": GaussianPerturbation(b, db=PowerLawSeq(1.0, 3.0)),
    "no shift": GaussianPerturbation(b),
}
for name, g in cases.items():
    c, k = classify(g), kakutani_classify(g)
    rate = f"terms ~ j^-{c.exponent:g}" if c.coefficient > 0 else "terms vanish"
    print(f"{name:26s} {c.verdict.value:10s} {rate:16s} Hellinger route: {k.verdict.value}")
