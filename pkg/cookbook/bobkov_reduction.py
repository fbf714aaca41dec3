# Recipe: one-dimensional correction for equal weights
from numpy import inf, linspace
from edgekit import bobkov_check, bobkov_g_cdf, EdgeworthExpansion, CumulantSet, Box, expansion_measure_box

beta4 = 1.0  # Rademacher
n = 10
cs = CumulantSet(1, 4, {(1,): 0, (2,): 1, (3,): 0, (4,): beta4 - 3})
e = EdgeworthExpansion.for_weighted_sum(cs, n=n, scale="averaged")
for x in linspace(-3, 3, 7):
    print("%5.1f %.15f %.15f" % (x, expansion_measure_box(e, Box([-inf], [x])), bobkov_g_cdf(beta4, n, x)))

check = bobkov_check(beta4, n)
print("agreeing convention:", ", ".join(check.agreeing))
