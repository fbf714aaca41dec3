# Recipe: importance-sampled measure of a ball under a two-dimensional expansion
from edgekit import get_spec, cumulants_of_spec, sample_sphere, EdgeworthExpansion, Ball, Box, \
    gaussian_measure, expansion_measure_mc, expansion_measure_box, empirical_probability

spec = get_spec("three-point", 2, a2=3)
theta = sample_sphere(12, 0)
e = EdgeworthExpansion.for_weighted_sum(cumulants_of_spec(spec, 4), theta=theta)

ball = Ball([0.5, 0.0], 1.2)
est, se = expansion_measure_mc(e, ball, 400000, 1)
truth, (lo, hi) = empirical_probability(spec, theta, ball, 400000, 2)
print("gaussian  %.6f" % gaussian_measure(ball))
print("expansion %.6f +- %.1e" % (est, se))
print("sampled   %.6f [%.6f, %.6f]" % (truth, lo, hi))

box = Box([-1, -1], [1, 1])
print("box: exact expansion %.8f, mc %.8f" % (expansion_measure_box(e, box), expansion_measure_mc(e, box, 400000, 3)[0]))
