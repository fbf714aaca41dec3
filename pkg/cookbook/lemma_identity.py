# Recipe: fourth-moment closed form against the generic Edgeworth engine
from fractions import Fraction
from edgekit import get_spec, cumulants_of_spec, analytic_moments, lemma_correction
from edgekit.edgeworth import pr_factor

spec = get_spec("three-point", 3, a2=Fraction(5, 2))
cs = cumulants_of_spec(spec, 4)
fourth = analytic_moments(spec, 4).of_degree(4)
x = [Fraction(1, 2), Fraction(-3, 4), Fraction(2)]

generic = pr_factor(1, cs, x) + pr_factor(2, cs, x)
closed = lemma_correction(3, fourth, x)
print(generic, closed)
assert generic == closed
