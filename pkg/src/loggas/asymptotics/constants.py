"""Pinned transcendental constants.

Both literals were produced once with mpmath at 50 digits
(``mpmath.zeta(-1, derivative=1)`` and ``mpmath.euler``) and are checked
against it again in the test-suite; mpmath is not a runtime dependency.
"""

import math

# zeta'(-1) = 1/12 - ln A, A the Glaisher-Kinkelin constant
ZETA_PRIME_M1 = -0.16542114370045092921391966024278064276063
EULER_GAMMA = 0.57721566490153286060651209008240243104216

# ln c_0 for the hard-gap constant
LN_C0 = math.log(2.0) / 12.0 + 3.0 * ZETA_PRIME_M1
