"""Walk one series through the symbolic discretization.

Shows the pieces separately: z-normalisation, the piecewise aggregate
means, the Gaussian breakpoints, and the final symbol string at two
resolutions.
"""

import numpy as np

from ps2c import SaxParams, compute_breakpoints, paa, sax, sax_text, znormalize

rng = np.random.default_rng(7)
series = np.sin(np.linspace(0, 4 * np.pi, 64)) + rng.normal(0, 0.2, 64)

z = znormalize(series)
print("after z-norm: mean=%.3f std=%.3f" % (z.mean(), z.std()))

for alpha, omega in [(4, 8), (6, 4)]:
    params = SaxParams(alpha, omega)
    print(f"\nalpha={alpha} omega={omega}")
    print("  breakpoints:", np.round(compute_breakpoints(alpha), 3))
    print("  segment means:", np.round(paa(z, omega), 2))
    print("  word:", sax_text(sax(z, params)))
