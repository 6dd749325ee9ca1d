"""Suite-wide wiring: one mpmath precision default for every reference value."""

import mpmath as mp

mp.mp.dps = 30
