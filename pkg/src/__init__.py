"""Off-Center Orbits - zero-energy orbits of V = -alpha/(r^2 + sigma)^2 and their dualities."""

__version__ = "1.0.0"
