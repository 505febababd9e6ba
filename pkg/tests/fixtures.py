"""Published worked examples used as golden data."""
import math

import numpy as np

CONE_SATS = np.array([(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)], dtype=float)
CONE_TIMES = math.sqrt(2) * np.array([5, 13, 17, 25], dtype=float)

FIVE_SATS = np.array([(-28.8, 23.4), (-6.4, 10.2), (-2.7, 9.225), (9, 11.25), (16, 15)])
FIVE_TIMES = np.array([30, 8, 6.375, 9.75, 16])
FIVE_USER = np.array([0.0, 15.0])
FIVE_OTHER = np.array([0.0, -15.0])

SEVEN_SATS = np.array([
    (0, 0, 9), (-28.8, 0, 23.4), (0, -28.8, 23.4), (6.4, 0, 10.2),
    (0, -6.4, 10.2), (9.6, -12.8, 15), (9.6, 12.8, 15),
])
SEVEN_TIMES = np.array([6, 30, 30, 8, 8, 16, 16], dtype=float)
SEVEN_USER = np.array([0.0, 0.0, 15.0])
SEVEN_OTHER = np.array([0.0, 0.0, -15.0])

# 16 y^2 - 9 x^2 - 1296 in the order (1, x, y, x^2, y^2, xy)
FIVE_CONIC = np.array([-1296.0, 0, 0, -9, 16, 0])
