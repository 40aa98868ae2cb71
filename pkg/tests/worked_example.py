"""Shared fixtures transcribed from the worked r=4, dims=(6,6,6) example."""

from subrank.pattern import Variable

# Block order of the worked example: (direction, orbit member, slots).
WORKED_EXAMPLE_SCRIPT = [
    (1, (1, 2, 3), [1, 2]),
    (2, (1, 2, 4), [1]),
    (3, (1, 3, 2), [1]),
    (2, (1, 4, 2), [2]),
    (3, (1, 4, 3), [2]),
]

# The unique row monomial those five blocks produce: 22 distinct variables,
# two of them squared, total degree 24.
WORKED_EXAMPLE_MONOMIAL_DATA = [
    (1, 1, (2, 3), 2), (1, 1, (3, 4), 1), (1, 1, (4, 1), 1),
    (1, 2, (3, 4), 1), (1, 2, (4, 1), 1), (1, 2, (1, 2), 2),
    (2, 1, (4, 3), 1), (2, 1, (1, 4), 1), (2, 1, (2, 1), 1), (2, 1, (3, 2), 1),
    (3, 1, (4, 2), 1), (3, 1, (1, 3), 1), (3, 1, (2, 4), 1), (3, 1, (3, 1), 1),
    (2, 2, (2, 3), 1), (2, 2, (3, 4), 1), (2, 2, (4, 1), 1), (2, 2, (1, 2), 1),
    (3, 2, (3, 2), 1), (3, 2, (4, 3), 1), (3, 2, (1, 4), 1), (3, 2, (2, 1), 1),
]


def worked_example_monomial():
    return tuple(sorted((Variable(t, s, red), p) for t, s, red, p in WORKED_EXAMPLE_MONOMIAL_DATA))


# Spot positions of the 24x24 matrix at r=4, dims=(6,6,6):
# (row, column, variable or None for a zero position).
WORKED_EXAMPLE_SPOT_CHECKS = [
    ((1, 2, 3), (1, 1, 1), (1, 1, (2, 3))),
    ((1, 2, 3), (1, 1, 2), (1, 2, (2, 3))),
    ((1, 2, 3), (2, 2, 1), (2, 1, (1, 3))),
    ((1, 2, 3), (2, 2, 2), (2, 2, (1, 3))),
    ((1, 2, 3), (3, 3, 1), (3, 1, (1, 2))),
    ((1, 2, 3), (1, 2, 1), None),
    ((1, 2, 3), (2, 1, 1), None),
    ((1, 2, 4), (3, 4, 1), (3, 1, (1, 2))),
    ((1, 2, 4), (2, 2, 2), (2, 2, (1, 4))),
    ((2, 1, 3), (1, 2, 1), (1, 1, (1, 3))),
    ((2, 1, 3), (2, 1, 1), (2, 1, (2, 3))),
    ((2, 1, 3), (3, 3, 1), (3, 1, (2, 1))),
    ((3, 1, 2), (1, 3, 1), (1, 1, (1, 2))),
    ((3, 1, 2), (2, 1, 2), (2, 2, (3, 2))),
    ((3, 1, 2), (3, 2, 2), (3, 2, (3, 1))),
    ((4, 3, 2), (1, 4, 1), (1, 1, (3, 2))),
    ((4, 3, 2), (2, 3, 1), (2, 1, (4, 2))),
    ((4, 3, 2), (3, 2, 1), (3, 1, (4, 3))),
    ((4, 3, 2), (3, 1, 1), None),
]
