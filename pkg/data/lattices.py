"""Fixed lattice constants.

A8 is a Gram matrix of the E8 lattice; the columns g1..g8 of G span an
orthogonal sublattice of it with every gᵢ·gᵢ = 2.
"""

A8 = (
    (2, 1, 0, 0, 0, 0, 0, 0),
    (1, 2, 1, 0, 0, 0, 0, 0),
    (0, 1, 2, 1, 0, 0, 0, 0),
    (0, 0, 1, 2, 1, 0, 0, 0),
    (0, 0, 0, 1, 2, 1, 0, 1),
    (0, 0, 0, 0, 1, 2, 1, 0),
    (0, 0, 0, 0, 0, 1, 2, 0),
    (0, 0, 0, 0, 1, 0, 0, 2),
)

G = (
    (0, 0, 0, 0, 0, 0, 0, -2),
    (1, 0, 0, 0, 0, 1, 1, 3),
    (0, 0, 0, 0, 0, -2, -2, -4),
    (0, 1, 0, 0, 1, 2, 3, 5),
    (0, 0, 0, 0, -2, -2, -4, -6),
    (0, 0, 1, 0, 1, 1, 3, 4),
    (0, 0, 0, 0, 0, 0, -2, -2),
    (0, 0, 0, 1, 1, 1, 2, 3),
)

H = ((0, 1), (1, 0))
