"""Frozen reference combinatorics of the unipotent (s = 0) domain.

The facet engine must reproduce these tables exactly; the stability
scan then compares every deformed run against the same data through
the facet lattice.  Indices follow the standard bisector enumeration
(blocks of four conjugates 2, 2bar, 3, 3bar by increasing G1 power,
positive powers first); 0 always denotes the ball boundary.
"""

# finite vertices per core side: (stabilizer word, sorted incidence)
FINITE_VERTEX_TABLES = {
    1: (("2", (1, 2, 3, 5, 10, 11)),
        ("-121", (1, 9, 10, 11, 18, 19)),
        ("2111", (1, 9, 18, 20, 26, 28)),
        ("1211", (1, 5, 10, 12, 18, 20))),
    2: (("2", (1, 2, 3, 5, 10, 11)),
        ("-323", (2, 4, 5, 10, 12, 13)),
        ("2333", (2, 4, 6, 8, 13, 21)),
        ("3233", (2, 3, 5, 6, 7, 13))),
}

# how each candidate pair (side, k) is decided; "positive" rows carry
# witness indices l whose bisector the Giraud disk avoids entirely.
# For most of them g_l is positive on the disk, which alone proves the
# pair carries no ridge; exact computation shows g_7 on pair (3, 20)
# and g_17, g_34 on pair (1, 36) keep a constant negative sign instead,
# so emptiness there rests on curve refinement (see the checker).
CLASSIFICATION_TABLES = {
    1: {
        "strip": (8, 14, 15, 16, 21, 22, 23, 24, 25,
                  29, 30, 31, 32, 33, 35),
        "vertex": (2, 12, 19, 26),
        "face": (3, 5, 9, 10, 11, 18, 20, 28),
        "positive": {4: (5, 10), 7: (3,), 13: (2, 5, 10), 17: (9,),
                     27: (9, 18), 36: (17, 28, 34)},
        "ball": (6, 34),
        "empty": (),
    },
    3: {
        "strip": (16, 17) + tuple(range(22, 37)),
        "vertex": (10, 13),
        "face": (1, 2, 5, 6, 7, 11),
        "positive": {9: (11,), 14: (7,), 15: (7,), 18: (1, 10),
                     19: (11,), 20: (7,), 21: (6, 13)},
        "ball": (4, 12),
        "empty": (8,),
    },
}

# numeric anchors (floats certified to 1e-6 by the exact machinery):
# two points of F_{1,2,0} meet F_{1,2,3}, in log coordinates
LOG_INTERSECTIONS_12_03 = ((-0.20418699, -0.03294828),
                           (0.15576880, -0.07655953))
# fold arguments of the ball curve on chart {1,2}: z1 = exp(2 pi i t)
FOLD_ARGUMENT_12 = 0.20682703
# the y2 values of the two points of F_{1,3,0} meet F_{1,3,2}
SEXTIC_ROOTS_13_02 = (0.01815877, 0.65602473)
# positivity values separating those two points from the face
G5_AT_FIRST = 3.80716606
G11_AT_SECOND = 3.94518313
# the ideal vertex on bisectors {0, 1, 3, 5} in chart {1,3} coordinates
IDEAL_VERTEX_0135 = (0.80979557, -0.58671213, -0.53336432, 0.84588562)
