"""Published reference values for the intrinsic-volume tables.

Keys are (k, n) for the fixed-side tables and (m, n) for the top-degree
table; blanks in the source are structural zeros and are omitted here.
"""


def _table(rows, first_col, first_row_key=0):
    out = {}
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v is not None:
                out[(first_row_key + i, first_col + j)] = v
    return out


# v_k(1, n), n = 1..9, k = 0..9
M1 = _table([
    [.5, .3333, .25, .2, .1667, .1429, .125, .1111, .1],
    [.5, .5, .4561, .4123, .3743, .3424, .3154, .2925, .2727],
    [None, .1667, .25, .2902, .3089, .3162, .3173, .3149, .3105],
    [None, None, .04387, .08774, .1237, .1519, .1735, .1902, .203],
    [None, None, None, .009785, .02446, .0406, .0565, .07139, .08499],
    [None, None, None, None, .001922, .005766, .01101, .01714, .02374],
    [None, None, None, None, None, 3.407e-4, .001192, .002575, .004434],
    [None, None, None, None, None, None, 5.541e-5, 2.216e-4, 5.34e-4],
    [None, None, None, None, None, None, None, 8.369e-6, 3.766e-5],
    [None, None, None, None, None, None, None, None, 1.185e-6],
], first_col=1)

# v_k(2, n), n = 2..9, k = 0..10
M2 = _table([
    [.1667, .1, .06667, .04762, .03571, .02778, .02222, .01818],
    [.3918, .2939, .2256, .1781, .1441, .119, .1, .08535],
    [.3333, .3549, .3333, .3015, .2698, .241, .2158, .194],
    [.1082, .2061, .2596, .2828, .2888, .2852, .2766, .2655],
    [None, .04511, .1, .1466, .1816, .2062, .2225, .2326],
    [None, None, .01488, .03912, .06612, .09208, .1153, .1351],
    [None, None, None, .004191, .01291, .02486, .03856, .05287],
    [None, None, None, None, .001049, .003728, .008072, .01382],
    [None, None, None, None, None, 2.392e-4, 9.65e-4, .002325],
    [None, None, None, None, None, None, 5.042e-5, 2.281e-4],
    [None, None, None, None, None, None, None, 9.943e-6],
], first_col=2)

# v_k(3, n), n = 3..9, k = 0..11
M3 = _table([
    [.05, .02857, .01786, .0119, .008333, .006061, .004545],
    [.187, .1247, .087, .06308, .04721, .03628, .0285],
    [.3147, .2558, .2047, .1643, .1333, .1093, .09071],
    [.2864, .2999, .2841, .258, .2302, .2039, .1803],
    [.1353, .2039, .2419, .2574, .2586, .2516, .2402],
    [.02653, .07538, .1247, .1645, .193, .2114, .222],
    [None, .0117, .03554, .06502, .09465, .1214, .1439],
    [None, None, .00428, .01441, .02923, .04672, .06512],
    [None, None, None, .001365, .005137, .01152, .02013],
    [None, None, None, None, 3.915e-4, .001641, .004049],
    [None, None, None, None, None, 1.029e-4, 4.78e-4],
    [None, None, None, None, None, None, 2.514e-5],
], first_col=3)

# v_{m+n-1}(m, n), m = 1..10, n = 2..10, m <= n
KMAX = _table([
    [.1667, .04387, .009785, .001922, 3.407e-4, 5.541e-5, 8.369e-6, 1.185e-6, 1.583e-7],
    [.1082, .04511, .01488, .004191, .001049, 2.392e-4, 5.042e-5, 9.943e-6, 1.85e-6],
    [None, .02653, .0117, .00428, .001365, 3.915e-4, 1.029e-4, 2.514e-5, 5.766e-6],
    [None, None, .006586, .002989, .001162, 4.011e-4, 1.257e-4, 3.636e-5, 9.82e-6],
    [None, None, None, .00164, 7.578e-4, 3.07e-4, 1.119e-4, 3.737e-5, 1.159e-5],
    [None, None, None, None, 4.091e-4, 1.913e-4, 7.981e-5, 3.029e-5, 1.061e-5],
    [None, None, None, None, None, 1.021e-4, 4.818e-5, 2.055e-5, 8.046e-6],
    [None, None, None, None, None, None, 2.55e-5, 1.211e-5, 5.256e-6],
    [None, None, None, None, None, None, None, 6.369e-6, 3.042e-6],
    [None, None, None, None, None, None, None, None, 1.591e-6],
], first_col=2, first_row_key=1)
