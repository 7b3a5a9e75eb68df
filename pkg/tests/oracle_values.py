"""Frozen high-precision values; regenerate with tests/oracles/generate.py."""

SERIES = [
    ('p1q2', -3.0, -0.02820520774478152998),
    ('p1q2', -1.0, 0.23056508367012997341),
    ('p1q2', 0.5, 2.1992256337739861544),
    ('p1q2', 2.0, 12.93717697925892417),
    ('p1q2', -12.0, 0.000051874959433052265798),
    ('p2q2', -3.0, 1.3442508459323264604),
    ('p2q2', -1.0, 1.5941442450762500602),
    ('p2q2', 0.5, 2.1982950276001708625),
    ('p2q2', 2.0, 76.353579688950052348),
    ('p2q2', -50.0, 1.2924552731206213064e-18),
    ('classical', -30.0, 9.3576229688401746049e-14),
    ('classical', -45.0, 2.8625185805493936445e-20),
]
M_GAMMA = [
    ('classical', 1.5, 0.5, 0.52015823636812708228),
    ('classical', 3.0, 2.0, 0.8978040880483845376),
    ('p2q2', 1.5, 0.5, 10.452453404272524923),
    ('p2q2', 2.5, 1.0, 30.98392442508254057),
]
M_BETA = [
    ('classical', 1.5, 2.0, 1.0, 0.002362460262095537912),
    ('classical', 0.5, 3.5, 0.25, 0.09522339831822989038),
    ('p2q2', 1.5, 2.0, 1.0, 0.13007509621593827057),
    ('p2q2', 2.0, 0.5, 4.0, 0.000012760869056316352402),
    ('p2q2', 0.5, 0.5, 0.25, 3.5370669167600390977),
]
M_GAUSS = [
    ('classical', 0.5, 1.0, 2.5, 0.5, 1.0, 0.0084919022003388974634),
    ('classical', 3.0, 1.0, 2.5, -2.0, 0.25, 0.042138335540416745754),
    ('p2q2', 0.5, 1.0, 2.5, -0.5, 1.0, 0.3710731845199059283),
    ('p2q2', 1.0, 2.0, 3.5, 0.75, 0.25, 2.9822681242091833457),
]
M_CONFLUENT = [
    ('classical', 1.0, 2.5, 2.0, 1.0, 0.020007378141535716731),
    ('classical', 0.5, 2.0, -3.0, 0.25, 0.053605865341730703225),
    ('p2q2', 1.0, 2.5, -0.5, 1.0, 0.32616952923772680452),
    ('p2q2', 2.0, 5.0, 2.5, 0.25, 5.0772353563474581557),
]
HYP2F1_1_2_3_MINUS_HALF = 0.75627913513468495682
EXP_KERNEL_BETA_RHO_1 = 0.0070298584066096565
GAUSS_SERIES_OF_BETAS = 0.15230255098146431037
LAPLACE_BETA_RHS_2_2_S4 = 0.018118244175431073754
BETA_TRANSFORM_LHS_1_1 = 0.16504364269414721764
RANDOM_SERIES = [
    ((1.753,), (3.167,), 1.272, 2.596, -0.76, 0.62569906390805615456),
    ((2.19,), (3.426,), 0.872, 1.393, -2.088, 0.49305047673930000183),
    ((0.321, 2.625), (2.859, 1.095, 3.614), 1.151, 1.101, 1.884, 1.1873019647051205724),
    ((1.132,), (1.727,), 1.266, 2.621, -0.379, 0.64317499981690000009),
    ((1.144, 0.919, 1.155), (0.996, 3.414, 1.45), 1.898, 1.392, 4.711, 1.6404125348150808007),
    ((0.537,), (1.34,), 1.6, 0.428, -2.726, -0.19001284384584113322),
    ((1.942, 2.202, 3.751), (0.485, 1.778, 3.27), 1.193, 0.927, -2.228, -0.074608339330775302646),
    ((3.38, 2.02, 3.164), (1.623, 0.711, 1.4), 1.981, 1.761, -1.196, -1.4002709060590053737),
    ((1.455, 0.944), (1.626, 1.108), 1.437, 1.311, 0.499, 1.375879731974309406),
    ((2.546, 2.023, 1.527), (2.288, 3.569, 0.892), 1.745, 0.996, -0.584, 0.6324399562427039159),
    ((0.553, 3.281), (2.988, 1.203), 0.483, 0.502, 0.054, 0.59473242681396271105),
    ((2.656, 0.442), (2.572, 1.912), 1.989, 2.054, -1.356, 0.92713818683829928419),
    ((), (2.593,), 1.925, 1.832, -3.862, 0.75172621859420361613),
    ((), (1.49, 3.014), 0.273, 1.131, 0.334, 1.1509525157514853614),
    ((1.949,), (3.48, 0.579, 2.829), 0.946, 2.972, 1.959, 0.64411564351440844589),
    ((2.444, 2.357), (1.576, 3.851, 3.611), 1.671, 0.402, 3.141, 1.3768148319903575204),
    ((), (1.503, 3.86), 0.312, 1.792, -4.051, 0.56905573830545998738),
    ((), (0.843, 2.297, 2.391), 1.356, 2.723, 3.867, 0.76484083669325477567),
    ((0.749,), (3.613, 3.919), 1.591, 0.928, 1.205, 1.0032362868720684415),
    ((0.806, 3.578, 0.949), (2.49, 3.718, 1.641), 1.44, 1.795, 2.79, 1.315781850474029079),
    ((3.925,), (1.731, 1.313), 1.427, 0.85, -0.53, 0.19064277752090996556),
    ((2.617,), (1.354, 1.364), 1.616, 0.445, -1.914, -1.3743599922079871842),
    ((), (2.892,), 1.409, 0.871, 4.007, 2.5077734440090866196),
    ((0.889, 3.482), (1.032, 0.19), 1.02, 2.063, 1.009, 23.5984547198498905),
    ((), (3.085, 2.152), 0.56, 0.309, -4.476, -0.051496195935275487153),
    ((3.781,), (2.782, 1.307), 1.853, 2.283, 4.917, 1.7062137885796068529),
    ((3.567,), (2.099,), 1.679, 2.599, 3.484, 1.7289515035976306783),
    ((3.931,), (3.191,), 1.035, 1.781, 4.499, 38.208237842602700722),
    ((), (0.625,), 1.308, 1.18, 0.61, 1.9044757759537642061),
    ((), (0.567, 2.378, 2.275), 1.639, 2.531, 0.388, 0.75285218706462984094),
    ((0.567,), (2.272, 3.831), 1.275, 1.598, 1.436, 1.1737533196347666895),
    ((2.582,), (2.291, 3.969, 0.199), 1.533, 0.762, -0.641, 0.062225429698029679122),
    ((2.111,), (1.066, 2.209), 1.669, 2.127, -0.542, 0.84140075846157976726),
    ((1.997,), (1.925, 3.548), 1.311, 2.253, -3.14, 0.65427990775401777881),
    ((2.989, 0.287), (3.458, 3.509), 1.185, 1.42, -1.151, 1.0762487975321194586),
    ((3.137, 1.174), (0.853, 2.675), 1.918, 1.711, 0.223, 1.1935491916013263922),
    ((), (2.768,), 1.205, 1.07, 4.505, 3.188857936274678053),
    ((3.882, 1.649), (2.442, 0.549), 1.938, 2.104, 4.106, 6.1339228370646242953),
    ((0.587, 1.192, 1.356), (2.529, 0.286, 3.744), 0.693, 2.86, -2.841, 0.37190993890259955826),
    ((3.137,), (0.816, 3.444), 0.916, 1.047, -1.506, -0.083459973239083327366),
    ((3.094,), (2.133,), 0.965, 0.543, -2.635, -0.11401348900718098636),
    ((0.948,), (1.242, 1.09, 2.023), 1.302, 2.133, 0.332, 0.97753566465343066646),
    ((), (3.287,), 1.042, 0.668, -3.702, -0.020117379174776142612),
    ((3.418,), (1.982, 1.19), 1.508, 1.4, 1.04, 2.0529214736579078649),
    ((1.035,), (0.862,), 1.863, 0.985, 0.05, 1.025781043617631767),
    ((), (1.788, 2.542), 0.548, 2.132, -2.336, 0.64782257729651329464),
    ((3.729, 1.651, 1.667), (2.074, 3.642, 2.585), 0.787, 2.784, 1.071, 0.8154784729426361685),
    ((1.977,), (2.597, 0.507), 1.734, 0.892, -4.734, -2.2242194725762473599),
    ((), (1.467, 1.363), 0.371, 1.159, -0.854, 0.65509611183248484639),
    ((), (1.636,), 1.639, 2.683, -1.582, 0.55520055026849362204),
]
