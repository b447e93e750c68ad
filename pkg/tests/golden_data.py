"""Frozen golden fixtures shared by the unit and acceptance tests.

GOLDEN_WORDS and GOLDEN_KEY_WORDS hold the first ten tempered outputs of
the reference MT19937 generator, captured from an independent
implementation of the published algorithm (numpy's legacy RandomState,
which implements the same scalar and array seeding routines). SW_FIXTURE
and its (W, p) oracle values were captured from an independent
Shapiro-Wilk implementation (scipy.stats.shapiro).
"""

# first 10 tempered words per Fermat-prime seed, reference scalar seeding
GOLDEN_WORDS = {
    3: (2365658986, 303761048, 3041471737, 3607553667, 1249426360,
        521102280, 2193987840, 2445173525, 3835177981, 1877166739),
    5: (953453411, 236996814, 3739766767, 3570525885, 887852006,
        1562238070, 3945403792, 4206684233, 2097710088, 385778404),
    17: (1265576559, 780729585, 2278852751, 3625956742, 822575510,
         3817645369, 291629808, 3465271213, 3380076822, 1761895455),
    257: (3993574278, 489344215, 3464561814, 3131317589, 2711994793,
          2262054957, 3188122391, 935065966, 3260011062, 2382994826),
    65537: (4274387189, 4012371200, 1057732280, 3390771600, 1995573086,
            2399722664, 1413792878, 3899333443, 1829312153, 3292117494),
}

# canonical array-seeded vector of the reference generator
GOLDEN_KEY = (0x123, 0x234, 0x345, 0x456)
GOLDEN_KEY_WORDS = (1067595299, 955945823, 477289528, 4107218783, 4228976476,
                    3344332714, 3355579695, 227628506, 810200273, 2591290167)

# first unit-interval draw for seed 5: ((w0 >> 5)*2^26 + (w1 >> 6)) / 2^53
FIRST_UNIT_SEED_5 = 0.22199317108973948

# fixed 20-point sample and its Shapiro-Wilk oracle values
SW_FIXTURE = (
    26.48, 27.93, 25.91, 28.77, 27.12, 26.05, 29.31, 28.02, 26.84, 27.55,
    25.83, 28.41, 27.76, 26.22, 29.08, 27.31, 26.61, 28.19, 27.02, 25.97,
)
SW_FIXTURE_W = 0.949931591885
SW_FIXTURE_P = 0.366052530507
