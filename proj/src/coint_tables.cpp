// Generated by tools/table_gen.cpp -- do not edit by hand.
// tau: T=1200, reps=200000; Lc: T=1000, reps=200000.
#include "coint_tables.hpp"

namespace svarkit::coint::tables {

const double kTauLevels[kTauLevelCount] = {0.0010, 0.0050, 0.0100, 0.0250, 0.0500, 0.0750, 0.1000, 0.1500, 0.2000, 0.3000, 0.4000, 0.5000, 0.6000, 0.7000, 0.8000, 0.9000, 0.9500, 0.9900, 0.9990};

const double kTauQuantiles[3][4][kTauLevelCount] = {
    {   // det=0
        {-4.5582, -4.1160, -3.9143, -3.6089, -3.3446, -3.1772, -3.0492, -2.8526, -2.6988, -2.4500, -2.2439, -2.0536, -1.8619, -1.6513, -1.3981, -1.0069, -0.6407, 0.0961, 0.9193},  // n=2
        {-4.9376, -4.5179, -4.3077, -4.0044, -3.7467, -3.5833, -3.4594, -3.2673, -3.1145, -2.8713, -2.6645, -2.4719, -2.2828, -2.0786, -1.8348, -1.4803, -1.1585, -0.4489, 0.3958},  // n=3
        {-5.2883, -4.8780, -4.6612, -4.3608, -4.1057, -3.9405, -3.8173, -3.6274, -3.4775, -3.2347, -3.0297, -2.8382, -2.6499, -2.4496, -2.2127, -1.8759, -1.5817, -0.9248, -0.0742},  // n=4
        {-5.6017, -5.1769, -4.9777, -4.6730, -4.4284, -4.2641, -4.1418, -3.9503, -3.7985, -3.5602, -3.3545, -3.1647, -2.9751, -2.7776, -2.5468, -2.2132, -1.9380, -1.3368, -0.5166},  // n=5
    },
    {   // det=1
        {-5.0058, -4.5628, -4.3513, -4.0516, -3.7929, -3.6278, -3.5007, -3.3116, -3.1599, -2.9222, -2.7235, -2.5377, -2.3548, -2.1595, -1.9311, -1.6051, -1.3116, -0.6971, 0.0720},  // n=2
        {-5.3321, -4.8876, -4.6798, -4.3866, -4.1298, -3.9673, -3.8447, -3.6520, -3.5025, -3.2613, -3.0595, -2.8729, -2.6902, -2.4923, -2.2641, -1.9394, -1.6600, -1.0582, -0.3259},  // n=3
        {-5.6558, -5.2074, -4.9973, -4.6947, -4.4467, -4.2875, -4.1606, -3.9680, -3.8179, -3.5760, -3.3732, -3.1849, -3.0018, -2.8019, -2.5735, -2.2551, -1.9803, -1.4170, -0.6750},  // n=4
        {-5.8995, -5.4874, -5.2923, -4.9904, -4.7334, -4.5720, -4.4485, -4.2581, -4.1067, -3.8690, -3.6652, -3.4773, -3.2915, -3.0948, -2.8639, -2.5467, -2.2752, -1.7253, -1.0408},  // n=5
    },
    {   // det=2
        {-5.3476, -4.9088, -4.7044, -4.4073, -4.1600, -4.0006, -3.8807, -3.6933, -3.5455, -3.3116, -3.1127, -2.9299, -2.7495, -2.5601, -2.3359, -2.0241, -1.7589, -1.2087, -0.5056},  // n=2
        {-5.6408, -5.2071, -5.0053, -4.7167, -4.4663, -4.3076, -4.1833, -3.9955, -3.8455, -3.6076, -3.4062, -3.2207, -3.0384, -2.8481, -2.6252, -2.3109, -2.0465, -1.5174, -0.8594},  // n=3
        {-5.8842, -5.4833, -5.2921, -4.9959, -4.7461, -4.5841, -4.4654, -4.2788, -4.1311, -3.8891, -3.6885, -3.5017, -3.3195, -3.1258, -2.9012, -2.5886, -2.3258, -1.7902, -1.1363},  // n=4
        {-6.1734, -5.7426, -5.5534, -5.2587, -5.0096, -4.8495, -4.7284, -4.5413, -4.3933, -4.1525, -3.9519, -3.7660, -3.5815, -3.3895, -3.1611, -2.8486, -2.5888, -2.0775, -1.4382},  // n=5
    },
};

const double kLcUpperTail[kLcLevelCount] = {0.9900, 0.9500, 0.9000, 0.8000, 0.7000, 0.6000, 0.5000, 0.4000, 0.3000, 0.2000, 0.1500, 0.1000, 0.0750, 0.0500, 0.0250, 0.0100, 0.0050, 0.0010};

const double kLcQuantiles[3][4][kLcLevelCount] = {
    {   // det=0
        {0.0465, 0.0662, 0.0810, 0.1056, 0.1290, 0.1541, 0.1830, 0.2177, 0.2626, 0.3281, 0.3769, 0.4473, 0.4992, 0.5765, 0.7083, 0.8933, 1.0374, 1.4111},  // m2=1
        {0.0716, 0.0993, 0.1201, 0.1528, 0.1837, 0.2158, 0.2516, 0.2948, 0.3483, 0.4243, 0.4789, 0.5589, 0.6164, 0.6987, 0.8500, 1.0538, 1.2167, 1.5997},  // m2=2
        {0.1007, 0.1375, 0.1647, 0.2062, 0.2435, 0.2821, 0.3249, 0.3754, 0.4383, 0.5257, 0.5884, 0.6740, 0.7359, 0.8247, 0.9818, 1.1875, 1.3555, 1.7356},  // m2=3
        {0.1328, 0.1791, 0.2121, 0.2623, 0.3072, 0.3533, 0.4021, 0.4591, 0.5294, 0.6260, 0.6941, 0.7881, 0.8539, 0.9504, 1.1152, 1.3341, 1.4968, 1.8860},  // m2=4
    },
    {   // det=1
        {0.0612, 0.0846, 0.1020, 0.1301, 0.1565, 0.1841, 0.2155, 0.2531, 0.3014, 0.3702, 0.4212, 0.4941, 0.5468, 0.6236, 0.7604, 0.9598, 1.1106, 1.4817},  // m2=1
        {0.0902, 0.1234, 0.1472, 0.1853, 0.2199, 0.2558, 0.2956, 0.3421, 0.4004, 0.4831, 0.5417, 0.6249, 0.6836, 0.7678, 0.9121, 1.1179, 1.2821, 1.6419},  // m2=2
        {0.1226, 0.1658, 0.1968, 0.2446, 0.2875, 0.3310, 0.3778, 0.4321, 0.4997, 0.5925, 0.6586, 0.7508, 0.8169, 0.9080, 1.0692, 1.2821, 1.4471, 1.8498},  // m2=3
        {0.1584, 0.2131, 0.2505, 0.3066, 0.3562, 0.4064, 0.4596, 0.5215, 0.5975, 0.6998, 0.7700, 0.8686, 0.9390, 1.0380, 1.2079, 1.4271, 1.5987, 2.0104},  // m2=4
    },
    {   // det=2
        {0.0722, 0.0984, 0.1176, 0.1479, 0.1761, 0.2055, 0.2384, 0.2777, 0.3280, 0.3998, 0.4515, 0.5261, 0.5811, 0.6570, 0.7943, 0.9905, 1.1382, 1.5013},  // m2=1
        {0.1037, 0.1405, 0.1667, 0.2081, 0.2454, 0.2840, 0.3261, 0.3741, 0.4356, 0.5209, 0.5807, 0.6656, 0.7277, 0.8141, 0.9637, 1.1643, 1.3202, 1.7179},  // m2=2
        {0.1403, 0.1884, 0.2215, 0.2729, 0.3184, 0.3645, 0.4141, 0.4704, 0.5404, 0.6365, 0.7036, 0.7956, 0.8631, 0.9569, 1.1158, 1.3306, 1.4951, 1.9159},  // m2=3
        {0.1798, 0.2377, 0.2788, 0.3397, 0.3929, 0.4454, 0.5016, 0.5660, 0.6441, 0.7484, 0.8212, 0.9227, 0.9969, 1.0975, 1.2693, 1.4925, 1.6630, 2.0954},  // m2=4
    },
};

}  // namespace svarkit::coint::tables
