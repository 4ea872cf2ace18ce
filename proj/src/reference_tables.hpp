// Generated by tools/gen_reference_tables.py (mpmath, 40 digits). Do not edit.
#pragma once

#include <array>

namespace sticky::oracle {

struct RealPoint { double x; double value; };
struct ComplexPoint { double re; double im; double value_re; double value_im; };

inline constexpr std::array<RealPoint, 50> kErfcTable{{
    {-6.0, 1.9999999999999999785},
    {-5.755102040816326, 1.9999999999999996013},
    {-5.510204081632653, 1.9999999999999934359},
    {-5.26530612244898, 1.9999999999999039819},
    {-5.020408163265306, 1.9999999999987517929},
    {-4.775510204081633, 1.9999999999855770326},
    {-4.530612244897959, 1.9999999998518354301},
    {-4.285714285714286, 1.9999999986465087527},
    {-4.040816326530612, 1.9999999890022919949},
    {-3.795918367346939, 1.9999999204909577329},
    {-3.5510204081632653, 1.9999994883750472957},
    {-3.306122448979592, 1.9999970685203190992},
    {-3.061224489795918, 1.9999850365135425191},
    {-2.816326530612245, 1.9999319169182806087},
    {-2.5714285714285716, 1.9997236850716134245},
    {-2.326530612244898, 1.9989988777032648389},
    {-2.0816326530612246, 1.9967586715825604418},
    {-1.836734693877551, 1.9906104480691648232},
    {-1.5918367346938775, 1.9756269434529250321},
    {-1.346938775510204, 1.9432016088800122449},
    {-1.1020408163265305, 1.8808902224293265944},
    {-0.8571428571428571, 1.7745576830054869298},
    {-0.6122448979591837, 1.6134248530682334277},
    {-0.3673469387755102, 1.3965927832280591835},
    {-0.12244897959183673, 1.1374814161014134502},
    {0.12244897959183673, 8.6251858389858654984e-1},
    {0.3673469387755102, 6.0340721677194081646e-1},
    {0.6122448979591837, 3.8657514693176657229e-1},
    {0.8571428571428571, 2.2544231699451307023e-1},
    {1.1020408163265305, 1.1910977757067340561e-1},
    {1.346938775510204, 5.6798391119987755103e-2},
    {1.5918367346938775, 2.4373056547074967898e-2},
    {1.836734693877551, 9.3895519308351767756e-3},
    {2.0816326530612246, 3.2413284174395582348e-3},
    {2.326530612244898, 1.0011222967351611365e-3},
    {2.5714285714285716, 2.763149283865755036e-4},
    {2.816326530612245, 6.8083081719391260173e-5},
    {3.061224489795918, 1.4963486457480889318e-5},
    {3.306122448979592, 2.9314796809007758225e-6},
    {3.5510204081632653, 5.11624952704336826e-7},
    {3.795918367346939, 7.9509042267067099275e-8},
    {4.040816326530612, 1.0997708005065769429e-8},
    {4.285714285714286, 1.3534912472915856116e-9},
    {4.530612244897959, 1.4816456988241203075e-10},
    {4.775510204081633, 1.4422967437666782828e-11},
    {5.020408163265306, 1.2482071492899711815e-12},
    {5.26530612244898, 9.6018145599415567138e-14},
    {5.510204081632653, 6.5641403060647387181e-15},
    {5.755102040816326, 3.987424497914877761e-16},
    {6.0, 2.1519736712498913117e-17},
}};

inline constexpr std::array<ComplexPoint, 50> kErfcxComplexTable{{
    {0.0, 1.0, 3.678794411714423216e-1, -6.0715770584139372912e-1},
    {1.0, 0.0, 4.2758357615580700441e-1, 0.0},
    {0.5, -0.5, 5.3315670791217491377e-1, 2.3048823138445840871e-1},
    {30.0, 0.0, 1.8795888861416751497e-2, 0.0},
    {0.0, 30.0, 0.0, -1.8816784868660727791e-2},
    {0.0, -30.0, 0.0, 1.8816784868660727791e-2},
    {30.0, 30.0, 9.4057695349340730447e-3, -9.4005455633548718655e-3},
    {30.0, -30.0, 9.4057695349340730447e-3, 9.4005455633548718655e-3},
    {0.001, 0.002, 9.9886862910417272865e-1, -2.2527568416740275156e-3},
    {-0.25, 0.75, 6.2148488075644426975e-1, -8.617884765473666852e-1},
    {18.23505, 16.254523, 1.7251865648074784553e-2, -1.5352384131898843864e-2},
    {7.76547, -21.009587, 8.7546100316648822868e-3, 2.363841248690831451e-2},
    {21.547301, 21.900227, 1.2886240896820717015e-2, -1.3083437555984878992e-2},
    {10.039699, -16.103901, 1.576953994655841606e-2, 2.5224382894381401888e-2},
    {20.339974, 24.076748, 1.1559545402929139224e-2, -1.366944446933603418e-2},
    {3.727901, -27.003769, 2.8359489265240082955e-3, 2.0515044463304426308e-2},
    {10.743794, -12.033234, 2.3347859078106060612e-2, 2.6049624858897596647e-2},
    {18.051974, -19.099399, 1.4758222170339501744e-2, 1.5591939366939428114e-2},
    {0.93054, -10.397692, 4.8846269366917115015e-3, 5.4072169443798712902e-2},
    {7.047386, -11.934074, 2.0805479203503136361e-2, 3.5048234459997571166e-2},
    {12.452196, -17.3935, 1.5380601358915723069e-2, 2.143699628233590751e-2},
    {29.2128, 7.308307, 1.8167880008337010794e-2, -4.5401463002911535614e-3},
    {21.905305, -7.535797, 2.3017883649649809529e-2, 7.9038437605261161342e-3},
    {28.065307, 20.385907, 1.3161602463174270106e-2, -9.5523067636261703081e-3},
    {7.397496, 12.651082, 1.9522486559672317254e-2, -3.3231255028151535189e-2},
    {28.352259, 4.285331, 1.9444075687023393052e-2, -2.9353306520476444175e-3},
    {11.111093, -7.375412, 3.526802478098901162e-2, 2.3279815524492656545e-2},
    {25.018521, 2.053048, 2.2382774825808220282e-2, -1.8338522456560183371e-3},
    {28.054471, 11.190296, 1.7345761911139156551e-2, -6.9112654085656051573e-3},
    {24.546326, 9.948603, 1.973561826638174403e-2, -7.9874565086728927135e-3},
    {11.284311, -10.260638, 2.7416290853205669152e-2, 2.4822335293991355108e-2},
    {28.772005, 11.930448, 1.6728518142082877857e-2, -6.9294233815281753887e-3},
    {12.186263, -24.280251, 9.3296349498582056915e-3, 1.8563415102624271277e-2},
    {12.452511, 13.021411, 2.1678490558084127694e-2, -2.2599143267131260475e-2},
    {9.934739, 22.737178, 9.1213831833248644198e-3, -2.0841733982929741467e-2},
    {3.494725, 6.198206, 3.9737081374995433351e-2, -6.9071276744182365159e-2},
    {20.52007, -26.263211, 1.0429088716953552328e-2, 1.3335957817772031402e-2},
    {19.817188, 10.199392, 2.2503935018568189835e-2, -1.1558952764901803232e-2},
    {21.412409, 13.586399, 1.8787704531510277156e-2, -1.1902498042572037974e-2},
    {21.067987, 28.50779, 9.4654453250578701865e-3, -1.2797813473174452238e-2},
    {-2.631067, -9.933935, -1.4242112401146928257e-2, 5.3257645892613096431e-2},
    {-13.740137, 27.005906, -8.4535000816937970491e-3, -1.6597038906731322933e-2},
    {-6.843576, 13.573851, -1.6788058672404630615e-2, -3.3153653088328374785e-2},
    {-17.222071, -27.265244, -9.3512166686208633509e-3, 1.4790205044014781851e-2},
    {-6.999825, 24.947087, -5.8943764542648462831e-3, -2.0975966635060896014e-2},
    {-3.27333, 14.583423, -8.3195003629962374457e-3, -3.6898344595509083457e-2},
    {-3.874849, 16.262547, -7.8613419848981969603e-3, -3.2875058471157082526e-2},
    {-16.385242, 7.316254, 2.4392032548584808053e+93, -3.7667987455630891396e+93},
    {-11.440364, -24.802073, -8.6652534282649152947e-3, 1.8760579456911132035e-2},
    {-4.236114, -11.138023, -1.6980316707160745853e-2, 4.4329747343443132812e-2},
}};

inline constexpr std::array<RealPoint, 15> kErfcxRealTable{{
    {0.0, 1.0},
    {0.1, 8.9645697996912663666e-1},
    {0.5, 6.1569034419292587487e-1},
    {1.0, 4.2758357615580700441e-1},
    {2.0, 2.5539567631050574387e-1},
    {3.5, 1.552936556088942974e-1},
    {5.0, 1.1070463773306862637e-1},
    {7.5, 7.4573693062876683005e-2},
    {10.0, 5.6140992743822585858e-2},
    {26.0, 2.1683584850562906616e-2},
    {50.0, 1.12815362653237725e-2},
    {1000.0, 5.641893014533876542e-4},
    {-0.5, 1.9523604891825570933},
    {-2.0, 1.0894090438997797241e+2},
    {-5.0, 1.4400979867466104041e+11},
}};

}  // namespace sticky::oracle
