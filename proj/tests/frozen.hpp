// Generated by tests/gen_frozen.py; do not edit by hand.
// Reference values computed with scipy.linalg.expm and
// scipy.stats.chi2 (scipy 1.15.3, numpy 2.2.6).
#pragma once

namespace relnav_frozen {

inline constexpr double kOmegaA[3] = {
    2.9999999999999999e-01, -2.0000000000000001e-01, 5.0000000000000000e-01
};
inline constexpr double kAccelA[3] = {
    1.2000000000000000e+00, -9.8100000000000005e+00, 4.0000000000000002e-01
};
inline constexpr double kDtA = 1.0000000000000000e-02;
inline constexpr double kStepA[25] = {
    9.9998550004591658e-01, -5.0029683238935127e-03, -1.9924873571073704e-03,
    1.2241299335947444e-02, 6.0804290388592806e-05, 4.9969683428934880e-03,
    9.9998300005383323e-01, -3.0049809842027870e-03, -9.8075462843687317e-02,
    -4.9041865707036779e-04, 2.0074873096074300e-03, 2.9949810158694133e-03,
    9.9999350002058329e-01, 3.8650352609566085e-03, 1.9549962938697220e-05,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    1.0000000000000000e+00, 1.0000000000000000e-02, 0.0000000000000000e+00,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    1.0000000000000000e+00
};

inline constexpr double kOmegaB[3] = {
    -1.1000000000000001e+00, 6.9999999999999996e-01, 2.5000000000000000e-01
};
inline constexpr double kAccelB[3] = {
    5.0000000000000003e-02, 2.0000000000000000e+00, -3.2999999999999998e+00
};
inline constexpr double kDtB = 1.0000000000000001e-01;
inline constexpr double kStepB[25] = {
    9.9724155503888978e-01, -2.8770975823229114e-02, 6.8421574476156349e-02,
    -9.1393001004491728e-03, -2.2066969314624870e-04, 2.1082278556062050e-02,
    9.9364683943346099e-01, 1.1055087523298227e-01, 1.8141268115676301e-01,
    9.3844513328320018e-03, -7.1167537785858853e-02, -1.0880344403589887e-01,
    9.9151247704273771e-01, -3.4016842768091293e-01, -1.6847410381773106e-02,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    1.0000000000000000e+00, 1.0000000000000001e-01, 0.0000000000000000e+00,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    1.0000000000000000e+00
};

inline constexpr double kOmegaC[3] = {
    1.0000000000000000e-08, -2.0000000000000000e-08, 1.4999999999999999e-08
};
inline constexpr double kAccelC[3] = {
    5.0000000000000000e-01, 5.0000000000000000e-01, 5.0000000000000000e-01
};
inline constexpr double kDtC = 2.0000000000000000e-02;
inline constexpr double kStepC[25] = {
    1.0000000000000000e+00, -3.0000000004000002e-10, -3.9999999997000003e-10,
    9.9999999964999996e-03, 9.9999999976666659e-05, 2.9999999995999997e-10,
    1.0000000000000000e+00, -2.0000000005999999e-10, 1.0000000000500000e-02,
    1.0000000000333333e-04, 4.0000000002999999e-10, 1.9999999994000000e-10,
    1.0000000000000000e+00, 1.0000000003000000e-02, 1.0000000002000000e-04,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    1.0000000000000000e+00, 2.0000000000000000e-02, 0.0000000000000000e+00,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    1.0000000000000000e+00
};

inline constexpr double kExpXi[9] = {
    4.0000000000000002e-01, -2.9999999999999999e-01, 2.0000000000000001e-01,
    1.0000000000000000e+00, -2.0000000000000000e+00, 5.0000000000000000e-01,
    -6.9999999999999996e-01, 2.9999999999999999e-01, 1.1000000000000001e+00
};
inline constexpr double kExpMatrix[25] = {
    9.3655572699345557e-01, -2.4903648038416881e-01, -2.4666617456316434e-01,
    1.1466482102415652e+00, -8.6684269243467238e-01, 1.3190859175670214e-01,
    9.0239342614377782e-01, -4.1022704429773765e-01, -1.9589333451311872e+00,
    1.0041737798994961e-02, 3.2475143364814213e-01, 3.5166309998400425e-01,
    8.7799178267972222e-01, 2.6830356182008819e-01, 9.9874799156783778e-01,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    1.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    1.0000000000000000e+00
};

inline constexpr double kLeftJacobianXi[9] = {
    4.0000000000000002e-01, -2.9999999999999999e-01, 2.0000000000000001e-01,
    1.0000000000000000e+00, -2.0000000000000000e+00, 5.0000000000000000e-01,
    -6.9999999999999996e-01, 2.9999999999999999e-01, 1.1000000000000001e+00
};
inline constexpr double kLeftJacobian[81] = {
    9.7864533946821763e-01, -1.1731856819325229e-01, -1.3326853122631330e-01,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    7.7894579519192195e-02, 9.6714667610494987e-01, -2.0506914488095948e-01,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    1.5955119034235343e-01, 1.8535715054392943e-01, 9.5893334513118744e-01,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    -2.2762264848023503e-01, -4.0455828374159869e-01, -8.8483317985975507e-01,
    9.7864533946821763e-01, -1.1731856819325229e-01, -1.3326853122631330e-01,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    4.7511324807030492e-02, -1.6065028288276464e-01, -5.4133134828227136e-01,
    7.7894579519192195e-02, 9.6714667610494987e-01, -2.0506914488095948e-01,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    1.0133534061659673e+00, 3.6280786881498717e-01, -3.2401281820989380e-01,
    1.5955119034235343e-01, 1.8535715054392943e-01, 9.5893334513118744e-01,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    -4.3029859988808219e-02, -4.8537609437171675e-01, 1.9220904059340396e-01,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    9.7864533946821763e-01, -1.1731856819325229e-01, -1.3326853122631330e-01,
    5.9320029905570271e-01, 1.9218857528963809e-02, 2.9221899918706545e-01,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    7.7894579519192195e-02, 9.6714667610494987e-01, -2.0506914488095948e-01,
    -9.3254559461800654e-02, -3.8121885578854053e-01, 1.2094087740160259e-01,
    0.0000000000000000e+00, 0.0000000000000000e+00, 0.0000000000000000e+00,
    1.5955119034235343e-01, 1.8535715054392943e-01, 9.5893334513118744e-01
};

inline constexpr double kGate997Dof1 = 8.8074683935119467e+00;
inline constexpr double kNeesLo = 1.3520052285415172e+01;
inline constexpr double kNeesHi = 1.6555705408018294e+01;

}  // namespace relnav_frozen
