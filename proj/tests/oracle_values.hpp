#pragma once

// Frozen reference values computed with 30-digit arbitrary precision.

#include <complex>

namespace oracle {

struct KE { double m, K, E; };
inline constexpr KE kComplete[] = {
  {0.0, 1.5707963267948966192, 1.5707963267948966192},
  {0.10000000000000000555, 1.6124413487202194007, 1.5307576368977632002},
  {0.5, 1.8540746773013719184, 1.3506438810476755025},
  {0.9000000000000000222, 2.5780921133481732927, 1.1047747327040733079},
  {0.33333333333333333333, 1.7339168852579350251, 1.4303152571722197239},
  {0.98999999999999999112, 3.6956373629898742386, 1.0159935450252239477},
};

struct Jac { double u, m, sn, cn, dn, am; };
inline constexpr Jac kJacobi[] = {
  {0.2999999999999999889, 0.10000000000000000555, 0.29509812430436883313, 0.95546695234950082526, 0.99563633406139027243, 0.2995582147897117694},
  {1.6999999999999999556, 0.5, 0.99404770074086052889, 0.10894571424250056254, 0.71129078746030747039, 1.4616339374136909484},
  {-2.2000000000000001776, 0.9000000000000000222, -0.99255066626025817763, 0.12183256915257754201, 0.33668807138906155208, -1.4486603294918152767},
  {10.0, 0.2999999999999999889, 0.27848731626489937314, -0.96043990685496503533, 0.98829825680503564004, 9.1425592025177380561},
  {25.5, 0.69999999999999995559, 0.54205727219832510258, 0.84034154583532931965, 0.8912472942791117582, 19.422439241576034277},
  {3.0, 0.99899999999999999911, 0.99529312833788436376, 0.096910209386770211782, 0.10189306696092849723, 1.4737337825885517799},
};

struct Inc { double phi, m, F, E; };
inline constexpr Inc kIncomplete[] = {
  {0.4000000000000000222, 0.2000000000000000111, 0.40209509006135325252, 0.39792430913429679913},
  {1.1999999999999999556, 0.5999999999999999778, 1.381322687881858172, 1.0562923277786216002},
  {2.8999999999999999112, 0.5, 3.4653799854594121225, 2.4608616088824140462},
  {-4.0, 0.80000000000000004441, -5.467873527678046577, -3.1362364876746755652},
  {7.5, 0.2999999999999999889, 8.1499675865738189905, 6.9280877164053628733},
};

struct Pi { double n, phi, m, value; };
inline constexpr Pi kPiReal[] = {
  {0.3, 1.0, 0.5, 1.1923254369345581765},
  {-2.0, 1.4, 0.3, 0.89797643798548785703},
  {0.9, 0.8, 0.9, 1.1257402337886872967},
  {-0.5, 5.0, 0.4, 4.5461574391920305822},
  {0.5, -2.5, 0.2, -4.0426238844793174375},
};

struct PiC { double nr, ni, phi, m, re, im; };
inline constexpr PiC kPiComplex[] = {
  {0.3, 0.7, 1.0, 0.33333333333333331483, 1.0618214341484605005, 0.24016890347796856653},
  {0.3, 0.7, 1.5, 0.33333333333333331483, 1.5345493957393097709, 0.63741080625565697819},
  {2.0, -1.0, 2.0, 0.5, 0.10824338404341947936, -1.799216222448984355},
  {-1.0, 3.0, 4.0, 0.25, 2.1195498954742361016, 1.0564538865982161629},
  {0.8, 0.1, 6.5, 0.5999999999999999778, 17.567824238661875911, 4.5375221924805850562},
};

struct Theta { double z, q, value; };
inline constexpr Theta kTheta1[] = {
  {0.3, 0.1, 0.32355762928491787912},
  {1.2, 0.5, 1.745858628288791098},
  {2.5, 0.05, 0.56378224351020405902},
  {-0.7, 0.8, -0.12544795724206432645},
  {4.0, 0.3, -1.0477286241966434545},
};

struct Nome { double m, q; };
inline constexpr Nome kNome[] = {
  {0.1, 0.0065846515538583706599},
  {0.5, 0.043213918263772249774},
  {0.9, 0.14017312695426156525},
};

struct Zeta { double u, m, value; };
inline constexpr Zeta kZeta[] = {
  {0.5, 0.2999999999999999889, 0.066608051215865813741},
  {1.3000000000000000444, 0.69999999999999995559, 0.19727663019629180596},
  {2.0, 0.5, -0.03308109424869994154},
};

inline constexpr double kOmega_m1_1_2 = 2.0021547609122124722;
// roots of s^3 + 2c1 s^2 + (c2+1) s + c3^2 for e = (-1, 1, 2), real root first, then Im > 0
inline constexpr double kRho1_m1_1_2 = -0.83928675521416113255;
inline const std::complex<double> kRho2_m1_1_2{1.4196433776070805663, 0.60629072920719936926};
// e = (-1, 1, 5): three real roots and p_lambda for lambda = +sqrt(rho2), +sqrt(rho3)
inline constexpr double kRho_m1_1_5[] = {-0.91908899759226025817, 1.1378052016139043272, 4.781283795978355931};
inline constexpr double kP_m1_1_5[] = {0.13053444251822252359, 0.7313643275285980911};
// e1 = -1, e2 = 1: e3 with a double root of the cubic, and that root
inline constexpr double kExceptionalE3 = 2.5980762113533159403;
inline constexpr double kExceptionalRho = 1.7320508075688772935;

}  // namespace oracle
