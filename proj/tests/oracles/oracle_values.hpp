#pragma once
// Generated by generate_oracles.py; do not edit by hand.
#include <complex>
namespace oracle {
using C = std::complex<double>;
struct LgCase { C w; C value; };
inline const LgCase kLogGamma[] = {
  {{0.5, 0}, {0.57236494292470008, 0}},
  {{-2.5, 0.29999999999999999}, {-0.43208889261320194, -9.093345421289742}},
  {{3, 40}, {-52.689155060822635, 111.40513241545996}},
  {{0.10000000000000001, -7}, {-10.854877044420903, -5.9875701533014407}},
  {{-10.300000000000001, -0.20000000000000001}, {-14.717096287563958, 33.697055892758385}},
  {{20, 0.5}, {39.333476035643905, 1.4853167378916825}},
  {{-30.5, 2}, {-80.752043718079079, -90.519925797532025}},
  {{0.001, 0.001}, {6.5606044738375529, -0.78597373492965339}},
  {{-0.5, 0}, {1.2655121234846454, -3.1415926535897931}},
};
struct ACase { C hol; C anti; C value; };
inline const ACase kAFunc[] = {
  {{0.75, 0}, {0.75, 0}, {2.9586751191886389, 0}},
  {{0.29999999999999999, 0.69999999999999996}, {-0.69999999999999996, 0.69999999999999996}, {0.41491681418903575, 0.71642630917498851}},
  {{1.25, 0.10000000000000001}, {0.25, 0.10000000000000001}, {1.331618573332531, 0.17441125421000242}},
  {{-1.6000000000000001, -0.40000000000000002}, {-3.6000000000000001, -0.40000000000000002}, {8.9038552316634085, 6.080850322832192}},
  {{2.2000000000000002, 1.5}, {3.2000000000000002, 1.5}, {0.053085861616087762, -0.018593640138110844}},
};
inline const C kAProdQuarter = {8.7537584609059067, 0};
inline const C kWKernel = {-0.072534870309035285, -0.21151523015908674};
struct CoeffCase { int m[3]; double sigma[3]; C A; C B; };
inline const CoeffCase kCoefficients[] = {
  {{0, 0, 0}, {0.3, 0.7, 1.1}, {1.8995930294614742, -2.1326612892255872}, {74.992926895406541, -84.194092984695033}},
  {{2, 0, 0}, {0.4, -1.2, 0.8}, {-1.841562761748696, 3.4684151238343195}, {-72.70198375294882, 136.92754068400038}},
  {{1, 1, 2}, {0.6, 0.1, -0.9}, {-1.3980328082586979, -1.8703808109931495}, {-55.192123029029446, -73.839674735564287}},
};
struct RadialCase { C hol; C value; };
inline const RadialCase kRadial[] = {
  {{0.5, 0}, {5.5683279968317079, 0}},
  {{0.69999999999999996, 0.40000000000000002}, {2.863754999045975, 4.2951646082271138}},
  {{-0.29999999999999999, 1.1000000000000001}, {1.5754346069113594, -0.025648906583839063}},
};
inline const C kChainQuarter = {27.50074327208149, 0};
inline const C kChainShifted = {-12.566370614359172, 0};
struct RacahCase { int m[6]; double sigma[6]; C value; };
inline const RacahCase kRacah[] = {
  {{0, 0, 0, 0, 0, 0}, {0.2, 0.5, 0.9, 1.3, 0.4, 0.7}, {-104.49096083450391, -423.1903713541401}},
  {{1, 1, 1, 1, 0, 0}, {0.3, -0.6, 0.8, 0.5, 1.1, -0.4}, {160.28156127744975, -61.836984455188272}},
};
}  // namespace oracle
