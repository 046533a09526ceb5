#pragma once

// Values frozen from tests/oracles/generate_oracles.py (Fraction arithmetic
// and mpmath at 50 digits, independent of the library).

#include <array>
#include <vector>

#include "mochain/weights.hpp"

namespace oracle {

struct Transition {
  bool hat;
  std::size_t from, to, steps;
  double probability;
};

struct JpSet {
  long alpha0_num, alpha0_den;
  std::vector<double> a, b, c, B_at_1, q;
  std::vector<std::vector<double>> hat, check;  // leading rows of the 8 x 8 truncations
  std::vector<Transition> transitions;

  mochain::JacobiPineiroParams params() const {
    using mochain::Rational;
    return mochain::JacobiPineiroParams::make(Rational(-1, 4), Rational(-1, 2), Rational(alpha0_num, alpha0_den));
  }
};

inline JpSet recurrent() {
  return {
      -1, 2,
      {0.0, 0.0, 0.0170940170940171, 0.00176753393665158, 0.00498269896193772, 0.00228620689655172,
       0.00426133624706752, 0.00255710169010474, 0.0039651199674995},
      {0.0, 0.106666666666667, 0.0667735042735043, 0.0656274953420282, 0.0661470588235294, 0.0657360285374554,
       0.0659718177228953, 0.0657847578393384, 0.0659137302707147},
      {0.6, 0.316666666666667, 0.465686274509804, 0.417647058823529, 0.458620689655172, 0.428879310344828,
       0.454776422764228, 0.433481152993348, 0.452544311034896},
      {1.0, 0.4, 0.166666666666667, 0.0452488687782805, 0.0147058823529412, 0.00413793103448276,
       0.00129310344827586, 0.000369376946332371},
      {1.0, 2.37240236498187, 8.59620924251314, 26.6713982133559, 94.3852241643957, 302.970382293023,
       1058.5270425897, 3447.05744066155},
      {{0.6, 0.4, 0, 0, 0, 0, 0, 0},
       {0.26666667, 0.31666667, 0.41666667, 0, 0, 0, 0, 0},
       {0.1025641, 0.16025641, 0.46568627, 0.27149321, 0, 0, 0, 0},
       {0, 0.015625, 0.24172794, 0.41764706, 0.325, 0, 0, 0},
       {0, 0, 0.056470588, 0.20352941, 0.45862069, 0.28137931, 0, 0},
       {0, 0, 0, 0.025, 0.23362069, 0.42887931, 0.3125, 0}},
      {{0.6, 0.25305625, 0.14694375, 0, 0, 0, 0, 0},
       {0.42151366, 0.31666667, 0.24194842, 0.01987125, 0, 0, 0, 0},
       {0, 0.27598239, 0.46568627, 0.20362197, 0.054709366, 0, 0, 0},
       {0, 0, 0.32230066, 0.41764706, 0.2340824, 0.025969879, 0, 0},
       {0, 0, 0, 0.28258023, 0.45862069, 0.21100834, 0.047790739, 0},
       {0, 0, 0, 0, 0.31153284, 0.42887931, 0.23049432, 0.029093525}},
      {{true, 0, 0, 2, 0.466666666666667},
       {true, 1, 3, 3, 0.135746606334842},
       {false, 2, 0, 4, 0.178344685668204},
       {false, 0, 2, 3, 0.24721124618992}},
  };
}

inline JpSet transient() {
  return {
      1, 2,
      {0.0, 0.0, 0.011602274045713, 0.00137867647058824, 0.00516413793103448, 0.00219827586206897,
       0.00432603630839714, 0.00251680796650309, 0.0039980614339396},
      {0.0, 0.0683760683760684, 0.0671119039331709, 0.0652867647058824, 0.0661241379310345, 0.0656745107176142,
       0.0659644276775127, 0.0657636469221835, 0.0659105915995734},
      {0.333333333333333, 0.320512820512821, 0.471153846153846, 0.415, 0.46, 0.427927927927928,
       0.455405405405405, 0.432993197278912, 0.452904238618524},
      {1.0, 0.666666666666667, 0.384615384615385, 0.147058823529412, 0.06, 0.0206896551724138,
       0.00757222739981361, 0.00249945067018238},
      {1.0, 4.67750627038259, 29.8938963798786, 124.807555892987, 577.731338382797, 2236.54237216002,
       9311.8822800235, 34757.9579761092},
      {{0.33333333, 0.66666667, 0, 0, 0, 0, 0, 0},
       {0.1025641, 0.32051282, 0.57692308, 0, 0, 0, 0, 0},
       {0.030165913, 0.1163273, 0.47115385, 0.38235294, 0, 0, 0, 0},
       {0, 0.00625, 0.17075, 0.415, 0.408, 0, 0, 0},
       {0, 0, 0.033103448, 0.16206897, 0.46, 0.34482759, 0, 0},
       {0, 0, 0, 0.015625, 0.19045608, 0.42792793, 0.36599099, 0}},
      {{0.33333333, 0.31982949, 0.34683718, 0, 0, 0, 0, 0},
       {0.21378913, 0.32051282, 0.42891152, 0.036786533, 0, 0, 0, 0},
       {0, 0.15647028, 0.47115385, 0.27257342, 0.099802457, 0, 0, 0},
       {0, 0, 0.23951992, 0.415, 0.30608713, 0.039392944, 0, 0},
       {0, 0, 0, 0.21603044, 0.46, 0.25424244, 0.069727117, 0},
       {0, 0, 0, 0, 0.25831451, 0.42792793, 0.27464402, 0.039113547}},
      {{true, 0, 0, 2, 0.179487179487179},
       {true, 1, 3, 3, 0.266176470588235},
       {false, 2, 0, 4, 0.0351744043880395},
       {false, 0, 2, 3, 0.396781731738962}},
  };
}

}  // namespace oracle
