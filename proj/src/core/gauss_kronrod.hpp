// Nodes and weights of the nested 15-point Kronrod / 7-point Gauss rule
// pair on [-1, 1].  The published constants are embedded as decimal
// strings and parsed into the working scalar type, so the same tables
// serve both double and extended-precision runs.  Even-indexed Kronrod
// abscissae coincide with the Gauss-7 nodes.
#pragma once

#include <array>
#include <cstdlib>

#include "core/scalar.hpp"

namespace kacz {

namespace gk_tables {

inline constexpr const char* kAbscissa15[8] = {
    "0",
    "2.0778495500789846760068940377324491347978440714517064971384573461986693844943520226910343227183698530560857645062738e-01",
    "4.0584515137739716690660641207696146334738201409937012638704325179466381322612565532831268972774658776528675866604802e-01",
    "5.8608723546769113029414483825872959843678075060436095130499289319880373607444407464511674498935942098956811555121368e-01",
    "7.4153118559939443986386477328078840707414764714139026011995535196742987467218051379282683236686324705969251809311201e-01",
    "8.6486442335976907278971278864092620121097230707408814860145771276706770813259572103585847859604590541475281326027862e-01",
    "9.4910791234275852452618968404785126240077093767061778354876910391306333035484014080573077002792572414430073966699522e-01",
    "9.9145537112081263920685469752632851664204433837033470129108741357244173934653407235924503509626841760744349505339308e-01",
};

inline constexpr const char* kWeights15[8] = {
    "2.0948214108472782801299917489171426369776208022370431671299800656137515132325648616816908211675949102392971459688215e-01",
    "2.0443294007529889241416199923464908471651760418071835742447095312045467698546598879348374292009347554167803659293064e-01",
    "1.9035057806478540991325640242101368282607807545535835588544088036744058072410212679605964605106377593834568683551139e-01",
    "1.6900472663926790282658342659855028410624490030294424149734006755695680921619029112936702403855359908156070095656537e-01",
    "1.4065325971552591874518959051023792039988975724799857556174546893312708093090950408097379122415555910759700350860143e-01",
    "1.0479001032225018383987632254151801744375665421383061189339065133963746321576289524167571627509311333949422518201492e-01",
    "6.3092092629978553290700663189204286665071157211550707113605545146983997477964874928199170264504441995865872491871943e-02",
    "2.2935322010529224963732008058969591993560811275746992267507430254711815787976075946156368168156289483493617134063245e-02",
};

// Gauss-7 weights, aligned with kAbscissa15 indices 0, 2, 4, 6.
inline constexpr const char* kWeightsGauss7[4] = {
    "4.1795918367346938775510204081632653061224489795918367346938775510204081632653061224489795918367346938775510204081633e-01",
    "3.8183005050511894495036977548897513387836508353386273475108345103070554643412970834868465934404480145031467176458536e-01",
    "2.7970539148927666790146777142377958248692506522659876453701403269361881043056267681324094290119761876632337521337205e-01",
    "1.2948496616886969327061143267908201832858740225994666397720863872465523497204230871562541816292084508948440200163443e-01",
};

}  // namespace gk_tables

template <class Real>
Real real_from_decimal(const char* s);

template <>
inline double real_from_decimal<double>(const char* s) {
  return std::strtod(s, nullptr);
}

template <>
inline BigFloat real_from_decimal<BigFloat>(const char* s) {
  return BigFloat(s);
}

// Rule tables materialized in the working precision.  Construct after the
// precision guard is in place.
template <class Real>
struct GaussKronrod15 {
  std::array<Real, 8> abscissa;
  std::array<Real, 8> kronrod_weight;
  std::array<Real, 4> gauss_weight;

  GaussKronrod15() {
    for (int i = 0; i < 8; ++i) {
      abscissa[i] = real_from_decimal<Real>(gk_tables::kAbscissa15[i]);
      kronrod_weight[i] = real_from_decimal<Real>(gk_tables::kWeights15[i]);
    }
    for (int i = 0; i < 4; ++i)
      gauss_weight[i] = real_from_decimal<Real>(gk_tables::kWeightsGauss7[i]);
  }

  // One panel evaluation: 15 integrand calls shared by both rules.
  template <class F>
  void apply(const F& f, const Real& lo, const Real& hi, Real& kronrod,
             Real& gauss) const {
    const Real center = (lo + hi) / 2;
    const Real half = (hi - lo) / 2;
    const Real f0 = f(center);
    Real k_acc = kronrod_weight[0] * f0;
    Real g_acc = gauss_weight[0] * f0;
    for (int i = 1; i < 8; ++i) {
      const Real off = half * abscissa[i];
      const Real sum = f(center - off) + f(center + off);
      k_acc += kronrod_weight[i] * sum;
      if ((i & 1) == 0) g_acc += gauss_weight[i / 2] * sum;
    }
    kronrod = k_acc * half;
    gauss = g_acc * half;
  }
};

}  // namespace kacz
