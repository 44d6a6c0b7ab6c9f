#ifndef REGCAP_CONSTANTS_HPP
#define REGCAP_CONSTANTS_HPP

namespace regcap {

// The optimal cap k, minimax regret value r, maximin quantity q and minimal
// subsidy cap s as functions of the profit weight alpha. Closed forms:
//   k = v_bar / (2 - alpha)
//   alpha <= 1/2:  r = v_bar (1-alpha)/(2-alpha),  q = 1,
//                  s = v_bar alpha/(2-alpha)
//   alpha >  1/2:  q = exp(1 - (alpha + sqrt(alpha(alpha+4)))/2)
//                  r = v_bar (2+alpha-sqrt(alpha(alpha+4))) q / (2(2-alpha))
//                  s = r
struct AlphaConstants {
  double alpha;
  double v_bar;
  double k_alpha;
  double r_alpha;
  double q_alpha;
  double s_alpha;
};

AlphaConstants constants(double alpha, double v_bar);

}  // namespace regcap

#endif  // REGCAP_CONSTANTS_HPP
