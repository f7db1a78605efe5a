#include "core/sparse_poly.hpp"

#include <gmp.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>

#include "core/errors.hpp"
#include "core/scalar.hpp"

namespace kacz {

SparsePoly SparsePoly::from_terms(
    std::vector<std::pair<std::uint64_t, BigInt>> terms) {
  std::map<std::uint64_t, BigInt> merged;
  for (auto& [deg, coef] : terms) merged[deg] += coef;
  SparsePoly p;
  for (auto& [deg, coef] : merged) {
    if (coef == 0) continue;
    p.degrees_.push_back(deg);
    p.coefficients_.push_back(coef);
  }
  return p;
}

SparsePoly SparsePoly::shifted_to_constant() const {
  if (is_zero() || min_degree() == 0) return *this;
  SparsePoly p;
  p.coefficients_ = coefficients_;
  p.degrees_.reserve(degrees_.size());
  const std::uint64_t m = min_degree();
  for (auto d : degrees_) p.degrees_.push_back(d - m);
  return p;
}

SparsePoly SparsePoly::derivative() const {
  SparsePoly p;
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (degrees_[i] == 0) continue;
    p.degrees_.push_back(degrees_[i] - 1);
    p.coefficients_.push_back(coefficients_[i] * BigInt(degrees_[i]));
  }
  return p;
}

bool SparsePoly::all_coefficients_same_sign() const {
  if (coefficients_.empty()) return true;
  const bool pos = coefficients_[0] > 0;
  for (const auto& c : coefficients_)
    if ((c > 0) != pos) return false;
  return true;
}

namespace {

int sign_of(const BigInt& v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); }

// x^d tracked as mantissa * 2^exponent so the double filter never hits the
// floating-point range limits.
struct Scaled {
  double mantissa;
  long exponent;
};

Scaled pow_scaled(double x, std::uint64_t d) {
  int k = 0;
  double bm = std::frexp(x, &k);
  long be = k;
  double m = 1.0;
  long e = 0;
  while (d) {
    if (d & 1) {
      m *= bm;
      e += be;
      m = std::frexp(m, &k);
      e += k;
    }
    d >>= 1;
    if (d) {
      bm *= bm;
      be *= 2;
      bm = std::frexp(bm, &k);
      be += k;
    }
  }
  return {m, e};
}

}  // namespace

int SparsePoly::sign_at_exact(const BigRat& x) const {
  if (is_zero()) return 0;
  if (x == 0)
    return min_degree() == 0 ? sign_of(coefficients_.front()) : 0;
  if (x == 1) {
    BigInt sum = 0;
    for (const auto& c : coefficients_) sum += c;
    return sign_of(sum);
  }
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  const std::uint64_t top = degree();
  BigInt sum = 0;
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    sum += coefficients_[i] *
           boost::multiprecision::pow(num, static_cast<unsigned>(degrees_[i])) *
           boost::multiprecision::pow(den, static_cast<unsigned>(top - degrees_[i]));
  }
  return sign_of(sum);
}

int SparsePoly::sign_at(const BigRat& x) const {
  if (is_zero()) return 0;
  if (x == 0 || x == 1) return sign_at_exact(x);

  const std::size_t n = degrees_.size();
  const std::uint64_t max_deg = degree();

  // Certified double filter: mantissa/exponent bookkeeping sidesteps
  // overflow, and the a-priori rounding bound covers the conversion of x,
  // the binary powering, the coefficient truncation and the dropped tails.
  {
    const double xd = x.convert_to<double>();
    const bool x_exact = xd > 0.0 && xd < 1.0 && BigRat(xd) == x;
    if (xd > 0.0 && xd < 1.0) {
      std::vector<Scaled> terms(n);
      long max_exp = LONG_MIN;
      for (std::size_t i = 0; i < n; ++i) {
        Scaled p = pow_scaled(xd, degrees_[i]);
        long cexp = 0;
        const double cmant =
            mpz_get_d_2exp(&cexp, coefficients_[i].backend().data());
        terms[i] = {p.mantissa * cmant, p.exponent + cexp};
        if (terms[i].mantissa != 0.0 && terms[i].exponent > max_exp)
          max_exp = terms[i].exponent;
      }
      double sum = 0.0, sum_abs = 0.0;
      for (const auto& term : terms) {
        const long shift = term.exponent - max_exp;
        if (shift < -200) continue;
        const double v = std::ldexp(term.mantissa, static_cast<int>(shift));
        sum += v;
        sum_abs += std::abs(v);
      }
      const double log2d = max_deg > 1 ? std::log2(static_cast<double>(max_deg)) : 1.0;
      const double amplification =
          x_exact ? (2.0 * log2d + static_cast<double>(n) + 6.0)
                  : (1.5 * static_cast<double>(max_deg) + static_cast<double>(n) + 6.0);
      const double bound =
          sum_abs * amplification * 1.1102230246251565e-16 + sum_abs * 1e-55;
      if (std::abs(sum) > 8.0 * bound + 1e-290)
        return sum > 0.0 ? 1 : -1;
    }
  }

  // Escalating MPFR precision with the matching a-priori bound.
  for (unsigned bits : {128u, 256u, 512u, 1024u, 2048u, 4096u}) {
    PrecisionGuard guard(static_cast<unsigned>(bits * 0.302) + 2);
    const BigFloat xf = BigFloat(boost::multiprecision::numerator(x)) /
                        BigFloat(boost::multiprecision::denominator(x));
    BigFloat sum(0), sum_abs(0);
    for (std::size_t i = 0; i < n; ++i) {
      using std::pow;
      const BigFloat term = BigFloat(coefficients_[i]) *
                            pow(xf, static_cast<int>(degrees_[i]));
      sum += term;
      sum_abs += abs(term);
    }
    using std::ldexp;
    const BigFloat bound = sum_abs *
                           (4.0 * static_cast<double>(max_deg) +
                            static_cast<double>(n) + 10.0) *
                           ldexp(BigFloat(1), 1 - static_cast<int>(bits));
    if (abs(sum) > 8 * bound) return sum > 0 ? 1 : -1;
  }

  return sign_at_exact(x);
}

namespace {

constexpr int kScaffoldWidthBits = 30;
constexpr int kTangencyCutoffBits = 212;
constexpr int kMaxSeparationRounds = 256;

BigRat dyadic(std::uint64_t num, int bits) {
  return BigRat(BigInt(num), BigInt(1) << bits);
}

// A sign-change bracket [lo, hi] with sign(p(lo)) != sign(p(hi)), both
// nonzero, or a degenerate exact root with flanking probes.
struct Bracket {
  BigRat lo, hi;
  int sign_lo = 0, sign_hi = 0;
  bool degenerate = false;   // lo == hi == the exact root
  BigRat probe_lo, probe_hi; // flanking points carrying sign_lo / sign_hi
};

class Isolator {
public:
  explicit Isolator(const BigRat& width_target) : width_target_(width_target) {}

  std::vector<SignChangeRoot> run(const SparsePoly& p) {
    std::vector<Bracket> brackets = isolate(p.shifted_to_constant());
    for (auto& b : brackets) refine(p, b, width_target_);
    separate(p, brackets);
    std::vector<SignChangeRoot> out;
    out.reserve(brackets.size());
    for (auto& b : brackets) {
      const BigRat pl = b.degenerate ? b.probe_lo : b.lo;
      const BigRat ph = b.degenerate ? b.probe_hi : b.hi;
      out.push_back({b.lo, b.hi, b.sign_lo, b.sign_hi, pl, ph});
    }
    return out;
  }

private:
  BigRat width_target_;

  // Probe with a nonzero sign of p strictly inside (lo, hi).  Exact zeros
  // are roots of p; finitely many, so some dyadic offset misses them all.
  std::pair<BigRat, int> pick_probe(const SparsePoly& p, const BigRat& lo,
                                    const BigRat& hi) const {
    const BigRat width = hi - lo;
    for (int denom_bits : {4, 8}) {
      const int slots = 1 << denom_bits;
      for (int k = 1; k < slots; k += 2) {
        const BigRat q = lo + width * dyadic(k, denom_bits);
        const int s = p.sign_at(q);
        if (s != 0) return {q, s};
      }
    }
    throw Error("probe selection failed: interval saturated with roots");
  }

  // One bisection step of a bracket around the sign change of dp.
  void shrink_scaffold(const SparsePoly& dp, BigRat& lo, BigRat& hi,
                       int& sign_lo, int& sign_hi) const {
    auto [q, s] = pick_probe(dp, lo, hi);
    if (s == sign_lo) {
      lo = q;
    } else {
      hi = q;
      sign_hi = s;
    }
  }

  void refine(const SparsePoly& p, Bracket& b, const BigRat& target) const {
    if (b.degenerate) return;
    while (b.hi - b.lo > target || b.lo == 0 || b.hi == 1) {
      const BigRat mid = (b.lo + b.hi) / 2;
      int s = p.sign_at(mid);
      if (s == 0) {
        resolve_midpoint_root(p, b, mid);
        if (b.degenerate) return;
        continue;
      }
      if (s == b.sign_lo)
        b.lo = mid;
      else
        b.hi = mid;
    }
    b.probe_lo = b.lo;
    b.probe_hi = b.hi;
  }

  // The bisection midpoint hit a root exactly.  It is the sought crossing
  // unless p only touches zero there (possible when the bracket also
  // contains a tangency); flanking signs decide.
  void resolve_midpoint_root(const SparsePoly& p, Bracket& b,
                             const BigRat& mid) const {
    BigRat delta = (b.hi - b.lo) / 1024;
    for (int i = 0; i < 512; ++i) {
      const BigRat left = mid - delta;
      const BigRat right = mid + delta;
      const int sl = left > b.lo ? p.sign_at(left) : b.sign_lo;
      const int sr = right < b.hi ? p.sign_at(right) : b.sign_hi;
      if (sl != 0 && sr != 0) {
        if (sl != sr) {
          b.degenerate = true;
          b.probe_lo = left;
          b.probe_hi = right;
          b.sign_lo = sl;
          b.sign_hi = sr;
          b.lo = b.hi = mid;
        } else if (sl != b.sign_lo) {
          b.hi = left;  // crossing lies left of the touching root
          b.sign_hi = sl;
        } else {
          b.lo = right;  // crossing lies right of it
          b.sign_lo = sr;
        }
        return;
      }
      delta /= 2;
    }
    throw Error("could not classify an exact rational root");
  }

  // Sign-change roots of a trimmed polynomial (nonzero constant term).
  std::vector<Bracket> isolate(const SparsePoly& p) const {
    std::vector<Bracket> out;
    if (p.term_count() <= 1 || p.all_coefficients_same_sign()) return out;

    const SparsePoly dp = p.derivative().shifted_to_constant();
    std::vector<Bracket> scaffold = isolate(dp);
    for (auto& s : scaffold) refine(dp, s, dyadic(1, kScaffoldWidthBits));
    separate(dp, scaffold);

    const int sign_at_zero = sign_of(p.coefficients().front());
    const int sign_at_one = p.sign_at_exact(BigRat(1));

    if (scaffold.empty()) {
      // p weakly monotone on all of (0, 1); a root at t = 1 cannot be an
      // interior crossing.
      if (sign_at_one != 0 && sign_at_one != sign_at_zero)
        out.push_back(Bracket{BigRat(0), BigRat(1), sign_at_zero, sign_at_one});
      return out;
    }

    // Probes strictly between consecutive scaffold intervals.
    std::vector<BigRat> probes;
    std::vector<int> probe_signs;
    {
      auto [q, s] = pick_probe(p, BigRat(0), scaffold.front().degenerate
                                                 ? scaffold.front().probe_lo
                                                 : scaffold.front().lo);
      probes.push_back(q);
      probe_signs.push_back(s);
    }
    for (std::size_t i = 0; i + 1 < scaffold.size(); ++i) {
      auto [q, s] = pick_probe(p, scaffold_hi(scaffold[i]),
                               scaffold_lo(scaffold[i + 1]));
      probes.push_back(q);
      probe_signs.push_back(s);
    }
    {
      auto [q, s] = pick_probe(p, scaffold_hi(scaffold.back()), BigRat(1));
      probes.push_back(q);
      probe_signs.push_back(s);
    }

    // Leading monotone piece (0, probes[0]).
    if (sign_at_zero != probe_signs.front())
      out.push_back(Bracket{BigRat(0), probes.front(), sign_at_zero,
                            probe_signs.front()});
    // One gap per scaffold interval.
    for (std::size_t i = 0; i < scaffold.size(); ++i)
      resolve_gap(p, dp, scaffold[i], probes[i], probe_signs[i], probes[i + 1],
                  probe_signs[i + 1], out);
    // Trailing monotone piece (probes.back(), 1).
    if (sign_at_one != 0 && sign_at_one != probe_signs.back())
      out.push_back(Bracket{probes.back(), BigRat(1), probe_signs.back(),
                            sign_at_one});
    return out;
  }

  static BigRat scaffold_lo(const Bracket& b) {
    return b.degenerate ? b.probe_lo : b.lo;
  }
  static BigRat scaffold_hi(const Bracket& b) {
    return b.degenerate ? b.probe_hi : b.hi;
  }

  static Bracket exact_root(const BigRat& at, const BigRat& probe_lo, int sl,
                            const BigRat& probe_hi, int sr) {
    Bracket b;
    b.lo = b.hi = at;
    b.degenerate = true;
    b.probe_lo = probe_lo;
    b.probe_hi = probe_hi;
    b.sign_lo = sl;
    b.sign_hi = sr;
    return b;
  }

  // p is weakly monotone on each side of the single sign change of dp
  // inside the scaffold interval, so the gap between the neighbouring
  // probes carries at most two crossings of p.
  void resolve_gap(const SparsePoly& p, const SparsePoly& dp, Bracket c,
                   const BigRat& ql, int sl_probe, const BigRat& qr,
                   int sr_probe, std::vector<Bracket>& out) const {
    if (sl_probe != sr_probe) {
      out.push_back(Bracket{ql, qr, sl_probe, sr_probe});
      return;
    }
    const int sigma = sl_probe;
    const BigRat cutoff = dyadic(1, kTangencyCutoffBits);
    while (true) {
      if (c.degenerate || c.lo == c.hi) {
        // Stationary point known exactly: the extremum value decides.
        const BigRat xi = c.lo;
        const int s_xi = p.sign_at(xi);
        if (s_xi == -sigma) {
          out.push_back(Bracket{ql, xi, sigma, s_xi});
          out.push_back(Bracket{xi, qr, s_xi, sigma});
        }
        // s_xi == 0 is a tangency (no sign change); s_xi == sigma is no root.
        return;
      }
      const int sl = p.sign_at(c.lo);
      const int sr = p.sign_at(c.hi);
      if (sl == 0) {
        // Simple crossing exactly at the scaffold boundary; by parity a
        // second crossing follows before qr.
        const BigRat w = first_probe_with_sign(p, c.lo, c.hi, -sigma);
        out.push_back(exact_root(c.lo, ql, sigma, w, -sigma));
        out.push_back(Bracket{w, qr, -sigma, sigma});
        return;
      }
      if (sr == 0) {
        const BigRat w = first_probe_with_sign_left(p, c.lo, c.hi, -sigma);
        out.push_back(Bracket{ql, w, sigma, -sigma});
        out.push_back(exact_root(c.hi, w, -sigma, qr, sigma));
        return;
      }
      if (sl == -sigma) {
        out.push_back(Bracket{ql, c.lo, sigma, sl});
        if (sr == -sigma)
          out.push_back(Bracket{c.hi, qr, sr, sigma});
        else
          out.push_back(Bracket{c.lo, c.hi, sl, sr});
        return;
      }
      if (sr == -sigma) {
        out.push_back(Bracket{c.lo, c.hi, sl, sr});
        out.push_back(Bracket{c.hi, qr, sr, sigma});
        return;
      }
      // Both sides still look like sigma: either nothing, or a crossing
      // pair hiding next to the stationary point.  Tighten and retry.
      if (c.hi - c.lo < cutoff) return;
      shrink_scaffold(dp, c.lo, c.hi, c.sign_lo, c.sign_hi);
    }
  }

  // First dyadic step from lo toward hi where p has the wanted sign.
  BigRat first_probe_with_sign(const SparsePoly& p, const BigRat& lo,
                               const BigRat& hi, int wanted) const {
    BigRat step = (hi - lo) / 2;
    for (int i = 0; i < 4096; ++i) {
      const BigRat q = lo + step;
      if (p.sign_at(q) == wanted) return q;
      step /= 2;
    }
    throw Error("sign probe did not stabilize near an exact root");
  }

  BigRat first_probe_with_sign_left(const SparsePoly& p, const BigRat& lo,
                                    const BigRat& hi, int wanted) const {
    BigRat step = (hi - lo) / 2;
    for (int i = 0; i < 4096; ++i) {
      const BigRat q = hi - step;
      if (p.sign_at(q) == wanted) return q;
      step /= 2;
    }
    throw Error("sign probe did not stabilize near an exact root");
  }

  // Brackets emitted from one gap can share an endpoint; pull them apart.
  void separate(const SparsePoly& p, std::vector<Bracket>& brackets) const {
    std::sort(brackets.begin(), brackets.end(),
              [](const Bracket& a, const Bracket& b) { return a.lo < b.lo; });
    for (int round = 0; round < kMaxSeparationRounds; ++round) {
      bool touching = false;
      for (std::size_t i = 0; i + 1 < brackets.size(); ++i) {
        if (!(scaffold_hi(brackets[i]) < scaffold_lo(brackets[i + 1]))) {
          touching = true;
          tighten(p, brackets[i]);
          tighten(p, brackets[i + 1]);
        }
      }
      if (!touching) return;
    }
    throw Error("could not separate adjacent root intervals");
  }

  void tighten(const SparsePoly& p, Bracket& b) const {
    if (b.degenerate) {
      // Pull the flanking probes closer to the exact root.
      const BigRat dl = (b.lo - b.probe_lo) / 4;
      const BigRat dr = (b.probe_hi - b.hi) / 4;
      BigRat left = b.lo - dl;
      BigRat right = b.hi + dr;
      int sl = p.sign_at(left);
      int sr = p.sign_at(right);
      // The root is isolated, so nearby probes keep the flanking signs.
      if (sl == b.sign_lo) b.probe_lo = left;
      if (sr == b.sign_hi) b.probe_hi = right;
      return;
    }
    refine(p, b, (b.hi - b.lo) / 4);
  }
};

}  // namespace

std::vector<SignChangeRoot> isolate_sign_changes(const SparsePoly& p,
                                                 const BigRat& width_target) {
  if (p.is_zero()) throw DomainError("cannot isolate roots of the zero polynomial");
  if (width_target <= 0) throw DomainError("width target must be positive");
  Isolator iso(width_target);
  return iso.run(p);
}

}  // namespace kacz
