#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "nleig/error.hpp"
#include "nleig/models.hpp"

namespace nleig::models {

namespace {

constexpr double kPi = std::numbers::pi;

double derivative_by_difference(const GeneratingFunction& f, double u) {
  const double h = 1e-5 * std::max(1.0, std::abs(u));
  return (f.eval(u + h) - f.eval(u - h)) / (2.0 * h);
}

}  // namespace

// Zeros found so far, shared between copies of one GeneratingFunction.
class ZeroCache {
 public:
  explicit ZeroCache(GeneratingFunction fn) : fn_(std::move(fn)), owner_(&fn_) {}

  ZeroTable upto(double u_max) {
    std::lock_guard<std::mutex> lock(mu_);
    while (table_.unstable.size() < 2 || table_.unstable.back() <= u_max) grow();
    return table_;
  }

  ZeroTable count(int n) {
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(table_.unstable.size()) < n + 2) grow();
    return table_;
  }

 private:
  // Adds at least one more unstable zero (and the stable zero and lobe minimum
  // of the basin below it).
  void grow() {
    switch (owner_->id()) {
      case ModelId::cosine: grow_cosine(); return;
      case ModelId::recip_gamma: grow_recip_gamma(); return;
      default: grow_by_scan(); return;
    }
  }

  void grow_cosine() {
    auto& t = table_;
    if (t.unstable.empty()) t.unstable.push_back(0.0);
    const double k = static_cast<double>(t.unstable.size() - 1);
    t.stable.push_back(2.0 * k + 0.5);
    t.lobe_min.push_back(2.0 * k + 1.0);
    t.lobe_min_log.push_back(0.0);
    t.unstable.push_back(2.0 * k + 1.5);
  }

  void grow_recip_gamma() {
    auto& t = table_;
    if (t.unstable.empty()) t.unstable.push_back(-1.0);
    const double k = static_cast<double>(t.unstable.size() - 1);
    const double lo = 2.0 * k, hi = 2.0 * k + 1.0;
    // F < 0 on (2k, 2k+1); its minimum maximises ln|F|.
    auto neg_log = [&](double u) { return -owner_->eval_log(u).log_abs; };
    auto best = boost::math::tools::brent_find_minima(neg_log, lo + 1e-12, hi - 1e-12, 52);
    t.stable.push_back(lo);
    t.lobe_min.push_back(best.first);
    t.lobe_min_log.push_back(-best.second);
    t.unstable.push_back(hi);
  }

  double scan_step(double u) const {
    switch (owner_->id()) {
      case ModelId::bessel: return 0.3;
      case ModelId::airy: return 0.3 / std::max(1.0, std::sqrt(u));
      default: return 0.05;
    }
  }

  double scan_start() const {
    switch (owner_->id()) {
      case ModelId::bessel: return std::max(1e-3, owner_->nu());
      case ModelId::airy: return 0.0;
      default: return 1e-3;
    }
  }

  double refine_root(double a, double fa, double b, double fb) const {
    auto f = [&](double u) { return owner_->eval(u); };
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb,
                                               boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
  }

  // Next sign change of F after `from`; returns its location and whether F
  // goes from negative to positive there.
  std::pair<double, bool> next_root(double& from) const {
    double a = from;
    double fa = owner_->eval(a);
    for (int guard = 0; guard < 10'000'000; ++guard) {
      const double b = a + scan_step(a);
      const double fb = owner_->eval(b);
      if (fb == 0.0) {
        from = b + 1e-12 * std::max(1.0, b);
        return {b, fa < 0.0};
      }
      if ((fa < 0.0) != (fb < 0.0)) {
        from = b;
        return {refine_root(a, fa, b, fb), fa < 0.0};
      }
      a = b;
      fa = fb;
    }
    throw BracketError("zero scan of " + owner_->spec() + " found no sign change");
  }

  void grow_by_scan() {
    auto& t = table_;
    if (t.unstable.empty()) {
      t.unstable.push_back(0.0);
      scan_pos_ = scan_start();
    }
    auto [stable, rising] = next_root(scan_pos_);
    if (rising) throw BracketError("zero scan of " + owner_->spec() + ": expected a stable zero");
    auto [unstable, rising2] = next_root(scan_pos_);
    if (!rising2) throw BracketError("zero scan of " + owner_->spec() + ": expected an unstable zero");
    auto f = [&](double u) { return owner_->eval(u); };
    auto best = boost::math::tools::brent_find_minima(f, stable, unstable, 52);
    t.stable.push_back(stable);
    t.lobe_min.push_back(best.first);
    t.lobe_min_log.push_back(std::log(std::abs(best.second)));
    t.unstable.push_back(unstable);
  }

  GeneratingFunction fn_;
  const GeneratingFunction* owner_;
  std::mutex mu_;
  ZeroTable table_;
  double scan_pos_ = 0.0;
};

GeneratingFunction::GeneratingFunction(ModelId id, double nu, std::optional<AsymptoticForm> asym,
                                       bool with_zero_cache)
    : id_(id), nu_(nu), asym_(asym) {
  if (with_zero_cache) zeros_ = std::make_shared<ZeroCache>(GeneratingFunction(id, nu, asym, false));
}

GeneratingFunction GeneratingFunction::cosine() {
  return GeneratingFunction(ModelId::cosine, 0.0, AsymptoticForm{1.0, 0.0, kPi, 1.0, 0.0});
}

GeneratingFunction GeneratingFunction::bessel(double nu) {
  if (!(nu >= 0.0 && nu <= 50.0)) throw DomainError("bessel model: order must lie in [0, 50]");
  return GeneratingFunction(ModelId::bessel, nu,
                            AsymptoticForm{std::sqrt(2.0 / kPi), -0.5, 1.0, 1.0, -(2.0 * nu + 1.0) * kPi / 4.0});
}

GeneratingFunction GeneratingFunction::airy() {
  return GeneratingFunction(ModelId::airy, 0.0,
                            AsymptoticForm{1.0 / std::sqrt(kPi), -0.25, 2.0 / 3.0, 1.5, -kPi / 4.0});
}

GeneratingFunction GeneratingFunction::recip_gamma() {
  return GeneratingFunction(ModelId::recip_gamma, 0.0, std::nullopt);
}

GeneratingFunction GeneratingFunction::xi_bar() {
  return GeneratingFunction(ModelId::xi_bar, 0.0, std::nullopt);
}

GeneratingFunction GeneratingFunction::parse(const std::string& spec) {
  if (spec == "cos") return cosine();
  if (spec == "airy") return airy();
  if (spec == "rgamma") return recip_gamma();
  if (spec == "xibar") return xi_bar();
  if (spec.rfind("bessel:", 0) == 0) {
    const std::string num = spec.substr(7);
    double nu = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), nu);
    if (num.empty() || ec != std::errc() || ptr != num.data() + num.size())
      throw ConfigError("bad Bessel order in model spec '" + spec + "'");
    if (!(nu >= 0.0 && nu <= 50.0)) throw ConfigError("Bessel order must lie in [0, 50]: '" + spec + "'");
    return bessel(nu);
  }
  throw ConfigError("unknown model '" + spec + "' (expected cos, bessel:NU, airy, rgamma, xibar)");
}

std::string GeneratingFunction::spec() const {
  switch (id_) {
    case ModelId::cosine: return "cos";
    case ModelId::airy: return "airy";
    case ModelId::recip_gamma: return "rgamma";
    case ModelId::xi_bar: return "xibar";
    case ModelId::bessel: {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, nu_);
      return "bessel:" + std::string(buf, ptr);
    }
  }
  return "?";
}

const AsymptoticForm& GeneratingFunction::asym() const {
  if (!asym_) throw DomainError("model " + spec() + " has no algebraic asymptotic form");
  return *asym_;
}

double GeneratingFunction::eval(double u) const {
  switch (id_) {
    case ModelId::cosine: return specfun::cos_pi(u);
    case ModelId::bessel: return specfun::bessel_j(nu_, u);
    case ModelId::airy: return specfun::airy_ai(-u);
    case ModelId::recip_gamma: return specfun::recip_gamma(u);
    case ModelId::xi_bar: return specfun::xi_bar(u);
  }
  return 0.0;
}

specfun::SignedLog GeneratingFunction::eval_log(double u) const {
  if (id_ == ModelId::recip_gamma) return specfun::recip_gamma_log(u);
  const double v = eval(u);
  if (v == 0.0) return {0, -HUGE_VAL};
  return {v > 0.0 ? 1 : -1, std::log(std::abs(v))};
}

double GeneratingFunction::derivative(double u) const {
  switch (id_) {
    case ModelId::cosine: return -kPi * specfun::sin_pi(u);
    case ModelId::bessel: return specfun::bessel_j_prime(nu_, u);
    case ModelId::airy: return -specfun::airy_ai_prime(-u);
    case ModelId::recip_gamma: {
      if (u < 0.0) return specfun::digamma(-u) * specfun::recip_gamma(u);
      // d/du [-(1/pi) sin(pi u) Gamma(1+u)]
      const double g = std::exp(std::lgamma(1.0 + u));
      return -specfun::cos_pi(u) * g - specfun::sin_pi(u) / kPi * g * specfun::digamma(1.0 + u);
    }
    case ModelId::xi_bar: return derivative_by_difference(*this, u);
  }
  return 0.0;
}

double GeneratingFunction::log_derivative_at_zero(double s) const {
  if (id_ == ModelId::recip_gamma) return std::lgamma(1.0 + s);
  return std::log(std::abs(derivative(s)));
}

ZeroTable GeneratingFunction::zeros_upto(double u_max) const {
  if (!zeros_) throw DomainError("zero table unavailable");
  return zeros_->upto(u_max);
}

ZeroTable GeneratingFunction::zeros_count(int count) const {
  if (!zeros_) throw DomainError("zero table unavailable");
  return zeros_->count(count);
}

double GeneratingFunction::unstable_zero(int k) const {
  if (k < 1) throw DomainError("unstable_zero: index must be >= 1");
  return zeros_count(k).unstable[k];
}

double GeneratingFunction::stable_zero(int k) const {
  if (k < 0) throw DomainError("stable_zero: index must be >= 0");
  return zeros_count(k + 1).stable[k];
}

double eval_F(const GeneratingFunction& model, double u) { return model.eval(u); }

std::vector<ClassifiedZero> unstable_zeros(const GeneratingFunction& model, int count) {
  if (count < 1) throw DomainError("unstable_zeros: count must be >= 1");
  ZeroTable t = model.zeros_count(count);
  std::vector<ClassifiedZero> out;
  out.reserve(count);
  for (int k = 1; k <= count; ++k) out.push_back({t.unstable[k], ZeroKind::unstable, k});
  return out;
}

double lambda_for_index(const GeneratingFunction& model, int n) {
  if (n < 1) throw DomainError("eigen index must be >= 1");
  if (model.id() == ModelId::recip_gamma) return 2.0 * n - 1.0;
  return (2.0 * n - 0.5) * kPi - model.asym().phi;
}

}  // namespace nleig::models
