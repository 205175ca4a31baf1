#include "exgraph/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace exg {

namespace {

void check_domain(double alpha, double beta, double rho, double delta) {
  if (!(2 > alpha && alpha > beta && beta >= 1))
    throw std::invalid_argument("derive_constants: require 2 > alpha > beta >= 1");
  if (!(rho > 0)) throw std::invalid_argument("derive_constants: require rho > 0");
  if (!(delta > 0)) throw std::invalid_argument("derive_constants: require delta > 0");
}

// floor that tolerates values a hair below an integer from rounding.
long long floor_tol(double x) { return static_cast<long long>(std::floor(x + 1e-9)); }

}  // namespace

std::string DerivedConstants::to_json() const {
  nlohmann::json j{{"kind", "derived_constants"}, {"ell0", ell0},     {"gamma", gamma},
                   {"mu", mu},                    {"L", bigL},        {"k0", k0},
                   {"provenance", provenance}};
  return j.dump();
}

int ell0_value(double alpha, double beta) {
  if (!(2 > alpha && alpha > beta && beta >= 1))
    throw std::invalid_argument("ell0: require 2 > alpha > beta >= 1");
  if (beta == 1.0) return static_cast<int>(floor_tol(1.0 / (alpha - 1.0))) + 1;
  const double arg = (2.0 - beta) * (alpha - 1.0) / (alpha - beta);
  return static_cast<int>(floor_tol(std::log(arg) / std::log(beta))) + 2;
}

double gamma_value(double alpha, double rho, double delta) {
  return std::pow(delta / (12.0 * rho), 1.0 / (alpha - 1.0));
}

double mu_value(double alpha, double beta, double rho, double delta) {
  const int ell0 = ell0_value(alpha, beta);
  const double gamma = gamma_value(alpha, rho, delta);
  const double a = 0.5 * std::pow(delta / (2.0 * rho), 1.0 / (alpha - 1.0));
  const double b = (delta / (4.0 * rho)) * std::pow(gamma, 2.0 - alpha);
  const double c = gamma / ell0;
  return std::min({a, b, c});
}

DerivedConstants derive_constants(double alpha, double beta, double rho, double delta) {
  check_domain(alpha, beta, rho, delta);
  DerivedConstants dc;
  dc.ell0 = ell0_value(alpha, beta);
  dc.gamma = gamma_value(alpha, rho, delta);
  dc.mu = mu_value(alpha, beta, rho, delta);
  const double mu_half = mu_value(alpha, beta, rho, delta / 2.0);
  const double lf = std::floor(3.0 / mu_half + 1e-9);
  if (!(lf < 9e15)) throw std::invalid_argument("derive_constants: L overflows");
  dc.bigL = static_cast<long long>(lf) * dc.ell0;
  dc.k0 = 2LL * dc.ell0 + dc.bigL + 2;
  dc.provenance = "general";
  return dc;
}

DerivedConstants derive_constants_c2l(int ell, double delta) {
  if (ell < 2) throw std::invalid_argument("derive_constants_c2l: require ell >= 2");
  if (!(delta > 0)) throw std::invalid_argument("derive_constants_c2l: require delta > 0");
  DerivedConstants dc;
  dc.ell0 = ell;  // the layer bound in this regime is ell itself
  const double x = 3.0 * ell * std::pow(8.0 * ell / delta, static_cast<double>(ell));
  if (!(x < 9e15)) throw std::invalid_argument("derive_constants_c2l: L overflows");
  const double rounded = std::llround(x);
  dc.bigL = (std::fabs(x - rounded) <= 1e-6 * std::max(1.0, std::fabs(x)))
                ? static_cast<long long>(rounded)
                : static_cast<long long>(std::ceil(x));
  dc.k0 = 2LL * ell + dc.bigL + 2;
  dc.provenance = "c2l";
  return dc;
}

}  // namespace exg
