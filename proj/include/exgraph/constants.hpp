#ifndef EXGRAPH_CONSTANTS_HPP
#define EXGRAPH_CONSTANTS_HPP

#include <cstdint>
#include <string>

namespace exg {

// Constants derived from the smoothness parameters: layer bound ell0,
// ball-density gamma, expansion fraction mu, diameter bound L and the odd
// cycle-length threshold k0 = 2*ell0 + L + 2 (general) or 2*ell + L + 2
// (C_{2ell} case).
struct DerivedConstants {
  int ell0 = 0;
  double gamma = 0.0;
  double mu = 0.0;
  long long bigL = 0;
  long long k0 = 0;
  std::string provenance;  // "general" or "c2l"
  std::string to_json() const;
};

// ell0(alpha,beta): floor(log_beta((2-beta)(alpha-1)/(alpha-beta))) + 2 for
// beta > 1, floor(1/(alpha-1)) + 1 for beta = 1.
int ell0_value(double alpha, double beta);

double gamma_value(double alpha, double rho, double delta);

// min{ (1/2)(delta/2rho)^{1/(alpha-1)}, (delta/4rho)*gamma^{2-alpha},
//      gamma/ell0 }
double mu_value(double alpha, double beta, double rho, double delta);

// General family: L = floor(3/mu(delta/2)) * ell0, k0 = 2*ell0 + L + 2.
DerivedConstants derive_constants(double alpha, double beta, double rho, double delta);

// C_{2ell}-free case: L = 3*ell*(8*ell/delta)^ell (ceiling if fractional),
// k0 = 2*ell + L + 2.
DerivedConstants derive_constants_c2l(int ell, double delta);

}  // namespace exg

#endif
