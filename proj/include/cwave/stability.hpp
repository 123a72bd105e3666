#pragma once
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cwave/schemes.hpp"

namespace cwave {

struct StabilityReport {
  double value = 0;     // C0 h_t^2 sum a_i^2 / h_i^2 (scaled for the second-order weight)
  double threshold = 0; // 1 - eps0^2
  double margin = 0;    // threshold - value
  bool pass = false;
  bool warning = false; // margin in [-0.01, 0)
  bool unconditional = false;
  double alpha2 = 0; // sharp alpha_h^2
  double C0 = 1;
  double eps0 = 0;
};

double cfl_constant_C0(SchemeKind kind, int dim);
// 6 C0 sum a_i^2 / h_i^2, the bound alpha_h^2 stays below
double alpha2_bound(SchemeKind kind, const Grid& g, std::span<const double> a);
// max over tensor sine modes of A/B; closed form at lambda_max in 1D
double sharp_alpha2(SchemeKind kind, const Grid& g, std::span<const double> a, double ht = 0, double sigma = 0.5);

StabilityReport check_cfl(SchemeKind kind, const Grid& g, std::span<const double> a, double ht, double eps0,
                          double sigma = 0.5);

enum class EnergyBound { Strong, StrongAltF, Weak, WeakDeltaG };
std::string to_string(EnergyBound b);

struct EnergyCertificate {
  EnergyBound which = EnergyBound::Strong;
  double lhs = 0, rhs = 0;
  bool holds = true;
};

// Norms of (B_h, A_h) evaluated through the sine basis on a uniform grid.
class SpectralNorms {
public:
  SpectralNorms(const OperatorPair& pair, const GridPtr& g, double ht);
  double B(const GridFunction& w) const;          // ||w||_B
  double A(const GridFunction& w) const;          // ||w||_A
  double B_inv_half(const GridFunction& w) const; // ||B^{-1/2} w||
  double A_inv_half(const GridFunction& w) const;
  double S_inv_half(const GridFunction& w) const; // ||(B + sigma h_t^2 A)^{-1/2} w||
  double norm_0h(const GridFunction& w) const;     // [||w||_B^2 + (sigma - 1/4) h_t^2 ||w||_A^2]^{1/2}
  double sigma() const { return sigma_; }

private:
  double weighted(const GridFunction& w, const GridFunction& tab, double power) const;
  GridPtr g_;
  GridFunction b_, a_, s_;
  double ht_, sigma_, cell_;
};

// v: levels 0..M with zero boundary; f: f^0..f^{M-1}; g: g^0..g^M for WeakDeltaG (f = delta_t g).
EnergyCertificate verify_energy_bound(const SpectralNorms& nrm, double ht, double eps0, EnergyBound which,
                                      const std::vector<GridFunction>& v, const GridFunction& u1N,
                                      const std::vector<GridFunction>& f, const std::vector<GridFunction>* g = nullptr,
                                      double slack = 1e-12);

// Diagnostic ||(B_h + sigma h_t^2 A_h)^{-1/2} u1||, no pass/fail meaning.
double u1_energy_term(const SpectralNorms& nrm, const GridFunction& u1);

struct RandomInstance {
  SchemeKind kind;
  int dim = 1, M = 0;
  double eps0 = 0.5;
  StabilityReport cfl;
  std::vector<EnergyCertificate> certificates; // empty when the CFL check fails
};

// One random small instance (N_k <= 8, M <= 20): random free terms, g = 0, all four bounds.
RandomInstance certify_random_instance(SchemeKind kind, std::mt19937_64& rng);

} // namespace cwave
