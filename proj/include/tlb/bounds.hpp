#pragma once

#include <utility>
#include <vector>

#include "tlb/design.hpp"
#include "tlb/env.hpp"

namespace tlb {

// min_lambda max_{v in dirs} ||v||^2_{A(lambda)^-1} / omega_v, value only.
double rho(const std::vector<Vector>& arms, const DirectionSet& dirs,
           const SolverConfig& solver = {});

// Gauge of y with respect to conv(arms U -arms): the largest c with
// c*y inside the hull, i.e. 1 / min{sum a_i : y = sum a_i v_i, a_i >= 0,
// v_i in arms U -arms}. Solved as a linear program; y outside span(arms)
// is infeasible.
double gauge(const std::vector<Vector>& arms, const Vector& y);

// Gap-weighted optimal allocation and its value (the scale of the
// information-theoretic lower bound).
std::pair<Design, double> psi_star(const Instance& instance,
                                   const SolverConfig& solver = {});

// log(1/(2.4 delta)) * psi_star: expected samples any delta-PAC algorithm
// must spend on this instance.
double lower_bound(const Instance& instance, double delta,
                   const SolverConfig& solver = {});

// Worst-case sample envelope
//   sum_{t=1}^{max(1, floor(log2(1/gap_min)))}
//     max{8 ceil((2^{t+1})^2 rho(Y(S_t)) (1+eps) log(t^2 |Z|^2 / delta)),
//         r(eps)}
// evaluated with the true gaps. S_1 is the full item set (round one starts
// from everything); S_t = {z : gap(z) <= 2^-t} afterwards, and levels where
// S_t is a singleton contribute r(eps).
long long theorem2_bound(const Instance& instance, double delta, double eps,
                         const SolverConfig& solver = {});

struct InstanceDiagnostics {
  double psi_star = 0.0;
  Design lambda_star;
  double lower_bound = 0.0;
  long long theorem2_bound = 0;
  std::vector<double> gaps;
  double delta_min = 0.0;
};

InstanceDiagnostics diagnose(const Instance& instance, double delta,
                             double eps, const SolverConfig& solver = {});

}  // namespace tlb
