// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <map>
#include <string>
#include <vector>

#include "bninfo/fit.hpp"
#include "bninfo/global.hpp"
#include "bninfo/matrix.hpp"
#include "bninfo/types.hpp"

namespace bninfo {

enum class KlMethod {
  discrete,
  exact_global,
  exact_sparse,
  spectral,
  bounds,
  empirical,
  clg_naive,
  clg_sparse,
};
const char* to_string(KlMethod m);

struct SpectralFactor {
  std::vector<double> eigenvalues;  // descending, > 0
  Matrix eigenvectors;              // columns
};

/// Interval estimate for tr(Sigma_q^-1 Sigma_p). point_estimate is the
/// geometric mean when the lower bound is positive, otherwise the upper
/// bound alone (flagged in the report diagnostics).
struct TraceBounds {
  double lower = 0.0;
  double upper = 0.0;
  double point_estimate = 0.0;
};

/// A KL value (nats) plus the intermediates the computation went through.
/// Diagnostics recombine to `value`; vector-valued intermediates are kept
/// separately from the scalar map.
struct KlReport {
  double value = 0.0;
  KlMethod method = KlMethod::discrete;
  std::map<std::string, double> diagnostics;
  std::map<std::string, std::vector<double>> vectors;  // per-node / per-component terms
  std::string note;  // offending cell for infinities, fallback flags
};

/// Discrete KL via the local route: junction tree of `b`, entropy of `b`,
/// per-node joints over {X_i, parents-in-b2} (each distinct query runs
/// once), combined with b2's CPT entries. Returns +infinity, naming the
/// first offending cell, when b2 puts zero mass where b does not.
KlReport kl_discrete(const Network& b, const Network& b2);

enum class MvnRoute { direct, spectral };

/// KL between multivariate normals over the same variables.
KlReport kl_mvn(const GaussianGlobal& a, const GaussianGlobal& b,
                MvnRoute route = MvnRoute::direct);

SpectralFactor spectral_factor(const Matrix& covariance);

/// Sparse route: never materializes a covariance. Factor both networks,
/// realign b's factor rows to b2's node order, then
/// 1/2 [ |C2^-1 C*|_F^2 + |C2^-1 (mu2* - mu*)|^2 - N + 2 log(prod diag C2 / prod diag C) ].
KlReport kl_gbn_sparse(const Network& b, const Network& b2);

/// Trace bounds from the factors: lower via the log-det ratio, upper via
/// |C2^-1|_F^2 |C|_F^2 (computed as tr(Sigma2^-1) tr(Sigma), both assembled
/// from local parameters without inverting anything). The report substitutes
/// the point estimate for the exact trace.
std::pair<TraceBounds, KlReport> kl_gbn_bounds(const Network& b, const Network& b2);

/// Empirical approximation from two fits on the same data; requires a shared
/// total ordering and equal sample sizes.
KlReport kl_gbn_empirical(const Network& b, const FitSummary& fit_b,
                          const Network& b2, const FitSummary& fit_b2);

enum class ClgMethod { naive, sparse };

/// CLG KL: discrete spanning parts via kl_discrete, plus the mixture term -
/// naive sums over all discrete configurations, sparse only over
/// configurations of delta_union(b) U delta_union(b2) with junction-tree
/// weights and per-configuration sparse Gaussian KLs.
KlReport kl_clgbn(const Network& b, const Network& b2, ClgMethod method);

}  // namespace bninfo
