#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "orbivol/elliptic.hpp"
#include "orbivol/lorentz.hpp"
#include "orbivol/matrix.hpp"

namespace orbivol::verify {

// Outcome of one seeded randomized suite. Slack is the ratio of the side
// that must win to the side it must beat (lhs/bound for lower-bound lemmas,
// bound/lhs for upper-bound lemmas), so a value below 1 - 1e-9 counts as a
// violation for every suite regardless of magnitude. elapsed_seconds is
// diagnostic only and never serialized, keeping reports byte-identical for
// a fixed (config, seed).
struct TrialReport {
  std::string lemma_id;
  long trials = 0;
  long violations = 0;
  double min_slack = 0.0;
  std::uint64_t worst_seed = 0;
  double elapsed_seconds = 0.0;
};

// ---- independent brute-force oracles ----

// Max of |A v| over `samples` unit vectors: a one-sided certificate for the
// operator norm (never exceeds it). Two of every three samples take one or
// two A^T A alignment steps before evaluation so the maximum reliably lands
// within 1% of the norm in dimensions up to 7.
double sampled_operator_norm(const Matrix& a, long samples, std::uint64_t seed);

// Random-search minimizer of d(e1, y) over the fixed set of a finite-order
// isometry. Points of Fix(A) are produced by orbit-averaging hyperboloid
// points (the average of A^j x over a full period is A-invariant and
// timelike) and the search hill-climbs over the lift parameter.
double fixed_set_distance_search(const LorentzMatrix& a, int order,
                                 std::uint64_t seed);

// Greedily grows a set in [-q, q]^p whose points pairwise differ by more
// than s in some coordinate, from a random candidate stream.
std::vector<std::vector<double>> greedy_separated_set(int p, double q, double s,
                                                      std::uint64_t seed,
                                                      long candidate_budget);

// Slack of one elliptic element against the uniform bound and against the
// distance-dependent bound: (|A-I|/c_k, |A-I|/bound(k, delta)).
std::pair<double, double> elliptic_slacks(const EllipticElement& element, int k);

// ---- randomized lemma suites ----

// |A - I| >= c_k and >= the distance-dependent bound, on exact-order-k
// elements with fixed-set distance drawn log-uniform in [1e-3, 5].
TrialReport check_elliptic_bounds(int n, int k, long trials, std::uint64_t seed);

// Entry bound: isometries whose translation keeps B(e1,r) intersecting
// itself (center distance <= 2r) have all entries at most kappa(r).
// Compared in log space so r = 30 stays overflow-free.
TrialReport check_entry_bound(int n, double r, long trials, std::uint64_t seed);

// |A| <= d(n+1) for matrices with entries bounded by d.
TrialReport check_norm_from_entries(int n, double d, long trials,
                                    std::uint64_t seed);

// Entrywise perturbations below L/((n+1)^2 K) of a Lorentz matrix with
// entries at most K satisfy |A B^{-1} - I| <= L. Every eighth trial
// concentrates the whole perturbation budget on one entry against the
// largest row of B^{-1}.
TrialReport check_product_perturbation(int n, double K, double L, long trials,
                                       std::uint64_t seed);

// Greedy sup-metric-separated sets in [-q, q]^p never exceed (2q/s + 1)^p.
// Desk scale only: p <= 4 and bound <= 1e6.
TrialReport check_separated_count(int p, double q, double s, long trials,
                                  std::uint64_t seed);

struct SuiteConfig {
  long trials = 10000;
  std::uint64_t master_seed = 0;
};

// Every suite at its documented default parameters. Separated-count suites
// run trials/100 greedy growths (minimum 10) since each growth is already a
// full randomized experiment. Per-trial seeds are pure functions of
// (master_seed, suite id, index), so the report list is order-independent.
std::vector<TrialReport> run_all(const SuiteConfig& config);

long total_violations(const std::vector<TrialReport>& reports);

}  // namespace orbivol::verify
