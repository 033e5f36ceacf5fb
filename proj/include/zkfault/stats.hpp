#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zkfault/params.hpp"

namespace zkfault {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ell: subtree leaves that fall among the first t rounds.
struct NodeContext {
    size_t t = 0;
    size_t w = 0;
    uint32_t s = 2;
    size_t ell = 0;
};

NodeContext node_context(const LessParams& p, size_t node);

BigInt binomial(size_t n, size_t k);
BigInt stirling2(size_t r, size_t m);

// W: nonzero digest entries inside the subtree.
Rational prob_w(const NodeContext& ctx, size_t r);
// X: distinct nonzero values inside the subtree.
Rational prob_x_given_w(const NodeContext& ctx, size_t m, size_t r);

struct RecoveryDistribution {
    std::vector<Rational> pr;  // Pr[X = m], m = 0 .. s-1
    Rational expectation;
};

RecoveryDistribution recovery_distribution(const NodeContext& ctx);
Rational expected_recovered(const NodeContext& ctx);
// Conditioned on an effective fault, i.e. 1 <= W <= w-1; zero when that event is impossible.
Rational expected_recovered_effective(const NodeContext& ctx);
Rational prob_effective(const NodeContext& ctx);

// Enumerates every fixed-weight digest; throws TooLarge beyond `budget` digests.
Rational brute_force_expectation(const NodeContext& ctx, bool effective_only = false, uint64_t budget = 50000000);

// (n_trial, n_total) = (1/p, n_avg/p); throws BadProbability unless 0 < p <= 1.
std::pair<double, double> trial_budget(double n_avg, double p);

double to_double(const Rational& r);
std::string to_string(const Rational& r);

}  // namespace zkfault
