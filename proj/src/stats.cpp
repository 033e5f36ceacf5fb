#include "zkfault/stats.hpp"

#include <algorithm>
#include <set>

#include "zkfault/error.hpp"
#include "zkfault/seedtree.hpp"

namespace zkfault {

NodeContext node_context(const LessParams& p, size_t node) {
    const size_t l2 = p.l2();
    if (node >= node_count(l2)) throw BadParams("node out of range");
    auto [lo, hi] = leaf_range(node, l2);
    const size_t ell = lo >= p.t ? 0 : std::min(hi, p.t - 1) - lo + 1;
    return {p.t, p.w, p.s, ell};
}

BigInt binomial(size_t n, size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt out = 1;
    for (size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

BigInt stirling2(size_t r, size_t m) {
    std::vector<BigInt> row(m + 1, 0);
    row[0] = 1;
    for (size_t i = 1; i <= r; ++i) {
        for (size_t j = std::min(i, m); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[m];
}

namespace {

void check_ctx(const NodeContext& ctx) {
    if (ctx.w > ctx.t || ctx.ell > ctx.t || ctx.s < 2) throw BadParams("invalid node context");
}

}  // namespace

Rational prob_w(const NodeContext& ctx, size_t r) {
    check_ctx(ctx);
    if (r > ctx.w) return 0;
    return Rational(binomial(ctx.ell, r) * binomial(ctx.t - ctx.ell, ctx.w - r), binomial(ctx.t, ctx.w));
}

Rational prob_x_given_w(const NodeContext& ctx, size_t m, size_t r) {
    check_ctx(ctx);
    const size_t a = ctx.s - 1;
    if (m > a || m > r) return 0;
    BigInt fact = 1;
    for (size_t i = 2; i <= m; ++i) fact *= i;
    return Rational(fact * binomial(a, m) * stirling2(r, m), boost::multiprecision::pow(BigInt(a), static_cast<unsigned>(r)));
}

RecoveryDistribution recovery_distribution(const NodeContext& ctx) {
    RecoveryDistribution out;
    out.pr.assign(ctx.s, Rational(0));
    for (size_t r = 0; r <= ctx.w; ++r) {
        const Rational pw = prob_w(ctx, r);
        if (pw == 0) continue;
        for (size_t m = 0; m < ctx.s; ++m) out.pr[m] += prob_x_given_w(ctx, m, r) * pw;
    }
    out.expectation = 0;
    for (size_t m = 1; m < ctx.s; ++m) out.expectation += out.pr[m] * m;
    return out;
}

Rational expected_recovered(const NodeContext& ctx) { return recovery_distribution(ctx).expectation; }

Rational prob_effective(const NodeContext& ctx) {
    Rational p = 0;
    for (size_t r = 1; r + 1 <= ctx.w; ++r) p += prob_w(ctx, r);
    return p;
}

Rational expected_recovered_effective(const NodeContext& ctx) {
    Rational num = 0;
    for (size_t r = 1; r + 1 <= ctx.w; ++r) {
        const Rational pw = prob_w(ctx, r);
        for (size_t m = 1; m < ctx.s; ++m) num += prob_x_given_w(ctx, m, r) * pw * m;
    }
    const Rational den = prob_effective(ctx);
    return den == 0 ? Rational(0) : num / den;
}

Rational brute_force_expectation(const NodeContext& ctx, bool effective_only, uint64_t budget) {
    check_ctx(ctx);
    const BigInt total = binomial(ctx.t, ctx.w) * boost::multiprecision::pow(BigInt(ctx.s - 1), static_cast<unsigned>(ctx.w));
    if (total > budget) throw TooLarge("enumeration exceeds the configured budget");
    std::vector<uint8_t> d(ctx.t, 0);
    uint64_t count = 0, sum = 0;
    // Odometer over the values of the chosen support positions.
    auto visit_support = [&](const std::vector<size_t>& pos) {
        std::vector<uint32_t> val(pos.size(), 1);
        for (;;) {
            size_t inside = 0;
            std::set<uint32_t> distinct;
            for (size_t i = 0; i < pos.size(); ++i)
                if (pos[i] < ctx.ell) {
                    ++inside;
                    distinct.insert(val[i]);
                }
            if (!effective_only || (inside >= 1 && inside < ctx.w)) {
                ++count;
                sum += distinct.size();
            }
            size_t i = 0;
            while (i < val.size() && val[i] == ctx.s - 1) val[i++] = 1;
            if (i == val.size()) break;
            ++val[i];
        }
    };
    std::vector<uint8_t> sel(ctx.t, 0);
    std::fill(sel.begin(), sel.begin() + static_cast<long>(ctx.w), 1);
    do {
        std::vector<size_t> pos;
        for (size_t i = 0; i < ctx.t; ++i)
            if (sel[i]) pos.push_back(i);
        visit_support(pos);
    } while (std::prev_permutation(sel.begin(), sel.end()));
    return count == 0 ? Rational(0) : Rational(sum, count);
}

std::pair<double, double> trial_budget(double n_avg, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw BadProbability("p must lie in (0, 1]");
    return {1.0 / p, n_avg / p};
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace zkfault
