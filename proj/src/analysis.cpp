#include "randext/analysis.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

namespace randext {
namespace {

void check_source_dist(const Scheme& s, const Distribution& d) {
    if (d.size() != s.m_src)
        throw std::invalid_argument("distribution has " +
                                    std::to_string(d.size()) +
                                    " entries, scheme source alphabet is " +
                                    std::to_string(s.m_src));
}

// Branch distribution of one recursion stream, zero-padded to the source
// alphabet.  Returns the stream mass; leaves `out` untouched on zero mass.
double stream_branch_dist(const Scheme& s, const StreamPart& sp,
                          const Distribution& d, Distribution* out) {
    std::vector<double> probs(static_cast<size_t>(s.m_src), 0.0);
    double mass = 0.0;
    for (size_t i = 0; i < sp.branch_weight.size(); ++i) {
        double w = sp.branch_weight[i].eval(d);
        probs[i] = w;
        mass += w;
    }
    if (mass <= 0.0) return 0.0;
    for (double& w : probs) w /= mass;
    *out = Distribution(std::move(probs));
    return mass;
}

double truncated_rate_rec(const Scheme& s, const Distribution& d, int depth) {
    if (depth <= 0) return 0.0;
    double r = base_rate(s, d);
    if (depth == 1) return r;
    Distribution branch;
    for (const StreamPart& sp : s.streams) {
        double mass = stream_branch_dist(s, sp, d, &branch);
        if (mass <= 0.0) continue;
        r += mass / s.block_len * truncated_rate_rec(s, branch, depth - 1);
    }
    return r;
}

uint64_t draw_symbol(const Distribution& d, std::mt19937_64& gen) {
    double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    double acc = 0.0;
    for (int i = 0; i + 1 < d.size(); ++i) {
        acc += d[i];
        if (u < acc) return static_cast<uint64_t>(i);
    }
    return static_cast<uint64_t>(d.size() - 1);
}

}  // namespace

double shannon_entropy(const Distribution& d, double base) {
    if (base <= 1.0) throw std::invalid_argument("entropy base must exceed 1");
    double h = 0.0;
    for (double p : d.probs)
        if (p > 0.0) h -= p * std::log2(p);
    return h / std::log2(base);
}

double base_rate(const Scheme& s, const Distribution& d) {
    check_source_dist(s, d);
    double r = 0.0;
    for (const OutputPart& op : s.outputs) r += op.digits * op.weight.eval(d);
    return r / s.block_len;
}

double truncated_rate(const Scheme& s, const Distribution& d, int depth) {
    check_source_dist(s, d);
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    double nodes = 1.0;
    for (int i = 0; i < depth; ++i) {
        nodes *= std::max<size_t>(s.streams.size(), 1);
        if (nodes > 1e7)
            throw cap_error("rate recursion would visit over 10^7 nodes");
    }
    return truncated_rate_rec(s, d, depth);
}

double fixed_point_residual(const Scheme& s, const Distribution& d) {
    check_source_dist(s, d);
    double t = base_rate(s, d);
    Distribution branch;
    for (const StreamPart& sp : s.streams) {
        double mass = stream_branch_dist(s, sp, d, &branch);
        if (mass <= 0.0) continue;
        t += mass / s.block_len * shannon_entropy(branch, s.output_base);
    }
    return std::abs(t - shannon_entropy(d, s.output_base));
}

double exact_rate(const Scheme& s, const Distribution& d, int n) {
    check_source_dist(s, d);
    if (n < 0) throw std::invalid_argument("length must be nonnegative");
    if (n == 0) return 0.0;
    if (n * std::log2(static_cast<double>(s.m_src)) > std::log2(1e7))
        throw cap_error("exact rate enumeration capped at 10^7 inputs");
    double total = 0.0;
    for (const Composition& comp : compositions_of(n, s.m_src)) {
        double per_string = class_probability(comp, d);
        if (per_string <= 0.0) continue;
        long long digits = 0;
        for_each_in_class(comp, [&](const SymbolString& x) {
            digits += static_cast<long long>(extract(s, x).size());
        });
        total += per_string * static_cast<double>(digits);
    }
    return total / n;
}

double empirical_rate(const Scheme& s, const Distribution& d,
                      long long samples, int n, uint64_t seed) {
    check_source_dist(s, d);
    if (n <= 0) throw std::invalid_argument("length must be positive");
    if (samples <= 0) return 0.0;
    std::mt19937_64 gen(seed);
    SymbolString x;
    x.alphabet_size = s.m_src;
    x.symbols.assign(static_cast<size_t>(n), 0);
    double total = 0.0;
    for (long long i = 0; i < samples; ++i) {
        for (uint8_t& sym : x.symbols)
            sym = static_cast<uint8_t>(draw_symbol(d, gen));
        total += static_cast<double>(extract(s, x).size());
    }
    return total / (static_cast<double>(samples) * n);
}

SymbolString sample_source(const Distribution& d, int n, uint64_t seed) {
    if (n < 0) throw std::invalid_argument("length must be nonnegative");
    std::mt19937_64 gen(seed);
    SymbolString x;
    x.alphabet_size = d.size();
    x.symbols.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        x.symbols.push_back(static_cast<uint8_t>(draw_symbol(d, gen)));
    return x;
}

double pair_base_rate(double p) { return p * (1.0 - p); }

double three_bit_base_rate(double p) { return 2.0 * p * (1.0 - p) / 3.0; }

double four_bit_batch_base_rate(double p) {
    double q = 1.0 - p;
    return p * q * (1.0 + p * p + q * q + p * q / 2.0);
}

double double_unrolled_base_rate(double p) {
    double q = 1.0 - p;
    double c = p * p + q * q;
    return p * q * (1.0 + c + p * q / (2.0 * c));
}

double chi_square_uniform_pvalue(const std::vector<long long>& counts) {
    if (counts.size() < 2)
        throw std::invalid_argument("need at least two cells");
    double total = 0.0;
    for (long long c : counts) {
        if (c < 0) throw std::invalid_argument("negative cell count");
        total += static_cast<double>(c);
    }
    if (total <= 0.0) throw std::invalid_argument("all cell counts are zero");
    double expected = total / static_cast<double>(counts.size());
    double stat = 0.0;
    for (long long c : counts) {
        double delta = static_cast<double>(c) - expected;
        stat += delta * delta / expected;
    }
    boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace randext
