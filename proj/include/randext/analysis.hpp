#pragma once

#include "randext/scheme.hpp"

namespace randext {

double shannon_entropy(const Distribution& d, double base = 2.0);

// Expected output digits per source symbol from the output nodes alone.
double base_rate(const Scheme& s, const Distribution& d);

// Depth-limited rate recursion:
//   r_0 = 0
//   r_nu(d) = base_rate(d) + sum_j (P_j / b) * r_{nu-1}(stream j branch dist)
// where the branch distribution is zero-padded to the source alphabet.
// Work grows as streams^depth; capped at 10^7 evaluation nodes.
double truncated_rate(const Scheme& s, const Distribution& d, int depth);

// |T(H_D)(d) - H_D(d)| where T is the one-step operator above and H_D is the
// source entropy in output-base digits.  Zero (up to rounding) exactly when
// the recursion plan covers every internal node and all output nodes branch
// uniformly.
double fixed_point_residual(const Scheme& s, const Distribution& d);

// Expected output digits per symbol over all length-n inputs, exact
// enumeration; m^n capped at 10^7.
double exact_rate(const Scheme& s, const Distribution& d, int n);

// Expected output digits per symbol over sampled length-n inputs; fully
// deterministic for a fixed seed.
double empirical_rate(const Scheme& s, const Distribution& d,
                      long long samples, int n, uint64_t seed);

// Draw n source symbols from d.
SymbolString sample_source(const Distribution& d, int n, uint64_t seed);

// Closed forms for a Bernoulli(p) source, in bits per symbol.
double pair_base_rate(double p);             // p q
double three_bit_base_rate(double p);        // 2 p q / 3
double four_bit_batch_base_rate(double p);   // p q (1 + p^2 + q^2 + p q / 2)
double double_unrolled_base_rate(double p);  // p q (1 + p^2 + q^2 + p q / (2 (p^2+q^2)))

// Upper-tail p-value of the uniformity chi-square over the given counts
// (degrees of freedom = counts.size() - 1).
double chi_square_uniform_pvalue(const std::vector<long long>& counts);

}  // namespace randext
