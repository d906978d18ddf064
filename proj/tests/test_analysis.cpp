#include <doctest.h>

#include <cmath>
#include <vector>

#include "randext/analysis.hpp"

using namespace randext;

namespace {

// Direct pair-scheme recursion on P(0), independent of the engine.
double pair_rate(double p, int nu) {
    if (nu <= 0) return 0.0;
    double q = 1.0 - p;
    double r = p * q;
    if (nu == 1) return r;
    double c = p * p + q * q;
    r += 0.5 * pair_rate(c, nu - 1);
    r += 0.5 * c * pair_rate(p * p / c, nu - 1);
    return r;
}

}  // namespace

TEST_CASE("shannon entropy") {
    CHECK(shannon_entropy(Distribution::bernoulli(0.5)) == doctest::Approx(1.0));
    CHECK(shannon_entropy(Distribution::bernoulli(1.0)) == doctest::Approx(0.0));
    CHECK(shannon_entropy(Distribution::bernoulli(1.0 / 3)) ==
          doctest::Approx(0.9182958340544893).epsilon(1e-14));
    CHECK(shannon_entropy(Distribution::bernoulli(0.3)) ==
          doctest::Approx(0.8812908992306927).epsilon(1e-14));
    CHECK(shannon_entropy(Distribution::uniform(3), 3.0) == doctest::Approx(1.0));
    CHECK(shannon_entropy(Distribution::uniform(5), 5.0) == doctest::Approx(1.0));
    Distribution d({0.2, 0.3, 0.5});
    CHECK(shannon_entropy(d, 4.0) == doctest::Approx(shannon_entropy(d) / 2.0));
    CHECK_THROWS_AS(shannon_entropy(d, 1.0), std::invalid_argument);
}

TEST_CASE("base rates of the builtin schemes") {
    Scheme pair = builtin_scheme("peres2");
    Scheme three = builtin_scheme("peres3bit");
    Scheme four = builtin_scheme("peres4bit_e4");
    Scheme d3 = builtin_scheme("dijkstra3");
    for (double p : {0.1, 0.25, 0.5, 0.7, 0.99}) {
        Distribution d = Distribution::bernoulli(p);
        double pq = p * (1.0 - p);
        CHECK(base_rate(pair, d) == doctest::Approx(pq).epsilon(1e-13));
        CHECK(base_rate(three, d) ==
              doctest::Approx(2.0 * pq / 3.0).epsilon(1e-13));
        CHECK(base_rate(three, d) ==
              doctest::Approx(three_bit_base_rate(p)).epsilon(1e-13));
        CHECK(base_rate(four, d) ==
              doctest::Approx(four_bit_batch_base_rate(p)).epsilon(1e-13));
        CHECK(base_rate(d3, d) == doctest::Approx(pq).epsilon(1e-13));
        CHECK(pair_base_rate(p) == doctest::Approx(pq));
    }
    // Face scheme emits one bit per unordered mixed pair.
    Scheme face = builtin_scheme("peres3face");
    Distribution t({0.2, 0.3, 0.5});
    CHECK(base_rate(face, t) ==
          doctest::Approx(0.2 * 0.3 + 0.2 * 0.5 + 0.3 * 0.5).epsilon(1e-13));
    CHECK_THROWS_AS(base_rate(face, Distribution::bernoulli(0.5)),
                    std::invalid_argument);
}

TEST_CASE("truncated rate matches the direct pair recursion") {
    Scheme pair = builtin_scheme("peres2");
    for (double p : {0.05, 0.2, 1.0 / 3, 0.5, 0.8}) {
        Distribution d = Distribution::bernoulli(p);
        CHECK(truncated_rate(pair, d, 0) == 0.0);
        CHECK(truncated_rate(pair, d, 1) ==
              doctest::Approx(p * (1.0 - p)).epsilon(1e-13));
        for (int nu = 2; nu <= 8; ++nu)
            CHECK(truncated_rate(pair, d, nu) ==
                  doctest::Approx(pair_rate(p, nu)).epsilon(1e-12));
    }
}

TEST_CASE("depth-two pair rate hits 158/405 at p = 1/3") {
    Scheme pair = builtin_scheme("peres2");
    double r2 = truncated_rate(pair, Distribution::bernoulli(1.0 / 3), 2);
    CHECK(std::abs(r2 - 158.0 / 405.0) < 1e-12);
    CHECK(r2 == doctest::Approx(0.390123456790123).epsilon(1e-12));
}

TEST_CASE("depth-two pair rate equals the unrolled closed form") {
    Scheme pair = builtin_scheme("peres2");
    for (int i = 1; i <= 19; ++i) {
        double p = i / 20.0;
        CHECK(truncated_rate(pair, Distribution::bernoulli(p), 2) ==
              doctest::Approx(double_unrolled_base_rate(p)).epsilon(1e-13));
    }
}

TEST_CASE("truncated rates are monotone and capped by entropy") {
    struct Probe {
        const char* name;
        int max_depth;
    };
    const Probe probes[] = {
        {"peres2", 10}, {"peres3bit", 7},  {"peres4bit_e4", 7},
        {"dijkstra3", 9}, {"dijkstra5", 6}, {"dijkstra11_partial", 7},
    };
    for (const Probe& pr : probes) {
        Scheme s = builtin_scheme(pr.name);
        for (double p : {0.1, 0.3, 0.5}) {
            Distribution d = Distribution::bernoulli(p);
            double bound = shannon_entropy(d, s.output_base);
            double prev = 0.0;
            for (int nu = 0; nu <= pr.max_depth; ++nu) {
                double r = truncated_rate(s, d, nu);
                CHECK(r >= prev - 1e-12);
                CHECK(r <= bound + 1e-12);
                prev = r;
            }
        }
    }
    Scheme face = builtin_scheme("peres3face");
    Distribution t({0.2, 0.3, 0.5});
    double bound = shannon_entropy(t);
    double prev = 0.0;
    for (int nu = 0; nu <= 8; ++nu) {
        double r = truncated_rate(face, t, nu);
        CHECK(r >= prev - 1e-12);
        CHECK(r <= bound + 1e-12);
        prev = r;
    }
}

TEST_CASE("truncated rate node cap") {
    Scheme wide = builtin_scheme("dijkstra5");  // seven streams
    CHECK_THROWS_AS(
        truncated_rate(wide, Distribution::bernoulli(0.5), 10), cap_error);
    CHECK_THROWS_AS(
        truncated_rate(wide, Distribution::bernoulli(0.5), 9), cap_error);
}

TEST_CASE("complete schemes sit at the entropy fixed point") {
    for (const char* name : {"peres2", "peres3bit", "peres4bit_e4",
                             "dijkstra3", "dijkstra5"}) {
        Scheme s = builtin_scheme(name);
        for (int i = 1; i <= 99; ++i) {
            double p = i / 100.0;
            CHECK(fixed_point_residual(s, Distribution::bernoulli(p)) < 1e-12);
        }
    }
    Scheme face3 = builtin_scheme("peres3face");
    Scheme face4 = builtin_scheme("peres4face");
    Scheme face4a = builtin_scheme("peres4face_alt");
    CHECK(fixed_point_residual(face3, Distribution({0.2, 0.3, 0.5})) < 1e-12);
    CHECK(fixed_point_residual(face3, Distribution::uniform(3)) < 1e-12);
    CHECK(fixed_point_residual(face4, Distribution({0.1, 0.2, 0.3, 0.4})) < 1e-12);
    CHECK(fixed_point_residual(face4a, Distribution({0.1, 0.2, 0.3, 0.4})) < 1e-12);
    CHECK(fixed_point_residual(face4, Distribution::uniform(4)) < 1e-12);
}

TEST_CASE("dropped streams leave an entropy deficit") {
    Scheme partial = builtin_scheme("dijkstra11_partial");
    double worst = 0.0;
    for (int i = 1; i <= 19; ++i) {
        double p = i / 20.0;
        worst = std::max(worst,
                         fixed_point_residual(partial, Distribution::bernoulli(p)));
    }
    CHECK(worst > 1e-3);

    Scheme none = with_recursion_plan(builtin_scheme("peres2"), {});
    double r = fixed_point_residual(none, Distribution::bernoulli(0.5));
    CHECK(r == doctest::Approx(0.75).epsilon(1e-12));
    Scheme u_only = with_recursion_plan(builtin_scheme("peres2"), {0});
    CHECK(fixed_point_residual(u_only, Distribution::bernoulli(0.5)) > 0.1);
}

TEST_CASE("exact rate by enumeration") {
    Scheme pair = builtin_scheme("peres2");
    Distribution fair = Distribution::bernoulli(0.5);
    // 2^6 inputs emit 144 bits in total: 144 / (6 * 64) = 0.375.
    CHECK(exact_rate(pair, fair, 6) == doctest::Approx(0.375).epsilon(1e-14));
    // Without recursion the same inputs emit 96 bits.
    Scheme vn = with_recursion_plan(pair, {});
    CHECK(exact_rate(vn, fair, 6) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(exact_rate(pair, fair, 0) == 0.0);
    CHECK(exact_rate(pair, fair, 1) == 0.0);  // odd tail dropped
    CHECK_THROWS_AS(exact_rate(pair, fair, 24), cap_error);

    // Finite-length rates stay under the truncated limit at matching depth.
    Distribution d = Distribution::bernoulli(0.3);
    double limit = truncated_rate(pair, d, 8);
    for (int n = 2; n <= 12; n += 2)
        CHECK(exact_rate(pair, d, n) <= limit + 1e-12);

    // A single pair emits the base part only.
    for (double p : {0.1, 0.4, 0.8})
        CHECK(exact_rate(pair, Distribution::bernoulli(p), 2) ==
              doctest::Approx(p * (1.0 - p)).epsilon(1e-13));
    CHECK(exact_rate(builtin_scheme("peres3bit"), fair, 2) == 0.0);
}

TEST_CASE("long single-stream runs approach the entropy bound") {
    Scheme pair = builtin_scheme("peres2");
    double fair = empirical_rate(pair, Distribution::bernoulli(0.5),
                                 1, 1000000, 2024);
    CHECK(fair >= 0.95);
    CHECK(fair <= 1.0);
    double skew = empirical_rate(pair, Distribution::bernoulli(0.3),
                                 1, 1000000, 2024);
    CHECK(skew <= shannon_entropy(Distribution::bernoulli(0.3)));
    CHECK(skew >= 0.8);
}

TEST_CASE("empirical rate is deterministic and close to exact") {
    Scheme pair = builtin_scheme("peres2");
    Distribution d = Distribution::bernoulli(0.3);
    double a = empirical_rate(pair, d, 500, 64, 42);
    double b = empirical_rate(pair, d, 500, 64, 42);
    CHECK(a == b);
    CHECK(empirical_rate(pair, d, 500, 64, 43) != a);
    CHECK(empirical_rate(pair, d, 0, 64, 42) == 0.0);
    double exact = exact_rate(pair, d, 12);
    double emp = empirical_rate(pair, d, 4000, 12, 7);
    CHECK(std::abs(emp - exact) < 0.02);

    Scheme tern = builtin_scheme("dijkstra3");
    Distribution fair = Distribution::bernoulli(0.5);
    double t = empirical_rate(tern, fair, 2000, 30, 5);
    CHECK(t > 0.0);
    CHECK(t <= shannon_entropy(fair, 3) + 1e-12);
}

TEST_CASE("source sampling") {
    Distribution d({0.2, 0.3, 0.5});
    SymbolString x = sample_source(d, 1000, 99);
    CHECK(x.size() == 1000);
    CHECK(x.alphabet_size == 3);
    std::vector<int> counts(3, 0);
    for (size_t i = 0; i < x.symbols.size(); ++i) ++counts[x.symbols[i]];
    CHECK(counts[0] > 120);
    CHECK(counts[2] > 400);
    CHECK(sample_source(d, 1000, 99) == x);
    CHECK(sample_source(d, 0, 1).size() == 0);
}

TEST_CASE("unrolled pair base rate dominates the four-bit batch") {
    for (int i = 1; i <= 99; ++i) {
        double p = i / 100.0;
        CHECK(double_unrolled_base_rate(p) >=
              four_bit_batch_base_rate(p) - 1e-15);
    }
    CHECK(double_unrolled_base_rate(0.5) == doctest::Approx(0.4375));
    CHECK(four_bit_batch_base_rate(0.5) == doctest::Approx(0.40625));
}

TEST_CASE("chi-square uniformity p-values") {
    CHECK(chi_square_uniform_pvalue({50, 50}) == doctest::Approx(1.0));
    CHECK(chi_square_uniform_pvalue({55, 45}) ==
          doctest::Approx(0.3173105078629141).epsilon(1e-9));
    CHECK(chi_square_uniform_pvalue({30, 70}) < 1e-4);
    CHECK(chi_square_uniform_pvalue({100, 0}) < 1e-20);
    std::vector<long long> flat(256, 1000);
    CHECK(chi_square_uniform_pvalue(flat) == doctest::Approx(1.0));
    flat[0] = 2500;  // one cell 2.5x expected swamps 255 degrees of freedom
    CHECK(chi_square_uniform_pvalue(flat) < 1e-6);
    CHECK_THROWS_AS(chi_square_uniform_pvalue({5}), std::invalid_argument);
    CHECK_THROWS_AS(chi_square_uniform_pvalue({0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(chi_square_uniform_pvalue({3, -1}), std::invalid_argument);
}

TEST_CASE("fair-coin pair rates follow 1 - (3/4)^depth") {
    // At p = 1/2 both streams are fair again, so the recursion collapses to
    // r_nu = 1/4 + (3/4) r_{nu-1}.
    Scheme pair = builtin_scheme("peres2");
    Distribution fair = Distribution::bernoulli(0.5);
    for (int nu = 0; nu <= 10; ++nu)
        CHECK(truncated_rate(pair, fair, nu) ==
              doctest::Approx(1.0 - std::pow(0.75, nu)).epsilon(1e-12));
}
