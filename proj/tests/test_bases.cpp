#include <doctest.h>

#include <algorithm>

#include "randext/bases.hpp"

using namespace randext;

namespace {

SymbolString bits(const std::string& s) { return SymbolString::parse(s, 2); }

SymbolString rotate_left(const SymbolString& x, int k) {
    std::vector<uint8_t> v = x.symbols;
    std::rotate(v.begin(), v.begin() + k, v.end());
    return SymbolString(2, std::move(v));
}

}  // namespace

TEST_CASE("pairwise debiasing") {
    CHECK(von_neumann(bits("01")).str() == "0");
    CHECK(von_neumann(bits("10")).str() == "1");
    CHECK(von_neumann(bits("0110")).str() == "01");
    CHECK(von_neumann(bits("011")).str() == "0");
    CHECK(von_neumann(bits("0011")).empty());
    CHECK(von_neumann(bits("")).empty());
    CHECK(von_neumann(bits("1001101")).str() == "101");
    CHECK_THROWS_AS(von_neumann(SymbolString::parse("012", 3)),
                    std::invalid_argument);
}

TEST_CASE("binomial coefficients") {
    CHECK(binomial_u64(0, 0) == 1);
    CHECK(binomial_u64(4, 2) == 6);
    CHECK(binomial_u64(24, 12) == 2704156);
    CHECK(binomial_u64(64, 32) == 1832624140942590534ULL);
    CHECK_THROWS_AS(binomial_u64(65, 1), std::invalid_argument);
    CHECK_THROWS_AS(binomial_u64(4, 5), std::invalid_argument);
    CHECK_THROWS_AS(binomial_u64(4, -1), std::invalid_argument);
}

TEST_CASE("class rank agrees with enumeration order") {
    CHECK(class_rank(bits("001")) == 0);
    CHECK(class_rank(bits("010")) == 1);
    CHECK(class_rank(bits("100")) == 2);
    CHECK(class_rank(bits("1100")) == 5);

    for (int n = 1; n <= 10; ++n) {
        for (int k = 0; k <= n; ++k) {
            Composition c({n - k, k});
            auto strings = enumerate_class(c);
            for (size_t r = 0; r < strings.size(); ++r)
                REQUIRE(class_rank(strings[r]) == r);
        }
    }
}

TEST_CASE("canonical batch map on 3-bit blocks") {
    CHECK(elias(bits("001")).str() == "0");
    CHECK(elias(bits("010")).str() == "1");
    CHECK(elias(bits("100")).empty());
    CHECK(elias(bits("011")).str() == "0");
    CHECK(elias(bits("101")).str() == "1");
    CHECK(elias(bits("110")).empty());
    CHECK(elias(bits("000")).empty());
    CHECK(elias(bits("111")).empty());
}

TEST_CASE("canonical batch map on 4-bit blocks") {
    CHECK(elias(bits("0000")).empty());
    CHECK(elias(bits("1111")).empty());

    const char* k2[] = {"0011", "0101", "0110", "1001", "1010", "1100"};
    const char* expect[] = {"00", "01", "10", "11", "0", "1"};
    for (int i = 0; i < 6; ++i) CHECK(elias(bits(k2[i])).str() == expect[i]);

    CHECK(elias(bits("0001")).str() == "00");
    CHECK(elias(bits("1000")).str() == "11");

    // Total output bits over all 16 blocks: 8 + 10 + 8.
    long long total = 0;
    for (int v = 0; v < 16; ++v) {
        std::vector<uint8_t> b(4);
        for (int i = 0; i < 4; ++i) b[static_cast<size_t>(i)] = (v >> (3 - i)) & 1;
        total += static_cast<long long>(elias(SymbolString(2, b)).size());
    }
    CHECK(total == 26);
}

TEST_CASE("batch map image of every class is extracting") {
    for (int n = 2; n <= 12; ++n) {
        for (int k = 0; k <= n; ++k) {
            OutputMultiset image;
            for_each_in_class(Composition({n - k, k}),
                              [&](const SymbolString& x) { image[elias(x).str()]++; });
            REQUIRE(is_extracting_multiset(image, 2));
        }
    }
}

TEST_CASE("batch map range") {
    CHECK_THROWS_AS(elias(bits("0")), std::invalid_argument);
    CHECK_THROWS_AS(elias(SymbolString(2, std::vector<uint8_t>(25, 0))),
                    std::invalid_argument);
    CHECK(elias(SymbolString(2, std::vector<uint8_t>(24, 0))).empty());
}

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(11));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(4));
    CHECK_FALSE(is_prime(9));
    CHECK_FALSE(is_prime(0));
}

TEST_CASE("rotation rank on 3-bit blocks") {
    CHECK(dijkstra_base(bits("000")) == -1);
    CHECK(dijkstra_base(bits("111")) == -1);
    CHECK(dijkstra_base(bits("001")) == 0);
    CHECK(dijkstra_base(bits("010")) == 1);
    CHECK(dijkstra_base(bits("100")) == 2);
    CHECK(dijkstra_base(bits("011")) == 0);
    CHECK(dijkstra_base(bits("101")) == 2);
    CHECK(dijkstra_base(bits("110")) == 1);
    CHECK_THROWS_AS(dijkstra_base(bits("0001")), std::invalid_argument);
}

TEST_CASE("orbit representatives") {
    auto reps3 = rotation_orbit_reps(3);
    REQUIRE(reps3.size() == 2);
    CHECK(reps3[0].str() == "001");
    CHECK(reps3[1].str() == "011");

    CHECK(rotation_orbit_reps(5).size() == 6);
    CHECK(rotation_orbit_reps(7).size() == 18);
    CHECK(rotation_orbit_reps(11).size() == 186);
    CHECK_THROWS_AS(rotation_orbit_reps(21), cap_error);
    CHECK_THROWS_AS(rotation_orbit_reps(1), std::invalid_argument);
}

TEST_CASE("orbit members index by left rotation") {
    for (int m : {3, 5, 7}) {
        for (const SymbolString& rep : rotation_orbit_reps(m)) {
            std::vector<bool> seen(static_cast<size_t>(m), false);
            for (int k = 0; k < m; ++k) {
                int digit = dijkstra_base(rotate_left(rep, k));
                REQUIRE(digit == k);
                seen[static_cast<size_t>(digit)] = true;
            }
            for (bool b : seen) CHECK(b);
        }
    }
}
