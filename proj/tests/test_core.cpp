#include <doctest.h>

#include "randext/core.hpp"

using namespace randext;

TEST_CASE("digit characters") {
    CHECK(digit_to_char(0) == '0');
    CHECK(digit_to_char(9) == '9');
    CHECK(digit_to_char(10) == 'a');
    CHECK(digit_to_char(35) == 'z');
    CHECK(char_to_digit('7') == 7);
    CHECK(char_to_digit('b') == 11);
    CHECK(char_to_digit('?') == -1);
    CHECK(char_to_digit(' ') == -1);
}

TEST_CASE("symbol string parse and print") {
    SymbolString x = SymbolString::parse("0110", 2);
    CHECK(x.size() == 4);
    CHECK(x[0] == 0);
    CHECK(x[1] == 1);
    CHECK(x.str() == "0110");

    SymbolString y = SymbolString::parse("207643590289787", 10);
    CHECK(y.str() == "207643590289787");

    CHECK_THROWS_AS(SymbolString::parse("012", 2), std::invalid_argument);
    CHECK_THROWS_AS(SymbolString::parse("01x", 2), std::invalid_argument);
    CHECK(SymbolString::parse("", 2).empty());
}

TEST_CASE("distribution validation") {
    Distribution d = Distribution::bernoulli(0.3);
    CHECK(d.size() == 2);
    CHECK(d[0] == doctest::Approx(0.3));
    CHECK(d[1] == doctest::Approx(0.7));

    Distribution u = Distribution::uniform(4);
    CHECK(u.size() == 4);
    CHECK(u[2] == doctest::Approx(0.25));

    CHECK_THROWS_AS(Distribution({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution({1.2, -0.2}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution({1.0}), std::invalid_argument);
}

TEST_CASE("composition of a string") {
    Composition c = composition_of(SymbolString::parse("207643590289787", 10));
    CHECK(c.counts == std::vector<int>{2, 0, 2, 1, 1, 1, 1, 3, 2, 2});
    CHECK(c.total() == 15);
    CHECK(c.str() == "2,0,2,1,1,1,1,3,2,2");

    Composition b = composition_of(SymbolString::parse("0110", 2));
    CHECK(b.counts == std::vector<int>{2, 2});
}

TEST_CASE("class size small values") {
    CHECK(class_size(Composition({4, 2})) == 15);
    CHECK(class_size(Composition({3, 3})) == 20);
    CHECK(class_size(Composition({6, 6})) == 924);
    CHECK(class_size(Composition({5, 4, 3})) == 27720);
    CHECK(class_size(Composition({0, 0})) == 1);
    CHECK(class_size(Composition({7, 0})) == 1);
    CHECK(to_string(class_size(Composition({20, 20}))) == "137846528820");
    CHECK(to_string(BigCount(0)) == "0");
}

TEST_CASE("class size matches enumeration exhaustively") {
    auto run = [](int m, int max_n) {
        for (int n = 0; n <= max_n; ++n) {
            for (const Composition& c : compositions_of(n, m)) {
                long long seen = 0;
                for_each_in_class(c, [&](const SymbolString&) { ++seen; });
                CHECK(class_size(c) == static_cast<BigCount>(seen));
            }
        }
    };
    run(2, 14);
    run(3, 9);
    run(4, 8);
}

TEST_CASE("class enumeration is lexicographic") {
    auto v = enumerate_class(Composition({2, 1}));
    REQUIRE(v.size() == 3);
    CHECK(v[0].str() == "001");
    CHECK(v[1].str() == "010");
    CHECK(v[2].str() == "100");

    auto w = enumerate_class(Composition({1, 1, 1}));
    REQUIRE(w.size() == 6);
    CHECK(w[0].str() == "012");
    CHECK(w[5].str() == "210");
    for (size_t i = 1; i < w.size(); ++i) CHECK(w[i - 1].str() < w[i].str());
}

TEST_CASE("class probabilities sum to one") {
    Distribution d = Distribution::bernoulli(0.3);
    for (int n : {1, 4, 9}) {
        double total = 0.0;
        for (const Composition& c : compositions_of(n, 2))
            total += static_cast<double>(static_cast<uint64_t>(class_size(c))) *
                     class_probability(c, d);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }

    Distribution t({0.2, 0.5, 0.3});
    double total = 0.0;
    for (const Composition& c : compositions_of(6, 3))
        total += static_cast<double>(static_cast<uint64_t>(class_size(c))) *
                 class_probability(c, t);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("caps and overflow detection") {
    CHECK_THROWS_AS(class_size(Composition({171, 0})), cap_error);
    CHECK(class_size(Composition({170, 0})) == 1);
    CHECK_THROWS_AS(class_size(Composition({85, 85})), std::overflow_error);
    CHECK_THROWS_AS(enumerate_class(Composition({20, 20}), 1000), cap_error);
    CHECK_THROWS_AS(class_size(Composition({-1, 3})), std::invalid_argument);
}

TEST_CASE("extracting multiset detection") {
    OutputMultiset good{{"", 3}, {"0", 3}, {"1", 3}};
    CHECK(is_extracting_multiset(good, 2));

    OutputMultiset mixed{{"", 1}, {"0", 2}, {"1", 2}, {"00", 5}, {"01", 5},
                         {"10", 5}, {"11", 5}};
    CHECK(is_extracting_multiset(mixed, 2));

    OutputMultiset skewed{{"0", 2}, {"1", 3}};
    CHECK_FALSE(is_extracting_multiset(skewed, 2));

    OutputMultiset missing{{"00", 2}, {"01", 2}, {"10", 2}};
    CHECK_FALSE(is_extracting_multiset(missing, 2));

    OutputMultiset foreign{{"0", 1}, {"2", 1}};
    CHECK_FALSE(is_extracting_multiset(foreign, 2));
    CHECK(is_extracting_multiset(OutputMultiset{{"0", 1}, {"1", 1}, {"2", 1}}, 3));

    // Zero and negative multiplicities are ignored.
    OutputMultiset padded{{"", 4}, {"0", 0}, {"1", 0}};
    CHECK(is_extracting_multiset(padded, 2));

    CHECK(is_extracting_multiset(OutputMultiset{}, 2));
}

TEST_CASE("composition generation") {
    auto v = compositions_of(2, 2);
    REQUIRE(v.size() == 3);
    CHECK(v[0].counts == std::vector<int>{0, 2});
    CHECK(v[1].counts == std::vector<int>{1, 1});
    CHECK(v[2].counts == std::vector<int>{2, 0});

    CHECK(compositions_of(6, 2).size() == 7);
    CHECK(compositions_of(4, 3).size() == 15);
    CHECK(compositions_of(0, 4).size() == 1);
    for (const Composition& c : compositions_of(5, 3)) CHECK(c.total() == 5);
}

TEST_CASE("bit packing round trip") {
    SymbolString bits = SymbolString::parse("1100000010", 2);
    std::vector<uint8_t> bytes = pack_bits(bits);
    REQUIRE(bytes.size() == 2);
    CHECK(bytes[0] == 0xc0);
    CHECK(bytes[1] == 0x80);
    CHECK(unpack_bits(bytes, bits.size()) == bits);

    CHECK(pack_bits(SymbolString(2, {})).empty());
    CHECK(unpack_bits({}, 0).size() == 0);
    CHECK(pack_bits(SymbolString::parse("11", 2)) == std::vector<uint8_t>{0xc0});
    for (size_t n = 0; n <= 20; ++n) {
        std::vector<uint8_t> raw;
        for (size_t i = 0; i < n; ++i)
            raw.push_back(static_cast<uint8_t>((i * 7 + n) % 2));
        SymbolString s(2, std::move(raw));
        CHECK(unpack_bits(pack_bits(s), n) == s);
    }
    CHECK_THROWS_AS(pack_bits(SymbolString::parse("012", 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(unpack_bits({0xff}, 9), std::invalid_argument);
}
