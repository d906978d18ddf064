#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace randext {

// Thrown when a requested computation exceeds the configured desk-scale caps.
struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& what) : std::runtime_error(what) {}
};

struct unknown_scheme_error : std::runtime_error {
    explicit unknown_scheme_error(const std::string& name)
        : std::runtime_error("unknown scheme: " + name) {}
};

// Exact class sizes are multinomial coefficients; 128 bits cover every n the
// caps allow.  Overflow is detected, never wrapped.
using BigCount = unsigned __int128;

std::string to_string(BigCount v);

// Symbols print as 0-9 then a-z; -1 for characters outside that range.
char digit_to_char(int digit);
int char_to_digit(char c);

// Probability vector over a finite alphabet.  Entries lie in [0,1] and sum to
// 1 within 1e-12.
struct Distribution {
    std::vector<double> probs;

    Distribution() = default;
    explicit Distribution(std::vector<double> p);
    static Distribution bernoulli(double p);  // <p, 1-p>
    static Distribution uniform(int m);

    int size() const { return static_cast<int>(probs.size()); }
    double operator[](int i) const { return probs[static_cast<size_t>(i)]; }
};

// Finite string over the alphabet {0, ..., alphabet_size-1}; holds alphabets
// up to 256.
struct SymbolString {
    int alphabet_size = 2;
    std::vector<uint8_t> symbols;

    SymbolString() = default;
    SymbolString(int alphabet, std::vector<uint8_t> syms);
    static SymbolString parse(const std::string& digits, int alphabet_size);

    std::string str() const;  // one character per symbol
    size_t size() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }
    uint8_t operator[](size_t i) const { return symbols[i]; }
    bool operator==(const SymbolString& o) const = default;
};

// Symbol counts (n0, ..., n_{m-1}); all strings with these counts form one
// equiprobable class under any i.i.d. source.
struct Composition {
    std::vector<int> counts;

    Composition() = default;
    explicit Composition(std::vector<int> c) : counts(std::move(c)) {}
    int size() const { return static_cast<int>(counts.size()); }
    int total() const;
    std::string str() const;  // "4,2" style
    bool operator==(const Composition& o) const = default;
    bool operator<(const Composition& o) const { return counts < o.counts; }
};

// Multiset of output strings (digit characters), string -> multiplicity.
using OutputMultiset = std::map<std::string, long long>;

Composition composition_of(const SymbolString& x);

// Exact multinomial n! / (n0! n1! ...).  Throws cap_error beyond n = 170 and
// overflow_error if an intermediate product exceeds 128 bits.
BigCount class_size(const Composition& c);

// Probability of one string of the class: prod p_i^{n_i}.
double class_probability(const Composition& c, const Distribution& d);

// Visit every string of the class in lexicographic order.
void for_each_in_class(const Composition& c,
                       const std::function<void(const SymbolString&)>& fn);

// Materialized variant; throws cap_error past max_results.
std::vector<SymbolString> enumerate_class(const Composition& c,
                                          uint64_t max_results = 10'000'000);

// True when, for every length present, all output_alphabet^L strings of that
// length occur with one common multiplicity.
bool is_extracting_multiset(const OutputMultiset& ms, int output_alphabet);

// All compositions of n over m symbols, ordered lexicographically by counts.
std::vector<Composition> compositions_of(int n, int m);

// Pack a bit string 8 bits per byte, most significant bit first; the last
// byte is zero-padded.
std::vector<uint8_t> pack_bits(const SymbolString& bits);

// Recover the first bit_count bits.
SymbolString unpack_bits(const std::vector<uint8_t>& bytes, size_t bit_count);

}  // namespace randext
