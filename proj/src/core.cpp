#include "randext/core.hpp"

#include <algorithm>
#include <cmath>

namespace randext {

std::string to_string(BigCount v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

char digit_to_char(int digit) {
    if (digit >= 0 && digit < 10) return static_cast<char>('0' + digit);
    if (digit >= 10 && digit < 36) return static_cast<char>('a' + digit - 10);
    return '?';
}

int char_to_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
}

Distribution::Distribution(std::vector<double> p) : probs(std::move(p)) {
    if (probs.size() < 2)
        throw std::invalid_argument("distribution needs at least 2 entries");
    double sum = 0.0;
    for (double v : probs) {
        if (!(v >= -1e-12) || !(v <= 1.0 + 1e-12))
            throw std::invalid_argument("distribution entry outside [0,1]");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("distribution entries must sum to 1");
}

Distribution Distribution::bernoulli(double p) {
    return Distribution({p, 1.0 - p});
}

Distribution Distribution::uniform(int m) {
    if (m < 2) throw std::invalid_argument("alphabet size must be >= 2");
    return Distribution(std::vector<double>(static_cast<size_t>(m), 1.0 / m));
}

SymbolString::SymbolString(int alphabet, std::vector<uint8_t> syms)
    : alphabet_size(alphabet), symbols(std::move(syms)) {
    if (alphabet < 2) throw std::invalid_argument("alphabet size must be >= 2");
    if (alphabet > 256)
        throw std::invalid_argument("symbol strings hold alphabets up to 256");
    for (uint8_t s : symbols)
        if (s >= alphabet)
            throw std::invalid_argument("symbol out of alphabet range");
}

SymbolString SymbolString::parse(const std::string& digits, int alphabet_size) {
    std::vector<uint8_t> syms;
    syms.reserve(digits.size());
    for (size_t i = 0; i < digits.size(); ++i) {
        int d = char_to_digit(digits[i]);
        if (d < 0 || d >= alphabet_size)
            throw std::invalid_argument("invalid symbol '" + std::string(1, digits[i]) +
                                        "' at position " + std::to_string(i));
        syms.push_back(static_cast<uint8_t>(d));
    }
    return SymbolString(alphabet_size, std::move(syms));
}

std::string SymbolString::str() const {
    std::string s;
    s.reserve(symbols.size());
    for (uint8_t v : symbols) s.push_back(digit_to_char(v));
    return s;
}

int Composition::total() const {
    int n = 0;
    for (int c : counts) n += c;
    return n;
}

std::string Composition::str() const {
    std::string s;
    for (size_t i = 0; i < counts.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(counts[i]);
    }
    return s;
}

Composition composition_of(const SymbolString& x) {
    std::vector<int> counts(static_cast<size_t>(x.alphabet_size), 0);
    for (uint8_t s : x.symbols) counts[s]++;
    return Composition(std::move(counts));
}

BigCount class_size(const Composition& c) {
    long long n = 0;
    for (int v : c.counts) {
        if (v < 0) throw std::invalid_argument("negative count in composition");
        n += v;
    }
    if (n > 170) throw cap_error("composition total " + std::to_string(n) + " beyond cap 170");

    // Running product of binomials C(cum, i) stays integral at every step.
    BigCount result = 1;
    long long cum = 0;
    for (int v : c.counts) {
        for (int i = 1; i <= v; ++i) {
            ++cum;
            BigCount next;
            if (__builtin_mul_overflow(result, static_cast<BigCount>(cum), &next))
                throw std::overflow_error("class size exceeds 128-bit range");
            result = next / static_cast<BigCount>(i);
        }
    }
    return result;
}

double class_probability(const Composition& c, const Distribution& d) {
    if (c.size() != d.size())
        throw std::invalid_argument("composition and distribution sizes differ");
    double p = 1.0;
    for (int i = 0; i < c.size(); ++i)
        p *= std::pow(d[i], c.counts[static_cast<size_t>(i)]);
    return p;
}

void for_each_in_class(const Composition& c,
                       const std::function<void(const SymbolString&)>& fn) {
    int m = c.size();
    if (m < 2) throw std::invalid_argument("composition needs at least 2 symbols");
    std::vector<uint8_t> syms;
    for (int s = 0; s < m; ++s)
        for (int i = 0; i < c.counts[static_cast<size_t>(s)]; ++i)
            syms.push_back(static_cast<uint8_t>(s));
    SymbolString x(m, syms);
    do {
        x.symbols = syms;
        fn(x);
    } while (std::next_permutation(syms.begin(), syms.end()));
}

std::vector<SymbolString> enumerate_class(const Composition& c, uint64_t max_results) {
    BigCount size = class_size(c);
    if (size > static_cast<BigCount>(max_results))
        throw cap_error("class enumeration limit exceeded (size " + to_string(size) + ")");
    std::vector<SymbolString> out;
    out.reserve(static_cast<size_t>(size));
    for_each_in_class(c, [&](const SymbolString& x) { out.push_back(x); });
    return out;
}

bool is_extracting_multiset(const OutputMultiset& ms, int output_alphabet) {
    if (output_alphabet < 2) throw std::invalid_argument("output alphabet must be >= 2");
    struct LengthStat {
        long long distinct = 0;
        long long min_count = 0;
        long long max_count = 0;
    };
    std::map<size_t, LengthStat> stats;
    long long total_entries = 0;
    for (const auto& [str, count] : ms) {
        if (count <= 0) continue;
        for (char ch : str) {
            int d = char_to_digit(ch);
            if (d < 0 || d >= output_alphabet) return false;
        }
        auto& st = stats[str.size()];
        if (st.distinct == 0) {
            st.min_count = st.max_count = count;
        } else {
            st.min_count = std::min(st.min_count, count);
            st.max_count = std::max(st.max_count, count);
        }
        st.distinct++;
        total_entries++;
    }
    for (const auto& [len, st] : stats) {
        if (st.min_count != st.max_count) return false;
        // All output_alphabet^len strings must be present.
        BigCount need = 1;
        for (size_t i = 0; i < len; ++i) {
            need *= static_cast<BigCount>(output_alphabet);
            if (need > static_cast<BigCount>(total_entries)) return false;
        }
        if (static_cast<BigCount>(st.distinct) != need) return false;
    }
    return true;
}

static void compositions_rec(int n, int m, std::vector<int>& cur,
                             std::vector<Composition>& out) {
    if (m == 1) {
        cur.push_back(n);
        out.push_back(Composition(cur));
        cur.pop_back();
        return;
    }
    for (int k = 0; k <= n; ++k) {
        cur.push_back(k);
        compositions_rec(n - k, m - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<Composition> compositions_of(int n, int m) {
    if (n < 0 || m < 2)
        throw std::invalid_argument("compositions_of needs n >= 0 and m >= 2");
    std::vector<Composition> out;
    std::vector<int> cur;
    compositions_rec(n, m, cur, out);
    return out;
}

std::vector<uint8_t> pack_bits(const SymbolString& bits) {
    if (bits.alphabet_size != 2)
        throw std::invalid_argument("pack_bits needs a binary string");
    std::vector<uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) bytes[i / 8] |= static_cast<uint8_t>(0x80u >> (i % 8));
    return bytes;
}

SymbolString unpack_bits(const std::vector<uint8_t>& bytes, size_t bit_count) {
    if (bit_count > bytes.size() * 8)
        throw std::invalid_argument("bit count exceeds the packed data");
    SymbolString out;
    out.alphabet_size = 2;
    out.symbols.reserve(bit_count);
    for (size_t i = 0; i < bit_count; ++i)
        out.symbols.push_back((bytes[i / 8] >> (7 - i % 8)) & 1);
    return out;
}

}  // namespace randext
