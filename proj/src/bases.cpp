#include "randext/bases.hpp"

#include <algorithm>

namespace randext {

namespace {

void require_binary(const SymbolString& x) {
    if (x.alphabet_size != 2)
        throw std::invalid_argument("binary input required");
}

}  // namespace

SymbolString von_neumann(const SymbolString& x) {
    require_binary(x);
    std::vector<uint8_t> out;
    out.reserve(x.size() / 2);
    for (size_t i = 0; i + 1 < x.size(); i += 2) {
        if (x[i] == 0 && x[i + 1] == 1)
            out.push_back(0);
        else if (x[i] == 1 && x[i + 1] == 0)
            out.push_back(1);
    }
    return SymbolString(2, std::move(out));
}

uint64_t binomial_u64(int n, int k) {
    if (n < 0 || n > 64 || k < 0 || k > n)
        throw std::invalid_argument("binomial needs 0 <= k <= n <= 64");
    // Pascal row; every entry of row n <= 64 fits in 64 bits.
    std::vector<uint64_t> row(static_cast<size_t>(n) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j >= 1; --j) row[static_cast<size_t>(j)] += row[static_cast<size_t>(j - 1)];
    return row[static_cast<size_t>(k)];
}

uint64_t class_rank(const SymbolString& x) {
    require_binary(x);
    int n = static_cast<int>(x.size());
    if (n > 64) throw std::invalid_argument("class_rank needs length <= 64");
    int ones = 0;
    for (uint8_t s : x.symbols) ones += s;
    uint64_t rank = 0;
    for (int i = 0; i < n; ++i) {
        if (x[static_cast<size_t>(i)] == 1) {
            // Strings with 0 here and the remaining ones placed later.
            if (ones <= n - 1 - i) rank += binomial_u64(n - 1 - i, ones);
            --ones;
        }
    }
    return rank;
}

SymbolString elias(const SymbolString& x) {
    require_binary(x);
    int n = static_cast<int>(x.size());
    if (n < 2 || n > 24)
        throw std::invalid_argument("block length must be in [2, 24]");
    int ones = 0;
    for (uint8_t s : x.symbols) ones += s;
    uint64_t size = binomial_u64(n, ones);
    uint64_t rank = class_rank(x);
    for (int a = 63; a >= 0; --a) {
        if (!((size >> a) & 1)) continue;
        uint64_t chunk = uint64_t(1) << a;
        if (rank < chunk) {
            std::vector<uint8_t> bits(static_cast<size_t>(a));
            for (int i = 0; i < a; ++i)
                bits[static_cast<size_t>(i)] = (rank >> (a - 1 - i)) & 1;
            return SymbolString(2, std::move(bits));
        }
        rank -= chunk;
    }
    throw std::logic_error("rank outside class");
}

bool is_prime(int m) {
    if (m < 2) return false;
    for (int d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

std::vector<SymbolString> rotation_orbit_reps(int m) {
    if (m < 2) throw std::invalid_argument("length must be at least 2");
    if (m > 20) throw cap_error("orbit enumeration limited to length 20");
    std::vector<SymbolString> reps;
    uint32_t mask = (uint32_t(1) << m) - 1;
    for (uint32_t v = 1; v < mask; ++v) {
        // Right rotation of the bit pattern (low bit is the last symbol).
        bool minimal = true;
        uint32_t r = v;
        for (int k = 1; k < m; ++k) {
            r = ((r & 1) << (m - 1)) | (r >> 1);
            if (r < v) {
                minimal = false;
                break;
            }
        }
        if (!minimal) continue;
        std::vector<uint8_t> bits(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i)
            bits[static_cast<size_t>(i)] = (v >> (m - 1 - i)) & 1;
        reps.emplace_back(2, std::move(bits));
    }
    return reps;
}

int dijkstra_base(const SymbolString& x) {
    require_binary(x);
    int m = static_cast<int>(x.size());
    if (!is_prime(m)) throw std::invalid_argument("block length must be prime");
    bool constant = true;
    for (uint8_t s : x.symbols)
        if (s != x[0]) constant = false;
    if (constant) return -1;

    std::vector<uint8_t> cur = x.symbols;
    std::vector<uint8_t> best = cur;
    int best_k = 0;
    for (int k = 1; k < m; ++k) {
        std::rotate(cur.rbegin(), cur.rbegin() + 1, cur.rend());
        if (cur < best) {
            best = cur;
            best_k = k;
        }
    }
    return best_k;
}

}  // namespace randext
