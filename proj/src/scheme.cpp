#include "randext/scheme.hpp"

#include <algorithm>

namespace randext {

void SourcePoly::add(const std::vector<int>& exponents, long long count) {
    terms[exponents] += count;
}

double SourcePoly::eval(const Distribution& d) const {
    double sum = 0.0;
    for (const auto& [expo, count] : terms) {
        if (static_cast<int>(expo.size()) != d.size())
            throw std::invalid_argument("exponent vector does not match distribution");
        double term = static_cast<double>(count);
        for (size_t i = 0; i < expo.size(); ++i)
            for (int e = 0; e < expo[i]; ++e) term *= d[static_cast<int>(i)];
        sum += term;
    }
    return sum;
}

Scheme compile_scheme(BinarizationTree tree, int output_base, std::string name,
                      std::vector<std::string> stream_names,
                      bool drop_oversized_streams) {
    if (output_base < 2)
        throw std::invalid_argument("output base must be at least 2");
    if (tree.block_len < 2)
        throw std::invalid_argument("block length must be at least 2");

    Scheme s;
    s.name = std::move(name);
    s.m_src = tree.m_src;
    s.block_len = tree.block_len;
    s.output_base = output_base;

    auto monomial = [&](int sym) {
        std::vector<int> e(static_cast<size_t>(tree.m_src), 0);
        for (char c : tree.leaf_labels[static_cast<size_t>(sym)])
            e[static_cast<size_t>(char_to_digit(c))]++;
        return e;
    };

    for (size_t k = 0; k < tree.components.size(); ++k) {
        const ComponentInfo& ci = tree.components[k];
        if (ci.role == TreeNode::Kind::Output) {
            int digits = 0;
            long long pw = 1;
            while (pw < ci.degree) {
                pw *= output_base;
                ++digits;
            }
            if (pw != ci.degree)
                throw std::invalid_argument(
                    "output node " + std::to_string(k + 1) + " has degree " +
                    std::to_string(ci.degree) + ", not a power of base " +
                    std::to_string(output_base));
            OutputPart op;
            op.component = static_cast<int>(k);
            op.digits = digits;
            for (int sym : ci.support) op.weight.add(monomial(sym));
            s.outputs.push_back(std::move(op));
        } else {
            if (ci.degree > tree.m_src) {
                if (!drop_oversized_streams)
                    throw std::invalid_argument(
                        "recursion node " + std::to_string(k + 1) + " has degree " +
                        std::to_string(ci.degree) + ", above the source alphabet " +
                        std::to_string(tree.m_src));
                s.notes.push_back("dropped recursion stream at component " +
                                  std::to_string(k + 1) + " (degree " +
                                  std::to_string(ci.degree) + ")");
                continue;
            }
            StreamPart sp;
            sp.component = static_cast<int>(k);
            for (int sym : ci.support) sp.weight.add(monomial(sym));
            sp.branch_weight.resize(static_cast<size_t>(ci.degree));
            for (int i = 0; i < ci.degree; ++i)
                for (int sym : ci.branch_support[static_cast<size_t>(i)])
                    sp.branch_weight[static_cast<size_t>(i)].add(monomial(sym));
            s.streams.push_back(std::move(sp));
        }
    }

    if (!stream_names.empty()) {
        if (stream_names.size() != s.streams.size())
            throw std::invalid_argument(
                "expected " + std::to_string(s.streams.size()) +
                " stream names, got " + std::to_string(stream_names.size()));
        for (size_t j = 0; j < s.streams.size(); ++j)
            s.streams[j].name = std::move(stream_names[j]);
    } else {
        for (size_t j = 0; j < s.streams.size(); ++j)
            s.streams[j].name = "s" + std::to_string(j + 1);
    }

    s.base_digits.assign(static_cast<size_t>(tree.leaf_count), {});
    for (const OutputPart& op : s.outputs) {
        const ComponentInfo& ci = tree.components[static_cast<size_t>(op.component)];
        for (int sym = 0; sym < tree.leaf_count; ++sym) {
            int br = ci.branch_of[static_cast<size_t>(sym)];
            if (br < 0) continue;
            auto& digits = s.base_digits[static_cast<size_t>(sym)];
            for (int i = op.digits - 1; i >= 0; --i) {
                int value = br;
                for (int t = 0; t < i; ++t) value /= output_base;
                digits.push_back(static_cast<uint8_t>(value % output_base));
            }
        }
    }

    s.tree = std::move(tree);
    return s;
}

namespace {

void require_source_string(const Scheme& s, const SymbolString& x) {
    if (x.alphabet_size > s.m_src)
        throw std::invalid_argument("input alphabet " +
                                    std::to_string(x.alphabet_size) +
                                    " exceeds scheme source alphabet " +
                                    std::to_string(s.m_src));
}

struct Frame {
    std::vector<uint8_t> syms;
    int depth;
};

}  // namespace

SymbolString extract_truncated(const Scheme& s, const SymbolString& x,
                               int depth) {
    require_source_string(s, x);
    if (depth < 0) throw std::invalid_argument("depth must be >= 0");
    const size_t b = static_cast<size_t>(s.block_len);
    std::vector<uint8_t> out;
    std::vector<Frame> stack;
    stack.push_back({x.symbols, depth});
    std::vector<int> blocks;
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.depth <= 0) continue;
        size_t nblocks = f.syms.size() / b;
        if (nblocks == 0) continue;
        blocks.resize(nblocks);
        for (size_t i = 0; i < nblocks; ++i) {
            int v = 0;
            for (size_t j = 0; j < b; ++j) v = v * s.m_src + f.syms[i * b + j];
            blocks[i] = v;
        }
        for (int sym : blocks) {
            const auto& digits = s.base_digits[static_cast<size_t>(sym)];
            out.insert(out.end(), digits.begin(), digits.end());
        }
        if (f.depth == 1 || s.streams.empty()) continue;
        std::vector<std::vector<uint8_t>> next(s.streams.size());
        for (size_t j = 0; j < s.streams.size(); ++j) {
            const auto& branch =
                s.tree.components[static_cast<size_t>(s.streams[j].component)]
                    .branch_of;
            auto& stream = next[j];
            for (int sym : blocks) {
                int br = branch[static_cast<size_t>(sym)];
                if (br >= 0) stream.push_back(static_cast<uint8_t>(br));
            }
        }
        for (size_t j = next.size(); j-- > 0;)
            stack.push_back({std::move(next[j]), f.depth - 1});
    }
    return SymbolString(s.output_base, std::move(out));
}

SymbolString extract(const Scheme& s, const SymbolString& x) {
    // Stream lengths shrink by the block factor per level, so 64 levels
    // exceed any input that fits in memory.
    return extract_truncated(s, x, 64);
}

Distribution block_distribution(const Scheme& s, const Distribution& d) {
    if (d.size() != s.m_src)
        throw std::invalid_argument("distribution size does not match source alphabet");
    std::vector<double> probs(static_cast<size_t>(s.tree.leaf_count), 1.0);
    for (int sym = 0; sym < s.tree.leaf_count; ++sym)
        for (char c : s.tree.leaf_labels[static_cast<size_t>(sym)])
            probs[static_cast<size_t>(sym)] *= d[char_to_digit(c)];
    return Distribution(std::move(probs));
}

Scheme with_recursion_plan(const Scheme& s, const std::vector<int>& kept_streams) {
    std::vector<std::string> names;
    for (int j : kept_streams) {
        if (j < 0 || j >= static_cast<int>(s.streams.size()))
            throw std::invalid_argument("stream position out of range");
        names.push_back(s.streams[static_cast<size_t>(j)].name);
    }
    Scheme out = compile_scheme(parse_tree(serialize_tree(s.tree)), s.output_base,
                                s.name, {}, true);
    std::vector<StreamPart> kept;
    for (int j : kept_streams)
        kept.push_back(std::move(out.streams[static_cast<size_t>(j)]));
    for (size_t j = 0; j < kept.size(); ++j) kept[j].name = names[j];
    out.streams = std::move(kept);
    return out;
}

namespace {

// Pairwise maps of the two-level unrolling.
std::vector<uint8_t> even_prefix(const SymbolString& x) {
    std::vector<uint8_t> v(x.symbols.begin(),
                           x.symbols.begin() +
                               static_cast<ptrdiff_t>(x.size() - x.size() % 2));
    return v;
}

SymbolString pair_base(const std::vector<uint8_t>& y) {
    std::vector<uint8_t> out;
    for (size_t i = 0; i + 1 < y.size(); i += 2) {
        if (y[i] == 0 && y[i + 1] == 1) out.push_back(0);
        if (y[i] == 1 && y[i + 1] == 0) out.push_back(1);
    }
    return SymbolString(2, std::move(out));
}

std::vector<uint8_t> pair_kinds(const std::vector<uint8_t>& y) {
    std::vector<uint8_t> out;
    for (size_t i = 0; i + 1 < y.size(); i += 2)
        out.push_back(y[i] == y[i + 1] ? 0 : 1);
    return out;
}

std::vector<uint8_t> equal_pair_bits(const std::vector<uint8_t>& y) {
    std::vector<uint8_t> out;
    for (size_t i = 0; i + 1 < y.size(); i += 2)
        if (y[i] == y[i + 1]) out.push_back(y[i]);
    return out;
}

void double_unrolled_rec(std::vector<uint8_t> y, std::vector<uint8_t>& out) {
    if (y.size() % 2) y.pop_back();
    if (y.empty()) return;
    auto append = [&](const SymbolString& s) {
        out.insert(out.end(), s.symbols.begin(), s.symbols.end());
    };
    std::vector<uint8_t> u = pair_kinds(y);
    std::vector<uint8_t> v = equal_pair_bits(y);
    append(pair_base(y));
    append(pair_base(u));
    append(pair_base(v));
    double_unrolled_rec(pair_kinds(u), out);
    double_unrolled_rec(equal_pair_bits(u), out);
    double_unrolled_rec(pair_kinds(v), out);
    double_unrolled_rec(equal_pair_bits(v), out);
}

}  // namespace

SymbolString double_unrolled_peres2(const SymbolString& x) {
    if (x.alphabet_size != 2)
        throw std::invalid_argument("binary input required");
    std::vector<uint8_t> out;
    double_unrolled_rec(even_prefix(x), out);
    return SymbolString(2, std::move(out));
}

}  // namespace randext
