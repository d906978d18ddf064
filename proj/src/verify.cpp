#include "randext/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace randext {
namespace {

// Pick two output strings of one length whose multiplicities differ, or a
// missing string if every recorded one occurs equally often.
std::string diagnose_length(const std::vector<std::pair<std::string, long long>>& entries,
                            size_t len, int base) {
    for (size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].second != entries[0].second) {
            std::ostringstream os;
            os << "length " << len << " unbalanced: \"" << entries[0].first
               << "\" x" << entries[0].second << " vs \"" << entries[i].first
               << "\" x" << entries[i].second;
            return os.str();
        }
    }
    // Counts agree, so some string of this length never occurs.
    double full = std::pow(static_cast<double>(base), static_cast<double>(len));
    if (full <= 100000.0) {
        std::vector<int> digits(len, 0);
        while (true) {
            std::string cand;
            for (int d : digits) cand += digit_to_char(d);
            bool found = false;
            for (const auto& e : entries)
                if (e.first == cand) { found = true; break; }
            if (!found) {
                std::ostringstream os;
                os << "length " << len << " unbalanced: \"" << entries[0].first
                   << "\" x" << entries[0].second << " vs \"" << cand << "\" x0";
                return os.str();
            }
            size_t pos = len;
            while (pos > 0 && digits[pos - 1] == base - 1) digits[--pos] = 0;
            if (pos == 0) break;
            ++digits[pos - 1];
        }
    }
    std::ostringstream os;
    os << "length " << len << " covers " << entries.size() << " of "
       << full << " strings";
    return os.str();
}

std::string diagnose_multiset(const OutputMultiset& ms, int base) {
    std::map<size_t, std::vector<std::pair<std::string, long long>>> by_len;
    for (const auto& [str, count] : ms)
        if (count > 0) by_len[str.size()].emplace_back(str, count);
    for (const auto& [len, entries] : by_len) {
        if (len == 0) continue;
        double full = std::pow(static_cast<double>(base), static_cast<double>(len));
        bool balanced = static_cast<double>(entries.size()) == full;
        for (size_t i = 1; balanced && i < entries.size(); ++i)
            balanced = entries[i].second == entries[0].second;
        if (!balanced) return diagnose_length(entries, len, base);
    }
    return "unbalanced output multiset";
}

std::vector<double> leaf_probabilities(const BinarizationTree& t,
                                       const std::vector<double>& source) {
    std::vector<double> probs(t.leaf_labels.size(), 1.0);
    for (size_t sym = 0; sym < t.leaf_labels.size(); ++sym)
        for (char c : t.leaf_labels[sym])
            probs[sym] *= source[static_cast<size_t>(char_to_digit(c))];
    return probs;
}

std::vector<int> label_exponents(const std::string& label, int m) {
    std::vector<int> e(static_cast<size_t>(m), 0);
    for (char c : label) ++e[static_cast<size_t>(char_to_digit(c))];
    return e;
}

}  // namespace

std::vector<std::string> ExtractingReport::lines() const {
    std::vector<std::string> out;
    out.reserve(classes.size());
    for (const ClassCheck& c : classes) {
        std::string line = "COMPOSITION " + c.comp.str();
        line += c.ok ? " OK" : " FAIL " + c.detail;
        out.push_back(std::move(line));
    }
    return out;
}

ExtractingReport check_extracting(const Scheme& s, int max_symbols) {
    if (max_symbols < 0)
        throw std::invalid_argument("max_symbols must be nonnegative");
    if (max_symbols * std::log2(static_cast<double>(s.m_src)) > std::log2(1e7))
        throw cap_error("extracting check capped at 10^7 inputs");
    ExtractingReport report;
    report.scheme = s.name;
    report.max_symbols = max_symbols;
    for (int n = 0; n <= max_symbols; ++n) {
        for (const Composition& comp : compositions_of(n, s.m_src)) {
            ClassCheck check;
            check.comp = comp;
            check.size = class_size(comp);
            OutputMultiset ms;
            long long total = 0;
            for_each_in_class(comp, [&](const SymbolString& x) {
                SymbolString y = extract(s, x);
                total += static_cast<long long>(y.size());
                ++ms[y.str()];
            });
            check.total_digits = total;
            if (!is_extracting_multiset(ms, s.output_base)) {
                check.ok = false;
                check.detail = diagnose_multiset(ms, s.output_base);
                report.ok = false;
            }
            report.classes.push_back(std::move(check));
        }
    }
    return report;
}

bool check_uniform_outputs(const BinarizationTree& t, int grid_size,
                           uint64_t seed) {
    std::mt19937_64 gen(seed);
    for (int trial = 0; trial < grid_size; ++trial) {
        std::vector<double> source(static_cast<size_t>(t.m_src));
        double sum = 0.0;
        for (double& p : source) {
            double u = (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
            p = -std::log(u);
            sum += p;
        }
        for (double& p : source) p /= sum;
        std::vector<double> leaf = leaf_probabilities(t, source);
        for (const ComponentInfo& c : t.components) {
            if (c.role != TreeNode::Kind::Output) continue;
            double first = 0.0;
            for (int i = 0; i < c.degree; ++i) {
                double mass = 0.0;
                for (int sym : c.branch_support[static_cast<size_t>(i)])
                    mass += leaf[static_cast<size_t>(sym)];
                if (i == 0)
                    first = mass;
                else if (std::abs(mass - first) > 1e-9)
                    return false;
            }
        }
    }
    return true;
}

bool check_uniform_outputs_symbolic(const BinarizationTree& t) {
    for (const ComponentInfo& c : t.components) {
        if (c.role != TreeNode::Kind::Output) continue;
        std::map<std::vector<int>, long long> first;
        for (int i = 0; i < c.degree; ++i) {
            std::map<std::vector<int>, long long> poly;
            for (int sym : c.branch_support[static_cast<size_t>(i)])
                ++poly[label_exponents(t.leaf_labels[static_cast<size_t>(sym)],
                                       t.m_src)];
            if (i == 0)
                first = std::move(poly);
            else if (poly != first)
                return false;
        }
    }
    return true;
}

bool check_structure(const BinarizationTree& t, int n,
                     const std::vector<int>& active_symbols) {
    if (n < 0) throw std::invalid_argument("block count must be nonnegative");
    std::vector<int> active = active_symbols;
    if (active.empty())
        for (int i = 0; i < t.leaf_count; ++i) active.push_back(i);
    for (int sym : active)
        if (sym < 0 || sym >= t.leaf_count)
            throw std::invalid_argument("active symbol out of range");
    if (n * std::log2(static_cast<double>(active.size())) > std::log2(1e7))
        throw cap_error("structure check capped at 10^7 inputs");

    size_t total_comps = t.components.size();
    for (int len = 0; len <= n; ++len) {
        // Round-trip every string of len blocks over the active symbols.
        std::vector<size_t> odo(static_cast<size_t>(len), 0);
        while (true) {
            SymbolString x;
            x.alphabet_size = t.m_src;
            Composition comp;
            comp.counts.assign(static_cast<size_t>(t.leaf_count), 0);
            for (size_t idx : odo) {
                int sym = active[idx];
                ++comp.counts[static_cast<size_t>(sym)];
                for (char c : t.leaf_labels[static_cast<size_t>(sym)])
                    x.symbols.push_back(static_cast<uint8_t>(char_to_digit(c)));
            }
            std::vector<SymbolString> parts = structure_map(t, x);
            if (parts.size() != total_comps) return false;
            if (!(structure_inverse(t, comp, parts) == x)) return false;
            size_t pos = odo.size();
            while (pos > 0 && odo[pos - 1] == active.size() - 1) odo[--pos] = 0;
            if (pos == 0) break;
            ++odo[pos - 1];
        }

        // Class sizes must factor through the component images.
        for (const Composition& small : compositions_of(len, static_cast<int>(active.size()))) {
            Composition comp;
            comp.counts.assign(static_cast<size_t>(t.leaf_count), 0);
            for (size_t i = 0; i < active.size(); ++i)
                comp.counts[static_cast<size_t>(active[i])] = small.counts[i];
            BigCount lhs = class_size(comp);
            BigCount rhs = 1;
            for (size_t k = 0; k < total_comps; ++k)
                rhs *= class_size(image_composition(t, static_cast<int>(k), comp));
            if (lhs != rhs) return false;
        }
    }
    return true;
}

namespace {

struct GoldenColumn {
    const char* header;
    std::vector<int> comps;  // disjoint-support components shown as one column
};

struct GoldenTable {
    const char* scheme;
    std::vector<GoldenColumn> columns;
    std::vector<std::pair<const char*, std::vector<const char*>>> rows;
};

const std::vector<GoldenTable>& golden_data() {
    static const std::vector<GoldenTable> tables = {
        {"peres2",
         {{"base", {2}}, {"u", {0}}, {"v", {1}}},
         {
             {"00", {"-", "0", "0"}},
             {"01", {"0", "1", "-"}},
             {"10", {"1", "1", "-"}},
             {"11", {"-", "0", "1"}},
         }},
        {"peres3face",
         {{"base", {3, 4, 5}}, {"u", {0}}, {"v", {1}}, {"w", {2}}},
         {
             {"00", {"-", "0", "0", "-"}},
             {"01", {"0", "1", "-", "1"}},
             {"02", {"0", "1", "-", "2"}},
             {"10", {"1", "1", "-", "1"}},
             {"11", {"-", "0", "1", "-"}},
             {"12", {"0", "1", "-", "0"}},
             {"20", {"1", "1", "-", "2"}},
             {"21", {"1", "1", "-", "0"}},
             {"22", {"-", "0", "2", "-"}},
         }},
        {"peres4face",
         {{"base", {3, 4, 5, 6, 8, 9}},
          {"u", {0}},
          {"v", {1}},
          {"w1", {2}},
          {"w2", {7}}},
         {
             {"00", {"-", "0", "0", "-", "-"}},
             {"01", {"0", "1", "-", "0", "-"}},
             {"02", {"0", "1", "-", "1", "-"}},
             {"03", {"0", "1", "-", "2", "-"}},
             {"10", {"1", "1", "-", "0", "-"}},
             {"11", {"-", "0", "1", "-", "-"}},
             {"12", {"0", "1", "-", "3", "-"}},
             {"13", {"0", "2", "-", "-", "0"}},
             {"20", {"1", "1", "-", "1", "-"}},
             {"21", {"1", "1", "-", "3", "-"}},
             {"22", {"-", "0", "2", "-", "-"}},
             {"23", {"0", "2", "-", "-", "1"}},
             {"30", {"1", "1", "-", "2", "-"}},
             {"31", {"1", "2", "-", "-", "0"}},
             {"32", {"1", "2", "-", "-", "1"}},
             {"33", {"-", "0", "3", "-", "-"}},
         }},
        {"peres4face_alt",
         {{"base", {4, 5, 6, 7, 9, 10}},
          {"u", {0}},
          {"v", {1}},
          {"w1", {3}},
          {"w2", {8}}},
         {
             {"00", {"-", "0", "0", "-", "-"}},
             {"01", {"0", "1", "-", "0", "-"}},
             {"02", {"0", "1", "-", "1", "-"}},
             {"03", {"0", "1", "-", "2", "-"}},
             {"10", {"1", "1", "-", "0", "-"}},
             {"11", {"-", "0", "1", "-", "-"}},
             {"12", {"0", "1", "-", "3", "-"}},
             {"13", {"0", "1", "-", "-", "0"}},
             {"20", {"1", "1", "-", "1", "-"}},
             {"21", {"1", "1", "-", "3", "-"}},
             {"22", {"-", "0", "2", "-", "-"}},
             {"23", {"0", "1", "-", "-", "1"}},
             {"30", {"1", "1", "-", "2", "-"}},
             {"31", {"1", "1", "-", "-", "0"}},
             {"32", {"1", "1", "-", "-", "1"}},
             {"33", {"-", "0", "3", "-", "-"}},
         }},
        {"peres3bit",
         {{"u", {0}},
          {"v", {1}},
          {"v1", {2}},
          {"v2", {3}},
          {"base", {5, 6}},
          {"w", {4}}},
         {
             {"000", {"0", "0", "0", "-", "-", "-"}},
             {"001", {"1", "-", "-", "-", "0", "0"}},
             {"010", {"1", "-", "-", "-", "1", "0"}},
             {"011", {"1", "-", "-", "-", "0", "1"}},
             {"100", {"0", "1", "-", "0", "-", "-"}},
             {"101", {"1", "-", "-", "-", "1", "1"}},
             {"110", {"0", "1", "-", "1", "-", "-"}},
             {"111", {"0", "0", "1", "-", "-", "-"}},
         }},
        {"dijkstra3",
         {{"base", {3, 4}}, {"u", {0}}, {"v", {1}}, {"w", {2}}},
         {
             {"000", {"-", "0", "0", "-"}},
             {"001", {"0", "1", "-", "0"}},
             {"010", {"1", "1", "-", "0"}},
             {"011", {"0", "1", "-", "1"}},
             {"100", {"2", "1", "-", "0"}},
             {"101", {"2", "1", "-", "1"}},
             {"110", {"1", "1", "-", "1"}},
             {"111", {"-", "0", "1", "-"}},
         }},
    };
    return tables;
}

std::string engine_cell(const Scheme& s, const std::vector<int>& comps,
                        int block_symbol) {
    for (int ci : comps) {
        const ComponentInfo& c = s.tree.components[static_cast<size_t>(ci)];
        int branch = c.branch_of[static_cast<size_t>(block_symbol)];
        if (branch < 0) continue;
        // Output nodes emit base digits; recursion branch indices are plain
        // child numbers and may exceed the output base.
        const OutputPart* out = nullptr;
        for (const OutputPart& op : s.outputs)
            if (op.component == ci) out = &op;
        if (!out) return std::string(1, digit_to_char(branch));
        std::string cell(static_cast<size_t>(out->digits), '0');
        for (int i = out->digits - 1; i >= 0; --i) {
            cell[static_cast<size_t>(i)] = digit_to_char(branch % s.output_base);
            branch /= s.output_base;
        }
        return cell;
    }
    return "-";
}

}  // namespace

std::string GoldenReport::text() const {
    std::ostringstream os;
    os << "golden tables: " << cells_checked << " cells, "
       << mismatches.size() << " mismatches\n";
    for (const std::string& m : mismatches) os << "  " << m << "\n";
    return os.str();
}

GoldenReport golden_tables() {
    GoldenReport report;
    for (const GoldenTable& table : golden_data()) {
        Scheme s = builtin_scheme(table.scheme);
        for (const auto& [label, cells] : table.rows) {
            auto it = std::find(s.tree.leaf_labels.begin(),
                                s.tree.leaf_labels.end(), label);
            if (it == s.tree.leaf_labels.end()) {
                report.ok = false;
                report.mismatches.push_back(std::string(table.scheme) +
                                            ": no leaf " + label);
                continue;
            }
            int sym = static_cast<int>(it - s.tree.leaf_labels.begin());
            for (size_t col = 0; col < table.columns.size(); ++col) {
                std::string got = engine_cell(s, table.columns[col].comps, sym);
                ++report.cells_checked;
                if (got != cells[col]) {
                    report.ok = false;
                    report.mismatches.push_back(
                        std::string(table.scheme) + " row " + label + " col " +
                        table.columns[col].header + ": engine " + got +
                        ", table " + cells[col]);
                }
            }
        }
    }
    return report;
}

}  // namespace randext
