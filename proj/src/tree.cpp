#include "randext/tree.hpp"

#include <algorithm>
#include <cmath>

namespace randext {

namespace {

struct Token {
    enum Kind { LParen, RParen, Atom, End } kind = End;
    std::string text;
    int line = 1;
    int col = 1;
};

[[noreturn]] void fail_at(int line, int col, const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(line) + ", col " +
                                std::to_string(col) + ": " + msg);
}

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1;
    int col = 1;
    bool has_cached = false;
    Token cached;

    explicit Lexer(const std::string& s) : src(s) {}

    void advance() {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    Token lex() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '#') {
                while (pos < src.size() && src[pos] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
        Token t;
        t.line = line;
        t.col = col;
        if (pos >= src.size()) {
            t.kind = Token::End;
            return t;
        }
        char c = src[pos];
        if (c == '(') {
            advance();
            t.kind = Token::LParen;
            return t;
        }
        if (c == ')') {
            advance();
            t.kind = Token::RParen;
            return t;
        }
        t.kind = Token::Atom;
        while (pos < src.size()) {
            char a = src[pos];
            if (a == '(' || a == ')' || a == '#' || a == ' ' || a == '\t' ||
                a == '\r' || a == '\n')
                break;
            t.text.push_back(a);
            advance();
        }
        return t;
    }

    Token next() {
        if (has_cached) {
            has_cached = false;
            return cached;
        }
        return lex();
    }

    const Token& peek() {
        if (!has_cached) {
            cached = lex();
            has_cached = true;
        }
        return cached;
    }
};

std::unique_ptr<TreeNode> parse_node(Lexer& lx) {
    Token open = lx.next();
    if (open.kind != Token::LParen)
        fail_at(open.line, open.col, "expected '('");
    Token role = lx.next();
    if (role.kind != Token::Atom)
        fail_at(role.line, role.col, "expected node role 'L', 'O' or 'R'");

    auto node = std::make_unique<TreeNode>();
    node->line = open.line;
    node->col = open.col;

    if (role.text == "L") {
        Token lab = lx.next();
        if (lab.kind != Token::Atom)
            fail_at(lab.line, lab.col, "expected leaf label");
        node->kind = TreeNode::Kind::Leaf;
        node->label = lab.text;
        Token close = lx.next();
        if (close.kind != Token::RParen)
            fail_at(close.line, close.col, "expected ')' after leaf label");
        return node;
    }
    if (role.text != "O" && role.text != "R")
        fail_at(role.line, role.col, "unknown node role '" + role.text + "'");
    node->kind =
        role.text == "O" ? TreeNode::Kind::Output : TreeNode::Kind::Recurse;
    while (true) {
        const Token& p = lx.peek();
        if (p.kind == Token::RParen) {
            lx.next();
            break;
        }
        if (p.kind == Token::End)
            fail_at(p.line, p.col, "unexpected end of input, missing ')'");
        node->children.push_back(parse_node(lx));
    }
    if (node->children.size() < 2)
        fail_at(open.line, open.col, "internal node needs at least two children");
    return node;
}

void collect_leaves(TreeNode* n, std::vector<TreeNode*>& out) {
    if (n->is_leaf()) {
        out.push_back(n);
        return;
    }
    for (auto& ch : n->children) collect_leaves(ch.get(), out);
}

// Fills components in pre-order; returns sorted block symbols of the subtree.
std::vector<int> build_components(const TreeNode* n,
                                  std::vector<ComponentInfo>& comps,
                                  int leaf_count) {
    if (n->is_leaf()) return {n->symbol};
    size_t my_index = comps.size();
    comps.emplace_back();
    std::vector<std::vector<int>> child_syms;
    child_syms.reserve(n->children.size());
    for (auto& ch : n->children)
        child_syms.push_back(build_components(ch.get(), comps, leaf_count));

    ComponentInfo& ci = comps[my_index];
    ci.node = n;
    ci.role = n->kind;
    ci.degree = static_cast<int>(n->children.size());
    ci.branch_of.assign(static_cast<size_t>(leaf_count), -1);
    for (size_t i = 0; i < child_syms.size(); ++i) {
        for (int s : child_syms[i]) {
            ci.branch_of[static_cast<size_t>(s)] = static_cast<int>(i);
            ci.support.push_back(s);
        }
    }
    std::sort(ci.support.begin(), ci.support.end());
    ci.branch_support = std::move(child_syms);
    return ci.support;
}

void serialize_node(const TreeNode* n, std::string& out) {
    if (n->is_leaf()) {
        out += "(L ";
        out += n->label;
        out += ')';
        return;
    }
    out += n->kind == TreeNode::Kind::Output ? "(O" : "(R";
    for (const auto& ch : n->children) {
        out += ' ';
        serialize_node(ch.get(), out);
    }
    out += ')';
}

const ComponentInfo& component_at(const BinarizationTree& tree, int component) {
    if (component < 0 ||
        component >= static_cast<int>(tree.components.size()))
        throw std::invalid_argument("component index out of range");
    return tree.components[static_cast<size_t>(component)];
}

// Branch probability masses at a component; their sum is P(node).
std::vector<double> branch_masses(const ComponentInfo& ci,
                                  const Distribution& block_dist) {
    std::vector<double> mass(static_cast<size_t>(ci.degree), 0.0);
    for (int i = 0; i < ci.degree; ++i)
        for (int s : ci.branch_support[static_cast<size_t>(i)])
            mass[static_cast<size_t>(i)] += block_dist[s];
    return mass;
}

// Block symbols of a source string (big-endian digit value per block).
std::vector<int> to_block_symbols(const BinarizationTree& tree,
                                  const SymbolString& x) {
    if (x.alphabet_size != tree.m_src)
        throw std::invalid_argument("input alphabet " +
                                    std::to_string(x.alphabet_size) +
                                    " does not match source alphabet " +
                                    std::to_string(tree.m_src));
    size_t b = static_cast<size_t>(tree.block_len);
    if (x.size() % b != 0)
        throw std::invalid_argument("input length " + std::to_string(x.size()) +
                                    " is not a multiple of block length " +
                                    std::to_string(tree.block_len));
    std::vector<int> blocks;
    blocks.reserve(x.size() / b);
    for (size_t i = 0; i < x.size(); i += b) {
        int v = 0;
        for (size_t j = 0; j < b; ++j) v = v * tree.m_src + x[i + j];
        blocks.push_back(v);
    }
    return blocks;
}

SymbolString apply_to_blocks(const ComponentInfo& ci,
                             const std::vector<int>& blocks) {
    std::vector<uint8_t> out;
    out.reserve(blocks.size());
    for (int s : blocks) {
        int b = ci.branch_of[static_cast<size_t>(s)];
        if (b >= 0) out.push_back(static_cast<uint8_t>(b));
    }
    return SymbolString(ci.degree, std::move(out));
}

}  // namespace

BinarizationTree parse_tree(const std::string& text) {
    Lexer lx(text);
    BinarizationTree tree;
    tree.root = parse_node(lx);
    Token tail = lx.next();
    if (tail.kind != Token::End)
        fail_at(tail.line, tail.col, "trailing input after tree");
    if (tree.root->is_leaf())
        fail_at(tree.root->line, tree.root->col, "root must be an internal node");

    std::vector<TreeNode*> leaves;
    collect_leaves(tree.root.get(), leaves);

    int max_digit = 0;
    size_t block_len = leaves.front()->label.size();
    for (TreeNode* leaf : leaves) {
        if (leaf->label.empty())
            fail_at(leaf->line, leaf->col, "empty leaf label");
        if (leaf->label.size() != block_len)
            fail_at(leaf->line, leaf->col,
                    "leaf labels must share one length (expected " +
                        std::to_string(block_len) + ", got " +
                        std::to_string(leaf->label.size()) + ")");
        for (char c : leaf->label) {
            int d = char_to_digit(c);
            if (d < 0)
                fail_at(leaf->line, leaf->col,
                        std::string("leaf label contains invalid character '") +
                            c + "'");
            max_digit = std::max(max_digit, d);
        }
    }
    tree.m_src = std::max(max_digit + 1, 2);
    tree.block_len = static_cast<int>(block_len);

    long long count = 1;
    for (size_t i = 0; i < block_len; ++i) {
        count *= tree.m_src;
        if (count > (1 << 20))
            throw cap_error("block alphabet larger than 2^20");
    }
    tree.leaf_count = static_cast<int>(count);
    if (static_cast<long long>(leaves.size()) != count)
        fail_at(tree.root->line, tree.root->col,
                "expected one leaf per block: " + std::to_string(count) +
                    " blocks over alphabet " + std::to_string(tree.m_src) +
                    ", found " + std::to_string(leaves.size()) + " leaves");

    tree.leaf_labels.assign(static_cast<size_t>(count), std::string());
    for (TreeNode* leaf : leaves) {
        long long sym = 0;
        for (char c : leaf->label) sym = sym * tree.m_src + char_to_digit(c);
        if (!tree.leaf_labels[static_cast<size_t>(sym)].empty())
            fail_at(leaf->line, leaf->col,
                    "duplicate leaf label '" + leaf->label + "'");
        tree.leaf_labels[static_cast<size_t>(sym)] = leaf->label;
        leaf->symbol = static_cast<int>(sym);
    }

    build_components(tree.root.get(), tree.components, tree.leaf_count);
    return tree;
}

std::string serialize_tree(const BinarizationTree& tree) {
    std::string out;
    serialize_node(tree.root.get(), out);
    return out;
}

SymbolString apply_component(const BinarizationTree& tree, int component,
                             const SymbolString& x) {
    const ComponentInfo& ci = component_at(tree, component);
    return apply_to_blocks(ci, to_block_symbols(tree, x));
}

Composition image_composition(const BinarizationTree& tree, int component,
                              const Composition& c) {
    const ComponentInfo& ci = component_at(tree, component);
    if (c.size() != tree.leaf_count)
        throw std::invalid_argument("composition size does not match block count");
    std::vector<int> counts(static_cast<size_t>(ci.degree), 0);
    for (int s = 0; s < c.size(); ++s) {
        int b = ci.branch_of[static_cast<size_t>(s)];
        if (b >= 0) counts[static_cast<size_t>(b)] += c.counts[static_cast<size_t>(s)];
    }
    return Composition(std::move(counts));
}

std::vector<SymbolString> structure_map(const BinarizationTree& tree,
                                        const SymbolString& x) {
    std::vector<int> blocks = to_block_symbols(tree, x);
    std::vector<SymbolString> parts;
    parts.reserve(tree.components.size());
    for (const ComponentInfo& ci : tree.components)
        parts.push_back(apply_to_blocks(ci, blocks));
    return parts;
}

namespace {

struct InverseBuilder {
    const std::vector<SymbolString>& parts;
    size_t next_component = 0;

    std::vector<int> build(const TreeNode* n, size_t length) {
        if (n->is_leaf()) return std::vector<int>(length, n->symbol);
        size_t k = next_component++;
        const SymbolString& part = parts[k];
        int degree = static_cast<int>(n->children.size());
        if (part.alphabet_size != degree)
            throw std::invalid_argument(
                "part " + std::to_string(k + 1) + " alphabet " +
                std::to_string(part.alphabet_size) +
                " does not match node degree " + std::to_string(degree));
        if (part.size() != length)
            throw std::invalid_argument(
                "part " + std::to_string(k + 1) + " has length " +
                std::to_string(part.size()) + ", expected " +
                std::to_string(length));
        std::vector<size_t> need(n->children.size(), 0);
        for (uint8_t d : part.symbols) need[d]++;
        std::vector<std::vector<int>> child_seq;
        child_seq.reserve(n->children.size());
        for (size_t i = 0; i < n->children.size(); ++i)
            child_seq.push_back(build(n->children[i].get(), need[i]));
        std::vector<int> out;
        out.reserve(length);
        std::vector<size_t> cursor(n->children.size(), 0);
        for (uint8_t d : part.symbols) out.push_back(child_seq[d][cursor[d]++]);
        return out;
    }
};

}  // namespace

SymbolString structure_inverse(const BinarizationTree& tree,
                               const Composition& c,
                               const std::vector<SymbolString>& parts) {
    if (parts.size() != tree.components.size())
        throw std::invalid_argument("expected " +
                                    std::to_string(tree.components.size()) +
                                    " parts, got " + std::to_string(parts.size()));
    if (c.size() != tree.leaf_count)
        throw std::invalid_argument("composition size does not match block count");
    for (int v : c.counts)
        if (v < 0) throw std::invalid_argument("negative count in composition");

    InverseBuilder builder{parts, 0};
    std::vector<int> blocks =
        builder.build(tree.root.get(), static_cast<size_t>(c.total()));
    std::vector<int> counts(static_cast<size_t>(tree.leaf_count), 0);
    for (int s : blocks) counts[static_cast<size_t>(s)]++;
    if (counts != c.counts)
        throw std::invalid_argument("parts are inconsistent with the class");

    std::vector<uint8_t> digits;
    digits.reserve(blocks.size() * static_cast<size_t>(tree.block_len));
    for (int s : blocks) {
        size_t at = digits.size();
        for (int j = 0; j < tree.block_len; ++j) {
            digits.push_back(static_cast<uint8_t>(s % tree.m_src));
            s /= tree.m_src;
        }
        std::reverse(digits.begin() + static_cast<ptrdiff_t>(at), digits.end());
    }
    return SymbolString(tree.m_src, std::move(digits));
}

SymbolString interleave_streams(const SymbolString& selector,
                                const std::vector<SymbolString>& streams) {
    if (static_cast<int>(streams.size()) != selector.alphabet_size)
        throw std::invalid_argument("need one stream per selector symbol");
    int out_alphabet = streams.front().alphabet_size;
    for (const SymbolString& s : streams)
        if (s.alphabet_size != out_alphabet)
            throw std::invalid_argument("streams must share one alphabet");
    std::vector<size_t> cursor(streams.size(), 0);
    std::vector<uint8_t> out;
    out.reserve(selector.size());
    for (uint8_t d : selector.symbols) {
        if (cursor[d] >= streams[d].size())
            throw std::invalid_argument("stream " + std::to_string(int(d)) +
                                        " too short for selector");
        out.push_back(streams[d][cursor[d]++]);
    }
    for (size_t i = 0; i < streams.size(); ++i)
        if (cursor[i] != streams[i].size())
            throw std::invalid_argument("stream " + std::to_string(i) +
                                        " not fully consumed");
    return SymbolString(out_alphabet, std::move(out));
}

double node_probability(const BinarizationTree& tree, int component,
                        const Distribution& block_dist) {
    const ComponentInfo& ci = component_at(tree, component);
    if (block_dist.size() != tree.leaf_count)
        throw std::invalid_argument("distribution size does not match block count");
    double p = 0.0;
    for (int s : ci.support) p += block_dist[s];
    return p;
}

Distribution branching_distribution(const BinarizationTree& tree,
                                    int component,
                                    const Distribution& block_dist) {
    const ComponentInfo& ci = component_at(tree, component);
    if (block_dist.size() != tree.leaf_count)
        throw std::invalid_argument("distribution size does not match block count");
    std::vector<double> mass = branch_masses(ci, block_dist);
    double total = 0.0;
    for (double v : mass) total += v;
    if (total <= 0.0) throw std::domain_error("zero-probability node");
    for (double& v : mass) v /= total;
    return Distribution(std::move(mass));
}

double weighted_branching_entropy(const BinarizationTree& tree,
                                  const Distribution& block_dist) {
    if (block_dist.size() != tree.leaf_count)
        throw std::invalid_argument("distribution size does not match block count");
    double sum = 0.0;
    for (const ComponentInfo& ci : tree.components) {
        std::vector<double> mass = branch_masses(ci, block_dist);
        double total = 0.0;
        for (double v : mass) total += v;
        if (total <= 0.0) continue;
        double h = 0.0;
        for (double v : mass) {
            if (v <= 0.0) continue;
            double q = v / total;
            h -= q * std::log2(q);
        }
        sum += total * h;
    }
    return sum;
}

}  // namespace randext
