#pragma once

#include "randext/tree.hpp"

namespace randext {

// Multiset of source-symbol exponent vectors with integer multiplicities.
// With one monomial per supported block, evaluating at a source distribution
// gives the probability that a random block lands in the set.
struct SourcePoly {
    std::map<std::vector<int>, long long> terms;

    void add(const std::vector<int>& exponents, long long count = 1);
    double eval(const Distribution& d) const;
    bool operator==(const SourcePoly& o) const = default;
};

// Output node of the recursion: degree == output_base^digits, emits `digits`
// base digits per supported block.
struct OutputPart {
    int component = 0;  // index into the tree's pre-order component list
    int digits = 1;
    SourcePoly weight;
};

// Recurse node: its branch string is fed back into the same scheme.
struct StreamPart {
    int component = 0;
    std::string name;
    SourcePoly weight;
    std::vector<SourcePoly> branch_weight;  // one per child
};

struct Scheme {
    std::string name;
    int m_src = 2;
    int block_len = 2;
    int output_base = 2;
    BinarizationTree tree;
    std::vector<OutputPart> outputs;  // pre-order
    std::vector<StreamPart> streams;  // pre-order
    std::vector<std::string> notes;   // e.g. dropped recursion streams

    // Concatenated base digits each block emits (all output parts, in order).
    std::vector<std::vector<uint8_t>> base_digits;
};

// Structural checks: block length >= 2, every Output degree a power of the
// output base.  Recurse nodes of degree above the source alphabet size
// cannot feed the scheme back; with drop_oversized_streams they are skipped
// with a note, otherwise they are an error.  stream_names, when given, must
// cover exactly the kept streams (default names s1, s2, ...).
Scheme compile_scheme(BinarizationTree tree, int output_base, std::string name,
                      std::vector<std::string> stream_names = {},
                      bool drop_oversized_streams = false);

// Base digits of each block, then each auxiliary stream extracted with the
// same scheme, depth-first in stream order; trailing |x| mod b symbols are
// dropped at every level.  x may use a smaller alphabet than the scheme's.
SymbolString extract(const Scheme& s, const SymbolString& x);

// As extract, but recursion stops after `depth` levels; depth 0 emits
// nothing, depth 1 emits the base part only.
SymbolString extract_truncated(const Scheme& s, const SymbolString& x,
                               int depth);

// Distribution of block symbols when each source symbol is drawn from d.
Distribution block_distribution(const Scheme& s, const Distribution& d);

// Copy of s keeping only the streams at the given positions (order kept).
Scheme with_recursion_plan(const Scheme& s, const std::vector<int>& kept_streams);

// Two-level unrolling of the pair scheme on 4-symbol chunks: emits the base
// maps of both levels, then re-enters on the four second-level streams.
SymbolString double_unrolled_peres2(const SymbolString& x);

const std::vector<std::string>& builtin_scheme_names();
Scheme builtin_scheme(const std::string& name);

// Compile a tree given as text, with default stream names; oversized
// recursion streams are dropped with a note.
Scheme scheme_from_tree_text(const std::string& text, int output_base,
                             const std::string& name);

}  // namespace randext
