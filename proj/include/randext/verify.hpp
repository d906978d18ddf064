#pragma once

#include "randext/scheme.hpp"

namespace randext {

struct ClassCheck {
    Composition comp;
    bool ok = true;
    BigCount size = 0;
    long long total_digits = 0;
    std::string detail;  // failure description, empty when ok
};

struct ExtractingReport {
    std::string scheme;
    int max_symbols = 0;
    bool ok = true;
    std::vector<ClassCheck> classes;

    // One "COMPOSITION <counts> OK|FAIL <detail>" line per class.
    std::vector<std::string> lines() const;
};

// Extracts every string of every class up to max_symbols source symbols and
// tests the output multiset for balance; m^max_symbols capped at 10^7.
// A failing class records the unbalanced output length and two witness
// strings with unequal multiplicity.
ExtractingReport check_extracting(const Scheme& s, int max_symbols);

// Every Output node must branch uniformly on grid_size random strictly
// positive source distributions, within 1e-9.
bool check_uniform_outputs(const BinarizationTree& t, int grid_size,
                           uint64_t seed);

// Stricter pass: per-branch leaf-probability monomial multisets must match
// exactly, which forces uniformity for every source distribution.
bool check_uniform_outputs_symbolic(const BinarizationTree& t);

// Round-trips structure_inverse(structure_map(x)) = x over every string of
// up to n blocks (optionally restricted to the given block symbols), and
// checks the class-size product identity for each composition.  The number
// of strings is capped at 10^7.
bool check_structure(const BinarizationTree& t, int n,
                     const std::vector<int>& active_symbols = {});

struct GoldenReport {
    bool ok = true;
    int cells_checked = 0;
    std::vector<std::string> mismatches;

    std::string text() const;
};

// Compares the component tables of the builtin block-size->=2 schemes cell
// for cell against embedded reference tables ("-" marks an empty cell).
GoldenReport golden_tables();

}  // namespace randext
