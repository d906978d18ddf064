#include <algorithm>

#include "randext/bases.hpp"
#include "randext/scheme.hpp"

namespace randext {

namespace {

const char* kPeres2 = "(R (R (L 00) (L 11)) (O (L 01) (L 10)))";

const char* kPeres3Face =
    "(R (R (L 00) (L 11) (L 22))"
    " (R (O (L 12) (L 21)) (O (L 01) (L 10)) (O (L 02) (L 20))))";

const char* kPeres4Face =
    "(R (R (L 00) (L 11) (L 22) (L 33))"
    " (R (O (L 01) (L 10)) (O (L 02) (L 20)) (O (L 03) (L 30)) (O (L 12) (L 21)))"
    " (R (O (L 13) (L 31)) (O (L 23) (L 32))))";

const char* kPeres4FaceAlt =
    "(R (R (L 00) (L 11) (L 22) (L 33))"
    " (R (R (O (L 01) (L 10)) (O (L 02) (L 20)) (O (L 03) (L 30)) (O (L 12) (L 21)))"
    " (R (O (L 13) (L 31)) (O (L 23) (L 32)))))";

const char* kPeres3Bit =
    "(R (R (R (L 000) (L 111)) (R (L 100) (L 110)))"
    " (R (O (L 001) (L 010)) (O (L 011) (L 101))))";

const char* kPeres4BitE4 =
    "(R (R (L 0000) (L 1111))"
    " (R (R (O (L 0001) (L 0010) (L 0100) (L 1000))"
    " (O (L 0011) (L 0101) (L 0110) (L 1001)))"
    " (R (O (L 1010) (L 1100))"
    " (O (L 0111) (L 1011) (L 1101) (L 1110)))))";

std::string rotate_left_str(const SymbolString& x, int k) {
    std::vector<uint8_t> v = x.symbols;
    std::rotate(v.begin(), v.begin() + k, v.end());
    return SymbolString(2, std::move(v)).str();
}

// One Output node per orbit; child k is the k-th left rotation of the
// representative, so the branch index equals the emitted rotation rank.
std::string orbit_node_text(const SymbolString& rep) {
    std::string s = "(O";
    for (size_t k = 0; k < rep.size(); ++k)
        s += " (L " + rotate_left_str(rep, static_cast<int>(k)) + ")";
    s += ")";
    return s;
}

std::string constant_split_text(int m) {
    return "(R (L " + std::string(static_cast<size_t>(m), '0') + ") (L " +
           std::string(static_cast<size_t>(m), '1') + "))";
}

std::string dijkstra3_text() {
    auto reps = rotation_orbit_reps(3);
    return "(R " + constant_split_text(3) + " (R " + orbit_node_text(reps[0]) +
           " " + orbit_node_text(reps[1]) + "))";
}

std::string dijkstra5_text() {
    auto reps = rotation_orbit_reps(5);
    std::string spine =
        "(R " + orbit_node_text(reps[0]) + " " + orbit_node_text(reps[1]) + ")";
    for (size_t i = 2; i < reps.size(); ++i)
        spine = "(R " + spine + " " + orbit_node_text(reps[i]) + ")";
    return "(R " + constant_split_text(5) + " " + spine + ")";
}

std::string dijkstra11_text() {
    auto reps = rotation_orbit_reps(11);
    // Orbits grouped by weight; the four selectors are too wide to recurse.
    auto selector = [&](int lo, int hi) {
        std::string s = "(R";
        for (const SymbolString& rep : reps) {
            int ones = 0;
            for (uint8_t v : rep.symbols) ones += v;
            if (ones >= lo && ones <= hi) s += " " + orbit_node_text(rep);
        }
        s += ")";
        return s;
    };
    std::string w1 = "(R " + selector(1, 3) + " " + selector(4, 5) + ")";
    std::string w2 = "(R " + selector(6, 7) + " " + selector(8, 10) + ")";
    return "(R " + constant_split_text(11) + " (R " + w1 + " " + w2 + "))";
}

}  // namespace

const std::vector<std::string>& builtin_scheme_names() {
    static const std::vector<std::string> names = {
        "peres2",     "peres3face",   "peres4face",
        "peres4face_alt", "peres3bit", "peres4bit_e4",
        "dijkstra3",  "dijkstra5",    "dijkstra11_partial"};
    return names;
}

Scheme builtin_scheme(const std::string& name) {
    if (name == "peres2")
        return compile_scheme(parse_tree(kPeres2), 2, name, {"u", "v"});
    if (name == "peres3face")
        return compile_scheme(parse_tree(kPeres3Face), 2, name, {"u", "v", "w"});
    if (name == "peres4face")
        return compile_scheme(parse_tree(kPeres4Face), 2, name,
                              {"u", "v", "w1", "w2"});
    if (name == "peres4face_alt")
        return compile_scheme(parse_tree(kPeres4FaceAlt), 2, name,
                              {"u", "v", "s", "w1", "w2"});
    if (name == "peres3bit")
        return compile_scheme(parse_tree(kPeres3Bit), 2, name,
                              {"u", "v", "v1", "v2", "w"});
    if (name == "peres4bit_e4")
        return compile_scheme(parse_tree(kPeres4BitE4), 2, name,
                              {"u", "v", "w", "w1", "w2"});
    if (name == "dijkstra3")
        return compile_scheme(parse_tree(dijkstra3_text()), 3, name,
                              {"u", "v", "w"});
    if (name == "dijkstra5")
        return compile_scheme(parse_tree(dijkstra5_text()), 5, name,
                              {"u", "v", "w1", "w2", "w3", "w4", "w5"});
    if (name == "dijkstra11_partial")
        return compile_scheme(parse_tree(dijkstra11_text()), 11, name,
                              {"u", "v", "w", "w1", "w2"}, true);
    throw unknown_scheme_error(name);
}

Scheme scheme_from_tree_text(const std::string& text, int output_base,
                             const std::string& name) {
    return compile_scheme(parse_tree(text), output_base, name, {}, true);
}

}  // namespace randext
