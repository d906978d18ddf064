#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "randext/analysis.hpp"
#include "randext/verify.hpp"

using namespace randext;

namespace {

// Exit codes: 0 pass, 1 violation, 2 usage or bad input, 3 unknown scheme,
// 4 cap exceeded.
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnknownScheme = 3;
constexpr int kExitCap = 4;

struct SchemeOpts {
    std::string name;
    std::string file;
    int output_base = 0;
};

void add_scheme_opts(CLI::App* cmd, SchemeOpts* opts) {
    auto* name = cmd->add_option("--scheme", opts->name, "builtin scheme name");
    auto* file =
        cmd->add_option("--scheme-file", opts->file, "binarization tree file");
    auto* base = cmd->add_option("--output-base", opts->output_base,
                                 "output base for --scheme-file (default 2)");
    name->excludes(file);
    base->needs(file);
}

Scheme resolve_scheme(const SchemeOpts& opts) {
    if (!opts.file.empty()) {
        std::ifstream in(opts.file);
        if (!in)
            throw std::invalid_argument("cannot open tree file " + opts.file);
        std::stringstream buffer;
        buffer << in.rdbuf();
        int base = opts.output_base > 0 ? opts.output_base : 2;
        std::string name = std::filesystem::path(opts.file).stem().string();
        Scheme s = scheme_from_tree_text(buffer.str(), base, name);
        for (const std::string& note : s.notes)
            std::cerr << "note: " << note << "\n";
        return s;
    }
    if (opts.name.empty())
        throw std::invalid_argument("need --scheme or --scheme-file");
    return builtin_scheme(opts.name);
}

BinarizationTree resolve_tree(const SchemeOpts& opts) {
    if (!opts.file.empty()) {
        std::ifstream in(opts.file);
        if (!in)
            throw std::invalid_argument("cannot open tree file " + opts.file);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_tree(buffer.str());
    }
    if (opts.name.empty())
        throw std::invalid_argument("need --scheme or --scheme-file");
    return std::move(builtin_scheme(opts.name).tree);
}

struct DistOpts {
    double p = -1.0;
    std::vector<double> dist;
};

void add_dist_opts(CLI::App* cmd, DistOpts* opts) {
    auto* p = cmd->add_option("--p", opts->p, "success probability, source <p,1-p>");
    auto* d = cmd->add_option("--dist", opts->dist,
                              "comma-separated source probabilities")
                  ->delimiter(',');
    p->excludes(d);
}

Distribution resolve_dist(const DistOpts& opts, int m_src) {
    std::vector<double> probs;
    if (opts.p >= 0.0) {
        if (m_src != 2)
            throw std::invalid_argument(
                "--p works for binary sources; use --dist");
        probs = {opts.p, 1.0 - opts.p};
    } else if (!opts.dist.empty()) {
        probs = opts.dist;
    } else {
        throw std::invalid_argument("need --p or --dist");
    }
    if (static_cast<int>(probs.size()) != m_src)
        throw std::invalid_argument("distribution needs " +
                                    std::to_string(m_src) + " entries");
    double sum = 0.0;
    for (double v : probs) {
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("probabilities must sit in [0,1]");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("probabilities must sum to 1 within 1e-9");
    for (double& v : probs) v /= sum;
    return Distribution(probs);
}

// Read source digits, skipping whitespace; errors carry line and column.
SymbolString read_source(std::istream& in, int m_src) {
    SymbolString x;
    x.alphabet_size = m_src;
    int line = 1;
    int col = 0;
    char c;
    while (in.get(c)) {
        if (c == '\n') {
            ++line;
            col = 0;
            continue;
        }
        ++col;
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        int digit = char_to_digit(c);
        if (digit < 0 || digit >= m_src) {
            std::ostringstream os;
            os << "line " << line << ", col " << col << ": invalid symbol '"
               << c << "' for source alphabet " << m_src;
            throw std::invalid_argument(os.str());
        }
        x.symbols.push_back(static_cast<uint8_t>(digit));
    }
    return x;
}

void print_value(double v) { std::printf("%.12g\n", v); }

int cmd_extract(const SchemeOpts& scheme_opts, const std::string& format,
                const std::string& in_path, const std::string& out_path) {
    Scheme s = resolve_scheme(scheme_opts);
    SymbolString x;
    if (in_path.empty()) {
        x = read_source(std::cin, s.m_src);
    } else {
        std::ifstream in(in_path);
        if (!in) throw std::invalid_argument("cannot open input " + in_path);
        x = read_source(in, s.m_src);
    }
    SymbolString y = extract(s, x);

    std::ofstream out_file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        out_file.open(out_path, std::ios::binary);
        if (!out_file)
            throw std::invalid_argument("cannot open output " + out_path);
        out = &out_file;
    }
    if (format == "digits") {
        *out << y.str();
    } else if (format == "packed") {
        if (s.output_base != 2)
            throw std::invalid_argument(
                "--format packed needs a binary output base");
        std::vector<uint8_t> bytes = pack_bits(y);
        out->write(reinterpret_cast<const char*>(bytes.data()),
                   static_cast<std::streamsize>(bytes.size()));
        std::cerr << "bits=" << y.size() << "\n";
    } else {
        throw std::invalid_argument("unknown format " + format);
    }
    out->flush();
    return 0;
}

int cmd_verify_extracting(const SchemeOpts& scheme_opts, int max_symbols) {
    Scheme s = resolve_scheme(scheme_opts);
    ExtractingReport report = check_extracting(s, max_symbols);
    for (const std::string& line : report.lines()) std::cout << line << "\n";
    std::cout << (report.ok ? "PASS" : "FAIL") << " " << s.name << " max="
              << max_symbols << " classes=" << report.classes.size() << "\n";
    return report.ok ? 0 : kExitViolation;
}

int cmd_verify_tree(const SchemeOpts& scheme_opts, int grid, uint64_t seed) {
    BinarizationTree t = resolve_tree(scheme_opts);
    bool numeric = check_uniform_outputs(t, grid, seed);
    bool symbolic = check_uniform_outputs_symbolic(t);
    std::cout << "uniform-outputs numeric " << (numeric ? "OK" : "FAIL")
              << "\n";
    std::cout << "uniform-outputs symbolic " << (symbolic ? "OK" : "FAIL")
              << "\n";
    return numeric && symbolic ? 0 : kExitViolation;
}

int cmd_verify_structure(const SchemeOpts& scheme_opts, int blocks,
                         const std::vector<int>& symbols) {
    BinarizationTree t = resolve_tree(scheme_opts);
    bool ok = check_structure(t, blocks, symbols);
    std::cout << "structure " << (ok ? "OK" : "FAIL") << " blocks=" << blocks
              << "\n";
    return ok ? 0 : kExitViolation;
}

int cmd_verify_golden() {
    GoldenReport report = golden_tables();
    std::cout << report.text();
    return report.ok ? 0 : kExitViolation;
}

int cmd_rate_recursion(const SchemeOpts& scheme_opts, const DistOpts& dist_opts,
                       int depth, bool all) {
    Scheme s = resolve_scheme(scheme_opts);
    Distribution d = resolve_dist(dist_opts, s.m_src);
    if (all) {
        for (int nu = 0; nu <= depth; ++nu)
            std::printf("%d %.12g\n", nu, truncated_rate(s, d, nu));
        return 0;
    }
    print_value(truncated_rate(s, d, depth));
    return 0;
}

int cmd_rate_exact(const SchemeOpts& scheme_opts, const DistOpts& dist_opts,
                   int n) {
    Scheme s = resolve_scheme(scheme_opts);
    Distribution d = resolve_dist(dist_opts, s.m_src);
    print_value(exact_rate(s, d, n));
    return 0;
}

int cmd_rate_empirical(const SchemeOpts& scheme_opts, const DistOpts& dist_opts,
                       int n, long long samples, uint64_t seed) {
    Scheme s = resolve_scheme(scheme_opts);
    Distribution d = resolve_dist(dist_opts, s.m_src);
    print_value(empirical_rate(s, d, samples, n, seed));
    return 0;
}

int cmd_rate_compare(const std::vector<std::string>& schemes, double p_min,
                     double p_max, double p_step, int depth) {
    if (p_step <= 0.0 || p_min <= 0.0 || p_max >= 1.0 || p_min > p_max)
        throw std::invalid_argument("need 0 < p-min <= p-max < 1, p-step > 0");
    std::printf("p,scheme,metric,depth,value\n");
    for (double p = p_min; p <= p_max + 1e-12; p += p_step) {
        Distribution d = Distribution::bernoulli(p);
        for (const std::string& name : schemes) {
            if (name == "peres2_unrolled") {
                std::printf("%.12g,%s,base_rate,2,%.12g\n", p, name.c_str(),
                            double_unrolled_base_rate(p));
                continue;
            }
            Scheme s = builtin_scheme(name);
            if (s.m_src != 2)
                throw std::invalid_argument(
                    "rate compare sweeps binary sources; " + name +
                    " reads a larger alphabet");
            std::printf("%.12g,%s,base_rate,1,%.12g\n", p, name.c_str(),
                        base_rate(s, d));
            if (depth > 1)
                std::printf("%.12g,%s,rate,%d,%.12g\n", p, name.c_str(), depth,
                            truncated_rate(s, d, depth));
        }
    }
    return 0;
}

int cmd_entropy(const DistOpts& dist_opts, double base) {
    std::vector<double> probs;
    if (dist_opts.p >= 0.0)
        probs = {dist_opts.p, 1.0 - dist_opts.p};
    else if (!dist_opts.dist.empty())
        probs = dist_opts.dist;
    else
        throw std::invalid_argument("need --p or --dist");
    double sum = 0.0;
    for (double v : probs) sum += v;
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("probabilities must sum to 1 within 1e-9");
    for (double& v : probs) v /= sum;
    print_value(shannon_entropy(Distribution(probs), base));
    return 0;
}

int cmd_table(const SchemeOpts& scheme_opts) {
    Scheme s = resolve_scheme(scheme_opts);
    const BinarizationTree& t = s.tree;

    // Output nodes share one base column when their supports are disjoint.
    std::vector<int> output_comps;
    for (const OutputPart& op : s.outputs) output_comps.push_back(op.component);
    std::vector<int> seen(static_cast<size_t>(t.leaf_count), 0);
    bool disjoint = true;
    for (int ci : output_comps)
        for (int sym : t.components[static_cast<size_t>(ci)].support)
            if (seen[static_cast<size_t>(sym)]++) disjoint = false;

    struct Column {
        std::string header;
        std::vector<int> comps;
        bool output;
    };
    std::vector<Column> columns;
    if (disjoint && !output_comps.empty()) {
        columns.push_back({"base", output_comps, true});
    } else {
        for (size_t i = 0; i < output_comps.size(); ++i)
            columns.push_back({"base" + std::to_string(i + 1),
                               {output_comps[i]},
                               true});
    }
    for (const StreamPart& sp : s.streams)
        columns.push_back({sp.name, {sp.component}, false});

    std::cout << "block";
    for (const Column& c : columns) std::cout << " " << c.header;
    std::cout << "\n";
    for (int sym = 0; sym < t.leaf_count; ++sym) {
        std::cout << t.leaf_labels[static_cast<size_t>(sym)];
        for (const Column& c : columns) {
            std::string cell = "-";
            for (int ci : c.comps) {
                int branch =
                    t.components[static_cast<size_t>(ci)].branch_of[static_cast<size_t>(sym)];
                if (branch < 0) continue;
                if (c.output) {
                    int digits = 1;
                    for (const OutputPart& op : s.outputs)
                        if (op.component == ci) digits = op.digits;
                    cell.assign(static_cast<size_t>(digits), '0');
                    for (int i = digits - 1; i >= 0; --i) {
                        cell[static_cast<size_t>(i)] =
                            digit_to_char(branch % s.output_base);
                        branch /= s.output_base;
                    }
                } else {
                    cell = std::string(1, digit_to_char(branch));
                }
                break;
            }
            std::cout << " " << cell;
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_tree_validate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open tree file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        BinarizationTree t = parse_tree(buffer.str());
        std::cout << "valid: " << t.leaf_count << " blocks of "
                  << t.block_len << " symbols over alphabet " << t.m_src
                  << "\n";
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return kExitViolation;
    }
}

int cmd_tree_show(const SchemeOpts& scheme_opts) {
    BinarizationTree t = resolve_tree(scheme_opts);
    int outputs = 0;
    int streams = 0;
    for (const ComponentInfo& c : t.components)
        (c.role == TreeNode::Kind::Output ? outputs : streams)++;
    std::cout << serialize_tree(t) << "\n";
    std::cout << "m=" << t.m_src << " b=" << t.block_len
              << " blocks=" << t.leaf_count
              << " components=" << t.components.size()
              << " outputs=" << outputs << " recurse=" << streams << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"recursive randomness extractors from binarization trees"};
    app.require_subcommand(1);

    // extract
    auto* extract_cmd =
        app.add_subcommand("extract", "extract output digits from source input");
    SchemeOpts extract_scheme;
    add_scheme_opts(extract_cmd, &extract_scheme);
    std::string format = "digits";
    extract_cmd->add_option("--format", format, "digits or packed")
        ->check(CLI::IsMember({"digits", "packed"}));
    std::string in_path;
    std::string out_path;
    extract_cmd->add_option("--in", in_path, "input file (default stdin)");
    extract_cmd->add_option("--out", out_path, "output file (default stdout)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "verification checks");
    verify_cmd->require_subcommand(1);
    auto* vx = verify_cmd->add_subcommand(
        "extracting", "exhaustive per-class output balance");
    SchemeOpts vx_scheme;
    add_scheme_opts(vx, &vx_scheme);
    int vx_max = 8;
    vx->add_option("--max", vx_max, "largest input length in source symbols");
    auto* vt = verify_cmd->add_subcommand("tree",
                                          "output-node uniformity checks");
    SchemeOpts vt_scheme;
    add_scheme_opts(vt, &vt_scheme);
    int vt_grid = 100;
    uint64_t vt_seed = 1;
    vt->add_option("--grid", vt_grid, "random distributions to test");
    vt->add_option("--seed", vt_seed, "grid seed");
    auto* vs = verify_cmd->add_subcommand(
        "structure", "bijection round-trip and class-size products");
    SchemeOpts vs_scheme;
    add_scheme_opts(vs, &vs_scheme);
    int vs_blocks = 2;
    std::vector<int> vs_symbols;
    vs->add_option("--blocks", vs_blocks, "number of blocks to enumerate");
    vs->add_option("--symbols", vs_symbols, "restrict to these block symbols")
        ->delimiter(',');
    auto* vg = verify_cmd->add_subcommand("golden",
                                          "component tables vs references");

    // rate
    auto* rate_cmd = app.add_subcommand("rate", "output-rate computations");
    rate_cmd->require_subcommand(1);
    auto* rr = rate_cmd->add_subcommand("recursion", "depth-limited rate");
    SchemeOpts rr_scheme;
    DistOpts rr_dist;
    add_scheme_opts(rr, &rr_scheme);
    add_dist_opts(rr, &rr_dist);
    int rr_depth = 2;
    bool rr_all = false;
    rr->add_option("--depth", rr_depth, "recursion depth");
    rr->add_flag("--all", rr_all, "print every depth up to --depth");
    auto* re = rate_cmd->add_subcommand("exact", "exact finite-length rate");
    SchemeOpts re_scheme;
    DistOpts re_dist;
    add_scheme_opts(re, &re_scheme);
    add_dist_opts(re, &re_dist);
    int re_n = 6;
    re->add_option("--n", re_n, "input length in source symbols");
    auto* rm = rate_cmd->add_subcommand("empirical", "sampled rate");
    SchemeOpts rm_scheme;
    DistOpts rm_dist;
    add_scheme_opts(rm, &rm_scheme);
    add_dist_opts(rm, &rm_dist);
    int rm_n = 1024;
    long long rm_samples = 1;
    uint64_t rm_seed = 0;
    rm->add_option("--n", rm_n, "symbols per sample");
    rm->add_option("--samples", rm_samples, "number of samples");
    rm->add_option("--seed", rm_seed, "generator seed")->required();
    auto* rc = rate_cmd->add_subcommand("compare", "CSV rate sweep");
    std::vector<std::string> rc_schemes = {"peres2_unrolled", "peres4bit_e4"};
    double rc_min = 0.01;
    double rc_max = 0.99;
    double rc_step = 0.01;
    int rc_depth = 1;
    rc->add_option("--schemes", rc_schemes,
                   "builtin names, plus peres2_unrolled for the two-level "
                   "pair base formula")
        ->delimiter(',');
    rc->add_option("--p-min", rc_min, "grid start");
    rc->add_option("--p-max", rc_max, "grid end");
    rc->add_option("--p-step", rc_step, "grid step");
    rc->add_option("--depth", rc_depth, "also emit rate rows at this depth");

    // entropy
    auto* entropy_cmd =
        app.add_subcommand("entropy", "Shannon entropy of a distribution");
    DistOpts entropy_dist;
    add_dist_opts(entropy_cmd, &entropy_dist);
    double entropy_base = 2.0;
    entropy_cmd->add_option("--base", entropy_base, "logarithm base");

    // table
    auto* table_cmd =
        app.add_subcommand("table", "component table of a scheme");
    SchemeOpts table_scheme;
    add_scheme_opts(table_cmd, &table_scheme);

    // tree
    auto* tree_cmd = app.add_subcommand("tree", "tree file tooling");
    tree_cmd->require_subcommand(1);
    auto* tv = tree_cmd->add_subcommand("validate", "parse and validate");
    std::string tv_path;
    tv->add_option("--scheme-file", tv_path, "binarization tree file")
        ->required();
    auto* ts = tree_cmd->add_subcommand("show", "canonical form and stats");
    SchemeOpts ts_scheme;
    add_scheme_opts(ts, &ts_scheme);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*extract_cmd)
            return cmd_extract(extract_scheme, format, in_path, out_path);
        if (*vx) return cmd_verify_extracting(vx_scheme, vx_max);
        if (*vt) return cmd_verify_tree(vt_scheme, vt_grid, vt_seed);
        if (*vs) return cmd_verify_structure(vs_scheme, vs_blocks, vs_symbols);
        if (*vg) return cmd_verify_golden();
        if (*rr) return cmd_rate_recursion(rr_scheme, rr_dist, rr_depth, rr_all);
        if (*re) return cmd_rate_exact(re_scheme, re_dist, re_n);
        if (*rm)
            return cmd_rate_empirical(rm_scheme, rm_dist, rm_n, rm_samples,
                                      rm_seed);
        if (*rc)
            return cmd_rate_compare(rc_schemes, rc_min, rc_max, rc_step,
                                    rc_depth);
        if (*entropy_cmd) return cmd_entropy(entropy_dist, entropy_base);
        if (*table_cmd) return cmd_table(table_scheme);
        if (*tv) return cmd_tree_validate(tv_path);
        if (*ts) return cmd_tree_show(ts_scheme);
    } catch (const unknown_scheme_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnknownScheme;
    } catch (const cap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
