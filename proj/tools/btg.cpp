// btg: build, compare and export trace graphs of closed braids.
//
// Exit codes: 0 positive verdict or success, 1 negative verdict, 2 error.

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "btg/equivalence.hpp"
#include "btg/io.hpp"
#include "btg/oracle.hpp"
#include "btg/three_braid.hpp"

using namespace btg;

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

BraidWord word_arg(const std::string& text, int strands, int at_least = 2) {
    auto w = parse_word(text, strands);
    if (strands == 0 && w.strands() < at_least) w = BraidWord(at_least, w.letters());
    return w;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

std::string shifts_string(const std::vector<int>& shifts, int m) {
    std::string s;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            int v = shifts.empty() ? 0 : shifts[i * m + j];
            if (v == 0) continue;
            s += " (" + std::to_string(i + 1) + std::to_string(j + 1) + ")+" + std::to_string(v);
        }
    return s.empty() ? " none" : s;
}

int run_build(const std::string& text, int strands, const std::string& out, bool reduced) {
    auto g = build_trace_graph(word_arg(text, strands));
    if (reduced) g = reduce(g);
    write_output(io::canonical_dump(io::to_json(g)), out);
    if (!out.empty() && out != "-")
        std::cerr << "wrote " << out << ": " << g.vertices.size() << " vertices, " << g.edges.size() << " edges, "
                  << g.circles.size() << " circles\n";
    return kPositive;
}

int run_compare(const std::string& file_a, const std::string& file_b, const std::string& mode, bool exhaustive,
                std::uint64_t budget) {
    auto a = io::load(file_a);
    auto b = io::load(file_b);
    if (a.n != b.n)
        throw Error("documents have different strand counts (" + std::to_string(a.n) + " and " +
                    std::to_string(b.n) + ")");
    IsotopyOptions opt;
    opt.exhaustive = exhaustive;
    opt.budget = budget;
    auto r = mode == "trihedral" ? compare_trihedral(a, b, opt) : compare_isotopy(a, b, opt);

    std::cout << "mode: " << mode << (exhaustive ? " (exhaustive)" : "") << '\n';
    std::cout << "verdict: " << (r.isotopic ? "equivalent" : "not equivalent") << '\n';
    if (r.isotopic) {
        std::cout << "component map:";
        for (std::size_t i = 0; i < r.component_map.size(); ++i)
            std::cout << ' ' << i + 1 << "->" << r.component_map[i] + 1;
        std::cout << "\nmarking shifts:" << shifts_string(r.marking_shift, static_cast<int>(r.component_map.size()))
                  << "\nlevel inversion: " << (r.inverted ? "yes" : "no") << "\nbase points:";
        for (int p : r.base_points) std::cout << ' ' << p;
        std::cout << '\n';
    }
    if (r.all_levels_degenerate) std::cout << "note: every level subgraph is degenerate\n";
    std::cout << "choice space: relabelings " << r.relabelings << ", base point choices k_1...k_N = "
              << std::setprecision(6) << static_cast<double>(r.base_point_choices) << " (log10 " << (r.base_point_choices > 0 ? std::log10(static_cast<double>(r.base_point_choices)) : 0.0)
              << ") <= (6l)^(n^2-n) = 10^" << r.log10_bound << ", examined " << r.examined << '\n';
    return r.isotopic ? kPositive : kNegative;
}

int run_conj3(const std::string& ta, const std::string& tb, int depth) {
    auto a = word_arg(ta, 3, 3);
    auto b = word_arg(tb, 3, 3);
    Conj3Options opt;
    opt.oracle_depth = std::max(depth, 0);
    auto d = conjugate_3braids(a, b, opt);
    // a negative verdict already consulted the oracle; cross-check the rest
    auto witness = d.oracle_witness;
    if (!witness && d.verdict != Verdict::False && depth > 0) witness = oracle::conjugator_search(a, b, depth);

    std::cout << to_string(d.verdict) << '\n';
    std::cout << "reason: " << d.reason << '\n';
    std::cout << "power: " << d.power << '\n';
    if (depth <= 0)
        std::cout << "oracle: skipped\n";
    else if (witness)
        std::cout << "oracle: conjugator found, w = " << (witness->empty() ? "(empty)" : witness->to_string()) << '\n';
    else
        std::cout << "oracle: no conjugator of length <= " << depth << '\n';
    std::cout << "oracle cross-check: " << (d.verdict == Verdict::Inconclusive ? "conflict" : "consistent") << '\n';
    switch (d.verdict) {
        case Verdict::True:
            return kPositive;
        case Verdict::False:
            return kNegative;
        case Verdict::Inconclusive:
            break;
    }
    return kError;
}

void print_column(const TripletColumn& c, const std::string& label) {
    std::cout << label << " (" << c.canonical.size() << " triplets):";
    for (const auto& t : c.canonical)
        std::cout << " {" << t[0].to_string() << ' ' << t[1].to_string() << ' ' << t[2].to_string() << '}';
    std::cout << '\n';
}

int run_invariants(const std::string& text, int strands) {
    auto w = word_arg(text, strands, 3);
    auto cs = cycle_structure(w);
    const int m = cs.components();
    std::cout << "word: " << (w.empty() ? "(empty)" : w.to_string()) << ", n = " << w.strands() << ", components "
              << m << '\n';
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            std::cout << "lk_" << i + 1 << j + 1 << " = " << linking_number(w, i, j) << '\n';

    bool any = false;
    if (w.strands() == 3 && m < 3) {
        // read the columns off the pure power
        int k = pure_power_exponent(w);
        auto wk = free_reduce(power(w, k));
        std::cout << "columns of the pure power w^" << k << ":\n";
        for (auto [a, b] : {std::pair{1, 2}, {1, 3}, {2, 3}}) {
            auto c = cyclic_invariant(wk, a, b);
            print_column(c, "C_(" + std::to_string(a) + std::to_string(b) + ")");
            print_column(reversed_column(c), "C_(" + std::to_string(b) + std::to_string(a) + ")");
        }
        return kPositive;
    }
    std::vector<int> single;
    for (int c = 0; c < m; ++c)
        if (cs.length(c) == 1) single.push_back(c + 1);
    for (std::size_t x = 0; x < single.size(); ++x)
        for (std::size_t y = x + 1; y < single.size(); ++y)
            for (std::size_t z = y + 1; z < single.size(); ++z) {
                std::array<int, 3> comps{single[x], single[y], single[z]};
                for (auto [p, q] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
                    auto c = cyclic_invariant(w, comps[p], comps[q], comps);
                    std::string tag = w.strands() == 3 ? "" : " in {" + std::to_string(comps[0]) +
                                                                  std::to_string(comps[1]) +
                                                                  std::to_string(comps[2]) + "}";
                    print_column(c, "C_(" + std::to_string(comps[p]) + std::to_string(comps[q]) + ")" + tag);
                    print_column(reversed_column(c),
                                 "C_(" + std::to_string(comps[q]) + std::to_string(comps[p]) + ")" + tag);
                    any = true;
                }
            }
    if (!any) std::cout << "no three single-strand components: no C_(ij) columns\n";
    return kPositive;
}

int run_check(const std::string& text, int strands) {
    auto w = word_arg(text, strands, 3);
    auto rep = oracle::run_checks(w);
    for (const auto& [name, ok] : rep.checks) std::cout << (ok ? "  pass  " : "  FAIL  ") << name << '\n';
    for (const auto& d : rep.details) std::cout << "  detail: " << d << '\n';
    std::cout << (rep.ok() ? "ok" : "failed") << '\n';
    return rep.ok() ? kPositive : kNegative;
}

int run_export(const std::string& file, bool dot, const std::string& out) {
    auto g = io::load(file);
    if (!dot) throw Error("export supports --dot only");
    write_output(io::to_dot(g), out);
    return kPositive;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace graphs of closed braids in the solid torus"};
    app.require_subcommand(1);
    app.set_version_flag("--version", io::kToolVersion);

    std::string word, word_b, out, file_a, file_b, mode = "trihedral";
    int strands = 0, depth = 4;
    bool reduced = false, exhaustive = false, dot = false;
    std::uint64_t budget = 0;

    auto* build = app.add_subcommand("build", "Build TG(word) and write it as canonical JSON");
    build->add_option("--word", word, "Braid word, e.g. \"(s1 s2^-1)^3\"")->required();
    build->add_option("--strands,-n", strands, "Number of strands (default: inferred from the word)");
    build->add_option("--out,-o", out, "Output file (default: stdout)");
    build->add_flag("--reduce", reduced, "Eliminate embedded trihedra before writing");

    auto* compare = app.add_subcommand("compare", "Compare two trace graph documents");
    compare->add_option("a", file_a, "First document")->required()->check(CLI::ExistingFile);
    compare->add_option("b", file_b, "Second document")->required()->check(CLI::ExistingFile);
    compare->add_option("--mode", mode, "isotopy or trihedral")->check(CLI::IsMember({"isotopy", "trihedral"}));
    compare->add_flag("--exhaustive", exhaustive, "Enumerate every base point tuple");
    compare->add_option("--budget", budget, "Choice-space budget (default: BTG_BUDGET or 10^7)");

    auto* conj3 = app.add_subcommand("conj3", "Decide conjugacy of two 3-braids");
    conj3->add_option("--a", word, "First 3-braid word")->required();
    conj3->add_option("--b", word_b, "Second 3-braid word")->required();
    conj3->add_option("--oracle-depth", depth, "Length bound of the Burau conjugator cross-check (0 skips)");

    auto* invariants = app.add_subcommand("invariants", "Print linking numbers and C_(ij) columns");
    invariants->add_option("--word", word, "Braid word")->required();
    invariants->add_option("--strands,-n", strands, "Number of strands (default: inferred, at least 3)");

    auto* check = app.add_subcommand("check", "Run the structural checks on TG(word)");
    check->add_option("--word", word, "Braid word")->required();
    check->add_option("--strands,-n", strands, "Number of strands (default: inferred, at least 3)");

    auto* exp = app.add_subcommand("export", "Render a document");
    exp->add_option("file", file_a, "Trace graph document")->required()->check(CLI::ExistingFile);
    exp->add_flag("--dot", dot, "Graphviz output");
    exp->add_option("--out,-o", out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }

    try {
        if (*build) return run_build(word, strands, out, reduced);
        if (*compare) return run_compare(file_a, file_b, mode, exhaustive, budget);
        if (*conj3) return run_conj3(word, word_b, depth);
        if (*invariants) return run_invariants(word, strands);
        if (*check) return run_check(word, strands);
        if (*exp) return run_export(file_a, dot, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
