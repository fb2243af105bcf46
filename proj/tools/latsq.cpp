// latsq: command-line access to the census, switching, sampling and formula
// machinery, with reproducible seeded runs.

#include "latsq/latsq.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace latsq;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_bad_input = 2;

void print_header(std::ostream& os, const std::string& command)
{
    os << "# latsq " << LATSQ_VERSION << "\n# command: " << command << "\n";
}

json config_json(const std::string& command)
{
    return json{{"command", command}, {"version", LATSQ_VERSION}};
}

std::string fmt_double(double v, int precision = 8)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << v;
    return os.str();
}

std::string fmt_general(long double v)
{
    std::ostringstream os;
    os << std::setprecision(12) << static_cast<double>(v);
    return os.str();
}

void emit_report(const CheckReport& rep, const std::string& command, int& rc)
{
    print_header(std::cout, command);
    std::cout << rep.to_text();
    if (rep.all_pass()) {
        std::cout << "VERDICT n=" << rep.n << " all " << rep.lines.size() << " checks pass\n";
    } else {
        std::cout << "VERDICT n=" << rep.n << " FAILURES present\n";
        rc = exit_check_failed;
    }
}

Square load_square(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_square(buf.str());
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"parity machinery for Latin squares: censuses, row-cycle "
                 "switching, uniform sampling and exact formulas"};
    app.require_subcommand(1);
    int rc = exit_ok;

    // ---- enumerate ----
    auto* cmd_enum = app.add_subcommand("enumerate", "exhaustive parity census of a class");
    int en_n = 0;
    std::string en_class = "reduced", en_format = "json";
    int en_workers = 1;
    cmd_enum->add_option("--n", en_n, "order")->required();
    cmd_enum->add_option("--class", en_class, "all | reduced | normalised_unipotent");
    cmd_enum->add_option("--format", en_format, "json | csv | text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd_enum->add_option("--workers", en_workers, "worker threads (result-invariant)");
    cmd_enum->callback([&] {
        const auto cls = square_class_from_string(en_class);
        if (!cls) throw std::invalid_argument("unknown class: " + en_class);
        const ParityTally t = tally(en_n, *cls, en_workers);
        std::ostringstream cmd;
        cmd << "enumerate --n " << en_n << " --class " << to_string(*cls) << " --format "
            << en_format;
        if (en_format == "json") {
            json j;
            j["config"] = config_json(cmd.str());
            j["n"] = t.n;
            j["class"] = std::string(to_string(t.cls));
            json counts = json::object();
            for (int i = 0; i < 8; ++i) counts[ParityTriple::from_index(i).str()] = t.counts[i];
            j["counts"] = counts;
            j["total"] = t.total();
            std::cout << j.dump(2) << "\n";
        } else if (en_format == "csv") {
            print_header(std::cout, cmd.str());
            std::cout << "triple,count\n";
            for (int i = 0; i < 8; ++i)
                std::cout << ParityTriple::from_index(i).str() << ',' << t.counts[i] << "\n";
        } else {
            print_header(std::cout, cmd.str());
            std::cout << "class " << to_string(t.cls) << " order " << t.n << "\n";
            for (int i = 0; i < 8; ++i)
                std::cout << "  " << ParityTriple::from_index(i).str() << "  " << t.counts[i]
                          << "\n";
            std::cout << "total " << t.total() << "\n";
        }
    });

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "check the parity identity table");
    int ve_n = 0, ve_workers = 1;
    bool ve_fault = false;
    cmd_verify->add_option("--n", ve_n, "order")->required();
    cmd_verify->add_option("--workers", ve_workers, "worker threads");
    cmd_verify->add_flag("--inject-fault", ve_fault)->group(""); // test hook
    cmd_verify->callback([&] {
        ParityTally r = tally(ve_n, SquareClass::reduced, ve_workers);
        const ParityTally u = tally(ve_n, SquareClass::normalised_unipotent, ve_workers);
        if (ve_fault) ++r.counts[ParityTriple::from_string("111").index()];
        std::ostringstream cmd;
        cmd << "verify --n " << ve_n;
        emit_report(verify_identities_from(r, u), cmd.str(), rc);
    });

    // ---- relations ----
    auto* cmd_rel = app.add_subcommand("relations", "check the class counting relations");
    int re_n = 0, re_workers = 1;
    cmd_rel->add_option("--n", re_n, "order")->required();
    cmd_rel->add_option("--workers", re_workers, "worker threads");
    cmd_rel->callback([&] {
        std::ostringstream cmd;
        cmd << "relations --n " << re_n;
        emit_report(class_relations(re_n, re_workers), cmd.str(), rc);
    });

    // ---- stats ----
    auto* cmd_stats = app.add_subcommand(
        "stats", "Monte-Carlo last-two-rows event frequencies (CSV), plus a chi-square "
                 "uniformity row at orders 4 and 5");
    int st_n = 0, st_workers = 1;
    std::uint64_t st_samples = 0, st_seed = 1, st_steps = 0;
    double st_base = std::numbers::e;
    cmd_stats->add_option("--n", st_n, "order")->required();
    cmd_stats->add_option("--samples", st_samples, "number of samples")->required();
    cmd_stats->add_option("--seed", st_seed, "master seed");
    cmd_stats->add_option("--steps", st_steps, "chain steps per sample (0 = default)");
    cmd_stats->add_option("--log-base", st_base, "base of the log in the long-cycle threshold");
    cmd_stats->add_option("--workers", st_workers, "worker threads (result-invariant)");
    cmd_stats->callback([&] {
        const std::uint64_t steps = st_steps ? st_steps : default_steps(st_n);
        const SampleStats st =
            last_two_rows_stats(st_n, st_samples, st_seed, st_base, st_workers, st_steps);
        std::ostringstream cmd;
        cmd << "stats --n " << st_n << " --samples " << st_samples << " --seed " << st_seed
            << " --steps " << steps << " --log-base " << std::setprecision(12) << st_base;
        print_header(std::cout, cmd.str());
        std::cout << "n,samples,seed,event,occurrences,estimate,stderr\n";
        for (const EventStats& e : st.events)
            std::cout << st.n << ',' << st.samples << ',' << st.seed << ',' << e.event << ','
                      << e.occurrences << ',' << fmt_double(e.estimate) << ','
                      << fmt_double(e.std_error) << "\n";
        if (st_n == 4 || st_n == 5) {
            const UniformityReport rep =
                uniformity_test(st_n, st_samples, st_seed, st_workers, st_steps);
            std::cout << st_n << ',' << st_samples << ',' << st_seed << ",uniformity_pvalue,"
                      << rep.dof << ',' << fmt_double(rep.p_value) << ',' << fmt_double(0.0)
                      << "\n";
        }
    });

    // ---- sample ----
    auto* cmd_sample = app.add_subcommand("sample", "emit one uniform random square");
    int sa_n = 0;
    std::uint64_t sa_seed = 1, sa_steps = 0;
    cmd_sample->add_option("--n", sa_n, "order")->required();
    cmd_sample->add_option("--seed", sa_seed, "seed");
    cmd_sample->add_option("--steps", sa_steps, "chain steps (0 = default)");
    cmd_sample->callback([&] {
        const Square s = sample(sa_n, sa_seed, sa_steps);
        std::ostringstream cmd;
        cmd << "sample --n " << sa_n << " --seed " << sa_seed << " --steps "
            << (sa_steps ? sa_steps : default_steps(sa_n));
        print_header(std::cerr, cmd.str()); // keep stdout parseable as a square
        std::cout << format_square(s);
    });

    // ---- switch ----
    auto* cmd_switch = app.add_subcommand(
        "switch", "switch a row cycle, or apply the (extended) parity-reversing involution");
    std::string sw_input, sw_rows;
    int sw_col = 1;
    bool sw_involution = false, sw_extended = false;
    cmd_switch->add_option("--input", sw_input, "square file")->required();
    cmd_switch->add_option("--rows", sw_rows, "row pair x,y");
    cmd_switch->add_option("--col", sw_col, "switch the cycle containing this column");
    cmd_switch->add_flag("--involution", sw_involution, "switchable odd cycle, last two rows");
    cmd_switch->add_flag("--extended", sw_extended, "scan disjoint row pairs downward");
    cmd_switch->callback([&] {
        const Square in = load_square(sw_input);
        std::ostringstream cmd;
        cmd << "switch --input " << sw_input;
        std::optional<Square> out;
        if (static_cast<int>(sw_involution) + static_cast<int>(sw_extended) +
                static_cast<int>(!sw_rows.empty()) !=
            1)
            throw std::invalid_argument("switch: need exactly one of --rows, --involution, --extended");
        if (sw_involution) {
            cmd << " --involution";
            out = involution(in);
        } else if (sw_extended) {
            cmd << " --extended";
            out = extended_involution(in);
        } else {
            int x = 0, y = 0;
            char comma = 0;
            std::istringstream rows(sw_rows);
            if (!(rows >> x >> comma >> y) || comma != ',')
                throw std::invalid_argument("switch: --rows expects x,y");
            cmd << " --rows " << x << ',' << y << " --col " << sw_col;
            const auto cycles = row_cycles(in, x, y);
            for (const RowCycle& c : cycles)
                if (c.contains_column(sw_col)) {
                    out = switch_cycle(in, c);
                    print_header(std::cerr, cmd.str());
                    std::cerr << "# cycle: " << to_string(c) << "\n";
                    break;
                }
        }
        if (!out) {
            if (sw_involution || sw_extended) {
                print_header(std::cerr, cmd.str());
                std::cerr << "# no switchable odd cycle in the scanned rows; square is outside "
                             "the involution domain\n";
                rc = exit_check_failed;
                return;
            }
            throw std::invalid_argument("switch: no cycle contains the requested column");
        }
        if (sw_involution || sw_extended) print_header(std::cerr, cmd.str());
        std::cerr << "# parity before: " << parity_triple(in).str() << "\n"
                  << "# parity after:  " << parity_triple(*out).str() << "\n";
        std::cout << format_square(*out);
    });

    // ---- formulas ----
    auto* cmd_formulas = app.add_subcommand("formulas", "exact values of the proof formulas");
    cmd_formulas->require_subcommand(1);

    auto* f_gamma = cmd_formulas->add_subcommand("gamma", "derangements with a cycle type");
    std::string fg_lambda;
    f_gamma->add_option("--lambda", fg_lambda, "cycle type, e.g. \"3^1 2^1\"")->required();
    f_gamma->callback([&] {
        print_header(std::cout, "formulas gamma --lambda '" + fg_lambda + "'");
        std::cout << gamma(Partition::parse(fg_lambda)).get_str() << "\n";
    });

    auto* f_lcp = cmd_formulas->add_subcommand("long-cycle-prob",
                                               "P(a cycle of length >= n - log n) in S_n");
    int fl_n = 0;
    double fl_base = std::numbers::e;
    f_lcp->add_option("--n", fl_n, "order")->required();
    f_lcp->add_option("--log-base", fl_base, "log base");
    f_lcp->callback([&] {
        std::ostringstream cmd;
        cmd << "formulas long-cycle-prob --n " << fl_n << " --log-base " << std::setprecision(12)
            << fl_base;
        const mpq_class p = long_cycle_prob(fl_n, fl_base);
        print_header(std::cout, cmd.str());
        std::cout << to_string(p) << "\n";
    });

    auto* f_wilf = cmd_formulas->add_subcommand("wilf", "proportion of S_n with no odd cycle");
    int fw_n = 0;
    f_wilf->add_option("--n", fw_n, "order")->required();
    f_wilf->callback([&] {
        std::ostringstream cmd;
        cmd << "formulas wilf --n " << fw_n;
        print_header(std::cout, cmd.str());
        if (fw_n % 2 == 1)
            std::cerr << "# odd order: every permutation of an odd number of points has an odd "
                         "cycle\n";
        std::cout << to_string(wilf_no_odd(fw_n)) << "\n";
    });

    auto* f_split = cmd_formulas->add_subcommand("split-set", "odd splits of an even part");
    std::string fs_lambda;
    int fs_z = 0;
    f_split->add_option("--lambda", fs_lambda, "all-even cycle type")->required();
    f_split->add_option("--z", fs_z, "part to split")->required();
    f_split->callback([&] {
        std::ostringstream cmd;
        cmd << "formulas split-set --lambda '" << fs_lambda << "' --z " << fs_z;
        const SplitSet s = split_set(Partition::parse(fs_lambda), fs_z);
        print_header(std::cout, cmd.str());
        std::cout << "# w=" << s.w << " admissible=" << s.splits.size() << "\n";
        for (const SplitExclusion& e : s.excluded)
            std::cout << "# excluded a=" << e.a << " b=" << e.b << ": " << e.reason << "\n";
        for (const SplitCandidate& c : s.splits)
            std::cout << "SPLIT a=" << c.a << " b=" << c.b << " mu=" << c.mu.str() << "\n";
    });

    auto* f_bound = cmd_formulas->add_subcommand("split-bound",
                                                 "split-mass sum against its integral bound");
    int fb_z = 0;
    f_bound->add_option("--z", fb_z, "even part size, z >= 10")->required();
    f_bound->callback([&] {
        std::ostringstream cmd;
        cmd << "formulas split-bound --z " << fb_z;
        const SplitBound b = split_bound(fb_z);
        print_header(std::cout, cmd.str());
        std::cout << "SPLIT-BOUND z=" << b.z << " w=" << b.w << " sum=" << fmt_general(b.sum)
                  << " bound=" << fmt_general(b.bound) << (b.holds ? " PASS" : " FAIL") << "\n";
        if (!b.holds) rc = exit_check_failed;
    });

    auto* f_ratio = cmd_formulas->add_subcommand("gamma-ratio", "gamma(mu)/gamma(lambda) of a split");
    std::string fr_lambda;
    int fr_z = 0, fr_a = 0;
    bool fr_equal = false;
    f_ratio->add_option("--lambda", fr_lambda, "all-even cycle type")->required();
    f_ratio->add_option("--z", fr_z, "part to split")->required();
    f_ratio->add_option("--a", fr_a, "odd part size")->required();
    f_ratio->add_flag("--allow-equal", fr_equal, "serve the equal split a = z-a");
    f_ratio->callback([&] {
        std::ostringstream cmd;
        cmd << "formulas gamma-ratio --lambda '" << fr_lambda << "' --z " << fr_z << " --a "
            << fr_a;
        print_header(std::cout, cmd.str());
        std::cout << to_string(gamma_ratio(Partition::parse(fr_lambda), fr_z, fr_a, fr_equal))
                  << "\n";
    });

    // ---- graph ----
    auto* cmd_graph = app.add_subcommand("graph", "switching-graph component summary (JSON)");
    int gr_n = 0;
    std::string gr_pairs = "all";
    cmd_graph->add_option("--n", gr_n, "order")->required();
    cmd_graph->add_option("--pairs", gr_pairs, "all | last-two")
        ->check(CLI::IsMember({"all", "last-two"}));
    cmd_graph->callback([&] {
        const PairPolicy policy =
            gr_pairs == "last-two" ? PairPolicy::last_two : PairPolicy::all_pairs;
        const GraphSummary g = switching_graph(gr_n, policy);
        std::ostringstream cmd;
        cmd << "graph --n " << gr_n << " --pairs " << gr_pairs;
        json j;
        j["config"] = config_json(cmd.str());
        j["n"] = g.n;
        j["policy"] = std::string(to_string(g.policy));
        j["vertices"] = g.vertex_count;
        j["components"] = json::array();
        for (const auto& c : g.components)
            j["components"].push_back(json{{"size", c.size}, {"row_parity", c.row_parity}});
        std::cout << j.dump(2) << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_bad_input;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_input;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_input;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_input;
    }
    return rc;
}
