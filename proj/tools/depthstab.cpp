// depthstab command-line front end.
//
//   depthstab analyze --graph FILE [--field Q|p] [--format json|csv] [--output FILE]
//   depthstab verify --family trees|connected|brooms [--max-n N | --pairs "a:b,..."]
//   depthstab enumerate --trees|--connected --n N [--up-to-iso]
//   depthstab broom --a A --b B
//   depthstab betti --ideal "(x1*x2, x2*x3)"
//   depthstab depth --ideal "(x1*x2, x2*x3)"
//
// Exit status: 0 all checks pass, 2 some check violated, 1 error.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "depthstab/depthstab.hpp"

namespace ds = depthstab;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_violation = 2;

struct RunConfig {
    std::string graph_path;
    std::string family;
    std::string pairs;
    std::string field = "Q";
    std::string format = "json";
    std::string output;
    std::string csv_output;
    std::string ideal;
    std::size_t max_n = 0;
    std::size_t min_n = 0; // 0: only max_n
    std::size_t n = 0;
    std::size_t ambient = 0;
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t extra_powers = 0;
    bool up_to_iso = false;
    bool trees = false;
    bool connected = false;
    bool no_astab = false;
    bool lattice = false;
    ds::Caps caps;
};

// Output stream that is stdout unless a path is given.
class Output {
  public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_)
                throw ds::Error("cannot open '" + path + "' for writing");
        }
    }
    std::ostream &stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

std::string read_file(const std::string &path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in)
        throw ds::Error("cannot read '" + path + "'");
    ss << in.rdbuf();
    return ss.str();
}

ds::VerifyOptions verify_options(const RunConfig &cfg) {
    ds::VerifyOptions opts;
    opts.field = ds::parse_field(cfg.field);
    opts.caps = cfg.caps;
    opts.extra_powers = cfg.extra_powers;
    opts.compute_astab = !cfg.no_astab;
    return opts;
}

int cmd_analyze(const RunConfig &cfg) {
    const auto g = ds::parse_graph(read_file(cfg.graph_path));
    const auto report = ds::verify_graph(g, verify_options(cfg));
    Output out(cfg.output);
    if (cfg.format == "csv") {
        ds::FamilyRecord rec;
        rec.graph = g;
        rec.report = report;
        out.stream() << ds::csv_header() << '\n' << ds::csv_row(rec) << '\n';
    } else {
        out.stream() << ds::to_json(report).dump(2) << '\n';
    }
    return report.violations() ? exit_violation : exit_ok;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string &text) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ds::ArgumentError("broom pair '" + item + "' is not of the form a:b");
        try {
            out.emplace_back(std::stoul(item.substr(0, colon)), std::stoul(item.substr(colon + 1)));
        } catch (const std::logic_error &) {
            throw ds::ArgumentError("broom pair '" + item + "' is not of the form a:b");
        }
    }
    if (out.empty())
        throw ds::ArgumentError("no broom pairs given");
    return out;
}

int cmd_verify(const RunConfig &cfg) {
    auto opts = verify_options(cfg);
    std::vector<ds::Graph> graphs;
    std::vector<std::optional<std::pair<std::size_t, std::size_t>>> broom_params;
    if (cfg.family == "brooms") {
        for (auto [a, b] : parse_pairs(cfg.pairs)) {
            graphs.push_back(ds::broom(a, b));
            broom_params.emplace_back(std::pair{a, b});
        }
    } else {
        if (cfg.max_n == 0)
            throw ds::ArgumentError("--max-n is required for family '" + cfg.family + "'");
        ds::EnumerationOptions eopts{cfg.up_to_iso, 0};
        for (std::size_t n = cfg.min_n ? cfg.min_n : cfg.max_n; n <= cfg.max_n; ++n) {
            auto batch = cfg.family == "trees" ? ds::enumerate_trees(n, eopts)
                                               : ds::enumerate_connected_graphs(n, eopts);
            graphs.insert(graphs.end(), batch.begin(), batch.end());
        }
    }

    Output out(cfg.output);
    std::unique_ptr<std::ofstream> csv;
    if (!cfg.csv_output.empty()) {
        csv = std::make_unique<std::ofstream>(cfg.csv_output);
        if (!*csv)
            throw ds::Error("cannot open '" + cfg.csv_output + "' for writing");
        *csv << ds::csv_header() << '\n';
    }
    auto sink = [&](const ds::FamilyRecord &rec) {
        out.stream() << ds::to_json(rec).dump() << '\n';
        if (csv)
            *csv << ds::csv_row(rec) << '\n';
    };

    ds::FamilySummary sum;
    if (broom_params.empty()) {
        sum = ds::verify_family(graphs, opts, sink);
    } else {
        // Each broom carries its own parameters.
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            auto bopts = opts;
            bopts.broom = broom_params[i];
            auto rec = ds::verify_one(i, graphs[i], bopts);
            sum.add(rec);
            sink(rec);
        }
    }
    std::cerr << "processed " << sum.processed << " graphs, " << sum.violations << " with violations, "
              << sum.resource_skipped << " skipped for resources, " << sum.precondition_skipped
              << " outside preconditions\n";
    return sum.violations ? exit_violation : exit_ok;
}

int cmd_enumerate(const RunConfig &cfg) {
    if (cfg.trees == cfg.connected)
        throw ds::ArgumentError("choose exactly one of --trees and --connected");
    ds::EnumerationOptions eopts{cfg.up_to_iso, 0};
    Output out(cfg.output);
    auto emit = [&](const ds::Graph &g) { out.stream() << ds::to_line(g) << '\n'; };
    if (cfg.trees)
        ds::for_each_tree(cfg.n, emit, eopts);
    else
        ds::for_each_connected_graph(cfg.n, emit, eopts);
    return exit_ok;
}

int cmd_broom(const RunConfig &cfg) {
    Output out(cfg.output);
    const auto g = ds::broom(cfg.a, cfg.b);
    out.stream() << (cfg.format == "line" ? ds::to_line(g) + "\n" : ds::to_edge_list(g));
    return exit_ok;
}

int cmd_betti(const RunConfig &cfg) {
    const auto I = ds::parse_ideal(cfg.ideal, cfg.ambient);
    Output out(cfg.output);
    ds::write_betti_csv(out.stream(), ds::betti_table(I, ds::parse_field(cfg.field), cfg.caps));
    return exit_ok;
}

int cmd_depth(const RunConfig &cfg) {
    const auto I = ds::parse_ideal(cfg.ideal, cfg.ambient);
    const auto field = ds::parse_field(cfg.field);
    Output out(cfg.output);
    const auto d = cfg.lattice ? ds::depth_via_lattice(I, field, cfg.caps) : ds::depth(I, field, cfg.caps).depth;
    ds::Json j{{"ideal", ds::to_string(I)}, {"n", I.n()}, {"field", field.name()}, {"depth", d}};
    if (I.n() <= cfg.caps.associated_primes_n) {
        ds::Json primes = ds::Json::array();
        for (const auto &p : ds::associated_primes(I, cfg.caps))
            primes.push_back(p);
        j["associated_primes"] = primes;
    }
    out.stream() << j.dump(2) << '\n';
    return exit_ok;
}

void add_common(CLI::App *cmd, RunConfig &cfg) {
    cmd->add_option("--field", cfg.field, "Q or a prime p")->capture_default_str();
    cmd->add_option("--output,-o", cfg.output, "output file (default: stdout)");
    cmd->add_option("--max-generators", cfg.caps.generators, "generator cap for ideal powers")
        ->capture_default_str();
    cmd->add_option("--max-lattice", cfg.caps.lattice, "lcm lattice element cap")->capture_default_str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Depth stability invariants of edge ideals"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto *analyze = app.add_subcommand("analyze", "full report for one graph");
    analyze->add_option("--graph", cfg.graph_path, "edge-list file, - for stdin")->required();
    analyze->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    analyze->add_option("--extra-powers", cfg.extra_powers, "powers past the certified horizon");
    analyze->add_flag("--no-astab", cfg.no_astab, "skip associated primes");
    add_common(analyze, cfg);

    auto *verify = app.add_subcommand("verify", "verify a graph family");
    verify->add_option("--family", cfg.family, "trees, connected or brooms")
        ->required()
        ->check(CLI::IsMember({"trees", "connected", "brooms"}));
    verify->add_option("--max-n", cfg.max_n, "largest vertex count");
    verify->add_option("--min-n", cfg.min_n, "smallest vertex count (default: --max-n)");
    verify->add_option("--pairs", cfg.pairs, "broom parameters \"a:b,...\"");
    verify->add_flag("--up-to-iso", cfg.up_to_iso, "one graph per isomorphism class");
    verify->add_option("--csv", cfg.csv_output, "CSV summary file");
    verify->add_option("--extra-powers", cfg.extra_powers, "powers past the certified horizon");
    verify->add_flag("--no-astab", cfg.no_astab, "skip associated primes");
    add_common(verify, cfg);

    auto *enumerate = app.add_subcommand("enumerate", "list graphs, one per line as n;u-v,...");
    enumerate->add_flag("--trees", cfg.trees, "labeled trees");
    enumerate->add_flag("--connected", cfg.connected, "labeled connected graphs");
    enumerate->add_option("--n", cfg.n, "vertex count")->required();
    enumerate->add_flag("--up-to-iso", cfg.up_to_iso, "one graph per isomorphism class");
    enumerate->add_option("--output,-o", cfg.output, "output file (default: stdout)");

    auto *broom = app.add_subcommand("broom", "broom graph with parameters a < b");
    broom->add_option("--a", cfg.a, "path length")->required();
    broom->add_option("--b", cfg.b, "vertex count minus one")->required();
    broom->add_option("--format", cfg.format, "edges or line")
        ->check(CLI::IsMember({"edges", "line"}))
        ->default_val("edges");
    broom->add_option("--output,-o", cfg.output, "output file (default: stdout)");

    auto *betti = app.add_subcommand("betti", "multigraded Betti numbers of S/I as CSV");
    betti->add_option("--ideal", cfg.ideal, "e.g. \"(x1*x2, x2^2*x3)\"")->required();
    betti->add_option("--n", cfg.ambient, "ambient variable count (default: largest index)");
    add_common(betti, cfg);

    auto *depth = app.add_subcommand("depth", "depth and associated primes of S/I");
    depth->add_option("--ideal", cfg.ideal, "e.g. \"(x1*x2, x2^2*x3)\"")->required();
    depth->add_option("--n", cfg.ambient, "ambient variable count (default: largest index)");
    depth->add_flag("--lattice", cfg.lattice, "use the lcm-lattice engine");
    add_common(depth, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_error;
    }

    try {
        if (*analyze)
            return cmd_analyze(cfg);
        if (*verify)
            return cmd_verify(cfg);
        if (*enumerate)
            return cmd_enumerate(cfg);
        if (*broom)
            return cmd_broom(cfg);
        if (*betti)
            return cmd_betti(cfg);
        if (*depth)
            return cmd_depth(cfg);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}
