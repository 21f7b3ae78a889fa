#include "rgc/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "rgc/io.hpp"

namespace rgc {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw FileError("cannot open input file '" + path + "'");
    return in;
}

// Writes to `path`, or to `fallback` when the path is empty.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& writer)
{
    if (path.empty()) {
        writer(fallback);
        return;
    }
    std::ofstream out(path);
    if (!out) throw FileError("cannot open output file '" + path + "'");
    writer(out);
    if (!out) throw FileError("failed writing '" + path + "'");
}

struct Flags {
    std::string density = "cube";
    int dim = 2;
    std::vector<std::size_t> n;
    std::uint64_t seed = 0;
    double r = 0.0;
    double alpha = 0.0;
    double c = 1.0;
    std::string type = "rips";
    int max_dim = -1;
    int kmax = 1;
    std::uint32_t field = 2;
    std::size_t trials = 1;
    unsigned workers = 1;
    std::string config;
    std::string in;
    std::string out;
};

void print_config(std::ostream& err, const std::string& command, const nlohmann::json& resolved)
{
    err << "# " << command << " " << resolved.dump() << '\n';
}

int cmd_sample(const Flags& f, std::ostream& out, std::ostream& err)
{
    if (f.n.size() != 1) throw UsageError("--n: sample takes exactly one value");
    const Density density{parse_density(f.density), f.dim};
    print_config(err, "sample",
                 {{"density", f.density}, {"dim", f.dim}, {"n", f.n[0]}, {"seed", f.seed}, {"out", f.out}});
    const auto cloud = sample_points(density, f.n[0], f.seed);
    emit(f.out, out, [&](std::ostream& os) { write_point_csv(cloud, os); });
    return 0;
}

int cmd_build(const Flags& f, std::ostream& out, std::ostream& err)
{
    const auto type = parse_complex_type(f.type);
    const int max_dim = f.max_dim < 0 ? 2 : f.max_dim;
    print_config(err, "build", {{"in", f.in}, {"type", f.type}, {"r", f.r}, {"max_dim", max_dim}, {"out", f.out}});
    auto in = open_input(f.in);
    const auto cloud = read_point_csv(in);
    const auto graph = build_geometric_graph(cloud, f.r);
    const auto complex = type == ComplexType::Cech ? cech_complex(cloud, graph, max_dim) : rips_complex(graph, max_dim);
    emit(f.out, out, [&](std::ostream& os) { write_complex(complex, os); });
    return 0;
}

int cmd_betti(const Flags& f, std::ostream& out, std::ostream& err)
{
    print_config(err, "betti", {{"in", f.in}, {"kmax", f.kmax}, {"field", f.field}, {"out", f.out}});
    auto in = open_input(f.in);
    const auto complex = read_complex(in);
    const auto profile = betti_numbers(complex, f.kmax, PrimeField(f.field));
    emit(f.out, out, [&](std::ostream& os) { os << to_json(profile).dump() << '\n'; });
    return 0;
}

int cmd_morse(const Flags& f, std::ostream& out, std::ostream& err)
{
    const int max_dim = f.max_dim < 0 ? 2 : f.max_dim;
    print_config(err, "morse", {{"in", f.in}, {"r", f.r}, {"max_dim", max_dim}, {"out", f.out}});
    auto in = open_input(f.in);
    const auto cloud = read_point_csv(in);
    const auto graph = build_geometric_graph(cloud, f.r);
    const auto complex = rips_complex(graph, max_dim);
    const auto field = build_gradient_field(complex, graph, distance_order(cloud, default_origin(cloud)));
    const auto census = critical_cells(complex, field);
    emit(f.out, out, [&](std::ostream& os) { os << to_json(census).dump() << '\n'; });
    return 0;
}

int cmd_census(const Flags& f, std::ostream& out, std::ostream& err)
{
    const auto type = parse_complex_type(f.type);
    const int max_dim = f.max_dim < 0 ? f.kmax + 1 : f.max_dim;
    print_config(err, "census",
                 {{"in", f.in}, {"r", f.r}, {"type", f.type}, {"kmax", f.kmax}, {"max_dim", max_dim}, {"out", f.out}});
    auto in = open_input(f.in);
    const auto cloud = read_point_csv(in);
    const auto graph = build_geometric_graph(cloud, f.r);
    const auto complex = type == ComplexType::Cech ? cech_complex(cloud, graph, max_dim) : rips_complex(graph, max_dim);
    const auto report = census_report(complex, graph, f.kmax, &cloud);
    emit(f.out, out, [&](std::ostream& os) { os << to_json(report).dump() << '\n'; });
    return 0;
}

int cmd_sweep(const Flags& f, const CLI::App& sub, std::ostream& out, std::ostream& err)
{
    SweepConfig config;
    if (!f.config.empty()) {
        auto in = open_input(f.config);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw FileError("cannot parse config '" + f.config + "': " + e.what());
        }
        config = sweep_config_from_json(j);
    }
    auto given = [&](const char* name) { return sub.get_option(name)->count() > 0; };
    if (given("--density")) config.density.kind = parse_density(f.density);
    if (given("--dim")) config.density.dim = f.dim;
    if (given("--n")) config.n_values = f.n;
    if (given("--seed")) config.seed = f.seed;
    if (given("--type")) config.complex = parse_complex_type(f.type);
    if (given("--kmax")) config.k_max = f.kmax;
    if (given("--max-dim")) config.max_dim = f.max_dim;
    else if (given("--kmax") && f.config.empty()) config.max_dim = f.kmax + 1;
    if (given("--field")) config.field = f.field;
    if (given("--trials")) config.trials = f.trials;
    if (given("--workers")) config.workers = f.workers;
    if (given("--out")) config.output = f.out;
    if (given("--r")) {
        config.radii = {RadiusRule::fixed(f.r)};
    } else if (given("--alpha")) {
        config.radii = {RadiusRule::power_law(f.c, f.alpha)};
    } else if (given("--c")) {
        config.radii = {RadiusRule::connectivity_scale(f.c)};
    }

    auto resolved = to_json(config);
    print_config(err, "sweep", resolved);
    const auto result = run_sweep(config, &err);
    emit(config.output, out, [&](std::ostream& os) { write_sweep_csv(result, os); });
    if (!config.output.empty())
        emit(config.output + ".json", out, [&](std::ostream& os) { os << sweep_sidecar(result).dump(2) << '\n'; });
    for (const auto& c : result.cells)
        if (c.failed > 0) return 2;
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Random geometric complexes: sampling, construction, homology, Morse and census tools", "rgc"};
    app.require_subcommand(1);
    Flags f;

    auto add_in = [&](CLI::App* s, const std::string& what) {
        s->add_option("--in", f.in, what)->required();
    };
    auto add_out = [&](CLI::App* s) { s->add_option("--out", f.out, "Output path (default: stdout)"); };
    auto add_radius = [&](CLI::App* s) {
        s->add_option("--r", f.r, "Connection radius (graph threshold; Cech balls have radius r/2)")->required();
    };

    auto* sample = app.add_subcommand("sample", "Sample a point cloud as CSV");
    sample->add_option("--density", f.density, "Density: cube, ball or gaussian")
        ->check(CLI::IsMember({"cube", "ball", "gaussian"}));
    sample->add_option("--dim", f.dim, "Ambient dimension")->check(CLI::PositiveNumber);
    sample->add_option("--n", f.n, "Number of points")->required()->expected(1);
    sample->add_option("--seed", f.seed, "Random seed");
    add_out(sample);

    auto* build = app.add_subcommand("build", "Build a Rips or Cech complex from a point CSV");
    add_in(build, "Point CSV");
    build->add_option("--type", f.type, "Complex type: rips or cech")->check(CLI::IsMember({"rips", "cech"}));
    add_radius(build);
    build->add_option("--max-dim", f.max_dim, "Highest stored face dimension (default 2)")
        ->check(CLI::NonNegativeNumber);
    add_out(build);

    auto* betti = app.add_subcommand("betti", "Betti numbers of a complex file as JSON");
    add_in(betti, "Complex file");
    betti->add_option("--kmax", f.kmax, "Highest homology degree")->check(CLI::NonNegativeNumber);
    betti->add_option("--field", f.field, "Prime field modulus");
    add_out(betti);

    auto* morse = app.add_subcommand("morse", "Critical cells of the distance-ordered gradient field (Rips)");
    add_in(morse, "Point CSV");
    add_radius(morse);
    morse->add_option("--max-dim", f.max_dim, "Highest face dimension (default 2)")->check(CLI::NonNegativeNumber);
    add_out(morse);

    auto* census = app.add_subcommand("census", "Component census of a point CSV as JSON");
    add_in(census, "Point CSV");
    add_radius(census);
    census->add_option("--type", f.type, "Complex type: rips or cech")->check(CLI::IsMember({"rips", "cech"}));
    census->add_option("--kmax", f.kmax, "Highest degree for cross-polytope / empty-simplex counts")
        ->check(CLI::NonNegativeNumber);
    census->add_option("--max-dim", f.max_dim, "Highest face dimension (default kmax+1)")
        ->check(CLI::NonNegativeNumber);
    add_out(census);

    auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep; writes CSV and a JSON sidecar (<out>.json)");
    sweep->add_option("--config", f.config, "JSON config mirroring SweepConfig; flags override it");
    sweep->add_option("--density", f.density, "Density: cube, ball or gaussian")
        ->check(CLI::IsMember({"cube", "ball", "gaussian"}));
    sweep->add_option("--dim", f.dim, "Ambient dimension")->check(CLI::PositiveNumber);
    sweep->add_option("--n", f.n, "Point counts");
    sweep->add_option("--seed", f.seed, "Master seed");
    sweep->add_option("--r", f.r, "Fixed radius");
    sweep->add_option("--alpha", f.alpha, "Power-law exponent: r = c n^-alpha");
    sweep->add_option("--c", f.c, "Radius constant; alone selects r = c (log n / n)^(1/d)");
    sweep->add_option("--type", f.type, "Complex type: rips or cech")->check(CLI::IsMember({"rips", "cech"}));
    sweep->add_option("--max-dim", f.max_dim, "Highest face dimension")->check(CLI::NonNegativeNumber);
    sweep->add_option("--kmax", f.kmax, "Highest homology degree")->check(CLI::NonNegativeNumber);
    sweep->add_option("--field", f.field, "Prime field modulus");
    sweep->add_option("--trials", f.trials, "Trials per cell")->check(CLI::PositiveNumber);
    sweep->add_option("--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--out", f.out, "CSV output path");

    std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (*sample) return cmd_sample(f, out, err);
        if (*build) return cmd_build(f, out, err);
        if (*betti) return cmd_betti(f, out, err);
        if (*morse) return cmd_morse(f, out, err);
        if (*census) return cmd_census(f, out, err);
        if (*sweep) return cmd_sweep(f, *sweep, out, err);
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace rgc
