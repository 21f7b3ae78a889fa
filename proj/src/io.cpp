#include "rgc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace rgc {

using nlohmann::json;

namespace {

std::string full_precision(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Parses `# key=value key=value ...`.
std::map<std::string, std::string> parse_header(const std::string& line)
{
    std::map<std::string, std::string> out;
    std::istringstream is(line.substr(1));
    std::string token;
    while (is >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw FormatError("malformed header token '" + token + "'");
        out[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return out;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, std::size_t line_no)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (trim(s.substr(used)).empty() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw FormatError("line " + std::to_string(line_no) + ": invalid number '" + s + "'");
}

}  // namespace

void write_point_csv(const PointCloud& cloud, std::ostream& out)
{
    out << "# dim=" << cloud.dim() << " seed=" << cloud.seed << " density=" << density_name(cloud.density.kind)
        << '\n';
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (int c = 0; c < cloud.dim(); ++c)
            out << (c ? "," : "") << full_precision(cloud.points(c, static_cast<Eigen::Index>(i)));
        out << '\n';
    }
}

PointCloud read_point_csv(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    std::optional<int> dim;
    std::uint64_t seed = 0;
    DensityKind kind = DensityKind::UniformCube;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (!rows.empty()) throw FormatError("line " + std::to_string(line_no) + ": header after data");
            const auto h = parse_header(t);
            if (auto it = h.find("dim"); it != h.end()) dim = std::stoi(it->second);
            if (auto it = h.find("seed"); it != h.end()) seed = std::stoull(it->second);
            if (auto it = h.find("density"); it != h.end()) kind = parse_density(it->second);
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(t);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(parse_double(cell, line_no));
        if (!dim) dim = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != *dim)
            throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(*dim) +
                              " columns, found " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (!dim || *dim < 1) throw FormatError("point file has no dimension (no header and no rows)");
    PointCloud cloud;
    cloud.seed = seed;
    cloud.density = {kind, *dim};
    cloud.points.resize(*dim, static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int c = 0; c < *dim; ++c) cloud.points(c, static_cast<Eigen::Index>(i)) = rows[i][static_cast<std::size_t>(c)];
    return cloud;
}

void write_complex(const SimplicialComplex& complex, std::ostream& out)
{
    out << "# n=" << complex.n_vertices() << " max_dim=" << complex.max_dim()
        << " type=" << complex_type_name(complex.type()) << " r=" << full_precision(complex.radius()) << '\n';
    for (int k = 0; k <= complex.max_dim(); ++k)
        for (std::size_t i = 0; i < complex.num_faces(k); ++i) {
            const auto f = complex.face(k, i);
            for (std::size_t j = 0; j < f.size(); ++j) out << (j ? " " : "") << f[j];
            out << '\n';
        }
}

SimplicialComplex read_complex(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    std::map<std::string, std::string> header;
    std::vector<std::vector<Vertex>> faces;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            header = parse_header(t);
            continue;
        }
        std::vector<Vertex> face;
        std::istringstream is(t);
        long long v = 0;
        while (is >> v) {
            if (v < 0) throw FormatError("line " + std::to_string(line_no) + ": negative vertex index");
            face.push_back(static_cast<Vertex>(v));
        }
        if (!is.eof()) throw FormatError("line " + std::to_string(line_no) + ": invalid face '" + t + "'");
        faces.push_back(std::move(face));
    }
    for (const char* key : {"n", "max_dim", "type", "r"})
        if (!header.count(key)) throw FormatError(std::string("complex header is missing '") + key + "'");
    const auto n = static_cast<std::size_t>(std::stoull(header["n"]));
    const int max_dim = std::stoi(header["max_dim"]);
    const auto type = parse_complex_type(header["type"]);
    const double r = std::stod(header["r"]);
    std::size_t top_count = 0;
    for (const auto& f : faces)
        if (static_cast<int>(f.size()) - 1 == max_dim) ++top_count;
    // The file does not say whether faces above max_dim were cut off; assume
    // they may have been whenever the top dimension is populated.
    const bool truncated = type != ComplexType::Generic && top_count > 0;
    try {
        return SimplicialComplex::from_faces(n, max_dim, std::move(faces), type, r, truncated);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("invalid complex: ") + e.what());
    }
}

PatternGraph read_pattern(std::istream& in)
{
    std::string line;
    std::optional<int> n;
    std::vector<std::pair<int, int>> edges;
    int max_vertex = -1;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const auto h = parse_header(t);
            if (auto it = h.find("n"); it != h.end()) n = std::stoi(it->second);
            continue;
        }
        std::istringstream is(t);
        int a = 0, b = 0;
        if (!(is >> a >> b)) throw FormatError("line " + std::to_string(line_no) + ": expected 'a b'");
        edges.emplace_back(a, b);
        max_vertex = std::max({max_vertex, a, b});
    }
    return PatternGraph(n.value_or(max_vertex + 1), std::move(edges));
}

json to_json(const BettiProfile& profile)
{
    return json{{"field", profile.field},
                {"betti", profile.betti},
                {"f", profile.face_counts},
                {"capped", profile.capped}};
}

json to_json(const CriticalCensus& census)
{
    return json{{"C", census.counts},
                {"nearest_vertex_critical", census.nearest_vertex_critical},
                {"pairs", census.pairs}};
}

json to_json(const CensusReport& report)
{
    json o = json::object(), s = json::object(), sizes = json::object();
    for (auto [k, v] : report.o_tilde) o[std::to_string(k)] = v;
    for (auto [k, v] : report.s_tilde) s[std::to_string(k)] = v;
    for (auto [size, count] : report.component_sizes) sizes[std::to_string(size)] = count;
    json f_eq = json::object(), f_ge = json::object();
    for (std::size_t k = 0; k < report.faces.exact.size(); ++k) {
        json eq = json::object(), ge = json::object();
        for (auto [i, count] : report.faces.exact[k]) {
            eq[std::to_string(i)] = count;
            ge[std::to_string(i)] = report.faces.ge(static_cast<int>(k), i);
        }
        f_eq[std::to_string(k)] = eq;
        f_ge[std::to_string(k)] = ge;
    }
    return json{{"components", report.components}, {"o_tilde", o},      {"s_tilde", s},
                {"f_eq", f_eq},                    {"f_ge", f_ge},      {"component_sizes", sizes}};
}

json to_json(const RadiusRule& rule)
{
    switch (rule.kind) {
    case RadiusRule::Kind::PowerLaw: return json{{"kind", "power_law"}, {"c", rule.c}, {"alpha", rule.alpha}};
    case RadiusRule::Kind::ConnectivityScale: return json{{"kind", "connectivity_scale"}, {"c", rule.c}};
    case RadiusRule::Kind::Fixed: return json{{"kind", "fixed"}, {"r", rule.r}};
    }
    return {};
}

RadiusRule radius_rule_from_json(const json& j)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "power_law") return RadiusRule::power_law(j.value("c", 1.0), j.at("alpha").get<double>());
    if (kind == "connectivity_scale") return RadiusRule::connectivity_scale(j.at("c").get<double>());
    if (kind == "fixed") return RadiusRule::fixed(j.at("r").get<double>());
    throw std::invalid_argument("unknown radius kind '" + kind + "'");
}

json to_json(const SweepConfig& c)
{
    json radii = json::array();
    for (const auto& r : c.radii) radii.push_back(to_json(r));
    return json{{"density", std::string(density_name(c.density.kind))},
                {"dim", c.density.dim},
                {"complex", std::string(complex_type_name(c.complex))},
                {"k_max", c.k_max},
                {"max_dim", c.max_dim},
                {"n_values", c.n_values},
                {"radius", radii},
                {"trials", c.trials},
                {"seed", c.seed},
                {"output", c.output},
                {"field", c.field},
                {"workers", c.workers},
                {"compute_betti", c.compute_betti},
                {"compute_morse", c.compute_morse},
                {"compute_census", c.compute_census},
                {"compute_coverage", c.compute_coverage},
                {"validate_morse", c.validate_morse},
                {"max_faces", c.max_faces},
                {"fixed_trial_seed", c.fixed_trial_seed}};
}

SweepConfig sweep_config_from_json(const json& j, SweepConfig c)
{
    if (!j.is_object()) throw std::invalid_argument("sweep config must be a JSON object");
    static const std::set<std::string> known = {
        "density",        "dim",           "complex",        "k_max",           "max_dim",
        "n_values",       "radius",        "trials",         "seed",            "output",
        "field",          "workers",       "compute_betti",  "compute_morse",   "compute_census",
        "compute_coverage", "validate_morse", "max_faces",   "fixed_trial_seed"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw std::invalid_argument("unknown sweep config key '" + key + "'");

    if (j.contains("density")) c.density.kind = parse_density(j["density"].get<std::string>());
    if (j.contains("dim")) c.density.dim = j["dim"].get<int>();
    if (j.contains("complex")) c.complex = parse_complex_type(j["complex"].get<std::string>());
    if (j.contains("k_max")) c.k_max = j["k_max"].get<int>();
    if (j.contains("max_dim")) c.max_dim = j["max_dim"].get<int>();
    if (j.contains("n_values")) c.n_values = j["n_values"].get<std::vector<std::size_t>>();
    if (j.contains("radius")) {
        c.radii.clear();
        const auto& r = j["radius"];
        if (r.is_array())
            for (const auto& item : r) c.radii.push_back(radius_rule_from_json(item));
        else
            c.radii.push_back(radius_rule_from_json(r));
    }
    if (j.contains("trials")) c.trials = j["trials"].get<std::size_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output")) c.output = j["output"].get<std::string>();
    if (j.contains("field")) c.field = j["field"].get<std::uint32_t>();
    if (j.contains("workers")) c.workers = j["workers"].get<unsigned>();
    if (j.contains("compute_betti")) c.compute_betti = j["compute_betti"].get<bool>();
    if (j.contains("compute_morse")) c.compute_morse = j["compute_morse"].get<bool>();
    if (j.contains("compute_census")) c.compute_census = j["compute_census"].get<bool>();
    if (j.contains("compute_coverage")) c.compute_coverage = j["compute_coverage"].get<bool>();
    if (j.contains("validate_morse")) c.validate_morse = j["validate_morse"].get<bool>();
    if (j.contains("max_faces")) c.max_faces = j["max_faces"].get<std::size_t>();
    if (j.contains("fixed_trial_seed")) c.fixed_trial_seed = j["fixed_trial_seed"].get<bool>();
    return c;
}

json sweep_sidecar(const SweepResult& result)
{
    json cells = json::array();
    for (const auto& c : result.cells) {
        json deg = json::array();
        for (std::size_t k = 0; k < c.degrees.size(); ++k) {
            const auto& s = c.degrees[k];
            deg.push_back({{"k", k},
                           {"betti_samples", s.betti.count},
                           {"o_tilde_mean", s.o_tilde.count ? json(s.o_tilde.mean) : json(nullptr)},
                           {"s_tilde_mean", s.s_tilde.count ? json(s.s_tilde.mean) : json(nullptr)},
                           {"crosspolytope_present", s.crosspolytope_present}});
        }
        cells.push_back({{"n", c.n},
                         {"r", c.r},
                         {"W", c.W},
                         {"rule", c.rule_index},
                         {"completed", c.completed},
                         {"failed", c.failed},
                         {"errors", c.errors},
                         {"degrees", deg}});
    }
    // Worker count does not affect results and is left out so sidecars compare equal.
    auto config = to_json(result.config);
    config.erase("workers");
    return json{{"software", "rgc"},
                {"version", std::string(kVersion)},
                {"rng", std::string(kRngName)},
                {"config", config},
                {"cells", cells}};
}

}  // namespace rgc
