#include "rgc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

namespace rgc {

namespace {

std::string num(double x)
{
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string cell_name(std::size_t n, double r, std::size_t trial)
{
    return "cell n=" + std::to_string(n) + " r=" + num(r) + " trial=" + std::to_string(trial);
}

}  // namespace

double RadiusRule::evaluate(std::size_t n, int dim) const
{
    const auto nn = static_cast<double>(n);
    switch (kind) {
    case Kind::PowerLaw: return c * std::pow(nn, -alpha);
    case Kind::ConnectivityScale: return c * std::pow(std::log(nn) / nn, 1.0 / dim);
    case Kind::Fixed: return r;
    }
    return r;
}

void RadiusRule::validate() const
{
    switch (kind) {
    case Kind::PowerLaw:
        if (!(c > 0.0) || !(alpha > 0.0) || !std::isfinite(c) || !std::isfinite(alpha))
            throw std::invalid_argument("power-law radius needs finite c > 0 and alpha > 0");
        break;
    case Kind::ConnectivityScale:
        if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("connectivity-scale radius needs finite c > 0");
        break;
    case Kind::Fixed:
        if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("fixed radius must be finite and > 0");
        break;
    }
}

void SweepConfig::validate() const
{
    if (density.dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (k_max < 0) throw std::invalid_argument("kmax must be >= 0");
    if (compute_betti && k_max + 1 > max_dim) throw std::invalid_argument("max_dim must be >= kmax + 1");
    if (max_dim < 0) throw std::invalid_argument("max_dim must be >= 0");
    if (n_values.empty()) throw std::invalid_argument("at least one n value is required");
    if (radii.empty()) throw std::invalid_argument("at least one radius rule is required");
    for (const auto& rule : radii) {
        rule.validate();
        for (auto n : n_values) {
            const double r = rule.evaluate(n, density.dim);
            if (!(r > 0.0) || !std::isfinite(r))
                throw std::invalid_argument("radius rule gives a non-positive radius at n=" + std::to_string(n));
        }
    }
    PrimeField check(field);
    (void)check;
}

std::uint64_t trial_seed(const SweepConfig& config, std::size_t n, std::size_t trial)
{
    return derive_seed(config.seed, n, config.fixed_trial_seed ? 0 : trial);
}

TrialRecord run_trial(const SweepConfig& config, std::size_t n, std::size_t trial, std::size_t rule_index)
{
    config.validate();
    if (rule_index >= config.radii.size()) throw std::out_of_range("radius rule index out of range");
    const auto clock_start = std::chrono::steady_clock::now();

    TrialRecord rec;
    rec.n = n;
    rec.rule_index = rule_index;
    rec.trial = trial;
    rec.r = config.radii[rule_index].evaluate(n, config.density.dim);
    rec.W = static_cast<double>(n) * std::pow(rec.r, config.density.dim);
    rec.seed = trial_seed(config, n, trial);

    try {
        const auto cloud = sample_points(config.density, n, rec.seed);
        const auto graph = build_geometric_graph(cloud, rec.r);
        ComplexOptions opts;
        opts.max_faces = config.max_faces;
        const bool morse = config.compute_morse && config.complex == ComplexType::Rips;
        if (config.compute_betti || morse || config.compute_census) {
            const auto complex = config.complex == ComplexType::Cech
                                     ? cech_complex(cloud, graph, config.max_dim, opts)
                                     : rips_complex(graph, config.max_dim, opts);
            if (config.compute_betti) rec.betti = betti_numbers(complex, config.k_max, PrimeField(config.field));
            if (morse) {
                const auto order = distance_order(cloud, default_origin(cloud));
                const auto field = build_gradient_field(complex, graph, order);
                rec.critical = critical_cells(complex, field);
                if (config.validate_morse) rec.morse_valid = validate_gradient_field(complex, field).ok();
            }
            if (config.compute_census) rec.census = census_report(complex, graph, config.k_max, &cloud);
        }
        if (config.compute_coverage && config.density.bounded())
            rec.covered = coverage_check(cloud, rec.r, config.density);
    } catch (const ResourceError& e) {
        throw TrialError(cell_name(n, rec.r, trial) + ": " + e.what());
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    return rec;
}

void RunningStats::add(double x)
{
    if (count == 0) {
        min = max = x;
    } else {
        min = std::min(min, x);
        max = std::max(max, x);
    }
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
}

double CellSummary::coverage_fraction() const
{
    if (coverage_evaluated == 0) return std::nan("");
    return static_cast<double>(covered) / static_cast<double>(coverage_evaluated);
}

double CellSummary::nonvanishing_fraction(int k) const
{
    if (k < 0 || static_cast<std::size_t>(k) >= degrees.size()) return std::nan("");
    const auto& s = degrees[static_cast<std::size_t>(k)];
    if (s.betti.count == 0) return std::nan("");
    return static_cast<double>(s.nonvanishing) / static_cast<double>(s.betti.count);
}

std::vector<CellSummary> aggregate(const SweepConfig& config, const std::vector<TrialRecord>& records)
{
    std::vector<CellSummary> cells;
    const auto rules = config.radii.size();
    for (auto n : config.n_values)
        for (std::size_t ri = 0; ri < rules; ++ri) {
            CellSummary cell;
            cell.n = n;
            cell.rule_index = ri;
            cell.r = config.radii[ri].evaluate(n, config.density.dim);
            cell.W = static_cast<double>(n) * std::pow(cell.r, config.density.dim);
            cell.degrees.resize(static_cast<std::size_t>(config.k_max) + 1);
            cells.push_back(std::move(cell));
        }

    for (const auto& rec : records) {
        const auto ni = static_cast<std::size_t>(
            std::find(config.n_values.begin(), config.n_values.end(), rec.n) - config.n_values.begin());
        auto& cell = cells.at(ni * rules + rec.rule_index);
        if (rec.failed) {
            ++cell.failed;
            cell.errors.push_back(rec.error);
            continue;
        }
        ++cell.completed;
        if (rec.covered) {
            ++cell.coverage_evaluated;
            if (*rec.covered) ++cell.covered;
        }
        for (int k = 0; k <= config.k_max; ++k) {
            auto& s = cell.degrees[static_cast<std::size_t>(k)];
            const auto ku = static_cast<std::size_t>(k);
            if (rec.betti && ku < rec.betti->betti.size()) {
                const auto b = rec.betti->betti[ku];
                s.betti.add(static_cast<double>(b));
                if (b > 0) ++s.nonvanishing;
            }
            if (rec.critical && ku < rec.critical->counts.size())
                s.critical.add(static_cast<double>(rec.critical->counts[ku]));
            if (rec.census && k >= 1) {
                if (auto it = rec.census->o_tilde.find(k); it != rec.census->o_tilde.end()) {
                    s.o_tilde.add(static_cast<double>(it->second));
                    if (it->second > 0) ++s.crosspolytope_present;
                }
                if (auto it = rec.census->s_tilde.find(k); it != rec.census->s_tilde.end())
                    s.s_tilde.add(static_cast<double>(it->second));
            }
        }
    }
    return cells;
}

SweepResult run_sweep(const SweepConfig& config, std::ostream* log)
{
    config.validate();
    const auto rules = config.radii.size();
    const auto total = config.n_values.size() * rules * config.trials;

    SweepResult result;
    result.config = config;
    result.records.resize(total);

    auto work = [&](std::size_t item) {
        const auto trial = item % config.trials;
        const auto cell = item / config.trials;
        const auto ri = cell % rules;
        const auto n = config.n_values[cell / rules];
        try {
            result.records[item] = run_trial(config, n, trial, ri);
        } catch (const std::exception& e) {
            auto& rec = result.records[item];
            rec.n = n;
            rec.rule_index = ri;
            rec.trial = trial;
            rec.r = config.radii[ri].evaluate(n, config.density.dim);
            rec.seed = trial_seed(config, n, trial);
            rec.failed = true;
            rec.error = e.what();
        }
    };

    const unsigned workers = std::max(1U, config.workers);
    if (workers == 1) {
        for (std::size_t i = 0; i < total; ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (auto i = next.fetch_add(1); i < total; i = next.fetch_add(1)) work(i);
            });
        for (auto& t : pool) t.join();
    }

    result.cells = aggregate(config, result.records);
    if (log)
        for (const auto& c : result.cells)
            *log << "cell n=" << c.n << " r=" << num(c.r) << " W=" << num(c.W) << " completed=" << c.completed
                 << " failed=" << c.failed << '\n';
    return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out)
{
    out << "n,r,W,k,mean_betti,var_betti,mean_C,nonvanishing_fraction,coverage_fraction,trials\n";
    for (const auto& cell : result.cells) {
        for (std::size_t k = 0; k < cell.degrees.size(); ++k) {
            const auto& s = cell.degrees[k];
            const bool have_betti = s.betti.count > 0;
            out << cell.n << ',' << num(cell.r) << ',' << num(cell.W) << ',' << k << ','
                << num(have_betti ? s.betti.mean : std::nan("")) << ','
                << num(have_betti ? s.betti.variance() : std::nan("")) << ','
                << num(s.critical.count > 0 ? s.critical.mean : std::nan("")) << ','
                << num(cell.nonvanishing_fraction(static_cast<int>(k))) << ',' << num(cell.coverage_fraction()) << ','
                << cell.completed << '\n';
        }
    }
}

std::string sweep_csv(const SweepResult& result)
{
    std::ostringstream os;
    write_sweep_csv(result, os);
    return os.str();
}

bool coverage_check(const PointCloud& cloud, double r, const Density& domain)
{
    if (!domain.bounded()) throw std::invalid_argument("coverage_check needs a bounded domain (cube or ball)");
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("radius must be positive and finite");
    if (cloud.dim() != domain.dim) throw std::invalid_argument("cloud and domain dimensions differ");
    if (cloud.size() == 0) return false;

    const int d = domain.dim;
    const double side = r / (4.0 * std::sqrt(static_cast<double>(d)));
    using Key = std::vector<std::int64_t>;

    std::vector<Key> occupied;
    occupied.reserve(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        Key key(static_cast<std::size_t>(d));
        for (int c = 0; c < d; ++c)
            key[static_cast<std::size_t>(c)] =
                static_cast<std::int64_t>(std::floor(cloud.points(c, static_cast<Eigen::Index>(i)) / side));
        occupied.push_back(std::move(key));
    }
    std::sort(occupied.begin(), occupied.end());

    // Box index range per axis covering the domain.
    const bool ball = domain.kind == DensityKind::UniformBall;
    const auto lo = ball ? static_cast<std::int64_t>(std::floor(-1.0 / side)) : std::int64_t{0};
    const auto hi = static_cast<std::int64_t>(std::ceil(1.0 / side));
    const double boxes = std::pow(static_cast<double>(hi - lo + 1), d);
    if (boxes > 5e8) throw ResourceError("coverage grid of " + num(boxes) + " boxes is too large");

    auto inside = [&](const Key& key) {
        double far2 = 0.0;
        for (int c = 0; c < d; ++c) {
            const double a = static_cast<double>(key[static_cast<std::size_t>(c)]) * side;
            const double b = a + side;
            if (!ball && (a < 0.0 || b > 1.0)) return false;
            const double m = std::max(std::abs(a), std::abs(b));
            far2 += m * m;
        }
        return !ball || far2 <= 1.0;
    };

    Key key(static_cast<std::size_t>(d), lo);
    while (true) {
        if (inside(key) && !std::binary_search(occupied.begin(), occupied.end(), key)) return false;
        int c = 0;
        while (c < d && key[static_cast<std::size_t>(c)] == hi) key[static_cast<std::size_t>(c++)] = lo;
        if (c == d) break;
        ++key[static_cast<std::size_t>(c)];
    }
    return true;
}

ScalingFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit needs >= 2 paired points");
    const auto m = static_cast<double>(x.size());
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("log-log fit needs positive values");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit needs at least two distinct x values");
    ScalingFit fit;
    fit.points = lx.size();
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (lx.size() > 2) {
        double ssr = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
            ssr += e * e;
        }
        fit.slope_stderr = std::sqrt(ssr / (m - 2.0) / sxx);
    }
    return fit;
}

ScalingFit fit_scaling(const SweepResult& result, int k, std::size_t rule_index)
{
    std::vector<double> ns, means;
    std::vector<std::size_t> zero;
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
        const auto& c = result.cells[i];
        if (c.rule_index != rule_index) continue;
        if (k < 0 || static_cast<std::size_t>(k) >= c.degrees.size())
            throw std::invalid_argument("degree k outside the sweep's range");
        const auto& s = c.degrees[static_cast<std::size_t>(k)].betti;
        if (s.count == 0 || !(s.mean > 0.0)) {
            zero.push_back(i);
            continue;
        }
        ns.push_back(static_cast<double>(c.n));
        means.push_back(s.mean);
    }
    if (!zero.empty()) {
        std::string msg = "cells with zero mean beta_" + std::to_string(k) + ":";
        for (auto i : zero) msg += " n=" + std::to_string(result.cells[i].n);
        throw ScalingError(msg, zero);
    }
    auto distinct = ns;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3) throw std::invalid_argument("scaling fit needs >= 3 distinct n values");
    return fit_log_log(ns, means);
}

std::vector<double> vanishing_fraction(const SweepResult& result, int k)
{
    std::vector<double> out;
    for (const auto& c : result.cells) out.push_back(c.nonvanishing_fraction(k));
    return out;
}

double betti_exponent(ComplexType type, int k, int dim, double alpha)
{
    if (type == ComplexType::Cech) return (k + 2) - dim * alpha * (k + 1);
    return (2 * k + 2) - dim * alpha * (2 * k + 1);
}

double betti_normalization(ComplexType type, int k, int dim, double n, double r)
{
    if (type == ComplexType::Cech) return std::pow(n, k + 2) * std::pow(r, dim * (k + 1));
    return std::pow(n, 2 * k + 2) * std::pow(r, dim * (2 * k + 1));
}

}  // namespace rgc
