#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgc/census.hpp"
#include "rgc/homology.hpp"
#include "rgc/morse.hpp"

namespace rgc {

inline constexpr std::string_view kVersion = "0.1.0";

/// r as a function of n: c n^{-alpha}, c (log n / n)^{1/d}, or a constant.
struct RadiusRule {
    enum class Kind { PowerLaw, ConnectivityScale, Fixed };
    Kind kind = Kind::Fixed;
    double c = 1.0;
    double alpha = 1.0;
    double r = 0.1;

    static RadiusRule power_law(double c, double alpha) { return {Kind::PowerLaw, c, alpha, 0.0}; }
    static RadiusRule connectivity_scale(double c) { return {Kind::ConnectivityScale, c, 0.0, 0.0}; }
    static RadiusRule fixed(double r) { return {Kind::Fixed, 1.0, 0.0, r}; }

    double evaluate(std::size_t n, int dim) const;
    void validate() const;
};

struct SweepConfig {
    Density density;
    ComplexType complex = ComplexType::Rips;
    int k_max = 1;
    int max_dim = 2;
    std::vector<std::size_t> n_values;
    std::vector<RadiusRule> radii;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::string output;
    std::uint32_t field = 2;
    unsigned workers = 1;

    bool compute_betti = true;
    bool compute_morse = true;   // Rips only
    bool compute_census = true;
    bool compute_coverage = true;  // bounded densities only
    bool validate_morse = false;   // structural check of every gradient field
    std::size_t max_faces = kDefaultFaceBudget;

    /// Forces every trial of a cell to reuse trial 0's seed.
    bool fixed_trial_seed = false;

    void validate() const;
};

struct TrialRecord {
    std::size_t n = 0;
    double r = 0.0;
    double W = 0.0;  // n r^d
    std::size_t rule_index = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::optional<BettiProfile> betti;
    std::optional<CriticalCensus> critical;
    std::optional<CensusReport> census;
    std::optional<bool> covered;
    std::optional<bool> morse_valid;
    double wall_seconds = 0.0;
    bool failed = false;
    std::string error;
};

/// Seed of trial `trial` at size n.
std::uint64_t trial_seed(const SweepConfig& config, std::size_t n, std::size_t trial);

/// Thrown when a trial aborts; names the cell.
class TrialError : public ResourceError {
public:
    using ResourceError::ResourceError;
};

TrialRecord run_trial(const SweepConfig& config, std::size_t n, std::size_t trial, std::size_t rule_index = 0);

/// Welford accumulator with sample variance.
struct RunningStats {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    double min = 0.0;
    double max = 0.0;

    void add(double x);
    double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

struct DegreeStats {
    RunningStats betti;
    RunningStats critical;
    RunningStats o_tilde;
    RunningStats s_tilde;
    std::size_t nonvanishing = 0;         // trials with beta_k > 0
    std::size_t crosspolytope_present = 0;  // trials with at least one O_k component
};

struct CellSummary {
    std::size_t n = 0;
    double r = 0.0;
    double W = 0.0;
    std::size_t rule_index = 0;
    std::size_t completed = 0;
    std::size_t failed = 0;
    std::vector<std::string> errors;
    std::size_t covered = 0;
    std::size_t coverage_evaluated = 0;
    std::vector<DegreeStats> degrees;  // k = 0..k_max

    double coverage_fraction() const;
    double nonvanishing_fraction(int k) const;
};

struct SweepResult {
    SweepConfig config;
    std::vector<CellSummary> cells;   // n-major, then radius rule
    std::vector<TrialRecord> records; // same order, trials innermost
};

/// Runs every (n, rule, trial); aggregates are independent of `workers`.
SweepResult run_sweep(const SweepConfig& config, std::ostream* log = nullptr);

/// Aggregates completed records into cells in a fixed order.
std::vector<CellSummary> aggregate(const SweepConfig& config, const std::vector<TrialRecord>& records);

void write_sweep_csv(const SweepResult& result, std::ostream& out);
std::string sweep_csv(const SweepResult& result);

/// True iff every grid box of side r/(4 sqrt d) inside the domain holds a sample.
bool coverage_check(const PointCloud& cloud, double r, const Density& domain);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    std::size_t points = 0;
};

class ScalingError : public std::runtime_error {
public:
    ScalingError(const std::string& msg, std::vector<std::size_t> zero_cells)
        : std::runtime_error(msg), zero_cells(std::move(zero_cells))
    {
    }
    std::vector<std::size_t> zero_cells;
};

/// Least-squares line through (log x, log y).
ScalingFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y);

/// Slope of log mean beta_k against log n over the cells of one radius rule.
ScalingFit fit_scaling(const SweepResult& result, int k, std::size_t rule_index = 0);

/// Fraction of completed trials with beta_k > 0, per cell.
std::vector<double> vanishing_fraction(const SweepResult& result, int k);

/// Exponent of n in E[beta_k] under r = c n^{-alpha}: (2k+2) - d alpha (2k+1) for Rips,
/// (k+2) - d alpha (k+1) for Cech.
double betti_exponent(ComplexType type, int k, int dim, double alpha);

/// n^{2k+2} r^{d(2k+1)} (Rips) or n^{k+2} r^{d(k+1)} (Cech).
double betti_normalization(ComplexType type, int k, int dim, double n, double r);

}  // namespace rgc
