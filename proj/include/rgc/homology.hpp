#pragma once

#include <cstdint>
#include <vector>

#include "rgc/complex.hpp"

namespace rgc {

/// Coefficients mod a prime p <= 2^16.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p = 2);

    std::uint32_t modulus() const { return p_; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p_; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p_ - b) % p_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const
    {
        return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t inv(std::uint32_t a) const;

private:
    std::uint32_t p_;
};

struct MatrixEntry {
    std::uint32_t row;
    std::uint32_t value;
    friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Sparse column matrix over a prime field; columns hold entries sorted by row.
struct SparseMatrix {
    std::size_t rows = 0;
    std::vector<std::vector<MatrixEntry>> columns;

    std::size_t cols() const { return columns.size(); }
    std::size_t nonzeros() const;
};

/// Boundary map from k-faces (columns) to (k-1)-faces (rows), both indexed
/// in the complex's stored order.
struct BoundaryMatrix {
    int k = 0;
    std::uint32_t p = 2;
    SparseMatrix matrix;
};

struct RankOptions {
    /// Ceiling on stored nonzeros during elimination.
    std::size_t max_nonzeros = 200'000'000;
};

BoundaryMatrix boundary_matrix(const SimplicialComplex& complex, int k, const PrimeField& field);

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const PrimeField& field);

/// Rank by column reduction with lowest-row pivots. Columns listed in
/// `skip` are known to reduce to zero and are not processed. When `pivot_rows`
/// is non-null it receives the pivot row of every surviving column.
std::size_t matrix_rank(const SparseMatrix& m, const PrimeField& field, const RankOptions& options = {},
                        const std::vector<bool>* skip = nullptr, std::vector<std::uint32_t>* pivot_rows = nullptr);

struct BettiProfile {
    std::vector<long long> betti;          // beta_0 .. beta_{k_max}
    std::vector<std::size_t> face_counts;  // f_0 .. f_{k_max+1}
    std::uint32_t field = 2;
    bool capped = false;   // faces of dimension k_max+1 may be missing
    bool reduced = false;
};

struct HomologyOptions {
    bool reduced = false;
    RankOptions rank;
};

/// beta_k = f_k - rank d_k - rank d_{k+1}, for k = 0..k_max.
BettiProfile betti_numbers(const SimplicialComplex& complex, int k_max, const PrimeField& field = PrimeField(2),
                           const HomologyOptions& options = {});

/// Degrees k <= k_max where the Betti numbers over two fields differ. A
/// nonempty result signals torsion in the integral homology.
std::vector<int> field_anomalies(const SimplicialComplex& complex, int k_max, const PrimeField& a = PrimeField(2),
                                 const PrimeField& b = PrimeField(3));

/// Sum of (-1)^k f_k over stored faces.
long long euler_characteristic(const SimplicialComplex& complex);

}  // namespace rgc
