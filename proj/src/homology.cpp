#include "rgc/homology.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rgc {

namespace {

bool is_prime(std::uint32_t p)
{
    if (p < 2) return false;
    for (std::uint32_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

// target += factor * source, both sorted by row; zero entries dropped.
void axpy(std::vector<MatrixEntry>& target, std::uint32_t factor, const std::vector<MatrixEntry>& source,
          const PrimeField& field, std::vector<MatrixEntry>& scratch)
{
    scratch.clear();
    auto t = target.begin();
    auto s = source.begin();
    while (t != target.end() || s != source.end()) {
        if (s == source.end() || (t != target.end() && t->row < s->row)) {
            scratch.push_back(*t++);
        } else if (t == target.end() || s->row < t->row) {
            scratch.push_back({s->row, field.mul(factor, s->value)});
            ++s;
        } else {
            const auto v = field.add(t->value, field.mul(factor, s->value));
            if (v != 0) scratch.push_back({t->row, v});
            ++t;
            ++s;
        }
    }
    target.swap(scratch);
}

}  // namespace

PrimeField::PrimeField(std::uint32_t p) : p_(p)
{
    if (p > 65536 || !is_prime(p)) throw std::invalid_argument("field modulus must be a prime <= 65536");
}

std::uint32_t PrimeField::inv(std::uint32_t a) const
{
    if (a % p_ == 0) throw std::domain_error("inverse of zero");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a % p_;
    for (std::uint32_t e = p_ - 2; e > 0; e >>= 1) {
        if (e & 1U) result = result * base % p_;
        base = base * base % p_;
    }
    return static_cast<std::uint32_t>(result);
}

std::size_t SparseMatrix::nonzeros() const
{
    std::size_t total = 0;
    for (const auto& c : columns) total += c.size();
    return total;
}

BoundaryMatrix boundary_matrix(const SimplicialComplex& complex, int k, const PrimeField& field)
{
    if (k < 1 || k > complex.max_dim())
        throw std::out_of_range("boundary_matrix: k=" + std::to_string(k) + " outside stored range [1, " +
                                std::to_string(complex.max_dim()) + "]");
    BoundaryMatrix out;
    out.k = k;
    out.p = field.modulus();
    out.matrix.rows = complex.num_faces(k - 1);
    out.matrix.columns.resize(complex.num_faces(k));

    std::vector<Vertex> facet(static_cast<std::size_t>(k));
    for (std::size_t j = 0; j < complex.num_faces(k); ++j) {
        const auto f = complex.face(k, j);
        auto& column = out.matrix.columns[j];
        column.reserve(f.size());
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            std::size_t w = 0;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (i != drop) facet[w++] = f[i];
            const auto row = complex.find(facet);
            if (!row) throw std::invalid_argument("complex is not downward closed");
            const std::uint32_t sign = (drop % 2 == 0) ? 1U : field.neg(1U);
            column.push_back({static_cast<std::uint32_t>(*row), sign});
        }
        std::sort(column.begin(), column.end(), [](auto a, auto b) { return a.row < b.row; });
    }
    return out;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const PrimeField& field)
{
    if (a.cols() != b.rows) throw std::invalid_argument("multiply: inner dimensions differ");
    SparseMatrix out;
    out.rows = a.rows;
    out.columns.resize(b.cols());
    std::vector<MatrixEntry> scratch;
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (const auto& e : b.columns[j]) axpy(out.columns[j], e.value, a.columns[e.row], field, scratch);
    return out;
}

std::size_t matrix_rank(const SparseMatrix& m, const PrimeField& field, const RankOptions& options,
                        const std::vector<bool>* skip, std::vector<std::uint32_t>* pivot_rows)
{
    constexpr std::uint32_t kNone = ~0U;
    std::vector<std::uint32_t> pivot_col(m.rows, kNone);
    std::vector<std::vector<MatrixEntry>> reduced(m.cols());
    std::vector<MatrixEntry> scratch;
    std::size_t stored = 0;
    std::size_t rank = 0;

    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (skip && (*skip)[j]) continue;
        auto column = m.columns[j];
        while (!column.empty()) {
            const auto low = column.back();
            const auto other = pivot_col[low.row];
            if (other == kNone) break;
            const auto& pivot = reduced[other];
            const auto factor = field.neg(field.mul(low.value, field.inv(pivot.back().value)));
            axpy(column, factor, pivot, field, scratch);
        }
        if (column.empty()) continue;
        stored += column.size();
        if (stored > options.max_nonzeros)
            throw ResourceError("elimination exceeded " + std::to_string(options.max_nonzeros) + " nonzeros");
        pivot_col[column.back().row] = static_cast<std::uint32_t>(j);
        if (pivot_rows) pivot_rows->push_back(column.back().row);
        reduced[j] = std::move(column);
        ++rank;
    }
    return rank;
}

BettiProfile betti_numbers(const SimplicialComplex& complex, int k_max, const PrimeField& field,
                           const HomologyOptions& options)
{
    if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
    BettiProfile profile;
    profile.field = field.modulus();
    profile.reduced = options.reduced;
    for (int k = 0; k <= k_max + 1; ++k) profile.face_counts.push_back(complex.num_faces(k));
    profile.capped = complex.max_dim() < k_max + 1 && complex.truncated();

    // ranks[k] = rank of d_k; d_0 and maps above the stored range vanish.
    const int top = std::min(k_max + 1, complex.max_dim());
    std::vector<std::size_t> ranks(static_cast<std::size_t>(k_max) + 2, 0);
    // Clearing: a k-face that is the pivot of a reduced (k+1)-column is a
    // boundary, so its own column reduces to zero.
    std::vector<bool> cleared;
    for (int k = top; k >= 1; --k) {
        const auto d = boundary_matrix(complex, k, field);
        std::vector<std::uint32_t> pivots;
        ranks[static_cast<std::size_t>(k)] =
            matrix_rank(d.matrix, field, options.rank, cleared.empty() ? nullptr : &cleared, &pivots);
        cleared.assign(d.matrix.rows, false);
        for (auto row : pivots) cleared[row] = true;
    }

    for (int k = 0; k <= k_max; ++k) {
        const auto f = static_cast<long long>(complex.num_faces(k));
        auto b = f - static_cast<long long>(ranks[static_cast<std::size_t>(k)]) -
                 static_cast<long long>(ranks[static_cast<std::size_t>(k) + 1]);
        if (k == 0 && options.reduced && complex.num_faces(0) > 0) b -= 1;
        profile.betti.push_back(b);
    }
    return profile;
}

std::vector<int> field_anomalies(const SimplicialComplex& complex, int k_max, const PrimeField& a, const PrimeField& b)
{
    const auto ba = betti_numbers(complex, k_max, a).betti;
    const auto bb = betti_numbers(complex, k_max, b).betti;
    std::vector<int> out;
    for (std::size_t k = 0; k < ba.size(); ++k)
        if (ba[k] != bb[k]) out.push_back(static_cast<int>(k));
    return out;
}

long long euler_characteristic(const SimplicialComplex& complex)
{
    long long chi = 0;
    for (int k = 0; k <= complex.max_dim(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(complex.num_faces(k));
    return chi;
}

}  // namespace rgc
