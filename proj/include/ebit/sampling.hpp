#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ebit/errors.hpp"
#include "ebit/numeric.hpp"
#include "ebit/schmidt.hpp"
#include "ebit/states.hpp"

// Seeded random state generation. Each draw derives its own substream from
// (seed, trial index), so trial k is reproducible regardless of how many
// other trials ran — the property the axiom harness and the optimizer
// restarts both rely on.

namespace ebit {

inline Vector gaussian_complex_vector(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
    return v;
}

inline Vector haar_ket(std::mt19937_64& rng, int n) {
    Vector v = gaussian_complex_vector(rng, n);
    return v / v.norm();
}

// Columns of Q from the QR of a Ginibre matrix: Haar-distributed isometry.
inline Matrix haar_isometry(std::mt19937_64& rng, int rows, int cols) {
    Matrix g(rows, cols);
    std::normal_distribution<double> gd(0.0, 1.0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = cplx(gd(rng), gd(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ() * Matrix::Identity(rows, cols);
}

// Flat (Dirichlet(1,...,1)) sample on the probability simplex, sorted.
inline SchmidtVector dirichlet_osc(std::mt19937_64& rng, int d) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> x(static_cast<size_t>(d));
    double s = 0.0;
    for (double& v : x) s += (v = e(rng));
    for (double& v : x) v /= s;
    return SchmidtVector(std::move(x));
}

inline PureState haar_pure(std::mt19937_64& rng, Dims dims) {
    return PureState(haar_ket(rng, dims.total()), dims);
}

enum class Distribution { dirichlet_flat, haar_amplitudes };

// Deterministic stream of random bipartite states on d x d with
// d drawn uniformly from [dim_min, dim_max] per trial.
struct StateSampler {
    std::uint64_t seed = 0;
    int dim_min = 2;
    int dim_max = 4;
    Distribution distribution = Distribution::dirichlet_flat;

    int draw_dim(std::mt19937_64& rng) const {
        if (dim_min < 1 || dim_max < dim_min)
            fail(errc::out_of_range, "StateSampler: bad dim_range");
        return std::uniform_int_distribution<int>(dim_min, dim_max)(rng);
    }

    SchmidtVector sample_osc(std::uint64_t trial) const {
        auto rng = seeded_rng(seed, trial);
        int d = draw_dim(rng);
        if (distribution == Distribution::dirichlet_flat) return dirichlet_osc(rng, d);
        return osc(haar_pure(rng, {d, d}));
    }

    PureState sample_pure(std::uint64_t trial) const {
        auto rng = seeded_rng(seed, trial);
        int d = draw_dim(rng);
        return haar_pure(rng, {d, d});
    }
};

} // namespace ebit
