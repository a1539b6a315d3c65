#pragma once

#include "painleve/reduction.hpp"
#include "painleve/types.hpp"

#include <cstdint>
#include <random>

namespace painleve {

// Seeded draws for randomized checks. Every draw goes through one mt19937_64 stream.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi);
    Cplx complex(double re_half, double im_half);
    Vec complex_vector(Eigen::Index n, double re_half, double im_half);
    Mat complex_matrix(Eigen::Index n, double scale);

    // Rejection-sampled positions with pairwise gap >= min_gap.
    Vec separated(Eigen::Index n, double min_gap, double re_half = 2.0, double im_half = 0.5);

    struct PointShape {
        double min_gap = 0.3;
        double pos_re = 2.0;
        double pos_im = 0.5;
        double mom_re = 1.0;
        double mom_im = 0.5;
    };
    ReducedPoint reduced_point(Eigen::Index n, double g, Slice slice, double t = 0.0);
    ReducedPoint reduced_point(Eigen::Index n, double g, Slice slice, double t, const PointShape& shape);

    // embed(x) conjugated by G = I + Pi X Pi with Pi = I - 11^T/n, which fixes the level set.
    MatrixPhasePoint generic_level_set_point(const ReducedPoint& x, double spread = 0.3);

    TangentPair tangent(Eigen::Index n, double scale = 1.0);

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace painleve
