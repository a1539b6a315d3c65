#include "painleve/sampling.hpp"

namespace painleve {

double Sampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

Cplx Sampler::complex(double re_half, double im_half) {
    const double re = uniform(-re_half, re_half);
    const double im = im_half > 0.0 ? uniform(-im_half, im_half) : 0.0;
    return {re, im};
}

Vec Sampler::complex_vector(Eigen::Index n, double re_half, double im_half) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex(re_half, im_half);
    return v;
}

Mat Sampler::complex_matrix(Eigen::Index n, double scale) {
    Mat m(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) m(i, j) = complex(scale, scale);
    return m;
}

Vec Sampler::separated(Eigen::Index n, double min_gap, double re_half, double im_half) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Vec v(n);
        Eigen::Index k = 0;
        int tries = 0;
        while (k < n && tries < 1000) {
            ++tries;
            const Cplx z = complex(re_half, im_half);
            bool ok = true;
            for (Eigen::Index j = 0; j < k && ok; ++j) ok = std::abs(z - v(j)) >= min_gap;
            if (ok) v(k++) = z;
        }
        if (k == n) return v;
    }
    throw Error(ErrorCode::InvalidArgument, "Sampler::separated: box too small for requested gap");
}

ReducedPoint Sampler::reduced_point(Eigen::Index n, double g, Slice slice, double t) {
    return reduced_point(n, g, slice, t, PointShape{});
}

ReducedPoint Sampler::reduced_point(Eigen::Index n, double g, Slice slice, double t, const PointShape& s) {
    ReducedPoint x;
    x.positions = separated(n, s.min_gap, s.pos_re, s.pos_im);
    x.momenta = complex_vector(n, s.mom_re, s.mom_im);
    x.g = Coupling(g);
    x.t = t;
    x.slice = slice;
    return x;
}

MatrixPhasePoint Sampler::generic_level_set_point(const ReducedPoint& x, double spread) {
    MatrixPhasePoint pt = embed(x);
    const Eigen::Index n = x.dim();
    const Mat Pi = Mat::Identity(n, n) - Mat::Ones(n, n) / static_cast<double>(n);
    const Mat G = Mat::Identity(n, n) + Pi * complex_matrix(n, spread) * Pi;
    const Eigen::PartialPivLU<Mat> lu(G);
    pt.q = lu.solve(pt.q * G);
    pt.p = lu.solve(pt.p * G);
    return pt;
}

TangentPair Sampler::tangent(Eigen::Index n, double scale) {
    TangentPair u;
    u.dq = complex_matrix(n, scale);
    u.dp = complex_matrix(n, scale);
    return u;
}

}  // namespace painleve
