#pragma once

#include "painleve/reduction.hpp"
#include "painleve/types.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace painleve {

// Which P_IV pair to build. Other kinds ignore it.
enum class LaxVariant { Corrected, AsPrinted };

// 2x2 block matrix of n x n blocks; dense() orders indices as (matter) x (auxiliary).
struct BlockMat {
    Mat b11, b12, b21, b22;
    Mat dense() const;
};

struct LaxSample {
    Cplx lambda;
    Mat L;
    std::optional<Mat> M;
};

struct SpectralSample {
    Cplx lambda;
    Vec coeffs;  // det(mu - L(lambda)), leading coefficient first
};

// True for kinds whose flow is isospectral (frozen time, or inherently autonomous).
bool is_isospectral(const SystemSpec& spec);

LaxSample lax_pair(const SystemSpec& spec, const MatrixPhasePoint& pt, Cplx lambda,
                   LaxVariant variant = LaxVariant::Corrected);
LaxSample reduced_lax(const SystemSpec& spec, const ReducedPoint& x, Cplx lambda,
                      LaxVariant variant = LaxVariant::Corrected);

// Compensating gauge term F = C^{-1} dC/dt at the slice representative.
Mat gauge_F(const SystemSpec& spec, const ReducedPoint& x);
// M of the reduced pair: M(embed x) - F (x) Id_2.
Mat reduced_M(const SystemSpec& spec, const ReducedPoint& x, Cplx lambda, LaxVariant variant = LaxVariant::Corrected);

struct ZeroCurvatureOptions {
    LaxVariant variant = LaxVariant::Corrected;
    double eom_perturbation = 0.0;  // added as eps * Id to the p-equation
    int substeps = 32;              // fine RK4 steps per sample offset
};

// max-norm of A_t - B_lambda + [A, B] (or L_t + [L, M] when isospectral), with A_t taken
// along the integrated flow and both derivatives by Richardson-extrapolated central differences.
double zero_curvature_residual(const SystemSpec& spec, const MatrixPhasePoint& pt, Cplx lambda, double h,
                               ZeroCurvatureOptions opt = {});
// Same along the reduced flow, using the gauge-corrected reduced pair.
double reduced_zero_curvature_residual(const SystemSpec& spec, const ReducedPoint& x, Cplx lambda, double h,
                                       ZeroCurvatureOptions opt = {});

Vec eigenvalues(const Mat& L);
Vec char_poly(const Mat& L);
Vec char_poly_faddeev_leverrier(const Mat& L);

// Coefficientwise relative deviation; coefficient k is scaled by max(|a_k|, |b_k|, rho^k).
double coeff_deviation(const Vec& a, const Vec& b, double rho);

using LaxSource = std::variant<MatrixPhasePoint, ReducedPoint>;

SpectralSample spectral_sample(const SystemSpec& spec, const LaxSource& src, Cplx lambda,
                               LaxVariant variant = LaxVariant::Corrected);

struct SpectralMatch {
    bool ok;
    double max_deviation;
};

SpectralMatch spectral_match(const SystemSpec& spec, const LaxSource& a, const LaxSource& b,
                             const std::vector<Cplx>& grid, double tol, LaxVariant variant = LaxVariant::Corrected);

// 10 points on |lambda| = 1/2 and 10 on |lambda| = 2, rotated off the axes.
std::vector<Cplx> default_lambda_grid();

// Laurent coefficients of f on |lambda| = r by a discrete Fourier transform on m points.
std::vector<Cplx> laurent_coefficients(const std::vector<Cplx>& samples, double r, int min_power);

}  // namespace painleve
