#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace painleve {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr Cplx kI{0.0, 1.0};

enum class ErrorCode {
    DimensionMismatch,
    DegenerateSpectrum,
    ZeroColumnSum,
    NonConvergedEigensolve,
    NotOnLevelSet,
    OffDiagonalMismatch,
    ParticleCollision,
    PoleAtLambda,
    Overflow,
    NonScalarInput,
    ConfigParse,
    InvalidArgument,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct MatrixPhasePoint {
    Mat q;
    Mat p;
    double t = 0.0;

    Eigen::Index dim() const { return q.rows(); }
    void validate() const;
};

struct TangentPair {
    Mat dq;
    Mat dp;
};

enum class SystemKind { P_I, P_II, P_II_poly, P_IV, HarmOsc, Free };

const char* to_string(SystemKind k);
SystemKind system_kind_from_string(const std::string& s);

struct Params {
    Cplx theta{0.0};
    Cplx theta0{0.0};
    Cplx theta1{0.0};
    Cplx alpha{0.0};
    std::optional<double> tau;
    double omega = 1.0;
};

struct SystemSpec {
    SystemKind kind = SystemKind::Free;
    bool autonomous = false;
    Params params;

    // Time entering the Hamiltonian: tau when frozen, t otherwise.
    double time(double t) const { return autonomous ? *params.tau : t; }
    void validate() const;
};

class Coupling {
public:
    explicit Coupling(double g);
    double value() const noexcept { return g_; }
    operator double() const noexcept { return g_; }

private:
    double g_;
};

Mat moment_map(const MatrixPhasePoint& pt);
Mat level_set_target(Eigen::Index n, Coupling g);

struct LevelSetCheck {
    bool ok;
    double deviation;
};

LevelSetCheck on_level_set(const MatrixPhasePoint& pt, Coupling g, double tol);

Cplx symplectic_pairing(const TangentPair& u, const TangentPair& w);

}  // namespace painleve
