#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <vector>

namespace painleve {

template <class A, class B>
auto commutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return (a * b - b * a).eval();
}

template <class A, class B>
auto anticommutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return (a * b + b * a).eval();
}

template <class D>
double max_norm(const Eigen::MatrixBase<D>& m) {
    if (m.size() == 0) return 0.0;
    return static_cast<double>(m.cwiseAbs().maxCoeff());
}

template <class D>
auto off_diagonal(const Eigen::MatrixBase<D>& m) {
    auto r = m.eval();
    r.diagonal().setZero();
    return r;
}

// det(mu I - A) = sum_k c_k mu^k, returned leading coefficient first.
template <class D>
Eigen::Matrix<typename D::Scalar, Eigen::Dynamic, 1> char_poly_faddeev(const Eigen::MatrixBase<D>& a) {
    using S = typename D::Scalar;
    using M = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index n = a.rows();
    Eigen::Matrix<S, Eigen::Dynamic, 1> c(n + 1);
    c(0) = S(1);
    M mk = M::Zero(n, n);
    const M id = M::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        mk = (a * mk).eval() + c(k - 1) * id;
        c(k) = -(a * mk).trace() / S(static_cast<double>(k));
    }
    return c;
}

// Monic polynomial with the given roots, leading coefficient first.
template <class D>
Eigen::Matrix<typename D::Scalar, Eigen::Dynamic, 1> poly_from_roots(const Eigen::MatrixBase<D>& roots) {
    using S = typename D::Scalar;
    const Eigen::Index n = roots.size();
    Eigen::Matrix<S, Eigen::Dynamic, 1> c = Eigen::Matrix<S, Eigen::Dynamic, 1>::Zero(n + 1);
    c(0) = S(1);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index j = k + 1; j >= 1; --j) c(j) -= roots(k) * c(j - 1);
    }
    return c;
}

}  // namespace painleve
