#include "qweyl/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "qweyl/errors.hpp"

namespace qweyl {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = std::conj(at(i, j));
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorKind::Domain, "matrix shape mismatch");
    Matrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const cplx v = at(i, k);
            if (v == cplx(0.0)) continue;
            for (int j = 0; j < o.cols_; ++j) m.at(i, j) += v * o.at(k, j);
        }
    return m;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double Matrix::frobenius() const {
    double s = 0.0;
    for (const cplx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double Matrix::hermitian_residual() const {
    if (rows_ != cols_) throw Error(ErrorKind::Domain, "hermitian_residual on non-square matrix");
    double m = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
    return m;
}

cplx lu_determinant(Matrix m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::Domain, "determinant of non-square matrix");
    const int n = m.rows();
    // extended precision keeps ill-scaled moment determinants honest
    using lcplx = std::complex<long double>;
    std::vector<lcplx> a(size_t(n) * size_t(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[size_t(i) * size_t(n) + size_t(j)] = lcplx(m.at(i, j).real(), m.at(i, j).imag());
    const auto at = [&](int i, int j) -> lcplx& { return a[size_t(i) * size_t(n) + size_t(j)]; };

    lcplx det = 1.0L;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        long double best = std::abs(at(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(at(i, k)) > best) {
                best = std::abs(at(i, k));
                piv = i;
            }
        if (best == 0.0L) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(k, j));
            det = -det;
        }
        det *= at(k, k);
        for (int i = k + 1; i < n; ++i) {
            const lcplx f = at(i, k) / at(k, k);
            for (int j = k; j < n; ++j) at(i, j) -= f * at(k, j);
        }
    }
    return cplx(double(det.real()), double(det.imag()));
}

namespace {

struct JacobiRotation {
    double c, s;
    cplx phase; // e^{i arg(offdiag)}
};

// rotation zeroing the off-diagonal of the Hermitian 2x2 [[a, b],[conj(b), d]]
JacobiRotation make_rotation(double a, double d, cplx b) {
    const double ab = std::abs(b);
    JacobiRotation r{1.0, 0.0, b / ab};
    const double tau = (d - a) / (2.0 * ab);
    double t;
    if (tau >= 0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    r.c = 1.0 / std::sqrt(1.0 + t * t);
    r.s = t * r.c;
    return r;
}

} // namespace

std::vector<double> hermitian_eigenvalues(Matrix m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::Domain, "eigenvalues of non-square matrix");
    const int n = m.rows();
    const double scale = std::max(m.max_abs(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(m.at(p, q)));
        if (off <= 1e-15 * scale) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const cplx b = m.at(p, q);
                if (std::abs(b) <= 1e-18 * scale) continue;
                const auto r = make_rotation(m.at(p, p).real(), m.at(q, q).real(), b);
                // unitary J: J_pp = c, J_pq = s*phase, J_qp = -s*conj(phase), J_qq = c
                for (int k = 0; k < n; ++k) {
                    const cplx akp = m.at(k, p), akq = m.at(k, q);
                    m.at(k, p) = r.c * akp - r.s * std::conj(r.phase) * akq;
                    m.at(k, q) = r.s * r.phase * akp + r.c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = m.at(p, k), aqk = m.at(q, k);
                    m.at(p, k) = r.c * apk - r.s * r.phase * aqk;
                    m.at(q, k) = r.s * std::conj(r.phase) * apk + r.c * aqk;
                }
                m.at(p, q) = 0.0;
                m.at(q, p) = 0.0;
            }
    }
    std::vector<double> ev(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ev[size_t(i)] = m.at(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::vector<double> singular_values(Matrix m) {
    if (m.rows() < m.cols()) m = m.adjoint();
    const int rows = m.rows(), cols = m.cols();
    if (cols == 0) return {};
    const double scale = std::max(m.max_abs(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < cols; ++p)
            for (int q = p + 1; q < cols; ++q) {
                double alpha = 0.0, beta = 0.0;
                cplx gamma = 0.0;
                for (int k = 0; k < rows; ++k) {
                    alpha += std::norm(m.at(k, p));
                    beta += std::norm(m.at(k, q));
                    gamma += std::conj(m.at(k, p)) * m.at(k, q);
                }
                if (std::abs(gamma) <= 1e-16 * std::sqrt(alpha * beta) + 1e-300 * scale) continue;
                rotated = true;
                const auto r = make_rotation(alpha, beta, gamma);
                for (int k = 0; k < rows; ++k) {
                    const cplx kp = m.at(k, p), kq = m.at(k, q);
                    m.at(k, p) = r.c * kp - r.s * std::conj(r.phase) * kq;
                    m.at(k, q) = r.s * r.phase * kp + r.c * kq;
                }
            }
        if (!rotated) break;
    }
    std::vector<double> sv(static_cast<size_t>(cols));
    for (int j = 0; j < cols; ++j) {
        double s = 0.0;
        for (int k = 0; k < rows; ++k) s += std::norm(m.at(k, j));
        sv[size_t(j)] = std::sqrt(s);
    }
    std::sort(sv.rbegin(), sv.rend());
    return sv;
}

Matrix ruiz_equilibrate(Matrix m, int iterations) {
    const int r = m.rows(), c = m.cols();
    for (int it = 0; it < iterations; ++it) {
        bool balanced = true;
        for (int i = 0; i < r; ++i) {
            double mx = 0.0;
            for (int j = 0; j < c; ++j) mx = std::max(mx, std::abs(m.at(i, j)));
            if (mx == 0.0) continue;
            const double s = std::sqrt(mx);
            if (s > 1.001 || s < 0.999) balanced = false;
            for (int j = 0; j < c; ++j) m.at(i, j) /= s;
        }
        for (int j = 0; j < c; ++j) {
            double mx = 0.0;
            for (int i = 0; i < r; ++i) mx = std::max(mx, std::abs(m.at(i, j)));
            if (mx == 0.0) continue;
            const double s = std::sqrt(mx);
            if (s > 1.001 || s < 0.999) balanced = false;
            for (int i = 0; i < r; ++i) m.at(i, j) /= s;
        }
        if (balanced) break;
    }
    return m;
}

int numeric_rank(const Matrix& m, double rel_tol) {
    const auto sv = singular_values(m);
    if (sv.empty() || sv.front() == 0.0) return 0;
    int r = 0;
    for (double s : sv)
        if (s > rel_tol * sv.front()) ++r;
    return r;
}

} // namespace qweyl
