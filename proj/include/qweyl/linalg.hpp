#ifndef QWEYL_LINALG_HPP
#define QWEYL_LINALG_HPP

#include <complex>
#include <vector>

namespace qweyl {

using cplx = std::complex<double>;

// Dense row-major complex matrix, sized for the small Gram/constraint systems
// this project produces (d up to a few dozen).
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols), 0.0) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    cplx& at(int i, int j) { return a_[size_t(i) * size_t(cols_) + size_t(j)]; }
    cplx at(int i, int j) const { return a_[size_t(i) * size_t(cols_) + size_t(j)]; }

    Matrix adjoint() const;
    Matrix operator*(const Matrix& o) const;
    double max_abs() const;
    double frobenius() const;
    // max |A - A^H| entrywise; rows == cols required
    double hermitian_residual() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

// determinant by LU with partial pivoting
cplx lu_determinant(Matrix m);

// eigenvalues of a Hermitian matrix (cyclic complex Jacobi), ascending
std::vector<double> hermitian_eigenvalues(Matrix m);

// singular values (one-sided complex Jacobi), descending
std::vector<double> singular_values(Matrix m);

// number of singular values > rel_tol * sigma_max
int numeric_rank(const Matrix& m, double rel_tol = 1e-10);

// Ruiz row/column equilibration: divides rows and columns by the square root
// of their max magnitudes until balanced. Diagonal scaling preserves
// (non)singularity while removing the exponential row/column scales that
// filtered moment matrices carry.
Matrix ruiz_equilibrate(Matrix m, int iterations = 8);

} // namespace qweyl

#endif
