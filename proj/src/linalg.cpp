#include "letterfit/linalg.hpp"

#include <cmath>

#include "letterfit/errors.hpp"

namespace letterfit::linalg {

bool solve_inplace(std::vector<double>& A, std::vector<double>& b, int k) {
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(A[r * k + col]) > std::abs(A[pivot * k + col]))
                pivot = r;
        if (std::abs(A[pivot * k + col]) < 1e-300)
            return false;
        if (pivot != col) {
            for (int c = col; c < k; ++c)
                std::swap(A[col * k + c], A[pivot * k + c]);
            std::swap(b[col], b[pivot]);
        }
        for (int r = col + 1; r < k; ++r) {
            double factor = A[r * k + col] / A[col * k + col];
            if (factor == 0.0)
                continue;
            for (int c = col; c < k; ++c)
                A[r * k + c] -= factor * A[col * k + c];
            b[r] -= factor * b[col];
        }
    }
    for (int r = k - 1; r >= 0; --r) {
        double acc = b[r];
        for (int c = r + 1; c < k; ++c)
            acc -= A[r * k + c] * b[c];
        b[r] = acc / A[r * k + r];
    }
    return true;
}

std::vector<double> ols(const std::vector<double>& X, const std::vector<double>& y, int m, int k) {
    if (m < k)
        throw InsufficientDataError("least squares needs at least as many rows as coefficients");
    std::vector<double> XtX(k * k, 0.0), Xty(k, 0.0);
    for (int i = 0; i < m; ++i) {
        for (int a = 0; a < k; ++a) {
            Xty[a] += X[i * k + a] * y[i];
            for (int b = 0; b < k; ++b)
                XtX[a * k + b] += X[i * k + a] * X[i * k + b];
        }
    }
    if (!solve_inplace(XtX, Xty, k))
        throw InsufficientDataError("singular least-squares design");
    return Xty;
}

} // namespace letterfit::linalg
