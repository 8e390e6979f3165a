#include <homlab/zp.hpp>

namespace homlab {

unsigned zp_inverse(unsigned a, unsigned p) {
    a %= p;
    if (a == 0) throw solve_failure("0 has no inverse mod " + std::to_string(p));
    // Fermat: a^(p-2)
    unsigned long long base = a, acc = 1;
    unsigned e = p - 2;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<unsigned>(acc);
}

ZpMat::ZpMat(int rows, int cols, unsigned p) : rows_(rows), cols_(cols), p_(p) {
    if (!is_prime(p)) throw error("modulus " + std::to_string(p) + " is not prime");
    a_.assign(rows, std::vector<unsigned>(cols, 0));
}

unsigned ZpMat::determinant() const {
    if (rows_ != cols_) throw error("determinant of a non-square matrix");
    auto m = a_;
    unsigned long long det = 1;
    for (int col = 0; col < cols_; ++col) {
        int pivot = -1;
        for (int r = col; r < rows_; ++r)
            if (m[r][col] % p_ != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = det * (p_ - 1) % p_;
        }
        det = det * m[col][col] % p_;
        unsigned inv = zp_inverse(m[col][col], p_);
        for (int r = col + 1; r < rows_; ++r) {
            if (m[r][col] == 0) continue;
            unsigned long long f = static_cast<unsigned long long>(m[r][col]) * inv % p_;
            for (int c = col; c < cols_; ++c)
                m[r][c] = static_cast<unsigned>((m[r][c] + (p_ - f) * m[col][c]) % p_);
        }
    }
    return static_cast<unsigned>(det);
}

bool ZpMat::nonsingular() const {
    return determinant() != 0;
}

std::optional<std::vector<unsigned>> ZpMat::solve_left(const std::vector<unsigned>& v) const {
    // x * M = v  <=>  M^T x^T = v^T; eliminate on the transpose
    int n = rows_, m = cols_;
    if (static_cast<int>(v.size()) != m) throw error("solve_left: vector length mismatch");
    std::vector<std::vector<unsigned>> t(m, std::vector<unsigned>(n + 1, 0));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < m; ++c) t[c][r] = a_[r][c] % p_;
    for (int c = 0; c < m; ++c) t[c][n] = v[c] % p_;

    std::vector<int> pivot_col_of_row(m, -1);
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int pivot = -1;
        for (int r = rank; r < m; ++r)
            if (t[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(t[pivot], t[rank]);
        unsigned inv = zp_inverse(t[rank][col], p_);
        for (int c = 0; c <= n; ++c)
            t[rank][c] = static_cast<unsigned>(static_cast<unsigned long long>(t[rank][c]) * inv % p_);
        for (int r = 0; r < m; ++r) {
            if (r == rank || t[r][col] == 0) continue;
            unsigned long long f = t[r][col];
            for (int c = 0; c <= n; ++c)
                t[r][c] = static_cast<unsigned>((t[r][c] + (p_ - f) * t[rank][c]) % p_);
        }
        pivot_col_of_row[rank] = col;
        ++rank;
    }
    for (int r = rank; r < m; ++r)
        if (t[r][n] != 0) return std::nullopt; // inconsistent
    std::vector<unsigned> x(n, 0);
    for (int r = 0; r < rank; ++r) x[pivot_col_of_row[r]] = t[r][n];
    return x;
}

} // namespace homlab
