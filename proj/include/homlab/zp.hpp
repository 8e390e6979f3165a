#ifndef HOMLAB_ZP_HPP
#define HOMLAB_ZP_HPP

#include <homlab/errors.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace homlab {

inline bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline unsigned zp_norm(long long x, unsigned p) {
    long long r = x % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<unsigned>(r);
}

unsigned zp_inverse(unsigned a, unsigned p); // throws solve_failure on a == 0

/// Dense matrix over Z_p with elimination. Pivoting picks the first row with
/// a nonzero residue in the column (deterministic).
class ZpMat {
public:
    ZpMat(int rows, int cols, unsigned p);

    unsigned& at(int r, int c) { return a_[r][c]; }
    unsigned at(int r, int c) const { return a_[r][c]; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    unsigned p() const { return p_; }

    unsigned determinant() const; // square only
    bool nonsingular() const;

    /// Solve x * M = v (row vector form). nullopt when inconsistent; the
    /// unique solution when M is nonsingular.
    std::optional<std::vector<unsigned>> solve_left(const std::vector<unsigned>& v) const;

private:
    int rows_, cols_;
    unsigned p_;
    std::vector<std::vector<unsigned>> a_;
};

} // namespace homlab

#endif
