#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "maxarc/gf2m.hpp"

namespace maxarc {

// Dense exact linear algebra over GF(2^m). Elimination uses field inversion;
// there is no pivoting subtlety in characteristic 2 beyond nonzero choice.

inline gf_elem field_det(const Field& f, std::vector<std::vector<gf_elem>> a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("field_det: matrix not square");
    gf_elem det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) std::swap(a[piv], a[col]);  // swaps do not change signs in char 2
        det = f.mul(det, a[col][col]);
        const gf_elem ipiv = f.inv(a[col][col]);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a[i][col] == 0) continue;
            const gf_elem factor = f.mul(a[i][col], ipiv);
            for (std::size_t j = col; j < n; ++j)
                a[i][j] ^= f.mul(factor, a[col][j]);
        }
    }
    return det;
}

// Solves the square system a * x = rhs; throws on a singular matrix.
inline std::vector<gf_elem> field_solve(const Field& f, std::vector<std::vector<gf_elem>> a,
                                        std::vector<gf_elem> rhs) {
    const std::size_t n = a.size();
    if (rhs.size() != n) throw std::invalid_argument("field_solve: size mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::logic_error("field_solve: singular system");
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        const gf_elem ipiv = f.inv(a[col][col]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            const gf_elem factor = f.mul(a[i][col], ipiv);
            for (std::size_t j = col; j < n; ++j)
                a[i][j] ^= f.mul(factor, a[col][j]);
            rhs[i] ^= f.mul(factor, rhs[col]);
        }
        for (std::size_t j = col; j < n; ++j) a[col][j] = f.mul(ipiv, a[col][j]);
        rhs[col] = f.mul(ipiv, rhs[col]);
    }
    return rhs;
}

// Incremental row space over GF(2^m): rows kept eliminated with one pivot
// column each, so membership tests and rank queries stay cheap.
class FieldSpanBasis {
public:
    explicit FieldSpanBasis(const Field& f) : f_(&f) {}

    int dim() const { return static_cast<int>(rows_.size()); }

    // Reduces v against the basis in place; returns the residue.
    std::vector<gf_elem> reduce(std::vector<gf_elem> v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const gf_elem c = v[pivots_[i]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] ^= f_->mul(c, rows_[i][j]);
        }
        return v;
    }

    bool contains(const std::vector<gf_elem>& v) const {
        const std::vector<gf_elem> res = reduce(v);
        for (gf_elem c : res)
            if (c != 0) return false;
        return true;
    }

    // Returns true if the span grew.
    bool insert(const std::vector<gf_elem>& v) {
        std::vector<gf_elem> res = reduce(v);
        std::size_t p = 0;
        while (p < res.size() && res[p] == 0) ++p;
        if (p == res.size()) return false;
        const gf_elem ip = f_->inv(res[p]);
        for (gf_elem& c : res) c = f_->mul(ip, c);
        rows_.push_back(std::move(res));
        pivots_.push_back(p);
        return true;
    }

private:
    const Field* f_;
    std::vector<std::vector<gf_elem>> rows_;
    std::vector<std::size_t> pivots_;
};

inline int field_rank(const Field& f, const std::vector<std::vector<gf_elem>>& rows) {
    FieldSpanBasis b(f);
    for (const auto& r : rows) b.insert(r);
    return b.dim();
}

}  // namespace maxarc
