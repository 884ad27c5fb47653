#include "linsel/linalg.hpp"

namespace linsel {

namespace {

void check_same_size(const RatVec& a, const RatVec& b, const char* op) {
    if (a.size() != b.size())
        throw MixedDimensions(std::string(op) + ": vector sizes disagree");
}

}  // namespace

RatVec vec_add(const RatVec& a, const RatVec& b) {
    check_same_size(a, b, "vec_add");
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
    check_same_size(a, b, "vec_sub");
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

RatVec vec_scale(const Rat& lambda, const RatVec& a) {
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = lambda * a[i];
    return out;
}

Rat dot(const RatVec& a, const RatVec& b) {
    check_same_size(a, b, "dot");
    Rat out(0);
    for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
    return out;
}

bool is_zero(const RatVec& a) {
    for (const auto& v : a)
        if (v != 0) return false;
    return true;
}

RatVec zero_vec(std::size_t n) { return RatVec(n, Rat(0)); }

bool lex_less(const RatVec& a, const RatVec& b) {
    check_same_size(a, b, "lex_less");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

RatMat identity(std::size_t n) {
    RatMat out(n, zero_vec(n));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
    return out;
}

RatMat transpose(const RatMat& a) {
    if (a.empty()) return {};
    RatMat out(a[0].size(), zero_vec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
    return out;
}

RatVec mat_vec(const RatMat& a, const RatVec& x) {
    RatVec out(a.size(), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x);
    return out;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
    RatMat bt = transpose(b);
    RatMat out(a.size(), zero_vec(bt.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < bt.size(); ++j) out[i][j] = dot(a[i], bt[j]);
    return out;
}

std::size_t rank(RatMat a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[r]);
        const Rat inv = Rat(1) / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rat factor = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
        }
        ++r;
    }
    return r;
}

LinearSolve solve_linear(RatMat a, RatVec b) {
    LinearSolve result;
    const std::size_t rows = a.size();
    if (rows != b.size()) throw MixedDimensions("solve_linear: row count mismatch");
    const std::size_t cols = rows == 0 ? 0 : a[0].size();

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[r]);
        std::swap(b[pivot], b[r]);
        const Rat inv = Rat(1) / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rat factor = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
            b[i] -= factor * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return result;  // inconsistent

    RatVec x = zero_vec(cols);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    result.solution = x;

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        RatVec k = zero_vec(cols);
        k[free_c] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) k[pivot_col[i]] = -a[i][free_c];
        result.kernel.push_back(std::move(k));
    }
    return result;
}

std::optional<RatMat> invert(const RatMat& a) {
    const std::size_t n = a.size();
    RatMat work = a;
    RatMat inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && work[pivot][c] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(work[pivot], work[c]);
        std::swap(inv[pivot], inv[c]);
        const Rat scale = Rat(1) / work[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            work[c][j] *= scale;
            inv[c][j] *= scale;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || work[i][c] == 0) continue;
            const Rat factor = work[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                work[i][j] -= factor * work[c][j];
                inv[i][j] -= factor * inv[c][j];
            }
        }
    }
    return inv;
}

}  // namespace linsel
