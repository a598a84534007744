#include "algint/zlattice.hpp"

#include <algorithm>
#include <cstdlib>

#include "algint/errors.hpp"

namespace algint {

ZMat identity_z(int n) {
    ZMat m(n, std::vector<Integer>(n, Integer(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

ZMat transpose_z(const ZMat& m) {
    if (m.empty()) return {};
    ZMat t(m[0].size(), std::vector<Integer>(m.size(), Integer(0)));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

namespace {

void row_axpy(std::vector<Integer>& dst, const Integer& q, const std::vector<Integer>& src) {
    for (size_t j = 0; j < dst.size(); ++j) dst[j] -= q * src[j];
}

Integer floor_quot(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// shared echelon pass; u, when present, receives the same row operations
void echelonize(ZMat& m, ZMat* u) {
    if (m.empty()) return;
    int rows = (int)m.size(), cols = (int)m[0].size();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        // gcd elimination below row r in column c
        for (;;) {
            int best = -1;
            for (int i = r; i < rows; ++i)
                if (m[i][c] != 0 && (best < 0 || abs(m[i][c]) < abs(m[best][c]))) best = i;
            if (best < 0) break;
            std::swap(m[best], m[r]);
            if (u) std::swap((*u)[best], (*u)[r]);
            bool leftover = false;
            for (int i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                Integer q = m[i][c] / m[r][c]; // truncated: remainder shrinks
                if (q != 0) {
                    row_axpy(m[i], q, m[r]);
                    if (u) row_axpy((*u)[i], q, (*u)[r]);
                }
                if (m[i][c] != 0) leftover = true;
            }
            if (!leftover) break;
        }
        if (m[r][c] == 0) continue;
        if (m[r][c] < 0) {
            for (auto& e : m[r]) e = -e;
            if (u)
                for (auto& e : (*u)[r]) e = -e;
        }
        for (int i = 0; i < r; ++i) {
            Integer q = floor_quot(m[i][c], m[r][c]);
            if (q != 0) {
                row_axpy(m[i], q, m[r]);
                if (u) row_axpy((*u)[i], q, (*u)[r]);
            }
        }
        ++r;
    }
}

bool is_zero_row(const std::vector<Integer>& v) {
    for (const Integer& e : v)
        if (e != 0) return false;
    return true;
}

} // namespace

ZMat hnf(ZMat m) {
    echelonize(m, nullptr);
    while (!m.empty() && is_zero_row(m.back())) m.pop_back();
    return m;
}

ZMat hnf_transform(ZMat m, ZMat& u) {
    u = identity_z((int)m.size());
    echelonize(m, &u);
    return m;
}

ZMat left_kernel(const ZMat& m) {
    if (m.empty()) return {};
    ZMat u;
    ZMat h = hnf_transform(m, u);
    ZMat ker;
    for (size_t i = 0; i < h.size(); ++i)
        if (is_zero_row(h[i])) ker.push_back(u[i]);
    return hnf(std::move(ker));
}

ZMat lattice_intersect(const ZMat& a, const ZMat& b, int ncols) {
    if (a.empty() || b.empty()) return {};
    ZMat stacked = a;
    stacked.insert(stacked.end(), b.begin(), b.end());
    ZMat ker = left_kernel(stacked);
    ZMat out;
    for (const auto& k : ker) {
        std::vector<Integer> v(ncols, Integer(0));
        for (size_t i = 0; i < a.size(); ++i)
            for (int j = 0; j < ncols; ++j) v[j] += k[i] * a[i][j];
        if (!is_zero_row(v)) out.push_back(std::move(v));
    }
    return hnf(std::move(out));
}

ZMat saturate(const ZMat& m, int ncols) {
    if (m.empty()) return {};
    ZMat right = left_kernel(transpose_z(m));
    if (right.empty()) return identity_z(ncols);
    return left_kernel(transpose_z(right));
}

bool lattice_equal(const ZMat& a, const ZMat& b) { return hnf(a) == hnf(b); }

bool in_lattice(std::vector<Integer> v, const ZMat& h) {
    for (const auto& row : h) {
        size_t piv = 0;
        while (piv < row.size() && row[piv] == 0) ++piv;
        if (piv == row.size()) continue;
        if (v[piv] == 0) continue;
        if (!mpz_divisible_p(v[piv].get_mpz_t(), row[piv].get_mpz_t())) return false;
        Integer q = v[piv] / row[piv];
        row_axpy(v, q, row);
    }
    return is_zero_row(v);
}

namespace {

Integer round_nearest(const Rational& q) {
    Rational t = q + Rational(1, 2);
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
    return f;
}

struct GramData {
    std::vector<std::vector<Rational>> mu;
    std::vector<Rational> norm2; // squared lengths of the orthogonalized rows
};

GramData gram_schmidt(const ZMat& b) {
    int n = (int)b.size(), m = (int)b[0].size();
    GramData g;
    g.mu.assign(n, std::vector<Rational>(n, Rational(0)));
    g.norm2.assign(n, Rational(0));
    std::vector<std::vector<Rational>> star(n, std::vector<Rational>(m, Rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) star[i][j] = Rational(b[i][j]);
        for (int j = 0; j < i; ++j) {
            Rational dot(0);
            for (int k = 0; k < m; ++k) dot += Rational(b[i][k]) * star[j][k];
            g.mu[i][j] = dot / g.norm2[j];
            for (int k = 0; k < m; ++k) star[i][k] -= g.mu[i][j] * star[j][k];
        }
        for (int k = 0; k < m; ++k) g.norm2[i] += star[i][k] * star[i][k];
        if (g.norm2[i] == 0) throw InternalInconsistency("dependent rows in a reduced basis");
    }
    return g;
}

} // namespace

ZMat lll_reduce(ZMat m, const Rational& delta) {
    m = hnf(std::move(m));
    int n = (int)m.size();
    if (n <= 1) return m;
    GramData g = gram_schmidt(m);
    int k = 1;
    while (k < n) {
        for (int j = k - 1; j >= 0; --j) {
            Integer q = round_nearest(g.mu[k][j]);
            if (q != 0) {
                row_axpy(m[k], q, m[j]);
                g = gram_schmidt(m);
            }
        }
        if (g.norm2[k] >= (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norm2[k - 1]) {
            ++k;
        } else {
            std::swap(m[k], m[k - 1]);
            g = gram_schmidt(m);
            k = std::max(1, k - 1);
        }
    }
    return m;
}

} // namespace algint
