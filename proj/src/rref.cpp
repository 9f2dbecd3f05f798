#include "grpd/rref.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace grpd {

Rational parse_rational(const std::string& s) {
    using Integer = boost::multiprecision::mpz_int;
    const auto bad = [&]() -> std::invalid_argument {
        return std::invalid_argument("malformed rational literal: '" + s + "'");
    };
    if (s.empty()) throw bad();
    const auto parse_int = [&](const std::string& t) -> Integer {
        if (t.empty()) throw bad();
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw bad();
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw bad();
        return Integer(t);
    };
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_int(s));
    Integer num = parse_int(s.substr(0, slash));
    Integer den = parse_int(s.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(num, den);
}

std::string format_rational(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string format_scalar(const Scalar& s) {
    std::ostringstream os;
    os << s.re;
    if (s.im != 0) os << (s.im > 0 ? "+" : "") << s.im << "i";
    return os.str();
}

SparseVec sparse_unit(int index) { return {{index, Scalar(1)}}; }

SparseVec sparse_from_dense(const std::vector<Scalar>& v) {
    SparseVec out;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (!v[i].is_zero()) out.emplace_back(i, v[i]);
    return out;
}

std::vector<Scalar> dense_from_sparse(const SparseVec& v, int dim) {
    std::vector<Scalar> out(dim);
    for (const auto& [i, c] : v) out.at(i) = c;
    return out;
}

bool sparse_is_zero(const SparseVec& v) { return v.empty(); }

SparseVec sparse_scale(const SparseVec& v, const Scalar& c) {
    if (c.is_zero()) return {};
    SparseVec out;
    out.reserve(v.size());
    for (const auto& [i, x] : v) out.emplace_back(i, x * c);
    return out;
}

SparseVec sparse_axpy(const SparseVec& a, const Scalar& c, const SparseVec& b) {
    if (c.is_zero()) return a;
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t ia = 0, ib = 0;
    while (ia < a.size() || ib < b.size()) {
        if (ib == b.size() || (ia < a.size() && a[ia].first < b[ib].first)) {
            out.push_back(a[ia++]);
        } else if (ia == a.size() || b[ib].first < a[ia].first) {
            Scalar v = c * b[ib].second;
            if (!v.is_zero()) out.emplace_back(b[ib].first, std::move(v));
            ++ib;
        } else {
            Scalar v = a[ia].second + c * b[ib].second;
            if (!v.is_zero()) out.emplace_back(a[ia].first, std::move(v));
            ++ia;
            ++ib;
        }
    }
    return out;
}

std::optional<Scalar> sparse_at(const SparseVec& v, int index) {
    auto it = std::lower_bound(v.begin(), v.end(), index,
                               [](const auto& p, int i) { return p.first < i; });
    if (it != v.end() && it->first == index) return it->second;
    return std::nullopt;
}

SparseVec RowReducer::reduce(const SparseVec& v) const {
    SparseVec r = v;
    // Entries are eliminated left to right; each elimination only introduces
    // entries strictly to the right of the pivot, so one sweep suffices.
    size_t k = 0;
    while (k < r.size()) {
        auto it = rows_.find(r[k].first);
        if (it == rows_.end()) {
            ++k;
            continue;
        }
        r = sparse_axpy(r, -r[k].second, it->second);
    }
    return r;
}

bool RowReducer::add(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    const int pivot = r[0].first;
    r = sparse_scale(r, r[0].second.inverse());
    // Keep the form fully reduced: clear the new pivot column everywhere.
    for (auto& [p, row] : rows_) {
        if (auto c = sparse_at(row, pivot)) row = sparse_axpy(row, -*c, r);
    }
    rows_.emplace(pivot, std::move(r));
    return true;
}

std::vector<int> RowReducer::free_columns(int dim) const {
    std::vector<int> out;
    for (int c = 0; c < dim; ++c)
        if (!rows_.count(c)) out.push_back(c);
    return out;
}

int sparse_rank(const std::vector<SparseVec>& rows) {
    RowReducer rr;
    for (const auto& r : rows) rr.add(r);
    return rr.rank();
}

std::optional<std::vector<Scalar>> solve_linear_system(
    const std::vector<SparseVec>& coeff_rows, const std::vector<Scalar>& rhs,
    int num_unknowns) {
    // Augmented column lives at index num_unknowns.
    RowReducer rr;
    for (size_t i = 0; i < coeff_rows.size(); ++i) {
        SparseVec row = coeff_rows[i];
        if (!rhs[i].is_zero()) row.emplace_back(num_unknowns, rhs[i]);
        rr.add(row);
    }
    if (rr.pivot_rows().count(num_unknowns)) return std::nullopt;  // 0 = 1
    std::vector<Scalar> x(num_unknowns);
    for (const auto& [pivot, row] : rr.pivot_rows()) {
        // Free variables are zero, so x[pivot] is the augmented entry.
        if (auto c = sparse_at(row, num_unknowns)) x[pivot] = *c;
    }
    return x;
}

namespace {

template <bool Parallel>
int dense_rank_impl(std::vector<std::vector<Scalar>>& m) {
    if (m.empty()) return 0;
    const int nrows = static_cast<int>(m.size());
    const int ncols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int col = 0; col < ncols && rank < nrows; ++col) {
        int pr = -1;
        for (int r = rank; r < nrows; ++r) {
            if (!m[r][col].is_zero()) {
                pr = r;
                break;
            }
        }
        if (pr < 0) continue;
        std::swap(m[rank], m[pr]);
        const Scalar inv = m[rank][col].inverse();
        for (int c = col; c < ncols; ++c) m[rank][c] *= inv;
#pragma omp parallel for schedule(dynamic) if (Parallel)
        for (int r = rank + 1; r < nrows; ++r) {
            if (m[r][col].is_zero()) continue;
            const Scalar f = m[r][col];
            for (int c = col; c < ncols; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

int dense_rank_serial(std::vector<std::vector<Scalar>> m) {
    return dense_rank_impl<false>(m);
}

int dense_rank_parallel(std::vector<std::vector<Scalar>> m) {
    return dense_rank_impl<true>(m);
}

}  // namespace grpd
