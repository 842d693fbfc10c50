#include "hnf/frequency.hpp"

#include <algorithm>
#include <map>

namespace hnf::normal {

std::vector<std::vector<BaseNumber>> row_reduce(const NumberField& f,
                                                std::vector<std::vector<BaseNumber>> rows) {
    if (rows.empty()) return rows;
    const size_t n = rows[0].size();
    size_t pivot_row = 0;
    for (size_t col = 0; col < n && pivot_row < rows.size(); ++col) {
        size_t sel = rows.size();
        for (size_t r = pivot_row; r < rows.size(); ++r)
            if (!rows[r][col].is_zero()) {
                sel = r;
                break;
            }
        if (sel == rows.size()) continue;
        std::swap(rows[pivot_row], rows[sel]);
        BaseNumber inv = f.inv(rows[pivot_row][col]);
        for (size_t c = col; c < n; ++c)
            rows[pivot_row][c] = f.mul(rows[pivot_row][c], inv);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || rows[r][col].is_zero()) continue;
            BaseNumber factor = rows[r][col];
            for (size_t c = col; c < n; ++c)
                rows[r][c] = rows[r][c] - f.mul(factor, rows[pivot_row][c]);
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return rows;
}

bool in_row_span(const NumberField& f, const std::vector<std::vector<BaseNumber>>& basis,
                 std::vector<BaseNumber> v) {
    for (const auto& row : basis) {
        size_t pivot = row.size();
        for (size_t c = 0; c < row.size(); ++c)
            if (!row[c].is_zero()) {
                pivot = c;
                break;
            }
        if (pivot == row.size() || v[pivot].is_zero()) continue;
        BaseNumber factor = v[pivot];
        for (size_t c = 0; c < v.size(); ++c) v[c] = v[c] - f.mul(factor, row[c]);
    }
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

std::vector<std::vector<BaseNumber>> frequency_space(const Context& ctx,
                                                     const std::vector<Series>& b,
                                                     int max_order) {
    // collect the coefficient vector of every tau power with 1 <= |a| <= max_order
    std::map<std::vector<int>, std::vector<BaseNumber>> vecs;
    for (size_t i = 0; i < b.size(); ++i) {
        for (const auto& [m, s] : b[i].terms) {
            int deg = 0;
            for (int e : m.c) deg += e;
            if (deg < 1 || deg > max_order) continue;
            auto it = vecs.find(m.c);
            if (it == vecs.end())
                it = vecs.emplace(m.c, std::vector<BaseNumber>(b.size(), BaseNumber::zero()))
                         .first;
            it->second[i] = s.num.constant_term(ctx.d());
        }
    }
    std::vector<std::vector<BaseNumber>> rows;
    rows.reserve(vecs.size());
    for (auto& [e, v] : vecs) rows.push_back(std::move(v));
    return row_reduce(ctx.field(), rows);
}

InvarianceReport frequency_invariance_check(const Context& ctx,
                                            const std::vector<TauPoly>& omega,
                                            const FrequencyData& fd) {
    InvarianceReport rep;
    std::map<std::vector<int>, std::vector<BaseNumber>> vecs;
    for (size_t i = 0; i < omega.size(); ++i)
        for (const auto& [e, c] : omega[i].terms) {
            auto it = vecs.find(e);
            if (it == vecs.end())
                it = vecs.emplace(e, std::vector<BaseNumber>(omega.size(), BaseNumber::zero()))
                         .first;
            it->second[i] = c;
        }
    for (const auto& [e, v] : vecs)
        if (!in_row_span(ctx.field(), fd.F_basis, v)) {
            rep.ok = false;
            rep.offending.push_back(e);
        }
    return rep;
}

} // namespace hnf::normal
