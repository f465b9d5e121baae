#pragma once

// Test-only independent Betti oracle: graded Betti numbers as
// dim Tor_i(A_0, M)_j computed from the normalized bar complex
//   ... -> m (x) m (x) M -> m (x) M -> M
// using only the algebra multiplication tables and module actions,
// never the minimal-cover machinery it cross-checks.

#include <map>
#include <vector>

#include "kk/module.hpp"

namespace kk_test {

using namespace kk;

class BarOracle {
  public:
    BarOracle(GradedModule m, int jmax) : m_(std::move(m)), jmax_(jmax) {
        if (jmax_ > m_.hi())
            throw std::invalid_argument("BarOracle: jmax beyond the module window");
    }

    int betti(int i, int j) {
        FieldContext ctx(m_.algebra().field());
        const auto& bi = basis(i, j);
        const Mat d_i = differential(i, j);
        const Mat d_next = differential(i + 1, j);
        return static_cast<int>(bi.size()) - static_cast<int>(rank_of(d_i)) -
               static_cast<int>(rank_of(d_next));
    }

    // d^2 = 0 sanity for the oracle itself
    bool d_squared_zero(int i, int j) {
        FieldContext ctx(m_.algebra().field());
        Mat a = differential(i, j), b = differential(i + 1, j);
        if (a.cols() == 0 || b.cols() == 0) return true;
        return is_zero(a * b);
    }

  private:
    // a bar word: ((deg, flat), ..., (deg, flat), (mdeg, mflat))
    using Tuple = std::vector<int>;

    GradedModule m_;
    int jmax_;
    std::map<std::pair<int, int>, std::vector<Tuple>> basis_;
    std::map<std::pair<int, int>, std::map<Tuple, int>> index_;

    int tuple_vertex(const GradedModule& m, int deg, int flat) const {
        int v = 0;
        while (flat >= m.offset(deg, v) + m.dim(deg, v)) ++v;
        return v;
    }

    const std::vector<Tuple>& basis(int i, int j) {
        auto key = std::make_pair(i, j);
        auto it = basis_.find(key);
        if (it != basis_.end()) return it->second;
        std::vector<Tuple> out;
        if (i >= 0 && j <= jmax_) {
            Tuple cur;
            extend(i, j, -1, cur, out);
        }
        auto& slot = basis_[key];
        slot = std::move(out);
        auto& idx = index_[key];
        for (std::size_t t = 0; t < slot.size(); ++t) idx[slot[t]] = static_cast<int>(t);
        return slot;
    }

    // build tuples left to right; `need_tgt` constrains the next factor
    void extend(int slots_left, int deg_left, int need_tgt, Tuple& cur, std::vector<Tuple>& out) {
        const PresentedAlgebra& a = m_.algebra();
        if (slots_left == 0) {
            for (int e = m_.lo(); e <= std::min(deg_left, m_.hi()); ++e) {
                if (e != deg_left) continue;
                for (int f = 0; f < m_.dim(e); ++f) {
                    if (need_tgt >= 0 && tuple_vertex(m_, e, f) != need_tgt) continue;
                    Tuple t = cur;
                    t.push_back(e);
                    t.push_back(f);
                    out.push_back(std::move(t));
                }
            }
            return;
        }
        for (int d = 1; d + (slots_left - 1) <= deg_left - m_.lo(); ++d) {
            if (d > a.degree_bound()) break;
            for (int f = 0; f < a.dim(d); ++f) {
                if (need_tgt >= 0 && a.tgt_of(d, f) != need_tgt) continue;
                cur.push_back(d);
                cur.push_back(f);
                extend(slots_left - 1, deg_left - d, a.src_of(d, f), cur, out);
                cur.pop_back();
                cur.pop_back();
            }
        }
    }

    Mat differential(int i, int j) {
        if (i <= 0) return Mat::Zero(0, static_cast<Index>(basis(0, j).size()));
        const auto& src = basis(i, j);
        const auto& dst = basis(i - 1, j);
        const auto& idx = index_[{i - 1, j}];
        const PresentedAlgebra& a = m_.algebra();
        Mat d = Mat::Zero(static_cast<Index>(dst.size()), static_cast<Index>(src.size()));
        for (std::size_t c = 0; c < src.size(); ++c) {
            const Tuple& t = src[c];
            // bars at positions 0..i-1 as (deg, flat) pairs; module part last
            auto bar_deg = [&](int s) { return t[static_cast<std::size_t>(2 * s)]; };
            auto bar_flat = [&](int s) { return t[static_cast<std::size_t>(2 * s + 1)]; };
            const int mdeg = t[static_cast<std::size_t>(2 * i)];
            const int mflat = t[static_cast<std::size_t>(2 * i) + 1];
            // inner faces: merge bars s and s+1 with sign (-1)^{s+1}
            for (int s = 0; s + 1 < i; ++s) {
                Vec y = Vec::Zero(a.dim(bar_deg(s)));
                y(bar_flat(s)) = Fp(1);
                Vec x = Vec::Zero(a.dim(bar_deg(s + 1)));
                x(bar_flat(s + 1)) = Fp(1);
                Vec prod = a.multiply(bar_deg(s), y, bar_deg(s + 1), x);
                const Fp sign = (s % 2 == 0) ? -Fp(1) : Fp(1);  // (-1)^{s+1}
                for (int u = 0; u < prod.size(); ++u) {
                    if (prod(u).is_zero()) continue;
                    Tuple nt;
                    for (int w = 0; w < i; ++w) {
                        if (w == s) {
                            nt.push_back(bar_deg(s) + bar_deg(s + 1));
                            nt.push_back(u);
                        } else if (w != s + 1) {
                            nt.push_back(bar_deg(w));
                            nt.push_back(bar_flat(w));
                        }
                    }
                    nt.push_back(mdeg);
                    nt.push_back(mflat);
                    auto f = idx.find(nt);
                    if (f == idx.end()) throw std::logic_error("BarOracle: missing merge target");
                    d(f->second, static_cast<Index>(c)) += sign * prod(u);
                }
            }
            // module face with sign (-1)^i
            const PathWord& w = a.basis(bar_deg(i - 1))[static_cast<std::size_t>(bar_flat(i - 1))];
            Vec img = m_.path_action(w, mdeg).col(mflat);
            const Fp msign = (i % 2 == 0) ? Fp(1) : -Fp(1);
            for (int u = 0; u < img.size(); ++u) {
                if (img(u).is_zero()) continue;
                Tuple nt;
                for (int s = 0; s + 1 < i; ++s) {
                    nt.push_back(bar_deg(s));
                    nt.push_back(bar_flat(s));
                }
                nt.push_back(mdeg + bar_deg(i - 1));
                nt.push_back(u);
                auto f = idx.find(nt);
                if (f == idx.end()) throw std::logic_error("BarOracle: missing action target");
                d(f->second, static_cast<Index>(c)) += msign * img(u);
            }
        }
        return d;
    }
};

}  // namespace kk_test
