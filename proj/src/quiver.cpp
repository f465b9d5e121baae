#include "kk/quiver.hpp"

#include <algorithm>

namespace kk {

Quiver::Quiver(int vertex_count, std::vector<Arrow> arrows)
    : vertex_count_(vertex_count), arrows_(std::move(arrows)) {
    if (vertex_count_ <= 0) throw std::invalid_argument("Quiver: need at least one vertex");
    std::sort(arrows_.begin(), arrows_.end(),
              [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
        const Arrow& a = arrows_[i];
        if (a.src < 0 || a.src >= vertex_count_ || a.tgt < 0 || a.tgt >= vertex_count_)
            throw std::invalid_argument("Quiver: arrow endpoint out of range");
        if (!id_to_index_.emplace(a.id, static_cast<int>(i)).second)
            throw std::invalid_argument("Quiver: duplicate arrow id " + std::to_string(a.id));
    }
}

int Quiver::index_of(int arrow_id) const {
    auto it = id_to_index_.find(arrow_id);
    if (it == id_to_index_.end())
        throw std::invalid_argument("Quiver: unknown arrow id " + std::to_string(arrow_id));
    return it->second;
}

Quiver Quiver::reversed() const {
    std::vector<Arrow> rev = arrows_;
    for (Arrow& a : rev) std::swap(a.src, a.tgt);
    return Quiver(vertex_count_, std::move(rev));
}

bool Quiver::operator==(const Quiver& o) const {
    if (vertex_count_ != o.vertex_count_ || arrows_.size() != o.arrows_.size()) return false;
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
        const Arrow &a = arrows_[i], &b = o.arrows_[i];
        if (a.id != b.id || a.src != b.src || a.tgt != b.tgt) return false;
    }
    return true;
}

PathWord idempotent_path(int vertex) {
    PathWord p;
    p.src = p.tgt = vertex;
    return p;
}

PathWord path_from_arrow_ids(const Quiver& q, const std::vector<int>& arrow_ids) {
    if (arrow_ids.empty())
        throw std::invalid_argument("path_from_arrow_ids: empty path needs a vertex");
    PathWord p;
    p.word.reserve(arrow_ids.size());
    for (std::size_t k = 0; k < arrow_ids.size(); ++k) {
        const int idx = q.index_of(arrow_ids[k]);
        const Arrow& a = q.arrow(idx);
        if (k == 0) {
            p.src = a.src;
        } else if (q.arrow(p.word.back()).tgt != a.src) {
            throw std::invalid_argument("path_from_arrow_ids: arrows not composable");
        }
        p.word.push_back(idx);
        p.tgt = a.tgt;
    }
    return p;
}

PathElement make_path_element(const Quiver& q, std::vector<std::pair<Fp, PathWord>> terms) {
    PathElement el;
    bool first = true;
    for (auto& [c, w] : terms) {
        if (c.is_zero()) continue;
        if (w.length() == 0) throw std::invalid_argument("PathElement: idempotent term");
        for (std::size_t k = 0; k + 1 < w.word.size(); ++k)
            if (q.arrow(w.word[k]).tgt != q.arrow(w.word[k + 1]).src)
                throw std::invalid_argument("PathElement: non-composable word");
        if (first) {
            el.degree = w.length();
            el.src = w.src;
            el.tgt = w.tgt;
            first = false;
        } else {
            if (w.length() != el.degree)
                throw std::invalid_argument("PathElement: inhomogeneous relation");
            if (w.src != el.src || w.tgt != el.tgt)
                throw std::invalid_argument("PathElement: mismatched endpoints");
        }
        el.terms.emplace_back(c, std::move(w));
    }
    if (el.terms.empty()) throw std::invalid_argument("PathElement: zero element");
    std::sort(el.terms.begin(), el.terms.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    return el;
}

}  // namespace kk
