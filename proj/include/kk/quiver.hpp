#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kk/linalg.hpp"

namespace kk {

struct Arrow {
    int id;
    int src;
    int tgt;
};

/// A finite quiver. Arrows are kept sorted by id; `index_of` maps an
/// arrow id to its position in `arrows`.
class Quiver {
  public:
    Quiver() = default;
    Quiver(int vertex_count, std::vector<Arrow> arrows);

    int vertex_count() const { return vertex_count_; }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(int index) const { return arrows_.at(static_cast<std::size_t>(index)); }
    int index_of(int arrow_id) const;

    /// Same vertices, every arrow reversed (ids preserved).
    Quiver reversed() const;

    bool operator==(const Quiver& o) const;

  private:
    int vertex_count_{0};
    std::vector<Arrow> arrows_;
    std::map<int, int> id_to_index_;
};

/// A directed path stored as arrow indices in order of traversal:
/// word[k] is traversed before word[k+1], and
/// tgt(word[k]) == src(word[k+1]). As an algebra element the path is
/// the product word[last] * ... * word[0]. The empty word at a vertex
/// is that vertex's idempotent.
struct PathWord {
    std::vector<int> word;  // arrow indices (not ids)
    int src{0};
    int tgt{0};

    int length() const { return static_cast<int>(word.size()); }
    bool operator==(const PathWord& o) const {
        return word == o.word && src == o.src && tgt == o.tgt;
    }
    // degree-wise lex order on words of equal length
    bool operator<(const PathWord& o) const { return word < o.word; }
};

PathWord idempotent_path(int vertex);
PathWord path_from_arrow_ids(const Quiver& q, const std::vector<int>& arrow_ids);

/// Homogeneous linear combination of parallel paths (same length,
/// source and target), used for relation generators.
struct PathElement {
    std::vector<std::pair<Fp, PathWord>> terms;
    int degree{0};
    int src{0};
    int tgt{0};
};

/// Validates homogeneity and matching endpoints; normalizes away zero
/// coefficients. Throws std::invalid_argument on malformed input.
PathElement make_path_element(const Quiver& q, std::vector<std::pair<Fp, PathWord>> terms);

}  // namespace kk
