#pragma once

#include <map>
#include <optional>

#include "kk/module.hpp"

namespace kk {

struct ProjGen {
    int vertex;
    int degree;
    bool operator==(const ProjGen& o) const { return vertex == o.vertex && degree == o.degree; }
};

/// Betti numbers beta_{i,j}: multiplicity of generator degree j at
/// homological step i.
struct BettiTable {
    std::map<std::pair<int, int>, int> entries;

    int at(int i, int j) const {
        auto it = entries.find({i, j});
        return it == entries.end() ? 0 : it->second;
    }
    bool diagonal(int base = 0) const {
        for (const auto& [k, v] : entries)
            if (v != 0 && k.second != k.first + base) return false;
        return true;
    }
    int max_step() const;
    int max_degree() const;
};

/// Entries of a differential between sums of projectives, recorded over
/// the algebra: entry (r, c) is the coefficient of generator r in the
/// image of generator c, as flat coordinates of A_{deg_c - deg_r}.
/// This is what dualization with respect to the ring transposes.
struct GenMatrix {
    std::vector<ProjGen> rows;
    std::vector<ProjGen> cols;
    std::vector<std::vector<Vec>> entries;  // [r][c]
};

struct CoverResult {
    std::vector<ProjGen> gens;
    GradedModule proj;        // direct sum of projectives in gen order
    GradedModuleMap cover;    // proj -> module, surjective, kernel in rad(proj)
    SubmodulePair syzygy;     // kernel of the cover with its inclusion
};

/// Minimal projective cover: generators are the lexicographically first
/// coordinate lifts of a basis of M/mM. Throws when the cover cannot be
/// verified surjective inside the window.
CoverResult minimal_cover(const GradedModule& m);

/// One syzygy step.
GradedModule syzygy(const GradedModule& m);

struct Resolution {
    GradedModule module;
    std::vector<CoverResult> steps;        // step i covers syzygy(i-1)
    std::vector<GradedModule> syzygies;    // syzygies[i] = Omega^{i+1}(M)
    std::vector<GenMatrix> gen_matrices;   // differential P_{i+1} -> P_i (index i)
    bool terminated{false};                // some syzygy vanished

    int computed_steps() const { return static_cast<int>(steps.size()); }
    BettiTable betti() const;
    const GradedModule& omega(int k) const;  // Omega^k, k <= computed
};

/// Iterated minimal covers; stops early when a syzygy vanishes.
Resolution resolve(const GradedModule& m, int steps);

/// Ext^i(M, A_0) as the generator multiset of P_i, in degrees -n_i^j.
std::vector<std::pair<int, int>> ext_to_semisimple(const Resolution& r, int i);

struct BoundedInt {
    enum class Kind { Finite, PlusInfinity, MinusInfinity };
    Kind kind{Kind::Finite};
    int value{0};
    bool exact{false};
    std::string reason;  // how the verdict was promoted (or why bounded)

    static BoundedInt finite(int v, bool ex, std::string why) {
        return {Kind::Finite, v, ex, std::move(why)};
    }
    bool operator==(const BoundedInt& o) const {
        return kind == o.kind && (kind != Kind::Finite || value == o.value);
    }
};

/// Detected resolution periodicity: Omega^{from} shifted by `shift`
/// is isomorphic to Omega^{to}.
struct Periodicity {
    int from{0}, to{0}, shift{0};
};
std::optional<Periodicity> detect_periodicity(const Resolution& r);

/// max(n_i^j - i) over the computed window, promoted to an exact verdict
/// when the resolution terminated or is periodic. Errors on the zero
/// module.
BoundedInt ext_regularity(const Resolution& r);
BoundedInt ext_regularity(const GradedModule& m, int steps);

struct KoszulVerdict {
    bool koszul{true};
    bool exact{false};
    std::string reason;
    std::pair<int, int> witness{0, 0};  // off-diagonal Betti entry when false
};

/// Resolves every degree-zero simple. True verdicts are promoted to
/// exact by resolution termination, by periodicity, or by the quadratic
/// confluence (PBW) certificate; a single off-diagonal entry makes an
/// exact false.
KoszulVerdict is_koszul(const PresentedAlgebra& a, int steps);

/// Bounded linear-resolution verdict for a module (diagonal relative to
/// the generation degree `base`).
KoszulVerdict linear_resolution_verdict(const Resolution& r, int base);

/// Subspace criterion m^{k+1} P_i  ∩  ker d_i  =  m^k ker d_i for every
/// computed step and every k inside the window.
bool weakly_koszul_check(const Resolution& r);
bool weakly_koszul_check(const GradedModule& m, int steps);

/// Least t <= max_t with Omega^t(M) weakly Koszul, or nullopt.
std::optional<int> weakly_koszul_syzygy_index(const GradedModule& m, int max_t, int steps);

/// Direct sum of projectives P(v_g, t_g) realized on [min t_g, top].
GradedModule projective_sum(const PresentedAlgebra& a, const std::vector<ProjGen>& gens, int top);

/// Offset of the generator coordinate of summand g inside the flat
/// (degree, vertex) block of a projective sum.
int projective_gen_offset(const PresentedAlgebra& a, const std::vector<ProjGen>& gens,
                          std::size_t g);

/// Decomposition of a flat vector of a projective sum at (deg, vertex)
/// into per-generator algebra coefficients.
std::vector<Vec> decompose_over_gens(const PresentedAlgebra& a, const std::vector<ProjGen>& gens,
                                     int deg, int vertex, const Vec& flat);

/// Materializes the map of projective sums whose generator matrix is
/// `entries` (image of generator c is sum_r entries[r][c] . gen_r).
GradedModuleMap projective_map(const GradedModule& target, const std::vector<ProjGen>& rows,
                               const GradedModule& source, const std::vector<ProjGen>& cols,
                               const std::vector<std::vector<Vec>>& entries);

/// Flat coordinates of the canonical anti-isomorphism (path reversal)
/// into the opposite presentation.
Vec transport_opposite(const PresentedAlgebra& from, const PresentedAlgebra& to, int degree,
                       const Vec& coords);

}  // namespace kk
