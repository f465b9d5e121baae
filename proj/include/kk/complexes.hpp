#pragma once

#include <map>

#include "kk/module.hpp"

namespace kk {

/// Integer-indexed complex of graded modules with degree-zero
/// differentials lowering the index by one: d_i : C_i -> C_{i-1},
/// d_i . d_{i+1} = 0 (checked on construction).
class GradedComplex {
  public:
    GradedComplex() = default;
    explicit GradedComplex(PresentedAlgebra a) : algebra_(std::move(a)) {}

    const PresentedAlgebra& algebra() const { return algebra_; }

    void set_term(int i, GradedModule m);
    /// d : terms[i] -> terms[i-1]; both terms must already be present.
    void set_differential(int i, GradedModuleMap d);

    bool has_term(int i) const { return terms_.count(i) > 0; }
    const GradedModule& term(int i) const;
    bool has_differential(int i) const { return diff_.count(i) > 0; }
    const GradedModuleMap& differential(int i) const;

    /// Smallest/largest index carrying a term (0 when empty).
    int min_index() const;
    int max_index() const;
    bool empty() const { return terms_.empty(); }

    /// Verifies d . d = 0 everywhere; throws on failure.
    void check_composable() const;

    int total_dim() const;

  private:
    PresentedAlgebra algebra_;
    std::map<int, GradedModule> terms_;
    std::map<int, GradedModuleMap> diff_;
};

/// Homology ker d_i / im d_{i+1} as a graded module (with its induced
/// actions), on the honest window of the participating maps.
GradedModule homology(const GradedComplex& c, int i);

/// Degree-zero chain map between complexes over the same algebra.
struct ChainMap {
    const GradedComplex* source{nullptr};
    const GradedComplex* target{nullptr};
    std::map<int, GradedModuleMap> components;

    bool commutes_with_differentials() const;
};

/// Mapping cone: cone_k = target_k (+) source_{k-1}, with differential
/// (x, c) |-> (d x + f(c), -d c).
GradedComplex cone(const ChainMap& f);

struct ExactnessReport {
    bool exact{true};
    int first_bad_index{0};
    int first_bad_degree{0};
};

/// Checks homology vanishing for indices in [idx_lo, idx_hi], internal
/// degrees restricted to [deg_lo, deg_hi] intersected with each
/// homology window.
ExactnessReport exactness_within(const GradedComplex& c, int idx_lo, int idx_hi, int deg_lo,
                                 int deg_hi);

}  // namespace kk
