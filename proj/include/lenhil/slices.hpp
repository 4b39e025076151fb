#pragma once

#include "lenhil/groebner.hpp"
#include "lenhil/modules.hpp"

#include <memory>
#include <string>

namespace lenhil {

enum class SeriesKind { Growth, GradedSlice, IntrinsicStep, Samuel, MultiBox };

std::string series_kind_name(SeriesKind k);

struct GrowthSeries {
    SeriesKind kind = SeriesKind::Growth;
    std::vector<LengthValue> values;  // by n, or row-major over boxes <= box
    LengthSpec spec;
    std::vector<int> weights;
    // MultiBox only:
    std::vector<int> partition;  // block id per variable
    std::vector<long> box;       // per-block bound
    std::string source;

    const LengthValue& at(long n) const { return values.at(static_cast<size_t>(n)); }
    const LengthValue& at_box(const std::vector<long>& m) const;
    long box_index(const std::vector<long>& m) const;
};

struct SliceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Slice evaluator for one (presentation, length spec) pair.  Z/n bases are
// lifted to Z internally; the strong Groebner basis is computed lazily and
// shared across all n.  All values are exact LengthValues.
class ModuleSlicer {
public:
    ModuleSlicer(Presentation pres, LengthSpec spec, long gb_step_budget = 200000);
    ~ModuleSlicer();
    ModuleSlicer(ModuleSlicer&&) noexcept;

    const Presentation& lifted() const;
    const LengthSpec& spec() const;

    // lambda(S_n V0); n = 0 gives lambda(V0).  Weighted degrees admit the
    // monomials when the ring carries weights.
    LengthValue growth_value(const SubmoduleGens& v0, long n) const;
    // lambda(S_{n+1}V0 / S_n V0); finite for lambda-inert V0 even when
    // lambda(V0) is infinite.
    LengthValue intrinsic_step_value(const SubmoduleGens& v0, long n) const;
    // Hilbert-Samuel c_n = lambda(M / I^{n+1} M), I = (x1..xk).
    LengthValue samuel_value(long n) const;
    // lambda(S^(e)_box V0) with per-block degree bounds.
    LengthValue multibox_value(const SubmoduleGens& v0, const std::vector<int>& partition,
                               const std::vector<long>& box) const;
    // lambda(M_n) of a graded presentation.
    LengthValue graded_slice_value(long n) const;

    GrowthSeries series(const SubmoduleGens& v0, long n_max, SeriesKind kind, int threads = 1) const;
    GrowthSeries multibox_series(const SubmoduleGens& v0, const std::vector<int>& partition,
                                 const std::vector<long>& box, int threads = 1) const;

    // Window lattice rows of S_n V0 (Z base paths), for the additivity
    // slice cross-checks: NF generator rows; K rows are window_relations().
    IntMatrix window_generators(const SubmoduleGens& v0, long n, int window_degree) const;
    IntMatrix window_relations(int window_degree) const;
    std::vector<Term> window_terms(int window_degree) const;
    LengthValue length_of_window_quotient(const IntMatrix& a_extra, int window_degree) const;
    // Field bases: dimension of span{NF(x^a v)} over all listed families,
    // monomials a of weighted degree <= the per-family bound.
    LengthValue field_span_dimension(const std::vector<std::pair<SubmoduleGens, long>>& families) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One-shot conveniences.
LengthValue growth_value(const Presentation& m, const SubmoduleGens& v0, long n, LengthSpec spec);
LengthValue intrinsic_step_value(const Presentation& m, const SubmoduleGens& v0, long n, LengthSpec spec);
LengthValue samuel_value(const Presentation& m, long n, LengthSpec spec);
LengthValue multibox_value(const Presentation& m, const SubmoduleGens& v0,
                           const std::vector<int>& partition, const std::vector<long>& box,
                           LengthSpec spec);
GrowthSeries series(const Presentation& m, const SubmoduleGens& v0, long n_max, SeriesKind kind,
                    LengthSpec spec, int threads = 1);

}  // namespace lenhil
