#pragma once

#include "lenhil/arith.hpp"

#include <vector>

namespace lenhil {

// Rectangular matrix of arbitrary-precision integers, row major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Int& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    void append_row(const std::vector<Int>& row);
    std::vector<Int> row(int r) const;
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, int cols);
    IntMatrix stacked(const IntMatrix& below) const;
    static IntMatrix identity(int n);

    bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

// Row Hermite normal form, in place.  Pivots positive, entries above each
// pivot reduced into [0, pivot).  Pivot rows are selected by smallest
// absolute value to limit coefficient growth.  Returns pivot (column, value)
// pairs in column order; the echelon rows occupy the top of the matrix.
struct HnfProfile {
    std::vector<std::pair<int, Int>> pivots;  // (column, positive pivot)
    int rank() const { return static_cast<int>(pivots.size()); }
};
HnfProfile hnf_inplace(IntMatrix& m);

// Smith normal form invariants d_1 | d_2 | ... | d_rank (>= 1) and rank.
struct SnfResult {
    std::vector<Int> factors;  // full diagonal chain, length == rank
    int rank = 0;
};
SnfResult snf(IntMatrix m);

struct LatticeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// lambda(L1/L0) data for row lattices L0 <= L1 <= Z^cols.
struct LatticeQuotientResult {
    int free_rank_delta = 0;
    std::vector<Int> invariant_factors;  // torsion chain, entries >= 2
};
// Throws LatticeError("NotContained") if row-span(L0) is not inside
// row-span(L1) over Z.
LatticeQuotientResult lattice_quotient(const IntMatrix& l1_gens, const IntMatrix& l0_gens);

// Order-only quotient of nested lattices B <= A (assumed; containment not
// rechecked): free rank delta plus the torsion order read off the matched
// Hermite pivot columns.  torsion_order equals |A/B| exactly when
// free_rank_delta == 0; with free directions present only the delta is
// meaningful (any length that would consult the torsion is infinite there).
struct QuotientProfile {
    int free_rank_delta = 0;
    Int torsion_order = 1;
};
QuotientProfile quotient_profile(IntMatrix a_gens, IntMatrix b_gens);

// Basis of {x : x M = 0} as rows.
IntMatrix left_kernel(const IntMatrix& m);

// Row-lattice intersection.
IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b);

enum class LengthKind { Dimension, Rank, LogCard };

struct UnsupportedCombination : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// What base ring a relation matrix is over, for fp_module_length.
enum class BaseKind { Integers, Rationals, PrimeField, IntegersModN };

// lambda of coker(rel) for a finitely presented R-module given by relation
// rows over R^gens.  PrimeField uses p, IntegersModN lifts by appending
// n * identity rows.
LengthValue fp_module_length(const IntMatrix& rel, int gens, BaseKind base, const Int& modulus,
                             LengthKind spec);

}  // namespace lenhil
