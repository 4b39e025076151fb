#include "lenhil/linalg.hpp"

#include <algorithm>

namespace lenhil {

void IntMatrix::append_row(const std::vector<Int>& row) {
    if (cols_ == 0 && rows_ == 0) cols_ = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != cols_) throw LatticeError("append_row: column mismatch");
    a_.insert(a_.end(), row.begin(), row.end());
    ++rows_;
}

std::vector<Int> IntMatrix::row(int r) const {
    return std::vector<Int>(a_.begin() + static_cast<size_t>(r) * cols_,
                            a_.begin() + static_cast<size_t>(r + 1) * cols_);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows, int cols) {
    IntMatrix m(0, 0);
    m.cols_ = cols;
    for (const auto& r : rows) m.append_row(r);
    m.cols_ = cols;
    return m;
}

IntMatrix IntMatrix::stacked(const IntMatrix& below) const {
    if (rows() == 0) return below;
    if (below.rows() == 0) return *this;
    if (cols_ != below.cols_) throw LatticeError("stacked: column mismatch");
    IntMatrix m = *this;
    m.a_.insert(m.a_.end(), below.a_.begin(), below.a_.end());
    m.rows_ += below.rows_;
    return m;
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

namespace {

int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

void row_axpy(IntMatrix& m, int dst, int src, const Int& q, int from_col) {
    if (q == 0) return;
    for (int c = from_col; c < m.cols(); ++c) m.at(dst, c) -= q * m.at(src, c);
}

void row_swap(IntMatrix& m, int i, int j) {
    if (i == j) return;
    for (int c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
}

void row_negate(IntMatrix& m, int i) {
    for (int c = 0; c < m.cols(); ++c) m.at(i, c) = -m.at(i, c);
}

}  // namespace

HnfProfile hnf_inplace(IntMatrix& m) {
    HnfProfile prof;
    int r = 0;
    for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
        // gcd the column below r into a single pivot, smallest entry first
        while (true) {
            int best = -1;
            for (int i = r; i < m.rows(); ++i) {
                if (m.at(i, col) == 0) continue;
                if (best < 0 || cmpabs(m.at(i, col), m.at(best, col)) < 0) best = i;
            }
            if (best < 0) break;
            row_swap(m, r, best);
            bool clean = true;
            for (int i = r + 1; i < m.rows(); ++i) {
                if (m.at(i, col) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(i, col).get_mpz_t(), m.at(r, col).get_mpz_t());
                row_axpy(m, i, r, q, col);
                if (m.at(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m.at(r, col) == 0) continue;
        if (m.at(r, col) < 0) row_negate(m, r);
        // reduce entries above the pivot into [0, pivot)
        for (int i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), m.at(i, col).get_mpz_t(), m.at(r, col).get_mpz_t());
            row_axpy(m, i, r, q, col);
        }
        prof.pivots.emplace_back(col, m.at(r, col));
        ++r;
    }
    return prof;
}

SnfResult snf(IntMatrix m) {
    int n = std::min(m.rows(), m.cols());
    int t = 0;
    for (; t < n; ++t) {
        // find smallest nonzero entry in the trailing block
        int pr = -1, pc = -1;
        for (int i = t; i < m.rows(); ++i)
            for (int j = t; j < m.cols(); ++j) {
                if (m.at(i, j) == 0) continue;
                if (pr < 0 || cmpabs(m.at(i, j), m.at(pr, pc)) < 0) {
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break;
        row_swap(m, t, pr);
        for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, t), m.at(i, pc));

        bool again = true;
        while (again) {
            again = false;
            // clear column t
            for (int i = t + 1; i < m.rows(); ++i) {
                if (m.at(i, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(i, t).get_mpz_t(), m.at(t, t).get_mpz_t());
                row_axpy(m, i, t, q, 0);
                if (m.at(i, t) != 0) {
                    row_swap(m, t, i);
                    again = true;
                }
            }
            // clear row t
            for (int j = t + 1; j < m.cols(); ++j) {
                if (m.at(t, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(t, j).get_mpz_t(), m.at(t, t).get_mpz_t());
                if (q != 0)
                    for (int i = 0; i < m.rows(); ++i) m.at(i, j) -= q * m.at(i, t);
                if (m.at(t, j) != 0) {
                    for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, t), m.at(i, j));
                    again = true;
                }
            }
        }
        if (m.at(t, t) < 0) row_negate(m, t);
        // enforce divisibility: if some trailing entry is not divisible by
        // the pivot, fold its row in and redo this step
        bool redo = false;
        for (int i = t + 1; i < m.rows() && !redo; ++i)
            for (int j = t + 1; j < m.cols() && !redo; ++j)
                if (m.at(i, j) % m.at(t, t) != 0) {
                    for (int c = 0; c < m.cols(); ++c) m.at(t, c) += m.at(i, c);
                    redo = true;
                }
        if (redo) --t;
    }
    SnfResult res;
    res.rank = t;
    for (int i = 0; i < t; ++i) res.factors.push_back(m.at(i, i));
    return res;
}

namespace {

// Reduce v by the echelon rows of h (HNF'd); returns false if v is not in
// the row span.  When coeffs != nullptr, records the integer coordinates of
// v in the echelon basis.
bool reduce_by_hnf(const IntMatrix& h, const HnfProfile& prof, std::vector<Int> v,
                   std::vector<Int>* coeffs) {
    if (coeffs) coeffs->assign(prof.rank(), 0);
    for (int r = 0; r < prof.rank(); ++r) {
        int col = prof.pivots[r].first;
        if (v[col] == 0) continue;
        if (v[col] % prof.pivots[r].second != 0) return false;
        Int q = v[col] / prof.pivots[r].second;
        for (int c = col; c < h.cols(); ++c) v[c] -= q * h.at(r, c);
        if (coeffs) (*coeffs)[r] = q;
    }
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

LatticeQuotientResult lattice_quotient(const IntMatrix& l1_gens, const IntMatrix& l0_gens) {
    IntMatrix h1 = l1_gens;
    HnfProfile p1 = hnf_inplace(h1);
    IntMatrix h0 = l0_gens;
    HnfProfile p0 = hnf_inplace(h0);

    // containment + coordinates of L0's basis in L1's basis
    IntMatrix c(0, 0);
    std::vector<Int> coeffs;
    for (int r = 0; r < p0.rank(); ++r) {
        if (!reduce_by_hnf(h1, p1, h0.row(r), &coeffs)) throw LatticeError("NotContained");
        c.append_row(coeffs);
    }

    LatticeQuotientResult res;
    res.free_rank_delta = p1.rank() - p0.rank();
    if (p0.rank() > 0) {
        SnfResult s = snf(c);
        for (const Int& d : s.factors)
            if (d >= 2) res.invariant_factors.push_back(d);
    }
    return res;
}

QuotientProfile quotient_profile(IntMatrix a_gens, IntMatrix b_gens) {
    HnfProfile pa = hnf_inplace(a_gens);
    HnfProfile pb = hnf_inplace(b_gens);
    QuotientProfile out;
    out.free_rank_delta = pa.rank() - pb.rank();
    size_t ia = 0;
    for (const auto& [col, piv] : pb.pivots) {
        while (ia < pa.pivots.size() && pa.pivots[ia].first < col) ++ia;
        if (ia >= pa.pivots.size() || pa.pivots[ia].first != col)
            throw LatticeError("quotient_profile: B pivot outside A profile");
        if (piv % pa.pivots[ia].second != 0)
            throw LatticeError("quotient_profile: pivot divisibility violated");
        out.torsion_order *= piv / pa.pivots[ia].second;
    }
    return out;
}

IntMatrix left_kernel(const IntMatrix& m) {
    // HNF on [M | I]; rows whose M-part vanished give the kernel.
    IntMatrix aug(m.rows(), m.cols() + m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols() + i) = 1;
    }
    // eliminate only on the M columns
    int r = 0;
    for (int col = 0; col < m.cols() && r < aug.rows(); ++col) {
        while (true) {
            int best = -1;
            for (int i = r; i < aug.rows(); ++i) {
                if (aug.at(i, col) == 0) continue;
                if (best < 0 || cmpabs(aug.at(i, col), aug.at(best, col)) < 0) best = i;
            }
            if (best < 0) break;
            row_swap(aug, r, best);
            bool clean = true;
            for (int i = r + 1; i < aug.rows(); ++i) {
                if (aug.at(i, col) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), aug.at(i, col).get_mpz_t(), aug.at(r, col).get_mpz_t());
                row_axpy(aug, i, r, q, 0);
                if (aug.at(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (aug.at(r, col) != 0) ++r;
    }
    IntMatrix ker(0, 0);
    for (int i = r; i < aug.rows(); ++i) {
        std::vector<Int> full = aug.row(i);
        std::vector<Int> right(full.begin() + m.cols(), full.end());
        bool zero = true;
        for (int j = 0; j < m.cols(); ++j)
            if (aug.at(i, j) != 0) zero = false;
        if (!zero) throw LatticeError("left_kernel: elimination failed");
        ker.append_row(right);
    }
    if (ker.rows() == 0) ker = IntMatrix(0, m.rows());
    return ker;
}

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw LatticeError("lattice_intersection: column mismatch");
    // x in A cap B  <=>  x = uA = vB; solve (u, -v) in left kernel of [A; B]
    IntMatrix st = a.stacked(b);
    IntMatrix ker = left_kernel(st);
    IntMatrix out(0, 0);
    for (int i = 0; i < ker.rows(); ++i) {
        std::vector<Int> x(a.cols(), 0);
        for (int r = 0; r < a.rows(); ++r)
            for (int c = 0; c < a.cols(); ++c) x[c] += ker.at(i, r) * a.at(r, c);
        out.append_row(x);
    }
    if (out.rows() == 0) out = IntMatrix(0, a.cols());
    return out;
}

LengthValue fp_module_length(const IntMatrix& rel, int gens, BaseKind base, const Int& modulus,
                             LengthKind spec) {
    if (rel.rows() > 0 && rel.cols() != gens) throw LatticeError("fp_module_length: column mismatch");

    if (base == BaseKind::PrimeField) {
        if (spec != LengthKind::Dimension)
            throw UnsupportedCombination("only Dimension is defined over a prime field");
        // rank over F_p by elimination mod p
        IntMatrix m = rel;
        int r = 0;
        for (int col = 0; col < gens && r < m.rows(); ++col) {
            int piv = -1;
            for (int i = r; i < m.rows(); ++i)
                if (m.at(i, col) % modulus != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            row_swap(m, r, piv);
            Int inv;
            mpz_invert(inv.get_mpz_t(), m.at(r, col).get_mpz_t(), modulus.get_mpz_t());
            for (int i = r + 1; i < m.rows(); ++i) {
                Int f = (m.at(i, col) * inv) % modulus;
                for (int c = col; c < gens; ++c) m.at(i, c) = (m.at(i, c) - f * m.at(r, c)) % modulus;
            }
            ++r;
        }
        return LengthValue::from_unit(Rat(gens - r));
    }

    if (base == BaseKind::Rationals) {
        if (spec != LengthKind::Dimension && spec != LengthKind::Rank)
            throw UnsupportedCombination("LogCard is not defined over Q");
        IntMatrix m = rel;
        HnfProfile p = hnf_inplace(m);  // rank over Q equals rank over Z here
        return LengthValue::from_unit(Rat(gens - p.rank()));
    }

    IntMatrix m = rel;
    if (base == BaseKind::IntegersModN) {
        if (spec != LengthKind::LogCard)
            throw UnsupportedCombination("only LogCard is defined over Z/n");
        for (int i = 0; i < gens; ++i) {
            std::vector<Int> row(gens, 0);
            row[i] = modulus;
            m.append_row(row);
        }
        if (m.cols() == 0) m = IntMatrix(0, gens);
    } else if (spec == LengthKind::Dimension) {
        throw UnsupportedCombination("Dimension requires a field base");
    }

    SnfResult s = snf(m);
    int free_rank = gens - s.rank;
    if (spec == LengthKind::Rank) return LengthValue::from_unit(Rat(free_rank));
    // LogCard
    if (free_rank > 0) return LengthValue::infinity();
    LengthValue v;
    for (const Int& d : s.factors) v += lv_of_group_order(d);
    return v;
}

}  // namespace lenhil
