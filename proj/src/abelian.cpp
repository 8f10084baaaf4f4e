#include "bredon/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace bredon {

IntMatrix::IntMatrix(int rows, int cols, std::vector<mpz_class> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != static_cast<size_t>(rows) * cols)
        throw Error("TYPE_MISMATCH", "entry count does not match matrix shape");
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw Error("TYPE_MISMATCH", "ragged row list");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

bool IntMatrix::is_zero() const {
    for (const auto& e : entries_)
        if (e != 0) return false;
    return true;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw Error("TYPE_MISMATCH", "matrix product shape mismatch");
    IntMatrix r(rows_, o.cols_);
    mpz_class acc;
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const mpz_class& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                acc = a * o.at(k, j);
                r.at(i, j) += acc;
            }
        }
    }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error("TYPE_MISMATCH", "matrix sum shape mismatch");
    IntMatrix r(rows_, cols_);
    for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] + o.entries_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const { return *this + o.negated(); }

IntMatrix IntMatrix::negated() const {
    IntMatrix r(rows_, cols_);
    for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = -entries_[i];
    return r;
}

IntMatrix IntMatrix::column(int j) const {
    IntMatrix c(rows_, 1);
    for (int i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
    return c;
}

std::vector<mpz_class> IntMatrix::column_vec(int j) const {
    std::vector<mpz_class> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

IntMatrix IntMatrix::with_columns(const std::vector<int>& idx) const {
    IntMatrix r(rows_, static_cast<int>(idx.size()));
    for (int j = 0; j < r.cols(); ++j)
        for (int i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
    return r;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw Error("TYPE_MISMATCH", "hstack row mismatch");
    IntMatrix r(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw Error("TYPE_MISMATCH", "vstack column mismatch");
    IntMatrix r(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
    return r;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
    }
    os << "]";
    return os.str();
}

namespace {

// Elementary operation helpers keeping U, U^-1 (row side) and V, V^-1
// (column side) in sync with the operations applied to the work matrix.
struct SnfWork {
    IntMatrix a, u, ui, v, vi;

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
        for (int c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
        for (int r = 0; r < ui.rows(); ++r) std::swap(ui.at(r, i), ui.at(r, j));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < a.rows(); ++r) std::swap(a.at(r, i), a.at(r, j));
        for (int r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
        for (int c = 0; c < vi.cols(); ++c) std::swap(vi.at(i, c), vi.at(j, c));
    }
    // row i += k * row j
    void add_row(int i, int j, const mpz_class& k) {
        if (k == 0) return;
        for (int c = 0; c < a.cols(); ++c) a.at(i, c) += k * a.at(j, c);
        for (int c = 0; c < u.cols(); ++c) u.at(i, c) += k * u.at(j, c);
        for (int r = 0; r < ui.rows(); ++r) ui.at(r, j) -= k * ui.at(r, i);
    }
    // col i += k * col j
    void add_col(int i, int j, const mpz_class& k) {
        if (k == 0) return;
        for (int r = 0; r < a.rows(); ++r) a.at(r, i) += k * a.at(r, j);
        for (int r = 0; r < v.rows(); ++r) v.at(r, i) += k * v.at(r, j);
        for (int c = 0; c < vi.cols(); ++c) vi.at(j, c) -= k * vi.at(i, c);
    }
    void negate_row(int i) {
        for (int c = 0; c < a.cols(); ++c) a.at(i, c) = -a.at(i, c);
        for (int c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
        for (int r = 0; r < ui.rows(); ++r) ui.at(r, i) = -ui.at(r, i);
    }
};

// Smallest nonzero |entry| in a[t.., t..], ties broken row-major. A unit
// entry ends the search immediately: nothing beats it, and row-major order
// guarantees it is the first unit encountered.
bool find_pivot(const IntMatrix& a, int t, int& pi, int& pj) {
    bool found = false;
    mpz_class best;
    for (int i = t; i < a.rows(); ++i) {
        for (int j = t; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            mpz_class v = abs(a.at(i, j));
            if (!found || v < best) {
                found = true;
                best = v;
                pi = i;
                pj = j;
                if (best == 1) return true;
            }
        }
    }
    return found;
}

bool pivot_is_lone(const IntMatrix& a, int t) {
    for (int i = t + 1; i < a.rows(); ++i)
        if (a.at(i, t) != 0) return false;
    for (int j = t + 1; j < a.cols(); ++j)
        if (a.at(t, j) != 0) return false;
    return true;
}

} // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    SnfWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.rows()),
              IntMatrix::identity(m.cols()), IntMatrix::identity(m.cols())};
    const int nmin = std::min(m.rows(), m.cols());

    int t = 0;
    while (t < nmin) {
        int pi = t, pj = t;
        if (!find_pivot(w.a, t, pi, pj)) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        for (;;) {
            // Clear column and row t against the pivot.
            for (int i = t + 1; i < w.a.rows(); ++i) {
                if (w.a.at(i, t) == 0) continue;
                mpz_class q = w.a.at(i, t) / w.a.at(t, t); // truncated division
                w.add_row(i, t, -q);
            }
            for (int j = t + 1; j < w.a.cols(); ++j) {
                if (w.a.at(t, j) == 0) continue;
                mpz_class q = w.a.at(t, j) / w.a.at(t, t);
                w.add_col(j, t, -q);
            }
            if (!pivot_is_lone(w.a, t)) {
                // Remainders survived; a strictly smaller pivot exists.
                if (!find_pivot(w.a, t, pi, pj)) break;
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            // Fold in any entry the pivot does not divide, then reduce again.
            bool divides_all = true;
            for (int i = t + 1; i < w.a.rows() && divides_all; ++i)
                for (int j = t + 1; j < w.a.cols() && divides_all; ++j)
                    if (w.a.at(i, j) % w.a.at(t, t) != 0) {
                        w.add_row(t, i, 1);
                        divides_all = false;
                    }
            if (divides_all) break;
        }
        if (w.a.at(t, t) < 0) w.negate_row(t);
        ++t;
    }

    SmithForm out;
    out.u = std::move(w.u);
    out.u_inv = std::move(w.ui);
    out.d = std::move(w.a);
    out.v = std::move(w.v);
    out.v_inv = std::move(w.vi);
    out.rank = 0;
    for (int i = 0; i < nmin; ++i)
        if (out.d.at(i, i) != 0) ++out.rank;
    return out;
}

namespace {

std::optional<std::vector<mpz_class>> solve_with(const SmithForm& s, int rows, int cols,
                                                 const std::vector<mpz_class>& b) {
    // A = U^-1 D V^-1, so A x = b iff D y = U b with x = V y.
    std::vector<mpz_class> c(rows, 0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j)
            if (s.u.at(i, j) != 0) c[i] += s.u.at(i, j) * b[j];

    std::vector<mpz_class> y(cols, 0);
    const int nmin = std::min(rows, cols);
    for (int i = 0; i < rows; ++i) {
        mpz_class d = i < nmin ? s.d.at(i, i) : mpz_class(0);
        if (d == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % d != 0) return std::nullopt;
            y[i] = c[i] / d;
        }
    }
    std::vector<mpz_class> x(cols, 0);
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < cols; ++j)
            if (s.v.at(i, j) != 0) x[i] += s.v.at(i, j) * y[j];
    return x;
}

} // namespace

std::optional<std::vector<mpz_class>> solve_columns(const IntMatrix& a,
                                                    const std::vector<mpz_class>& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw Error("TYPE_MISMATCH", "solve vector length mismatch");
    SmithForm s = smith_normal_form(a);
    return solve_with(s, a.rows(), a.cols(), b);
}

LatticeSolver::LatticeSolver(IntMatrix a) : a_(std::move(a)), s_(smith_normal_form(a_)) {}

std::optional<std::vector<mpz_class>> LatticeSolver::solve(
    const std::vector<mpz_class>& b) const {
    if (static_cast<int>(b.size()) != a_.rows())
        throw Error("TYPE_MISMATCH", "solve vector length mismatch");
    return solve_with(s_, a_.rows(), a_.cols(), b);
}

IntMatrix kernel_basis(const IntMatrix& a) {
    SmithForm s = smith_normal_form(a);
    std::vector<int> idx;
    for (int j = s.rank; j < a.cols(); ++j) idx.push_back(j);
    return s.v.with_columns(idx);
}

IntMatrix column_lattice_basis(const IntMatrix& p) {
    SmithForm s = smith_normal_form(p);
    // Columns of P span the same lattice as d_i * (U^-1 e_i) over the rank.
    IntMatrix basis(p.rows(), s.rank);
    for (int j = 0; j < s.rank; ++j)
        for (int i = 0; i < p.rows(); ++i) basis.at(i, j) = s.d.at(j, j) * s.u_inv.at(i, j);
    return basis;
}

IntMatrix preimage_lattice_basis(const IntMatrix& g, const IntMatrix& lattice) {
    if (lattice.rows() != g.rows() && lattice.cols() != 0)
        throw Error("TYPE_MISMATCH", "lattice/matrix row mismatch");
    IntMatrix m = lattice.cols() == 0 ? g : IntMatrix::hstack(g, lattice);
    IntMatrix ker = kernel_basis(m);
    IntMatrix proj(g.cols(), ker.cols());
    for (int j = 0; j < ker.cols(); ++j)
        for (int i = 0; i < g.cols(); ++i) proj.at(i, j) = ker.at(i, j);
    return column_lattice_basis(proj);
}

bool in_column_lattice(const IntMatrix& lattice, const std::vector<mpz_class>& v) {
    if (lattice.cols() == 0) {
        for (const auto& e : v)
            if (e != 0) return false;
        return true;
    }
    return solve_columns(lattice, v).has_value();
}

AbelianGroup::AbelianGroup(int generators, IntMatrix relations)
    : gens_(generators), relations_(std::move(relations)) {
    if (relations_.cols() != gens_)
        throw Error("TYPE_MISMATCH", "relation width does not match generator count");
    rel_lattice_ = column_lattice_basis(relations_.transpose());
    SmithForm s = smith_normal_form(relations_);
    free_rank_ = gens_ - s.rank;
    for (int i = 0; i < s.rank; ++i)
        if (s.d.at(i, i) > 1) factors_.push_back(s.d.at(i, i));
}

AbelianGroup AbelianGroup::cyclic(const mpz_class& d) {
    IntMatrix rel(1, 1);
    rel.at(0, 0) = d;
    return AbelianGroup(1, rel);
}

bool AbelianGroup::contains_relation(const std::vector<mpz_class>& v) const {
    if (rel_lattice_.cols() == 0) {
        for (const auto& e : v)
            if (e != 0) return false;
        return true;
    }
    if (!rel_solver_) rel_solver_ = std::make_shared<LatticeSolver>(rel_lattice_);
    return rel_solver_->contains(v);
}

std::string AbelianGroup::str() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& d : factors_) {
        os << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
    }
    if (free_rank_ == 1)
        os << (first ? "" : " + ") << "Z";
    else if (free_rank_ > 1)
        os << (first ? "" : " + ") << "Z^" << free_rank_;
    return os.str();
}

AbelianHom::AbelianHom(AbelianGroup source, AbelianGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.generators() || matrix_.cols() != source_.generators())
        throw Error("HOM_INVALID", "matrix shape does not match source/target generators");
    // A relation r of the source must land in the target relation lattice.
    for (int r = 0; r < source_.relations().rows(); ++r) {
        std::vector<mpz_class> image(target_.generators(), 0);
        for (int i = 0; i < target_.generators(); ++i)
            for (int j = 0; j < source_.generators(); ++j)
                image[i] += matrix_.at(i, j) * source_.relations().at(r, j);
        if (!target_.contains_relation(image))
            throw Error("HOM_INVALID", "relation " + std::to_string(r) +
                                           " is not carried into the target relations");
    }
}

AbelianHom AbelianHom::identity(const AbelianGroup& g) {
    return AbelianHom(g, g, IntMatrix::identity(g.generators()));
}

AbelianHom AbelianHom::zero(const AbelianGroup& source, const AbelianGroup& target) {
    return AbelianHom(source, target, IntMatrix::zero(target.generators(), source.generators()));
}

AbelianHom AbelianHom::compose(const AbelianHom& other) const {
    if (!source_.same_presentation(other.target_))
        throw Error("NOT_COMPOSABLE", "hom composition endpoint mismatch");
    return AbelianHom(other.source_, target_, matrix_ * other.matrix_);
}

AbelianHom AbelianHom::operator+(const AbelianHom& o) const {
    if (!source_.same_presentation(o.source_) || !target_.same_presentation(o.target_))
        throw Error("TYPE_MISMATCH", "hom sum endpoint mismatch");
    return AbelianHom(source_, target_, matrix_ + o.matrix_);
}

AbelianHom AbelianHom::negated() const { return AbelianHom(source_, target_, matrix_.negated()); }

bool AbelianHom::equals_mod_relations(const AbelianHom& o) const {
    if (!source_.same_presentation(o.source_) || !target_.same_presentation(o.target_))
        return false;
    IntMatrix diff = matrix_ - o.matrix_;
    for (int j = 0; j < diff.cols(); ++j)
        if (!target_.contains_relation(diff.column_vec(j))) return false;
    return true;
}

bool AbelianHom::is_identity_map() const {
    if (!source_.same_presentation(target_)) return false;
    return equals_mod_relations(identity(source_));
}

bool AbelianHom::is_zero_map() const { return equals_mod_relations(zero(source_, target_)); }

bool is_isomorphism(const AbelianHom& f) {
    // Surjective: target generators are hit modulo relations, i.e. the
    // cokernel presented by [matrix; target relations] is trivial.
    IntMatrix cols = IntMatrix::vstack(f.matrix().transpose(), f.target().relations());
    if (!AbelianGroup(f.target().generators(), cols).is_trivial()) return false;
    // Injective: the preimage of the target relation lattice is no bigger
    // than the source relation lattice.
    IntMatrix pre = preimage_lattice_basis(f.matrix(), f.target().relation_lattice());
    for (int j = 0; j < pre.cols(); ++j)
        if (!f.source().contains_relation(pre.column_vec(j))) return false;
    return true;
}

std::optional<AbelianHom> inverse_hom(const AbelianHom& f) {
    if (!is_isomorphism(f)) return std::nullopt;
    // Solve f(g(e_j)) = e_j modulo target relations, column by column.
    IntMatrix system = IntMatrix::hstack(f.matrix(), f.target().relation_lattice());
    IntMatrix g(f.source().generators(), f.target().generators());
    for (int j = 0; j < f.target().generators(); ++j) {
        std::vector<mpz_class> e(f.target().generators(), 0);
        e[j] = 1;
        auto sol = solve_columns(system, e);
        if (!sol) return std::nullopt;
        for (int i = 0; i < f.source().generators(); ++i) g.at(i, j) = (*sol)[i];
    }
    AbelianHom inv(f.target(), f.source(), std::move(g));
    if (!inv.compose(f).is_identity_map() || !f.compose(inv).is_identity_map())
        return std::nullopt;
    return inv;
}

Subquotient cohomology_data(const AbelianHom& d_in, const AbelianHom& d_out) {
    if (!d_in.target().same_presentation(d_out.source()))
        throw Error("TYPE_MISMATCH", "complex is not composable at the middle group");
    IntMatrix comp = d_out.matrix() * d_in.matrix();
    for (int j = 0; j < comp.cols(); ++j)
        if (!d_out.target().contains_relation(comp.column_vec(j)))
            throw Error("COMPOSITION_NONZERO",
                        "d_out . d_in is nonzero on generator " + std::to_string(j));

    IntMatrix kernel =
        preimage_lattice_basis(d_out.matrix(), d_out.target().relation_lattice());
    // Relations of the quotient: image columns plus middle relations, in
    // kernel-basis coordinates.
    IntMatrix span = IntMatrix::hstack(d_in.matrix(), d_in.target().relation_lattice());
    IntMatrix rel(span.cols(), kernel.cols());
    LatticeSolver kernel_solver(kernel);
    for (int j = 0; j < span.cols(); ++j) {
        auto coords = kernel_solver.solve(span.column_vec(j));
        if (!coords)
            throw Error("COMPOSITION_NONZERO", "image vector escapes the kernel lattice");
        for (int i = 0; i < kernel.cols(); ++i) rel.at(j, i) = (*coords)[i];
    }
    return Subquotient{kernel, AbelianGroup(kernel.cols(), rel)};
}

AbelianGroup cohomology_at(const AbelianHom& d_in, const AbelianHom& d_out) {
    return cohomology_data(d_in, d_out).quotient;
}

AbelianHom induced_on_subquotient(const Subquotient& src, const Subquotient& dst,
                                  const IntMatrix& block) {
    IntMatrix m(dst.kernel_basis.cols(), src.kernel_basis.cols());
    LatticeSolver dst_solver(dst.kernel_basis);
    for (int j = 0; j < src.kernel_basis.cols(); ++j) {
        std::vector<mpz_class> v(block.rows(), 0);
        for (int i = 0; i < block.rows(); ++i)
            for (int k = 0; k < block.cols(); ++k)
                if (block.at(i, k) != 0) v[i] += block.at(i, k) * src.kernel_basis.at(k, j);
        auto coords = dst_solver.solve(v);
        if (!coords)
            throw Error("CHAIN_MAP_BROKEN", "kernel class is not carried into the kernel");
        for (int i = 0; i < m.rows(); ++i) m.at(i, j) = (*coords)[i];
    }
    return AbelianHom(src.quotient, dst.quotient, m);
}

SumDecomposition direct_sum(const std::vector<const AbelianGroup*>& parts) {
    int gens = 0, rels = 0;
    for (const auto* p : parts) {
        gens += p->generators();
        rels += p->relations().rows();
    }
    IntMatrix rel(rels, gens);
    std::vector<int> offset;
    int go = 0, ro = 0;
    for (const auto* p : parts) {
        offset.push_back(go);
        for (int i = 0; i < p->relations().rows(); ++i)
            for (int j = 0; j < p->generators(); ++j)
                rel.at(ro + i, go + j) = p->relations().at(i, j);
        go += p->generators();
        ro += p->relations().rows();
    }
    return SumDecomposition{AbelianGroup(gens, rel), offset};
}

} // namespace bredon
