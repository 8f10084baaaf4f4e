#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bredon/error.hpp"

namespace bredon {

/// Dense matrix over Z with arbitrary-precision entries, row-major.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows) * cols) {}
    IntMatrix(int rows, int cols, std::vector<mpz_class> entries);

    static IntMatrix identity(int n);
    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }
    /// Convenience: build from row-major int literals.
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    mpz_class& at(int i, int j) { return entries_[static_cast<size_t>(i) * cols_ + j]; }
    const mpz_class& at(int i, int j) const {
        return entries_[static_cast<size_t>(i) * cols_ + j];
    }

    bool operator==(const IntMatrix& o) const;
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    bool is_zero() const;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix negated() const;

    IntMatrix column(int j) const;
    std::vector<mpz_class> column_vec(int j) const;
    IntMatrix with_columns(const std::vector<int>& idx) const;

    /// Horizontal / vertical concatenation.
    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

    std::string str() const;

private:
    int rows_, cols_;
    std::vector<mpz_class> entries_;
};

/// Smith normal form U*M*V = D with unimodular U, V and diagonal D whose
/// nonzero entries are nonnegative and form a divisibility chain.
/// Pivoting is deterministic: smallest nonzero |entry|, ties by row-major
/// position, so identical inputs give identical outputs.
struct SmithForm {
    IntMatrix u, u_inv; // rows x rows
    IntMatrix d;        // rows x cols, diagonal
    IntMatrix v, v_inv; // cols x cols
    int rank = 0;       // number of nonzero diagonal entries

    mpz_class diag(int i) const { return d.at(i, i); }
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Integer solution x of A x = b, if one exists.
std::optional<std::vector<mpz_class>> solve_columns(const IntMatrix& a,
                                                    const std::vector<mpz_class>& b);

/// Reusable factorization of A for solving A x = b repeatedly.
class LatticeSolver {
public:
    explicit LatticeSolver(IntMatrix a);

    std::optional<std::vector<mpz_class>> solve(const std::vector<mpz_class>& b) const;
    bool contains(const std::vector<mpz_class>& b) const { return solve(b).has_value(); }

private:
    IntMatrix a_;
    SmithForm s_;
};

/// Basis (as columns) of the kernel lattice {x : A x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

/// Basis (as columns) of the lattice spanned by the columns of p.
IntMatrix column_lattice_basis(const IntMatrix& p);

/// Basis of {x : G x lies in the column lattice of L}.
IntMatrix preimage_lattice_basis(const IntMatrix& g, const IntMatrix& lattice);

/// Membership of v in the column lattice of L.
bool in_column_lattice(const IntMatrix& lattice, const std::vector<mpz_class>& v);

/// Finitely generated abelian group, presented by generators and relations
/// (rows of `relations` are relation vectors on the generators). The
/// canonical form (free rank + invariant factors, each >= 2, divisibility
/// chain) is computed on construction; groups compare equal iff the
/// canonical forms agree.
class AbelianGroup {
public:
    AbelianGroup() : AbelianGroup(0, IntMatrix(0, 0)) {}
    AbelianGroup(int generators, IntMatrix relations);

    static AbelianGroup zero() { return AbelianGroup(0, IntMatrix(0, 0)); }
    static AbelianGroup free(int rank) { return AbelianGroup(rank, IntMatrix(0, rank)); }
    static AbelianGroup cyclic(const mpz_class& d);

    int generators() const { return gens_; }
    const IntMatrix& relations() const { return relations_; }
    /// Column basis of the relation lattice inside Z^generators.
    const IntMatrix& relation_lattice() const { return rel_lattice_; }

    int free_rank() const { return free_rank_; }
    const std::vector<mpz_class>& invariant_factors() const { return factors_; }
    bool is_trivial() const { return free_rank_ == 0 && factors_.empty(); }

    /// Canonical-form equality (isomorphism of the presented groups).
    bool operator==(const AbelianGroup& o) const {
        return free_rank_ == o.free_rank_ && factors_ == o.factors_;
    }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

    /// Literal presentation equality; used to type-check homomorphisms.
    bool same_presentation(const AbelianGroup& o) const {
        return gens_ == o.gens_ && relations_ == o.relations_;
    }

    bool contains_relation(const std::vector<mpz_class>& v) const;

    /// "Z", "Z/2 + Z^2", "0", ...
    std::string str() const;

private:
    int gens_;
    IntMatrix relations_;
    IntMatrix rel_lattice_;
    int free_rank_;
    std::vector<mpz_class> factors_;
    // Shared across copies; built on the first membership query.
    mutable std::shared_ptr<const LatticeSolver> rel_solver_;
};

/// Homomorphism between presented abelian groups, acting on generator
/// columns. Validity (relations map into the target relation lattice) is
/// checked eagerly at construction.
class AbelianHom {
public:
    AbelianHom(AbelianGroup source, AbelianGroup target, IntMatrix matrix);

    static AbelianHom identity(const AbelianGroup& g);
    static AbelianHom zero(const AbelianGroup& source, const AbelianGroup& target);

    const AbelianGroup& source() const { return source_; }
    const AbelianGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    /// Composite this . other (other applied first).
    AbelianHom compose(const AbelianHom& other) const;
    AbelianHom operator+(const AbelianHom& o) const;
    AbelianHom negated() const;

    /// Equality of induced maps, i.e. matrices agree modulo target relations.
    bool equals_mod_relations(const AbelianHom& o) const;
    bool is_identity_map() const;
    bool is_zero_map() const;

private:
    AbelianGroup source_, target_;
    IntMatrix matrix_;
};

bool is_isomorphism(const AbelianHom& f);

/// Two-sided inverse modulo relations, when f is an isomorphism.
std::optional<AbelianHom> inverse_hom(const AbelianHom& f);

/// Kernel-mod-image data of a two-step complex at its middle group:
/// `kernel_basis` columns span {x : d_out(x) = 0 in the target}, and
/// `quotient` presents kernel / (image of d_in + middle relations) on those
/// basis columns.
struct Subquotient {
    IntMatrix kernel_basis;
    AbelianGroup quotient;
};

Subquotient cohomology_data(const AbelianHom& d_in, const AbelianHom& d_out);

/// ker(d_out)/im(d_in) in canonical form. Requires d_out . d_in = 0
/// (COMPOSITION_NONZERO otherwise).
AbelianGroup cohomology_at(const AbelianHom& d_in, const AbelianHom& d_out);

/// Map induced on subquotients by a chain-level block; CHAIN_MAP_BROKEN if
/// the block does not carry kernel into kernel.
AbelianHom induced_on_subquotient(const Subquotient& src, const Subquotient& dst,
                                  const IntMatrix& block);

/// Direct sum with generator offsets of each summand.
struct SumDecomposition {
    AbelianGroup group;
    std::vector<int> offset;
};

SumDecomposition direct_sum(const std::vector<const AbelianGroup*>& parts);

} // namespace bredon
