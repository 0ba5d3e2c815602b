#include "frobext/lattice.hpp"

#include <sstream>

namespace frobext {

FinGenAbGroup FinGenAbGroup::from_cyclic(const std::vector<BigInt>& orders)
{
    FinGenAbGroup g;
    std::vector<BigInt> finite;
    for (const auto& o : orders) {
        if (o == 0) ++g.free_rank;
        else if (abs(o) != 1) finite.push_back(abs(o));
    }
    if (finite.empty()) return g;
    IntMatrix d(finite.size(), finite.size());
    for (std::size_t i = 0; i < finite.size(); ++i) d(i, i) = finite[i];
    for (const auto& x : invariant_factors(d))
        if (x != 1) g.torsion.push_back(x);
    return g;
}

BigInt FinGenAbGroup::order() const
{
    if (!is_finite()) throw InputError("order of an infinite group");
    return torsion_order();
}

BigInt FinGenAbGroup::torsion_order() const
{
    BigInt o = 1;
    for (const auto& d : torsion) o *= d;
    return o;
}

FinGenAbGroup FinGenAbGroup::l_primary(const BigInt& l) const
{
    FinGenAbGroup g;
    g.free_rank = free_rank;
    for (const auto& d : torsion) {
        BigInt lp = l_part(d, l);
        if (lp != 1) g.torsion.push_back(lp);
    }
    return g;
}

std::string FinGenAbGroup::to_string() const
{
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const auto& d : torsion) {
        os << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& a, const std::vector<BigInt>& b)
{
    if (b.size() != a.rows()) throw InputError("solve_integer dimension mismatch");
    SNFResult s = smith_normal_form(a);
    std::vector<BigInt> u = s.left * b;
    std::vector<BigInt> w(a.cols(), BigInt(0));
    for (std::size_t i = 0; i < u.size(); ++i) {
        BigInt d = i < s.diag.size() ? s.diag[i] : BigInt(0);
        if (d == 0) {
            if (u[i] != 0) return std::nullopt;
            continue;
        }
        if (!mpz_divisible_p(u[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
        w[i] = u[i] / d;
    }
    return s.right * w;
}

IntMatrix lattice_basis(const IntMatrix& g)
{
    SNFResult s = smith_normal_form(g);
    std::size_t r = s.rank();
    IntMatrix b(g.rows(), r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < g.rows(); ++i) b(i, j) = s.left_inv(i, j) * s.diag[j];
    return b;
}

SubQuotient::SubQuotient(const IntMatrix& lattice_gens, const IntMatrix& sub_gens)
{
    n_ = lattice_gens.rows();
    if (sub_gens.rows() != n_) throw InputError("subquotient ambient dimension mismatch");
    basis_ = lattice_basis(lattice_gens);
    basis_snf_ = smith_normal_form(basis_);
    const std::size_t k = basis_.cols();

    IntMatrix x(k, sub_gens.cols());
    for (std::size_t j = 0; j < sub_gens.cols(); ++j) {
        auto c = solve_basis(sub_gens.column(j));
        if (!c) throw InputError("subquotient: S is not contained in L");
        for (std::size_t i = 0; i < k; ++i) x(i, j) = (*c)[i];
    }
    SNFResult sx = smith_normal_form(x);
    xform_ = sx.left;
    xform_inv_ = sx.left_inv;
    const std::size_t rx = sx.rank();

    sub_basis_ = IntMatrix(n_, rx);
    {
        IntMatrix scaled(k, rx);
        for (std::size_t j = 0; j < rx; ++j)
            for (std::size_t i = 0; i < k; ++i) scaled(i, j) = xform_inv_(i, j) * sx.diag[j];
        sub_basis_ = basis_ * scaled;
    }

    std::vector<BigInt> orders;
    for (std::size_t i = 0; i < rx; ++i)
        if (sx.diag[i] != 1) {
            slot_.push_back(static_cast<long>(i));
            moduli_.push_back(sx.diag[i]);
        }
    for (std::size_t i = rx; i < k; ++i) {
        slot_.push_back(static_cast<long>(i));
        moduli_.push_back(0);
    }
    group_ = FinGenAbGroup::from_cyclic(moduli_);
}

SubQuotient SubQuotient::quotient(const IntMatrix& rel)
{
    return SubQuotient(IntMatrix::identity(rel.rows()), rel);
}

SubQuotient SubQuotient::cyclic(const std::vector<BigInt>& moduli)
{
    IntMatrix d(moduli.size(), moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) d(i, i) = moduli[i];
    return quotient(d);
}

std::optional<std::vector<BigInt>> SubQuotient::solve_basis(const std::vector<BigInt>& v) const
{
    if (v.size() != n_) throw InputError("subquotient vector dimension mismatch");
    const std::size_t k = basis_.cols();
    std::vector<BigInt> u = basis_snf_.left * v;
    std::vector<BigInt> w(k);
    for (std::size_t i = 0; i < n_; ++i) {
        if (i >= k) {
            if (u[i] != 0) return std::nullopt;
            continue;
        }
        const BigInt& d = basis_snf_.diag[i];
        if (!mpz_divisible_p(u[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
        w[i] = u[i] / d;
    }
    return basis_snf_.right * w;
}

bool SubQuotient::in_lattice(const std::vector<BigInt>& v) const { return solve_basis(v).has_value(); }

std::vector<BigInt> SubQuotient::coords(const std::vector<BigInt>& v) const
{
    auto c = solve_basis(v);
    if (!c) throw InputError("vector is not in the lattice");
    std::vector<BigInt> y = xform_ * *c;
    std::vector<BigInt> out(moduli_.size());
    for (std::size_t s = 0; s < moduli_.size(); ++s) {
        out[s] = y[static_cast<std::size_t>(slot_[s])];
        if (moduli_[s] != 0) mpz_fdiv_r(out[s].get_mpz_t(), out[s].get_mpz_t(), moduli_[s].get_mpz_t());
    }
    return out;
}

bool SubQuotient::is_zero_class(const std::vector<BigInt>& v) const
{
    if (!in_lattice(v)) return false;
    for (const auto& x : coords(v))
        if (x != 0) return false;
    return true;
}

std::vector<BigInt> SubQuotient::lift(const std::vector<BigInt>& y) const
{
    if (y.size() != moduli_.size()) throw InputError("canonical coordinate length mismatch");
    std::vector<BigInt> w(basis_.cols(), BigInt(0));
    for (std::size_t s = 0; s < y.size(); ++s) w[static_cast<std::size_t>(slot_[s])] = y[s];
    return basis_ * (xform_inv_ * w);
}

IntMatrix SubQuotient::canonical_relations() const
{
    IntMatrix d(moduli_.size(), moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i) d(i, i) = moduli_[i];
    return d;
}

// ---------------------------------------------------------------------------

IntMatrix induced_matrix(const SubQuotient& src, const SubQuotient& dst, const IntMatrix& f)
{
    if (f.rows() != dst.ambient_dim() || f.cols() != src.ambient_dim())
        throw InputError("induced map dimension mismatch");
    const IntMatrix& sb = src.sub_basis();
    for (std::size_t j = 0; j < sb.cols(); ++j)
        if (!dst.is_zero_class(f * sb.column(j))) throw InputError("map does not preserve the relations");
    IntMatrix h(dst.num_gens(), src.num_gens());
    for (std::size_t s = 0; s < src.num_gens(); ++s) {
        std::vector<BigInt> e(src.num_gens(), BigInt(0));
        e[s] = 1;
        std::vector<BigInt> img = f * src.lift(e);
        if (!dst.in_lattice(img)) throw InputError("map does not preserve the lattice");
        std::vector<BigInt> c = dst.coords(img);
        for (std::size_t i = 0; i < c.size(); ++i) h(i, s) = c[i];
    }
    return h;
}

IntMatrix reduce_rows(const IntMatrix& h, const SubQuotient& dst)
{
    IntMatrix r = h;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        const BigInt& m = dst.moduli()[i];
        if (m == 0) continue;
        for (std::size_t j = 0; j < r.cols(); ++j) mpz_fdiv_r(r(i, j).get_mpz_t(), r(i, j).get_mpz_t(), m.get_mpz_t());
    }
    return r;
}

SubQuotient map_kernel(const SubQuotient& src, const SubQuotient& dst, const IntMatrix& h)
{
    const std::size_t a = src.num_gens();
    IntMatrix k = kernel_basis(hstack(h, dst.canonical_relations()));
    return SubQuotient(k.block(0, 0, a, k.cols()), src.canonical_relations());
}

SubQuotient map_cokernel(const SubQuotient&, const SubQuotient& dst, const IntMatrix& h)
{
    return SubQuotient::quotient(hstack(h, dst.canonical_relations()));
}

} // namespace frobext
