#include "shear/lacunary/sequences.hpp"

#include <random>
#include <sstream>

namespace shear {

ExponentSubseq ExponentSubseq::from_parent(ThetaRef parent, std::vector<long> indices)
{
    if (!parent)
        throw Error(ErrorKind::config, "exponent subsequence needs a parent theta");
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 0 || (i > 0 && indices[i] <= indices[i - 1]))
            throw Error(ErrorKind::config, "parent indices must be strictly increasing and >= 0");
    }
    // q_0 = q_1 = 1 when a_1 = 1: the exponents themselves must increase.
    for (std::size_t i = 1; i < indices.size(); ++i) {
        long a = indices[i - 1], b = indices[i];
        if (parent->is_exact(b) && parent->q(a) == parent->q(b))
            throw Error(ErrorKind::config, "q_" + std::to_string(a) + " = q_" + std::to_string(b) +
                                               "; exponents must be strictly increasing");
    }
    ExponentSubseq s;
    s.parent_ = std::move(parent);
    s.indices_ = std::move(indices);
    return s;
}

ExponentSubseq ExponentSubseq::from_values(std::vector<BigInt> values)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 1 || (i > 0 && values[i] <= values[i - 1]))
            throw Error(ErrorKind::config, "exponents must be positive and strictly increasing");
    }
    ExponentSubseq s;
    s.values_ = std::move(values);
    return s;
}

SymInt ExponentSubseq::at(std::size_t n) const
{
    if (parent_)
        return SymInt::q_over(parent_, indices_.at(n));
    return SymInt(values_.at(n));
}

bool ExponentSubseq::is_exact(std::size_t n) const
{
    return parent_ ? parent_->is_exact(indices_.at(n)) : n < values_.size();
}

SymInt ExponentSubseq::parent_next(std::size_t n) const
{
    if (!parent_)
        throw Error(ErrorKind::config, "plain exponent list has no parent denominators");
    return SymInt::q_over(parent_, indices_.at(n) + 1);
}

SymInt ExponentSubseq::next_lower_bound(std::size_t n) const
{
    if (parent_)
        return parent_next(n);
    if (n + 1 < values_.size())
        return SymInt(values_[n + 1]);
    return SymInt(BigInt(values_.at(n) + 1));
}

std::optional<BigRat> ExponentSubseq::min_gap_ratio() const
{
    std::optional<BigRat> best;
    for (std::size_t i = 1; i < size(); ++i) {
        if (!is_exact(i))
            break;
        BigRat r(at(i).value(), at(i - 1).value());
        r.canonicalize();
        if (!best || r < *best)
            best = r;
    }
    return best;
}

std::string ExponentSubseq::describe() const
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < size(); ++i)
        os << (i ? "," : "") << (parent_ ? "q" + std::to_string(indices_[i]) : to_decimal(values_[i]));
    os << ")";
    return os.str();
}

CoefficientSeq CoefficientSeq::constant(const CertifiedComplex &c) { return listed({}, c); }

CoefficientSeq CoefficientSeq::listed(std::vector<CertifiedComplex> u, const CertifiedComplex &fill)
{
    CoefficientSeq s;
    s.u_ = std::move(u);
    s.fill_ = fill;
    Real sup = Real::rounded(fill.abs().hi, MPFR_RNDU, 64);
    for (const auto &c : s.u_)
        sup = max(sup, Real::rounded(c.abs().hi, MPFR_RNDU, 64));
    s.sup_ = Real::rounded(sup, MPFR_RNDU, 64);
    if (!s.sup_.is_finite())
        throw Error(ErrorKind::config, "coefficient sequence must be bounded");
    return s;
}

CoefficientSeq CoefficientSeq::random(unsigned long long seed, std::size_t count, const BigRat &sup_norm)
{
    std::mt19937_64 rng(seed);
    const long scale = 1L << 30;
    std::vector<CertifiedComplex> u;
    u.reserve(count);
    while (u.size() < count) {
        long a = static_cast<long>(rng() % (2 * scale + 1)) - scale;
        long b = static_cast<long>(rng() % (2 * scale + 1)) - scale;
        if (a * a + b * b > scale * scale)
            continue;
        BigRat re = sup_norm * BigRat(a, scale), im = sup_norm * BigRat(b, scale);
        re.canonicalize();
        im.canonicalize();
        u.push_back(CertifiedComplex::from_rat(re, im));
    }
    // Unlisted positions take 0; |u_n| <= sup_norm either way.
    CoefficientSeq s = listed(std::move(u), CertifiedComplex::exact_zero());
    return s;
}

CertifiedComplex CoefficientSeq::at(std::size_t n) const { return n < u_.size() ? u_[n] : fill_; }

Real CoefficientSeq::sup_after(std::size_t n) const
{
    Real sup = Real::rounded(fill_.abs().hi, MPFR_RNDU, 64);
    for (std::size_t k = n + 1; k < u_.size(); ++k)
        sup = max(sup, Real::rounded(u_[k].abs().hi, MPFR_RNDU, 64));
    return sup;
}

bool CoefficientSeq::is_zero() const { return sup_.is_zero(); }

} // namespace shear
