#include "shear/exactarith/rat_interval.hpp"
#include "shear/error.hpp"

#include <algorithm>
#include <cctype>

namespace shear {

BigInt floor_rat(const BigRat &x)
{
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

BigInt ceil_rat(const BigRat &x)
{
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

std::string to_decimal(const BigInt &v) { return v.get_str(10); }

BigInt parse_bigint(const std::string &text)
{
    BigInt v;
    if (text.empty() || v.set_str(text, 10) != 0)
        throw Error(ErrorKind::config, "not an integer: '" + text + "'");
    return v;
}

BigRat parse_rational(const std::string &raw)
{
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)))
            text += c;
    if (text.empty())
        throw Error(ErrorKind::config, "empty number");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_bigint(text.substr(0, slash));
        BigInt den = parse_bigint(text.substr(slash + 1));
        if (den == 0)
            throw Error(ErrorKind::config, "zero denominator in '" + raw + "'");
        BigRat q(num, den);
        q.canonicalize();
        return q;
    }
    // Decimal with optional exponent, parsed exactly.
    std::string mant = text;
    long exp10 = 0;
    auto epos = text.find_first_of("eE");
    if (epos != std::string::npos) {
        mant = text.substr(0, epos);
        try {
            exp10 = std::stol(text.substr(epos + 1));
        } catch (...) {
            throw Error(ErrorKind::config, "bad exponent in '" + raw + "'");
        }
    }
    bool negative = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        negative = mant[0] == '-';
        mant = mant.substr(1);
    }
    auto dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        exp10 -= static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw Error(ErrorKind::config, "not a number: '" + raw + "'");
    BigInt num(digits, 10);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    BigRat q = exp10 >= 0 ? BigRat(num * scale) : BigRat(num, scale);
    q.canonicalize();
    return negative ? BigRat(-q) : q;
}

std::string to_string(const BigRat &q) { return q.get_str(10); }

long bit_length(const BigInt &v)
{
    if (v == 0)
        return 0;
    return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

RatInterval::RatInterval(BigRat a, BigRat b) : lo(std::move(a)), hi(std::move(b))
{
    if (hi < lo)
        throw std::invalid_argument("RatInterval: lo > hi");
}

RatInterval RatInterval::reduced_mod1() const
{
    BigRat shift(floor_rat(lo));
    return {lo - shift, hi - shift};
}

std::string RatInterval::to_string() const { return "[" + shear::to_string(lo) + ", " + shear::to_string(hi) + "]"; }

RatInterval operator+(const RatInterval &a, const RatInterval &b) { return {a.lo + b.lo, a.hi + b.hi}; }
RatInterval operator-(const RatInterval &a, const RatInterval &b) { return {a.lo - b.hi, a.hi - b.lo}; }
RatInterval operator-(const RatInterval &a) { return {-a.hi, -a.lo}; }

RatInterval operator*(const RatInterval &a, const RatInterval &b)
{
    BigRat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

RatInterval operator*(const BigRat &k, const RatInterval &a)
{
    if (k >= 0)
        return {k * a.lo, k * a.hi};
    return {k * a.hi, k * a.lo};
}

RatInterval hull(const RatInterval &a, const RatInterval &b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

} // namespace shear
