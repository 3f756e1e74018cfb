#include "dyext/dyadic_rational.hpp"

#include <limits>
#include <stdexcept>

#include "dyext/errors.hpp"

namespace dyext {

namespace {

__extension__ typedef __int128 wide_t;

constexpr unsigned kMaxExponent = 126;

wide_t shifted(wide_t value, unsigned by) {
    if (by == 0 || value == 0) return value;
    if (by >= 126) throw std::overflow_error("DyadicRational overflow");
    const wide_t limit = (static_cast<wide_t>(1) << (126 - by));
    if (value >= limit || value <= -limit) throw std::overflow_error("DyadicRational overflow");
    return value * (static_cast<wide_t>(1) << by);
}

}  // namespace

DyadicRational::DyadicRational(std::int64_t numerator, unsigned exponent) {
    *this = from_wide(numerator, exponent);
}

DyadicRational DyadicRational::from_wide(wide_t numerator, unsigned exponent) {
    DyadicRational d;
    if (numerator == 0) return d;
    while ((numerator & 1) == 0 && exponent > 0) {
        numerator /= 2;
        --exponent;
    }
    if (numerator > std::numeric_limits<std::int64_t>::max() || numerator < std::numeric_limits<std::int64_t>::min() ||
        exponent > kMaxExponent)
        throw std::overflow_error("DyadicRational overflow");
    d.numerator_ = static_cast<std::int64_t>(numerator);
    d.exponent_ = exponent;
    return d;
}

DyadicRational DyadicRational::from_rational(const Rational& value) {
    if (!is_dyadic(value)) throw PreconditionError("value " + to_string(value) + " is not a dyadic rational");
    const std::size_t bits = mpz_sizeinbase(value.get_den().get_mpz_t(), 2);
    const unsigned exponent = static_cast<unsigned>(bits - 1);
    if (!value.get_num().fits_slong_p() || exponent > kMaxExponent)
        throw PreconditionError("value " + to_string(value) + " does not fit a DyadicRational");
    return DyadicRational(value.get_num().get_si(), exponent);
}

DyadicRational DyadicRational::parse(std::string_view text) {
    const Rational r = parse_rational(text);
    try {
        return from_rational(r);
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

Rational DyadicRational::to_rational() const {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent_);
    Rational r{mpz_class(static_cast<long>(numerator_)), den};
    r.canonicalize();
    return r;
}

double DyadicRational::to_double() const { return to_rational().get_d(); }

std::string DyadicRational::str() const {
    return std::to_string(numerator_) + "/2^" + std::to_string(exponent_);
}

DyadicRational DyadicRational::operator-() const { return from_wide(-static_cast<wide_t>(numerator_), exponent_); }

DyadicRational DyadicRational::half() const { return from_wide(numerator_, exponent_ + 1); }

DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
    const unsigned e = std::max(a.exponent_, b.exponent_);
    const wide_t x = shifted(a.numerator_, e - a.exponent_);
    const wide_t y = shifted(b.numerator_, e - b.exponent_);
    return DyadicRational::from_wide(x + y, e);
}

DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) { return a + (-b); }

DyadicRational operator*(const DyadicRational& a, const DyadicRational& b) {
    return DyadicRational::from_wide(static_cast<wide_t>(a.numerator_) * b.numerator_, a.exponent_ + b.exponent_);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
    const unsigned e = std::max(a.exponent_, b.exponent_);
    const wide_t x = shifted(a.numerator_, e - a.exponent_);
    const wide_t y = shifted(b.numerator_, e - b.exponent_);
    return x <=> y;
}

}  // namespace dyext
