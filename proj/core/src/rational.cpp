#include "dyext/rational.hpp"

#include <cmath>
#include <cstdio>

#include "dyext/errors.hpp"

namespace dyext {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (num.size() > 1 && num[0] == '+') num.remove_prefix(1);
    if (!is_integer_literal(num)) throw ParseError("malformed rational '" + std::string(text) + "'");
    mpz_class p(std::string(num), 10);
    if (slash == std::string_view::npos) return Rational(p);

    std::string_view den = text.substr(slash + 1);
    mpz_class q;
    if (den.size() > 2 && den[0] == '2' && den[1] == '^') {
        std::string_view e = den.substr(2);
        if (!is_integer_literal(e) || e[0] == '-') throw ParseError("malformed exponent in '" + std::string(text) + "'");
        const unsigned long k = std::stoul(std::string(e));
        if (k > 4096) throw ParseError("exponent too large in '" + std::string(text) + "'");
        mpz_ui_pow_ui(q.get_mpz_t(), 2, k);
    } else {
        if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+')
            throw ParseError("malformed denominator in '" + std::string(text) + "'");
        q = mpz_class(std::string(den), 10);
    }
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

double sqrt_to_double(const Rational& value) { return std::sqrt(value.get_d()); }

std::optional<Rational> exact_sqrt(const Rational& value) {
    if (value < 0) return std::nullopt;
    const mpz_class& p = value.get_num();
    const mpz_class& q = value.get_den();
    if (!mpz_perfect_square_p(p.get_mpz_t()) || !mpz_perfect_square_p(q.get_mpz_t())) return std::nullopt;
    return Rational(sqrt(p), sqrt(q));
}

std::string decimal(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

bool is_dyadic(const Rational& value) {
    const mpz_class& q = value.get_den();
    return mpz_popcount(q.get_mpz_t()) == 1;
}

}  // namespace dyext
