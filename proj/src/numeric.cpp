#include "congames/numeric.hpp"

#include <algorithm>
#include <cctype>

namespace congames {

namespace {

bool is_plain_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + i, s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_plain_integer(num) || !is_plain_integer(den))
            throw std::invalid_argument("malformed fraction: " + text);
        Rational r = Rational(mpz_class(num), mpz_class(den));
        if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator: " + text);
        r.canonicalize();
        return r;
    }
    if (is_plain_integer(s)) return Rational(mpz_class(s));

    // Decimal, optionally with exponent: [-]ddd[.ddd][e[-]dd]
    bool neg = false;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') neg = (s[pos] == '-'), ++pos;
    std::string digits;
    long exp10 = 0;
    bool seen_dot = false, seen_digit = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_dot) --exp10;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            exp10 += std::stol(s.substr(pos + 1));
            break;
        } else {
            throw std::invalid_argument("malformed rational literal: " + text);
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed rational literal: " + text);
    mpz_class mant(digits.empty() ? "0" : digits);
    Rational r(mant);
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    if (exp10 >= 0)
        r *= Rational(p10);
    else
        r /= Rational(p10);
    if (neg) r = -r;
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational harmonic(long n) {
    Rational h(0);
    for (long k = 1; k <= n; ++k) h += Rational(1, k);
    return h;
}

long long isqrt_floor(long long n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative value");
    if (n == 0) return 0;
    long long s = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (s > 0 && s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

}  // namespace congames
