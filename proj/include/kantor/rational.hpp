#pragma once

// Exact rational scalar used everywhere in the library. Backed by GMP's
// mpq_class; values are kept canonical (reduced, positive denominator).

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace kantor {

using Rational = mpq_class;

// mpq_class(num, den) does not reduce; this does.
inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

inline Rational abs(const Rational& q) { return ::abs(q); }

inline Rational positive_part(const Rational& q) { return sgn(q) > 0 ? q : Rational(0); }

inline Rational negative_part(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : Rational(0); }

// Accepts "p/q" with integer p, q, or a plain integer, or a decimal like
// "-0.375". Throws ParseError (line 0; readers fill in the location).
inline Rational parse_rational(std::string_view text) {
    auto bad = [&](const char* why) -> ParseError {
        return ParseError(std::string(why) + ": '" + std::string(text) + "'");
    };
    if (text.empty()) throw bad("empty number");

    auto is_integer = [](std::string_view s) {
        if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };

    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!is_integer(num) || !is_integer(den)) throw bad("malformed fraction");
        Rational q;
        if (mpq_set_str(q.get_mpq_t(), (std::string(num) + "/" + std::string(den)).c_str(), 10) != 0)
            throw bad("malformed fraction");
        if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0) throw bad("zero denominator");
        q.canonicalize();
        return q;
    }

    auto dot = text.find('.');
    if (dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (!whole.empty() && (whole[0] == '+' || whole[0] == '-')) whole.remove_prefix(1);
        if (whole.empty() && frac.empty()) throw bad("malformed decimal");
        for (std::string_view part : {whole, frac})
            for (char c : part)
                if (!std::isdigit(static_cast<unsigned char>(c))) throw bad("malformed decimal");
        mpz_class digits(std::string(whole) + std::string(frac), 10);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        Rational q(digits, scale);
        q.canonicalize();
        return neg ? Rational(-q) : q;
    }

    if (!is_integer(text)) throw bad("malformed number");
    return Rational(mpz_class(std::string(text), 10));
}

// Canonical exact rendering: "p/q", or just "p" for integers.
inline std::string to_string(const Rational& q) { return q.get_str(); }

// Decimal rendering with 12 significant digits, for human-facing output.
// Always approximate in spirit; exact values travel as fractions.
inline std::string to_decimal(const Rational& q) {
    mpf_class f(0, 128);
    f = q;
    char buf[64];
    gmp_snprintf(buf, sizeof buf, "%.12Fg", f.get_mpf_t());
    return buf;
}

inline Rational sum(const std::vector<Rational>& v) {
    Rational s = 0;
    for (const Rational& q : v) s += q;
    return s;
}

}  // namespace kantor
