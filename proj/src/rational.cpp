#include "setid/rational.hpp"

#include "setid/errors.hpp"

#include <cctype>

namespace setid {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace

Rat parse_rat(const std::string& text) {
    std::string s = text;
    // trim
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw ParseError("empty number");

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.erase(s.begin());
    }
    if (s.empty()) throw ParseError("bad number: '" + text + "'");

    Rat q;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw ParseError("bad fraction: '" + text + "'");
        mpz_class d(den);
        if (d == 0) throw ParseError("zero denominator: '" + text + "'");
        q = Rat(mpz_class(num), d);
        q.canonicalize();
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        const std::string whole = s.substr(0, dot);
        const std::string frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            throw ParseError("bad decimal: '" + text + "'");
        mpz_class scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        mpz_class num = whole.empty() ? mpz_class(0) : mpz_class(whole);
        num *= scale;
        if (!frac.empty()) num += mpz_class(frac);
        q = Rat(num, scale);
        q.canonicalize();
    } else {
        if (!all_digits(s)) throw ParseError("bad number: '" + text + "'");
        q = Rat(mpz_class(s));
    }
    if (negative) q = -q;
    return q;
}

std::string rat_str(const Rat& q) {
    return q.get_str();
}

double rat_double(const Rat& q) {
    return q.get_d();
}

Rat rat_round(const Rat& q, int decimals) {
    mpz_class scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    Rat scaled = q * Rat(scale);
    // nearest integer, ties away from zero
    mpz_class twice_num = scaled.get_num() * 2;
    mpz_class twice_den = scaled.get_den() * 2;
    mpz_class rounded;
    if (scaled >= 0) {
        mpz_class t = twice_num + scaled.get_den();
        mpz_fdiv_q(rounded.get_mpz_t(), t.get_mpz_t(), twice_den.get_mpz_t());
    } else {
        mpz_class t = -twice_num + scaled.get_den();
        mpz_fdiv_q(rounded.get_mpz_t(), t.get_mpz_t(), twice_den.get_mpz_t());
        rounded = -rounded;
    }
    Rat out(rounded, scale);
    out.canonicalize();
    return out;
}

} // namespace setid
