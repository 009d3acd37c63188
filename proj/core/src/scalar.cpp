#include "ncg/scalar.hpp"

#include <cctype>

namespace ncg {

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    Rational norm = re_ * re_ + im_ * im_;
    return Scalar(re_ / norm, -im_ / norm);
}

std::string rational_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string Scalar::str() const {
    return rational_str(re_) + "+" + rational_str(im_) + "*i";
}

namespace {

// Parses [sign] digits [/ digits] starting at pos; advances pos.
Rational parse_rational(const std::string& s, size_t& pos) {
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        negative = s[pos] == '-';
        ++pos;
    }
    size_t num_begin = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == num_begin) throw ParseError("expected number in '" + s + "'");
    Integer num(s.substr(num_begin, pos - num_begin));
    if (negative) num = -num;
    Integer den(1);
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        size_t den_begin = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == den_begin) throw ParseError("expected denominator in '" + s + "'");
        den = Integer(s.substr(den_begin, pos - den_begin));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    }
    return Rational(num, den);
}

}  // namespace

Scalar Scalar::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty scalar");

    // Pure imaginary shorthands: "i", "-i", "+i".
    if (s == "i" || s == "+i") return Scalar::i();
    if (s == "-i") return -Scalar::i();

    size_t pos = 0;
    bool lead_imag = false;
    Rational first;
    // "r*i" or "r" as first component.
    first = parse_rational(s, pos);
    if (pos + 1 < s.size() + 1 && pos < s.size() && s[pos] == '*') {
        if (pos + 1 >= s.size() || s[pos + 1] != 'i')
            throw ParseError("expected 'i' after '*' in '" + text + "'");
        pos += 2;
        lead_imag = true;
    }
    if (pos == s.size()) {
        return lead_imag ? Scalar(Rational(0), first) : Scalar(first);
    }
    if (lead_imag) throw ParseError("trailing input after imaginary part in '" + text + "'");

    // Second component: "+r/s*i" (sign folded into the numerator) or "+i"/"-i".
    if (s[pos] != '+' && s[pos] != '-')
        throw ParseError("expected '+' or '-' before imaginary part in '" + text + "'");
    if (s.substr(pos) == "+i") return Scalar(first, Rational(1));
    if (s.substr(pos) == "-i") return Scalar(first, Rational(-1));
    // The canonical form separates with '+' and keeps the sign in the
    // numerator, e.g. "0/1+-1/1*i".
    if (s[pos] == '+' && pos + 1 < s.size() && (s[pos + 1] == '-' || s[pos + 1] == '+'))
        ++pos;
    Rational second = parse_rational(s, pos);
    if (pos + 1 >= s.size() || s[pos] != '*' || s[pos + 1] != 'i')
        throw ParseError("expected '*i' after imaginary part in '" + text + "'");
    pos += 2;
    if (pos != s.size()) throw ParseError("trailing input in '" + text + "'");
    return Scalar(first, second);
}

}  // namespace ncg
