#include "bunkbed/numbers.hpp"

#include <cctype>

namespace bunkbed {

std::string rational_to_string(const Rational& x) {
    return x.str();
}

namespace {

bool is_integer_token(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty rational");

    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_token(text)) throw ParseError("bad rational: " + std::string(text));
        return Rational(BigInt(std::string(text)));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den))
        throw ParseError("bad rational: " + std::string(text));
    BigInt d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator: " + std::string(text));
    return Rational(BigInt(std::string(num)), d);
}

} // namespace bunkbed
