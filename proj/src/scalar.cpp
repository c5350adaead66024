#include "hptkit/scalar.hpp"

#include <cctype>

#include "hptkit/errors.hpp"

namespace hptkit {

namespace {

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text, const std::string& location) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
        throw ParseError(location, "malformed rational \"" + std::string(text) + "\"");
    }
    mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError(location, "zero denominator in \"" + std::string(text) + "\"");
    Scalar value(n, d);
    value.canonicalize();
    return value;
}

std::string to_string(const Scalar& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace hptkit
