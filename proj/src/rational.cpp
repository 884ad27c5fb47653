#include "linsel/rational.hpp"

#include <cctype>
#include <sstream>

namespace linsel {

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rat parse_rat(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_token(text))
            throw MalformedRational("not an exact rational literal: '" + text + "'");
        return Rat(Int(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den))
        throw MalformedRational("not an exact rational literal: '" + text + "'");
    Int d(den);
    if (d == 0) throw MalformedRational("zero denominator in '" + text + "'");
    return Rat(Int(num), d);  // two-argument constructor canonicalizes
}

std::string rat_to_string(const Rat& value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

}  // namespace linsel
