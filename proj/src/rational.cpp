#include "bilops/rational.hpp"

#include <sstream>

namespace bilops {

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ConfigError("empty rational literal");
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = isdigit(static_cast<unsigned char>(c)) || c == '/' ||
                  ((c == '-' || c == '+') && (i == 0 || s[i - 1] == '/'));
        if (!ok) throw ConfigError("bad rational literal: '" + text + "'");
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ConfigError("bad rational literal: '" + text + "'");
    if (q.get_den() == 0) throw ConfigError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

bool is_nonneg_integer(const Rational& q) { return is_integer(q) && q >= 0; }

long to_long(const Rational& q) {
    if (!is_integer(q) || !q.get_num().fits_slong_p())
        throw ConfigError("rational " + to_string(q) + " is not a small integer");
    return q.get_num().get_si();
}

Rational falling_factorial(const Rational& x, int k) {
    Rational out = 1;
    for (int t = 0; t < k; ++t) out *= x - t;
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& text, char sep) {
    std::vector<Rational> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(parse_rational(item));
    if (out.empty()) throw ConfigError("empty rational list: '" + text + "'");
    return out;
}

}  // namespace bilops
