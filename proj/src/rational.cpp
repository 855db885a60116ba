#include "gtbv/rational.hpp"

#include "gtbv/errors.hpp"

namespace gtbv {

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal", 0);
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Rational r{mpz_class(s)};
            return r;
        }
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw ParseError("malformed rational literal '" + s + "'", slash);
        Rational r{mpz_class(num), mpz_class(den)};
        if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", slash + 1);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational literal '" + s + "'", 0);
    }
}

Rational random_int_rational(std::mt19937_64& rng, int bound, bool nonzero) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    int v = dist(rng);
    while (nonzero && v == 0) v = dist(rng);
    return rational(v);
}

}  // namespace gtbv
