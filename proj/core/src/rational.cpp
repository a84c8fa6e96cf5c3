#include "destab/rational.hpp"

#include <sstream>

namespace destab {

Rat parse_rat(const std::string& text) {
    if (text.empty())
        throw InvalidInput("empty rational literal");
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw InvalidInput("bad rational literal: '" + text + "'");
    if (q.get_den() == 0)
        throw InvalidInput("zero denominator in rational literal: '" + text + "'");
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& value) {
    if (value.get_den() == 1)
        return value.get_num().get_str();
    return value.get_str();
}

double rat_to_double(const Rat& value) {
    return value.get_d();
}

Rat dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("dot: length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("vec_add: length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("vec_sub: length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec vec_scale(const Rat& t, const Vec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = t * v[i];
    return r;
}

bool vec_is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

std::vector<Int> primitive_integer(const Vec& v) {
    std::vector<Int> out(v.size(), Int(0));
    // lcm of denominators, then divide by the gcd of numerators
    Int den_lcm = 1;
    bool all_zero = true;
    for (const auto& x : v) {
        if (x == 0) continue;
        all_zero = false;
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    }
    if (all_zero) return out;
    Int g = 0;
    std::vector<Int> scaled(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * Rat(den_lcm);
        scaled[i] = s.get_num();  // denominator is 1 now
        if (scaled[i] != 0)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled[i].get_mpz_t());
    }
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = scaled[i] / g;
    return out;
}

bool lex_less(const std::vector<Int>& a, const std::vector<Int>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

std::string int_vec_str(const std::vector<Int>& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i].get_str();
    }
    os << ']';
    return os.str();
}

} // namespace destab
