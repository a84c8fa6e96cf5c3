#pragma once

#include <cmath>
#include <string>

#include "destab/errors.hpp"
#include "destab/rational.hpp"

namespace destab {

// Exact representation of sign * sqrt(square) for a nonnegative rational
// square. Optimal weights are of this shape and are generally irrational,
// so they are never materialized as floats except for display.
struct SignedSquare {
    int sign = 0;     // -1, 0, +1
    Rat square = 0;   // >= 0; zero iff sign == 0

    SignedSquare() = default;
    SignedSquare(int s, Rat sq) : sign(s), square(std::move(sq)) {
        if (square < 0)
            throw InvalidInput("SignedSquare: negative square");
        if ((sign == 0) != (square == 0))
            throw InvalidInput("SignedSquare: sign/square zero mismatch");
    }

    static SignedSquare from_rat(const Rat& r) {
        return SignedSquare(sgn(r), r * r);
    }
    static SignedSquare neg_sqrt(const Rat& sq) {
        return sq == 0 ? SignedSquare(0, 0) : SignedSquare(-1, sq);
    }
    static SignedSquare pos_sqrt(const Rat& sq) {
        return sq == 0 ? SignedSquare(0, 0) : SignedSquare(1, sq);
    }

    double to_double() const {
        double s = std::sqrt(rat_to_double(square));
        return sign < 0 ? -s : s;
    }

    SignedSquare scaled(const Rat& t) const {  // value * t
        if (t == 0 || sign == 0) return SignedSquare(0, 0);
        return SignedSquare(sgn(t) * sign, t * t * square);
    }

    bool operator==(const SignedSquare& o) const {
        return sign == o.sign && square == o.square;
    }
    bool operator<(const SignedSquare& o) const {
        if (sign != o.sign) return sign < o.sign;
        if (sign > 0) return square < o.square;
        if (sign < 0) return square > o.square;
        return false;
    }
    bool operator<=(const SignedSquare& o) const { return *this < o || *this == o; }
    bool operator>(const SignedSquare& o) const { return o < *this; }
    bool operator>=(const SignedSquare& o) const { return o <= *this; }

private:
    static int sgn(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }
};

// A rational extended with a +infinity sentinel ordered above all rationals.
struct ExtendedRat {
    bool infinite = false;
    Rat value = 0;  // meaningful iff !infinite

    static ExtendedRat infinity() { return ExtendedRat{true, Rat(0)}; }
    static ExtendedRat finite(Rat v) { return ExtendedRat{false, std::move(v)}; }

    bool operator==(const ExtendedRat& o) const {
        if (infinite != o.infinite) return false;
        return infinite || value == o.value;
    }
    bool operator<(const ExtendedRat& o) const {
        if (infinite) return false;
        if (o.infinite) return true;
        return value < o.value;
    }
};

} // namespace destab
